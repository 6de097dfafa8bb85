"""Finite ℚ/ℤ-valued linking forms and their metabolizers.

Group elements are coordinate tuples reduced modulo ``form.moduli``.  A
subgroup is stored as the frozenset of its elements, which is cheap at the
sizes handled here (order at most a few thousand) and makes equality and
hashing trivial.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import sympy

from .errors import BudgetExceeded, PreconditionError, UNLIMITED
from .exact_linalg import PolyMatrix, int_det, minors, poly_det, smith_normal_form, unimodular_inverse
from .laurent import LaurentPoly, associated, gcd_many, involve

DEFAULT_MAX_ORDER = 4096


def _frac_mod1(x):
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class FiniteLinkingForm:
    """Symmetric pairing on ⊕ ℤ/d_i with values ``gram[i][j]`` in [0, 1)."""

    moduli: tuple
    gram: tuple

    def __post_init__(self):
        r = len(self.moduli)
        if any(d < 2 for d in self.moduli):
            raise ValueError("cyclic factors must have order at least 2")
        if len(self.gram) != r or any(len(row) != r for row in self.gram):
            raise ValueError("gram matrix shape does not match the group")
        for i in range(r):
            for j in range(r):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("linking form must be symmetric")
                if (self.moduli[i] * self.gram[i][j]).denominator != 1:
                    raise ValueError("pairing not well defined on the cyclic factors")

    @classmethod
    def make(cls, moduli, gram):
        moduli = tuple(int(d) for d in moduli)
        gram = tuple(tuple(_frac_mod1(x) for x in row) for row in gram)
        return cls(moduli, gram)

    @property
    def order(self):
        n = 1
        for d in self.moduli:
            n *= d
        return n

    @property
    def rank(self):
        return len(self.moduli)

    def zero(self):
        return (0,) * self.rank

    def elements(self):
        return [tuple(v) for v in product(*(range(d) for d in self.moduli))]

    def reduce(self, v):
        return tuple(int(x) % d for x, d in zip(v, self.moduli))

    def add(self, u, v):
        return tuple((a + b) % d for a, b, d in zip(u, v, self.moduli))

    def pair(self, u, v):
        total = Fraction(0)
        for i, a in enumerate(u):
            if a:
                row = self.gram[i]
                for j, b in enumerate(v):
                    if b:
                        total += a * b * row[j]
        return _frac_mod1(total)

    def negate(self):
        return FiniteLinkingForm.make(self.moduli, [[-x for x in row] for row in self.gram])

    def direct_sum(self, other):
        r, s = self.rank, other.rank
        gram = [[Fraction(0)] * (r + s) for _ in range(r + s)]
        for i in range(r):
            for j in range(r):
                gram[i][j] = self.gram[i][j]
        for i in range(s):
            for j in range(s):
                gram[r + i][r + j] = other.gram[i][j]
        return FiniteLinkingForm.make(self.moduli + other.moduli, gram)

    def is_nonsingular(self):
        """The adjoint G -> Hom(G, ℚ/ℤ) is injective (hence bijective)."""
        basis = [tuple(int(i == k) for i in range(self.rank)) for k in range(self.rank)]
        return all(
            any(self.pair(x, e) for e in basis) for x in self.elements() if any(x)
        )


def from_presentation(A):
    """Form on coker(A) with ``b(x, y) = xᵀ A⁻¹ y`` mod ℤ, in Smith-adapted generators."""
    M = sympy.Matrix(A)
    if M.shape[0] != M.shape[1]:
        raise PreconditionError("presentation matrix must be square")
    if M != M.T:
        raise PreconditionError("presentation matrix must be symmetric")
    n = M.shape[0]
    if n == 0:
        return FiniteLinkingForm((), ())
    if int_det([[int(x) for x in M.row(i)] for i in range(n)]) == 0:
        raise PreconditionError("presentation matrix is singular")
    inv = M.inv()
    D, U, _ = smith_normal_form([[int(x) for x in M.row(i)] for i in range(n)])
    Uinv = unimodular_inverse(U)
    keep = [i for i in range(n) if int(D[i, i]) != 1]
    gens = [sympy.Matrix([int(Uinv[r, i]) for r in range(n)]) for i in keep]
    gram = []
    for u in gens:
        row = []
        for v in gens:
            x = (u.T * inv * v)[0, 0]
            row.append(Fraction(int(x.p), int(x.q)))
        gram.append(row)
    return FiniteLinkingForm.make([int(D[i, i]) for i in keep], gram)


def span(F, gens):
    """Subgroup generated by ``gens`` (as a frozenset of elements)."""
    elems = {F.zero()}
    frontier = [F.zero()]
    gens = [F.reduce(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = F.add(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


def generators_of(F, sub):
    """Deterministic small generating set: greedy over sorted elements."""
    gens = []
    current = frozenset([F.zero()])
    for x in sorted(sub):
        if x not in current:
            gens.append(x)
            current = span(F, gens)
            if current == sub:
                break
    return tuple(gens)


def orthogonal(F, gens):
    """``{m : b(p, m) = 0 for every p in gens}``."""
    gens = [F.reduce(g) for g in gens]
    return frozenset(x for x in F.elements() if all(F.pair(p, x) == 0 for p in gens))


def _check_budget(order, max_order):
    if order > max_order:
        raise BudgetExceeded(f"group order {order} exceeds enumeration budget {max_order}")


def _isotropic_growth(F, target, budget, first_only=False):
    """Isotropic subgroups of order ``target`` grown one generator at a time."""
    zero = frozenset([F.zero()])
    elems = F.elements()
    self_zero = [x for x in elems if any(x) and F.pair(x, x) == 0]
    level = {zero}
    found = set()
    seen = {zero}
    while level:
        nxt = set()
        for S in level:
            budget.check()
            if len(S) == target:
                found.add(S)
                if first_only:
                    return found
                continue
            for g in self_zero:
                if g in S or any(F.pair(g, s) for s in S):
                    continue
                T = span(F, list(S) + [g])
                if len(T) <= target and T not in seen:
                    seen.add(T)
                    nxt.add(T)
        level = nxt
    return found


def _sort_subgroups(subs):
    return sorted(subs, key=lambda S: (len(S), sorted(S)))


def metabolizers(F, max_order=DEFAULT_MAX_ORDER, budget=UNLIMITED):
    """Every subgroup ``P`` with ``P^⊥ = P``, in a fixed order."""
    _check_budget(F.order, max_order)
    root = round(F.order ** 0.5)
    if root * root != F.order:
        return []
    out = [S for S in _isotropic_growth(F, root, budget) if orthogonal(F, S) == S]
    return _sort_subgroups(out)


def has_metabolizer(F, max_order=DEFAULT_MAX_ORDER, budget=UNLIMITED):
    _check_budget(F.order, max_order)
    root = round(F.order ** 0.5)
    if root * root != F.order:
        return False
    for S in _isotropic_growth(F, root, budget):
        if orthogonal(F, S) == S:
            return True
    return False


def characters_vanishing(moduli, P, q, k, max_order=DEFAULT_MAX_ORDER):
    """Homomorphisms ⊕ ℤ/d_i -> ℤ/q^k killing ``P``, as tuples of generator images."""
    moduli = tuple(moduli)
    order = 1
    for d in moduli:
        order *= d
    _check_budget(order, max_order)
    m = q ** k
    choices = [[v for v in range(m) if (d * v) % m == 0] for d in moduli]
    out = []
    for vals in product(*choices):
        if all(sum(a * v for a, v in zip(p, vals)) % m == 0 for p in P):
            out.append(tuple(vals))
    return out


def witt_equivalent(F1, F2, max_order=DEFAULT_MAX_ORDER, budget=UNLIMITED):
    """``F1 ⊕ (−F2)`` has a metabolizer (nonsingular finite forms)."""
    if not F1.rank and not F2.rank:
        return True
    G = F1.direct_sum(F2.negate()) if F1.rank and F2.rank else (F1 if F1.rank else F2.negate())
    return has_metabolizer(G, max_order, budget)


def format_subgroup(F, S):
    gens = generators_of(F, S)
    return "⟨" + ", ".join(str(g[0]) if F.rank == 1 else "(" + ",".join(map(str, g)) + ")" for g in gens) + "⟩"


def _strip_localized(p):
    """Remove factors ``t_i − 1`` (units after localizing at them)."""
    n = p.nvars
    for i in range(n):
        f = LaurentPoly.var(n, i) - 1
        while p and f.divides(p):
            p = p.exquo(f)
    return p


def _conj_transpose(M):
    return PolyMatrix([[involve(M[j, i]) for j in range(M.rows)] for i in range(M.cols)], M.nvars, M.rows)


@dataclass(frozen=True)
class CertificateReport:
    hermitian: bool
    nonsingular: bool
    isotropic: bool
    order_condition: bool

    @property
    def valid(self):
        return self.hermitian and self.nonsingular and self.isotropic and self.order_condition


def verify_neutral_certificate(A, generators):
    """Check a claimed metabolizer ``N`` of the pairing ``b(x, y) = x̄ᵀ A⁻¹ y`` on coker(A).

    ``A`` is a square Hermitian :class:`PolyMatrix` over Λ, with the pairing
    valued in the fraction field mod Λ localized at the ``t_i − 1``.
    ``generators`` are column vectors (lists of LaurentPoly) spanning ``N``.
    The checks are exact: isotropy of every generator pair, and the order
    identity ord(M/N) ≐ conj(ord(M) / ord(M/N)) which a nonsingular pairing
    forces when ``N = N^⊥``.  No search is performed.
    """
    n = A.rows
    herm = A.rows == A.cols and _conj_transpose(A) == A
    det = poly_det(A) if A.rows == A.cols else LaurentPoly.zero(A.nvars)
    nonsingular = bool(det)
    if not (herm and nonsingular):
        return CertificateReport(herm, nonsingular, False, False)
    # adjugate via cofactors
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rows = [r for r in range(n) if r != j]
            cols = [c for c in range(n) if c != i]
            sub = poly_det(A.submatrix(rows, cols)) if n > 1 else LaurentPoly.one(A.nvars)
            adj[i][j] = sub if (i + j) % 2 == 0 else -sub
    det_s = _strip_localized(det)
    isotropic = True
    for u in generators:
        ubar = [involve(x) for x in u]
        for v in generators:
            num = LaurentPoly.zero(A.nvars)
            for i in range(n):
                for j in range(n):
                    num = num + ubar[i] * adj[i][j] * v[j]
            if num and not det_s.divides(_strip_localized(num)):
                isotropic = False
    if generators:
        aug = PolyMatrix([list(A.entries[i]) + [g[i] for g in generators] for i in range(n)],
                         A.nvars, n + len(generators))
        quotient_order = gcd_many(minors(aug, n), A.nvars)
    else:
        quotient_order = det
    sub_order = det.exquo(quotient_order)
    order_ok = associated(_strip_localized(quotient_order), _strip_localized(involve(sub_order)))
    return CertificateReport(herm, nonsingular, isotropic, order_ok)
