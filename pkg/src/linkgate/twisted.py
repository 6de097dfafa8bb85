"""Chain complexes over ℤ[ℤ] and the two homology dimensions they are compared by.

The group is ``G = ℤ = ⟨x⟩``.  A finite quotient ``φ: G -> ℤ/t`` has kernel
``K = ⟨x^t⟩``, and a character ``α: K -> ℚ(ζ_m)^×`` is fixed by
``α(x^t) = ζ^a``.  Inducing gives ``α′: G -> GL(t, ℚ(ζ))``; with
``φ′ = id: G -> ℋ′ = ℤ = ⟨s⟩`` a group-ring entry ``P(x)`` acts on
``ℚ(ζ)(s)^t`` as the matrix ``P(s·α′(x))``.

Two independent rank engines are used:

* mod-q: augment (``x -> 1``), reduce mod the prime ``q``, Gaussian
  elimination over GF(q);
* twisted: expand entries into ``t x t`` blocks over ℚ(ζ)[s^±] and run
  fraction-free elimination (:func:`linkgate.exact_linalg.bareiss`).

Chain groups are row vectors; ``∂_k`` is an ``r_k x r_(k-1)`` matrix acting on
the right, so ``∂_(k+1) ∂_k = 0``.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import sympy

from .errors import PreconditionError
from .exact_linalg import bareiss
from .laurent import LaurentPoly, format_poly


# ----------------------------------------------------------------------------
# cyclotomic field ℚ(ζ_m) = ℚ[x] / Φ_m


def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a, b):
    a = [Fraction(c) for c in a]
    b = _poly_trim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = Fraction(b[-1])
    while len(_poly_trim(a)) >= len(b):
        a = _poly_trim(a)
        k = len(a) - len(b)
        c = a[-1] / lead
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] -= c * bc
    return q, _poly_trim(a)


class CyclotomicField:
    """Exact arithmetic in ℚ(ζ_m); elements are coefficient tuples in the power basis."""

    def __init__(self, m):
        if m < 1:
            raise ValueError("root-of-unity order must be positive")
        self.m = m
        x = sympy.Symbol("x")
        self.phi = [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs())]
        self.degree = len(self.phi) - 1
        self.zero = (Fraction(0),) * self.degree
        self.one = self.from_int(1)
        self._inverse = {}

    def from_int(self, c):
        return (Fraction(c),) + (Fraction(0),) * (self.degree - 1)

    def _reduce(self, coeffs):
        coeffs = list(coeffs)
        n = self.degree
        for k in range(len(coeffs) - 1, n - 1, -1):
            c = coeffs[k]
            if c:
                # Φ monic: ζ^n = -Σ phi[i] ζ^i
                for i in range(n):
                    coeffs[k - n + i] -= c * self.phi[i]
            coeffs[k] = 0
        coeffs = coeffs[:n] + [Fraction(0)] * (n - len(coeffs))
        return tuple(Fraction(c) for c in coeffs)

    def zeta_power(self, k):
        k %= self.m
        return self._reduce([0] * k + [1])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        out = [Fraction(0)] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return self._reduce(out)

    def scale(self, a, c):
        return tuple(x * c for x in a)

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        hit = self._inverse.get(a)
        if hit is not None:
            return hit
        # extended Euclid on (Φ, a) over ℚ, tracking the cofactor of a
        r0, r1 = [Fraction(c) for c in self.phi], _poly_trim(a)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # Φ is irreducible, so the last remainder is a nonzero constant
        c = r1[0]
        out = self._reduce([x / c for x in s1])
        self._inverse[a] = out
        return out

    def is_zero(self, a):
        return not any(a)

    def format(self, a):
        terms = []
        for k, c in enumerate(a):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return " + ".join(terms) or "0"


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


class SPoly:
    """Laurent polynomial in ``s`` over a :class:`CyclotomicField`."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms):
        self.field = field
        self.terms = {k: v for k, v in terms.items() if any(v)}

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        F = self.field
        for k, v in other.terms.items():
            out[k] = F.add(out[k], v) if k in out else v
        return SPoly(F, out)

    def __sub__(self, other):
        out = dict(self.terms)
        F = self.field
        for k, v in other.terms.items():
            out[k] = F.sub(out[k], v) if k in out else F.neg(v)
        return SPoly(F, out)

    def __mul__(self, other):
        F = self.field
        if isinstance(other, int):
            return SPoly(F, {k: F.scale(v, other) for k, v in self.terms.items()})
        out = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                p = F.mul(a, b)
                out[i + j] = F.add(out[i + j], p) if i + j in out else p
        return SPoly(F, out)

    def exquo(self, other):
        """Exact quotient in ℚ(ζ)[s^±]; raises ValueError if not exact."""
        F = self.field
        if not other:
            raise ZeroDivisionError("division by zero")
        if not self:
            return SPoly(F, {})
        # strip powers of s (units), then divide ordinary polynomials
        lo_a, lo_b = min(self.terms), min(other.terms)
        rem = {k - lo_a: v for k, v in self.terms.items()}
        b = {k - lo_b: v for k, v in other.terms.items()}
        db = max(b)
        lead_inv = F.inv(b[db])
        quo = {}
        while rem and max(rem) >= db:
            top = max(rem)
            c = F.mul(rem[top], lead_inv)
            k = top - db
            quo[k] = c
            for e, v in b.items():
                val = F.sub(rem.get(k + e, F.zero), F.mul(c, v))
                if any(val):
                    rem[k + e] = val
                else:
                    rem.pop(k + e, None)
        if rem:
            raise ValueError("not divisible")
        return SPoly(F, {k + lo_a - lo_b: v for k, v in quo.items()})


# ----------------------------------------------------------------------------
# groups, group-ring matrices, complexes


@dataclass(frozen=True)
class AbelianGroupSpec:
    """``ℤ^free ⊕ ⊕ ℤ/d``; group rings below use the free part only."""

    free: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.free < 0 or any(d < 2 for d in self.torsion):
            raise ValueError("invalid abelian group spec")


Z = AbelianGroupSpec(1)


class GroupRingMatrix:
    """Matrix over ℤ[ℤ^r] with LaurentPoly entries (``r`` = free rank of the group)."""

    def __init__(self, entries, group=Z, cols=None):
        if group.torsion:
            raise PreconditionError("group rings of groups with torsion are not supported")
        entries = tuple(tuple(row) for row in entries)
        self.group = group
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else (cols or 0)
        for row in entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
            for e in row:
                if e.nvars != group.free:
                    raise ValueError("entry has the wrong number of variables")
        self.entries = entries

    @classmethod
    def parse(cls, rows, group=Z):
        from .laurent import parse_poly

        return cls([[parse_poly(str(x), group.free) for x in row] for row in rows], group)

    def __matmul__(self, other):
        n = self.group.free
        out = []
        for row in self.entries:
            new = []
            for j in range(other.cols):
                acc = LaurentPoly.zero(n)
                for k, a in enumerate(row):
                    if a:
                        acc = acc + a * other.entries[k][j]
                new.append(acc)
            out.append(new)
        return GroupRingMatrix(out, self.group, other.cols)

    def is_zero(self):
        return all(not e for row in self.entries for e in row)

    def stack(self, other):
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        return GroupRingMatrix(self.entries + other.entries, self.group, self.cols)

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(format_poly(e) for e in row) + "]" for row in self.entries) + "]"


def zero_matrix(rows, cols, group=Z):
    z = LaurentPoly.zero(group.free)
    return GroupRingMatrix([[z] * cols for _ in range(rows)], group, cols)


@dataclass(frozen=True)
class FreeChainComplex:
    """``ranks[k]`` = rank of C_k; ``boundaries[k-1]`` is ∂_k: C_k -> C_(k-1)."""

    ranks: tuple
    boundaries: tuple
    group: AbelianGroupSpec = Z

    def __post_init__(self):
        if len(self.boundaries) != max(len(self.ranks) - 1, 0):
            raise ValueError("need one boundary map between consecutive chain groups")
        for k, d in enumerate(self.boundaries, start=1):
            if (d.rows, d.cols) != (self.ranks[k], self.ranks[k - 1]):
                raise ValueError(f"∂_{k} has shape {d.rows}x{d.cols}, expected "
                                 f"{self.ranks[k]}x{self.ranks[k - 1]}")
        for k in range(1, len(self.boundaries)):
            if not (self.boundaries[k] @ self.boundaries[k - 1]).is_zero():
                raise PreconditionError(f"∂_{k} ∘ ∂_{k + 1} is not zero")

    def rank(self, n):
        return self.ranks[n] if 0 <= n < len(self.ranks) else 0

    def boundary(self, n):
        """∂_n (a zero matrix outside the stored range)."""
        if 1 <= n <= len(self.boundaries):
            return self.boundaries[n - 1]
        return zero_matrix(self.rank(n), self.rank(n - 1), self.group)


def zero_complex():
    return FreeChainComplex((), ())


# ----------------------------------------------------------------------------
# mod-q side


def _is_prime(q):
    return q >= 2 and all(q % d for d in range(2, int(q ** 0.5) + 1))


def augment(M):
    """Integer matrix of augmentations (every group element -> 1)."""
    ones = (1,) * M.group.free
    return [[int(e.evaluate(ones)) if e else 0 for e in row] for row in M.entries]


def rank_mod(rows, q):
    """Rank over GF(q) by Gaussian elimination."""
    A = [[x % q for x in row] for row in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, q)
        A[rank] = [(x * inv) % q for x in A[rank]]
        for i in range(len(A)):
            if i != rank and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % q for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def homology_dim_modq(C, n, q):
    """dim over ℤ/q of H_n(ℤ/q ⊗_{ℤG} C) with trivial G-action."""
    if not _is_prime(q):
        raise PreconditionError(f"q={q} is not prime")
    r = C.rank(n)
    return r - rank_mod(augment(C.boundary(n)), q) - rank_mod(augment(C.boundary(n + 1)), q)


# ----------------------------------------------------------------------------
# induced representation and the twisted side


@dataclass(frozen=True)
class InducedRep:
    """Induction of ``α(x^t) = ζ_m^a`` from ``K = tℤ`` to ``G = ℤ``.

    ``matrix`` is ``α′(x)`` acting on column vectors: ``α′(x) e_i = e_(i+1)``
    for ``i < t-1`` and ``α′(x) e_(t-1) = ζ^a e_0``.
    """

    t: int
    m: int
    a: int
    field: CyclotomicField = field(compare=False, repr=False)

    @property
    def dim(self):
        return self.t

    def matrix(self, k=1):
        """``α′(x^k)`` as a t x t list of field elements."""
        F = self.field
        t = self.t
        M = [[F.zero] * t for _ in range(t)]
        for i in range(t):
            j = i + k
            wraps, pos = divmod(j, t)
            M[pos][i] = F.zeta_power(self.a * wraps)
        return M


@lru_cache(maxsize=None)
def _field(m):
    return CyclotomicField(m)


def induce(t, m=1, a=0):
    """Induced representation of ``α: x^t -> ζ_m^a`` (``a = 0`` is the trivial character)."""
    if t < 1:
        raise PreconditionError("index must be positive")
    return InducedRep(t, m, a % m, _field(m))


def check_multiplicative(rho, ks=range(-4, 5)):
    """``α′(x^j) α′(x^k) = α′(x^(j+k))`` on a window of exponents."""
    F = rho.field
    for j in ks:
        for k in ks:
            A, B, C = rho.matrix(j), rho.matrix(k), rho.matrix(j + k)
            for r in range(rho.t):
                for c in range(rho.t):
                    acc = F.zero
                    for i in range(rho.t):
                        acc = F.add(acc, F.mul(A[r][i], B[i][c]))
                    if acc != C[r][c]:
                        return False
    return True


def twisted_matrix(M, rho, use_h=True):
    """Block matrix of ``P(s·α′(x))`` over ℚ(ζ)[s^±] (``use_h=False`` sets ``s = 1``)."""
    if M.group != Z:
        raise PreconditionError("twisted coefficients are implemented for G = ℤ")
    F = rho.field
    t = rho.t
    cache = {}
    out = [[SPoly(F, {}) for _ in range(M.cols * t)] for _ in range(M.rows * t)]
    for i, row in enumerate(M.entries):
        for j, e in enumerate(row):
            for (k,), c in e.items():
                if k not in cache:
                    cache[k] = rho.matrix(k)
                A = cache[k]
                sk = k if use_h else 0
                for r in range(t):
                    for cc in range(t):
                        v = A[r][cc]
                        if any(v):
                            cell = out[i * t + r][j * t + cc]
                            out[i * t + r][j * t + cc] = cell + SPoly(F, {sk: F.scale(v, c)})
    return out


def twisted_rank(M, rho, use_h=True):
    if M.rows == 0 or M.cols == 0:
        return 0
    work = twisted_matrix(M, rho, use_h)
    F = rho.field
    rank, _ = bareiss(work, zero=SPoly(F, {}), one=SPoly(F, {0: F.one}),
                      exquo=lambda a, b: a.exquo(b))
    return rank


def homology_dim_twisted(C, rho, n, use_h=True):
    """dim over ℚ(ζ)(s) of H_n with coefficients twisted by α′ ⊗ φ′."""
    return (rho.dim * C.rank(n) - twisted_rank(C.boundary(n), rho, use_h)
            - twisted_rank(C.boundary(n + 1), rho, use_h))


# ----------------------------------------------------------------------------
# the dimension inequality


@dataclass(frozen=True)
class InequalityCheck:
    left: int
    right: int

    @property
    def holds(self):
        return self.left <= self.right


def _cycle_matrix(C, cycles, n):
    rows = [list(v) for v in cycles]
    for v in rows:
        if len(v) != C.rank(n):
            raise PreconditionError("cycle has the wrong length")
    M = GroupRingMatrix(rows, C.group, C.rank(n)) if rows else zero_matrix(0, C.rank(n), C.group)
    if rows and not (M @ C.boundary(n)).is_zero():
        raise PreconditionError("a supplied chain is not a cycle")
    return M


def check_thm23(C, rho, q, cycles, n):
    """Compare dim H_n(twisted)/M with dt·dim H_n(mod q)/M̄ for the span of ``cycles``."""
    if not _is_prime(q):
        raise PreconditionError(f"q={q} is not prime")
    X = _cycle_matrix(C, cycles, n)
    f = X.stack(C.boundary(n + 1))
    dn = C.boundary(n)
    r = C.rank(n)
    left = rho.dim * r - twisted_rank(dn, rho) - twisted_rank(f, rho)
    right = rho.dim * (r - rank_mod(augment(dn), q) - rank_mod(augment(f), q))
    return InequalityCheck(left, right)


def check_image_bound(f, rho, q):
    """``dt·dim im(ℤ/q ⊗ f) <= dim im(twisted f)`` for a single map."""
    return InequalityCheck(rho.dim * rank_mod(augment(f), q), twisted_rank(f, rho))


# ----------------------------------------------------------------------------
# random instances


@dataclass(frozen=True)
class Instance:
    seed: int
    complex: FreeChainComplex
    rho: InducedRep
    q: int
    n: int
    cycles: tuple


def _random_entry(rng, max_terms=3, max_exp=2, max_coeff=3):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        k = rng.randint(-max_exp, max_exp)
        c = rng.randint(-max_coeff, max_coeff)
        if c:
            terms[(k,)] = terms.get((k,), 0) + c
    return LaurentPoly(1, terms)


def _random_matrix(rng, rows, cols):
    return GroupRingMatrix([[_random_entry(rng) for _ in range(cols)] for _ in range(rows)], Z, cols)


def _elementary(size, i, j, e):
    rows = []
    for r in range(size):
        row = []
        for c in range(size):
            if r == c:
                row.append(LaurentPoly.one(1))
            elif (r, c) == (i, j):
                row.append(e)
            else:
                row.append(LaurentPoly.zero(1))
        rows.append(row)
    return GroupRingMatrix(rows, Z, size)


def random_instance(seed, max_size=4):
    """A seeded instance: G = ℤ, A = ℤ/p with p in {2, 3}, matrices at most 4x4.

    The complex ``C_2 -> C_1 -> C_0`` is built as ``∂_2 = [A' | 0] T`` and
    ``∂_1 = T⁻¹ [0; B']`` for a product ``T`` of elementary matrices, so
    ``∂_2 ∂_1 = 0`` by construction and the first rows of ``T`` are cycles.
    """
    rng = random.Random(seed)
    p = rng.choice((2, 3))
    q = rng.choice((2, 3))
    m = q ** rng.choice((1, 2))
    a = rng.randrange(m)
    r1 = rng.randint(1, max_size)
    m1 = rng.randint(0, r1)
    m2 = r1 - m1
    r2 = rng.randint(1, max_size)
    r0 = rng.randint(1, max_size)
    one = LaurentPoly.one(1)
    zero = LaurentPoly.zero(1)
    A1 = _random_matrix(rng, r2, m1)
    B1 = _random_matrix(rng, m2, r0)
    d2 = GroupRingMatrix([list(row) + [zero] * m2 for row in A1.entries], Z, r1)
    d1 = GroupRingMatrix([[zero] * r0 for _ in range(m1)] + [list(row) for row in B1.entries], Z, r0)
    T = GroupRingMatrix([[one if i == j else zero for j in range(r1)] for i in range(r1)], Z, r1)
    Tinv = T
    for _ in range(rng.randint(0, 2) if r1 > 1 else 0):
        i, j = rng.sample(range(r1), 2)
        e = LaurentPoly.monomial((rng.randint(-1, 1),), rng.choice((-2, -1, 1, 2)))
        T = _elementary(r1, i, j, e) @ T
        Tinv = Tinv @ _elementary(r1, i, j, -e)
    d2 = d2 @ T
    d1 = Tinv @ d1
    C = FreeChainComplex((r0, r1, r2), (d1, d2))
    n = rng.choice((0, 1, 1, 1))
    cycles = []
    if n == 1:
        basis = [T.entries[i] for i in range(m1)]
        for _ in range(rng.randint(0, 2) if basis else 0):
            coeffs = [_random_entry(rng, 2, 1, 2) for _ in basis]
            v = [sum((c * b[k] for c, b in zip(coeffs, basis)), zero) for k in range(r1)]
            cycles.append(tuple(v))
    else:
        for _ in range(rng.randint(0, 2)):
            cycles.append(tuple(_random_entry(rng) for _ in range(r0)))
    return Instance(seed, C, induce(p, m, a), q, n, tuple(cycles))


def run_instance(inst):
    return check_thm23(inst.complex, inst.rho, inst.q, inst.cycles, inst.n)


def random_instances(count, seed):
    """``count`` instances whose seeds are drawn from a master generator seeded by ``seed``."""
    master = random.Random(seed)
    return [random_instance(master.randrange(2 ** 32)) for _ in range(count)]
