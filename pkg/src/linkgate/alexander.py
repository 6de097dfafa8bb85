"""Fox calculus and the Alexander invariants of a link group.

The Fox matrix of a presentation with ``n`` generators presents the relative
module H1(X, *; Λ).  Its rank ``r`` over the fraction field gives the rank of
H1(X; Λ) as ``(n - 1) - r``, and the gcd of its ``r x r`` minors is the
order of the torsion submodule (torsion of H1(X) and H1(X, *) coincide since
the augmentation ideal is torsion-free).
"""

from dataclasses import dataclass

from .errors import UNLIMITED
from .exact_linalg import PolyMatrix, minors, rank_over_K
from .laurent import LaurentPoly, associated, canonical, gcd, gcd_many, involve


def _letter_value(meridian_map, g, nvars):
    return LaurentPoly.monomial(tuple(meridian_map[g]), 1) if nvars else LaurentPoly.one(0)


def fox_derivative(word, x, meridian_map, nvars=None):
    """Abelianized Fox derivative of ``word`` with respect to generator ``x``."""
    if nvars is None:
        nvars = len(next(iter(meridian_map.values())))
    total = LaurentPoly.zero(nvars)
    prefix = LaurentPoly.one(nvars)
    for g, e in word:
        t = _letter_value(meridian_map, g, nvars)
        if e == 1:
            if g == x:
                total = total + prefix
            prefix = prefix * t
        else:
            prefix = prefix * t ** -1
            if g == x:
                total = total - prefix
    return total


@dataclass(frozen=True)
class FoxMatrix:
    """Fox matrix (relators x generators) with the generator-to-ℤ^μ map."""

    matrix: PolyMatrix
    generators: tuple
    meridian_map: dict

    @property
    def nvars(self):
        return self.matrix.nvars

    def identity_holds(self):
        """Check Σ_j J[i, j] (t_{c(j)} - 1) = 0 on every row."""
        aug = [_letter_value(self.meridian_map, g, self.nvars) - 1 for g in self.generators]
        for row in self.matrix.entries:
            acc = LaurentPoly.zero(self.nvars)
            for x, a in zip(row, aug):
                acc = acc + x * a
            if acc:
                return False
        return True


def fox_matrix(P, meridian_map):
    nvars = len(next(iter(meridian_map.values()))) if meridian_map else 0
    rows = [[fox_derivative(r, x, meridian_map, nvars) for x in P.generators] for r in P.relators]
    J = FoxMatrix(PolyMatrix(rows, nvars, len(P.generators)), tuple(P.generators), dict(meridian_map))
    if not J.identity_holds():
        raise AssertionError("fundamental Fox identity failed; meridian map is inconsistent")
    return J


def matrix_rank(J):
    return rank_over_K(J.matrix)


def h1_rank(J):
    """Rank of H1(X; Λ) over Λ for a connected presentation complex."""
    return (J.matrix.cols - 1) - matrix_rank(J)


def _minor_gcd(M, size, budget=UNLIMITED):
    if size == 0:
        return LaurentPoly.one(M.nvars)
    if size > M.rows or size > M.cols:
        return LaurentPoly.zero(M.nvars)

    def stream():
        for m in minors(M, size):
            budget.check()
            yield m

    return gcd_many(stream(), M.nvars)


def elementary_gcd(J, k, budget=UNLIMITED):
    """Δ_k of coker J: gcd of the (n-k) x (n-k) minors.

    Size 0 gives 1; a size larger than the row count gives 0.
    """
    n = J.matrix.cols
    if not 0 <= k <= n:
        raise ValueError(f"k={k} out of range 0..{n}")
    return _minor_gcd(J.matrix, n - k, budget)


def torsion_alexander(J, budget=UNLIMITED):
    """Order of the torsion submodule of H1(X; Λ), unit-normalized."""
    r = matrix_rank(J)
    return canonical(_minor_gcd(J.matrix, r, budget))


def symmetry_holds(delta):
    return associated(delta, involve(delta))


def alexander_data(D, budget=UNLIMITED):
    """Convenience: ``(J, rank, torsion polynomial)`` from a diagram."""
    from .presentation import wirtinger

    P, _, mmap = wirtinger(D)
    if not P.generators:
        raise ValueError("empty diagram")
    J = fox_matrix(P, mmap)
    return J, h1_rank(J), torsion_alexander(J, budget)


__all__ = [
    "FoxMatrix",
    "alexander_data",
    "elementary_gcd",
    "fox_derivative",
    "fox_matrix",
    "gcd",
    "h1_rank",
    "symmetry_holds",
    "torsion_alexander",
]
