"""Exact matrix kernels: integer Smith normal form, ranks and minors over Λ.

Integer matrices are numpy ``object`` arrays so that entries stay Python ints
and shapes like ``(0, n)`` survive.  Polynomial matrices are
:class:`PolyMatrix` values holding :class:`~linkgate.laurent.LaurentPoly`
entries.
"""

from itertools import combinations

import numpy as np

from .laurent import LaurentPoly


def int_matrix(rows, ncols=None):
    """Build an exact integer matrix; ``ncols`` fixes the shape of empty input."""
    rows = [list(r) for r in rows]
    if not rows:
        return np.zeros((0, ncols or 0), dtype=object)
    arr = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, r in enumerate(rows):
        if len(r) != arr.shape[1]:
            raise ValueError("ragged matrix")
        for j, x in enumerate(r):
            arr[i, j] = int(x)
    return arr


def identity(n):
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def format_matrix(A):
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in A) + "]"


def smith_normal_form(A):
    """Smith normal form with transforms.

    Returns ``(D, U, V)`` with ``U`` and ``V`` unimodular, ``U @ A @ V == D``,
    ``D`` diagonal with nonnegative entries ``d1 | d2 | ...``.
    """
    A = np.array(A, dtype=object)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    m, n = A.shape
    D = A.copy()
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        if i != j:
            D[[i, j]] = D[[j, i]]
            U[[i, j]] = U[[j, i]]

    def swap_cols(i, j):
        if i != j:
            D[:, [i, j]] = D[:, [j, i]]
            V[:, [i, j]] = V[:, [j, i]]

    for k in range(min(m, n)):
        while True:
            # pivot: smallest nonzero absolute value in the trailing block
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    x = D[i, j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return _finish(D, U, V)
            _, pi, pj = best
            swap_rows(k, pi)
            swap_cols(k, pj)
            p = D[k, k]
            clean = True
            for i in range(k + 1, m):
                q = D[i, k] // p
                if q:
                    D[i] -= q * D[k]
                    U[i] -= q * U[k]
                if D[i, k]:
                    clean = False
            for j in range(k + 1, n):
                q = D[k, j] // p
                if q:
                    D[:, j] -= q * D[:, k]
                    V[:, j] -= q * V[:, k]
                if D[k, j]:
                    clean = False
            if not clean:
                continue
            # divisibility of the remaining block by the pivot
            bad = None
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if D[i, j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            D[k] += D[bad]
            U[k] += U[bad]
    return _finish(D, U, V)


def _finish(D, U, V):
    for i in range(min(D.shape)):
        if D[i, i] < 0:
            D[i] = -D[i]
            U[i] = -U[i]
    return D, U, V


def invariant_factors(A):
    """Diagonal of the Smith form (length ``min(rows, cols)``)."""
    D, _, _ = smith_normal_form(A)
    return [int(D[i, i]) for i in range(min(D.shape))]


def unimodular_inverse(U):
    """Exact inverse of a square integer matrix with determinant ±1."""
    n = U.shape[0]
    M = np.concatenate([np.array(U, dtype=object), identity(n)], axis=1)
    for c in range(n):
        # integer row reduction (Euclid on column c)
        while True:
            rows = [r for r in range(c, n) if M[r, c]]
            if not rows:
                raise ValueError("matrix is singular")
            r = min(rows, key=lambda r: abs(M[r, c]))
            if r != c:
                M[[c, r]] = M[[r, c]]
            done = True
            for r in range(c + 1, n):
                q = M[r, c] // M[c, c]
                M[r] -= q * M[c]
                if M[r, c]:
                    done = False
            if done:
                break
        if abs(M[c, c]) != 1:
            raise ValueError("matrix is not unimodular")
        if M[c, c] < 0:
            M[c] = -M[c]
    for c in range(n - 1, -1, -1):
        for r in range(c):
            q = M[r, c]
            if q:
                M[r] -= q * M[c]
    return M[:, n:]


def int_det(A):
    """Integer determinant by fraction-free elimination."""
    work = [[int(x) for x in row] for row in A]
    if not work:
        return 1
    _, det = bareiss(work, zero=0, one=1, exquo=lambda a, b: a // b)
    return det


class PolyMatrix:
    """Dense matrix of Laurent polynomials in ``nvars`` variables."""

    __slots__ = ("rows", "cols", "nvars", "entries")

    def __init__(self, entries, nvars, cols=None):
        entries = tuple(tuple(row) for row in entries)
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else (cols or 0)
        self.nvars = nvars
        for row in entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
            for x in row:
                if x.nvars != nvars:
                    raise ValueError("entry has the wrong number of variables")
        self.entries = entries

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and (self.rows, self.cols, self.nvars) == (other.rows, other.cols, other.nvars)
            and self.entries == other.entries
        )

    def submatrix(self, rows, cols):
        return PolyMatrix([[self.entries[i][j] for j in cols] for i in rows], self.nvars, len(cols))

    def map(self, f):
        return PolyMatrix([[f(x) for x in row] for row in self.entries], self.nvars, self.cols)

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.entries) + "]"

    __repr__ = __str__


def bareiss(M, *, zero, one, exquo):
    """Fraction-free elimination over an integral domain, in place.

    ``M`` is a list of row lists whose entries support ``*`` and ``-``;
    ``exquo(a, b)`` must return the exact quotient.  Returns ``(rank, det)``;
    ``det`` is the determinant for square input (zero when singular) and
    ``None`` otherwise.
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    prev = one
    sign = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            M[r], M[piv] = M[piv], M[r]
            sign = -sign
        p = M[r][c]
        pivot_row = M[r]
        for i in range(r + 1, rows):
            row = M[i]
            a = row[c]
            for j in range(c + 1, cols):
                row[j] = exquo(p * row[j] - a * pivot_row[j], prev)
            row[c] = zero
        prev = p
        r += 1
    det = None
    if rows == cols:
        det = prev * sign if r == rows else zero
    return r, det


def _poly_exquo(a, b):
    return a.exquo(b)


def rank_over_K(M):
    """Rank over the fraction field of Λ, by fraction-free elimination."""
    work = [list(row) for row in M.entries]
    rank, _ = bareiss(work, zero=LaurentPoly.zero(M.nvars), one=LaurentPoly.one(M.nvars),
                      exquo=_poly_exquo)
    return rank


def poly_det(M):
    """Determinant of a square :class:`PolyMatrix`."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return LaurentPoly.one(M.nvars)
    e = M.entries
    if n == 1:
        return e[0][0]
    if n == 2:
        return e[0][0] * e[1][1] - e[0][1] * e[1][0]
    work = [list(row) for row in e]
    _, det = bareiss(work, zero=LaurentPoly.zero(M.nvars), one=LaurentPoly.one(M.nvars),
                     exquo=_poly_exquo)
    return det


def minors(M, k):
    """Yield every ``k x k`` minor; row index sets outer, column sets inner, both lexicographic."""
    if k < 1 or k > min(M.rows, M.cols):
        raise ValueError(f"minor size {k} out of range for a {M.rows}x{M.cols} matrix")
    for rows in combinations(range(M.rows), k):
        for cols in combinations(range(M.cols), k):
            yield poly_det(M.submatrix(rows, cols))
