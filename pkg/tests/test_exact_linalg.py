import random
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from linkgate.exact_linalg import (
    PolyMatrix,
    int_det,
    int_matrix,
    invariant_factors,
    minors,
    poly_det,
    rank_over_K,
    smith_normal_form,
    unimodular_inverse,
)
from linkgate.laurent import LaurentPoly, evaluate, parse_poly
from oracles import invariant_factors_by_minors, load
from strategies import int_matrices, laurent

ORACLE = load()


def _poly_matrix(rows, nvars):
    return PolyMatrix([[parse_poly(x, nvars) for x in row] for row in rows], nvars)


def test_snf_frozen_oracle():
    assert invariant_factors(int_matrix([[2, 0], [0, 3]])) == ORACLE["snf"]["diag23"]
    mixed = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    assert invariant_factors(int_matrix(mixed)) == ORACLE["snf"]["mixed"]


def test_snf_examples():
    assert invariant_factors(int_matrix([[2, 4], [6, 8]])) == [2, 4]
    assert invariant_factors(int_matrix([[0, 0], [0, 0]])) == [0, 0]
    D, U, V = smith_normal_form(int_matrix([], ncols=3))
    assert D.shape == (0, 3)


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_snf_matches_minor_gcds(rows):
    A = int_matrix(rows)
    D, U, V = smith_normal_form(A)
    assert (U.dot(A).dot(V) == D).all()
    assert abs(int_det(U)) == 1 and abs(int_det(V)) == 1
    diag = [int(D[i, i]) for i in range(min(D.shape))]
    assert diag == invariant_factors_by_minors(rows)
    off = D.copy()
    for i in range(min(D.shape)):
        off[i, i] = 0
    assert not off.any()


@settings(max_examples=30, deadline=None)
@given(int_matrices(4, 4))
def test_unimodular_inverse(rows):
    _, U, _ = smith_normal_form(int_matrix(rows))
    assert (U.dot(unimodular_inverse(U)) == np.identity(U.shape[0], dtype=object)).all()


def test_int_det():
    assert int_det([[1, 2], [3, 4]]) == -2
    assert int_det([[0, 1], [1, 0]]) == -1
    assert int_det([]) == 1


def test_minors_examples():
    M = _poly_matrix([["t", "1"], ["1", "t"]], 1)
    assert list(minors(M, 2)) == [parse_poly("t^2 - 1")]
    N = _poly_matrix([["1", "2", "3"], ["4", "5", "6"]], 1)
    assert len(list(minors(N, 2))) == 3
    assert list(minors(N, 1)) == [LaurentPoly.const(1, c) for c in range(1, 7)]
    with pytest.raises(ValueError):
        list(minors(N, 3))


def test_rank_examples():
    assert rank_over_K(_poly_matrix([["t - 1", "1 - t"], ["1", "-1"]], 1)) == 1
    assert rank_over_K(_poly_matrix([["t1", "t2"], ["t2", "t1"]], 2)) == 2
    assert rank_over_K(PolyMatrix([], 1, 3)) == 0


def _leibniz(M):
    n = M.rows
    total = LaurentPoly.zero(M.nvars)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = LaurentPoly.const(M.nvars, -1 if inv % 2 else 1)
        for i in range(n):
            term = term * M[i, perm[i]]
        total = total + term
    return total


square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(laurent(2, max_terms=2, max_exp=1, max_coeff=3), min_size=n, max_size=n),
                       min_size=n, max_size=n)
)


@settings(max_examples=40, deadline=None)
@given(square)
def test_det_matches_leibniz(rows):
    M = PolyMatrix(rows, 2)
    d = poly_det(M)
    assert d == _leibniz(M)
    assert list(minors(M, M.rows)) == [d]


shapes = st.tuples(st.integers(1, 6), st.integers(1, 6)).flatmap(
    lambda rc: st.lists(
        st.lists(laurent(2, max_terms=2, max_exp=1, max_coeff=2), min_size=rc[1], max_size=rc[1]),
        min_size=rc[0], max_size=rc[0],
    )
)


@settings(max_examples=30, deadline=None)
@given(shapes)
def test_rank_matches_random_evaluations(rows):
    """Generic rank equals the max over three random rational points (it is never smaller)."""
    rng = random.Random(len(rows) * 7 + len(rows[0]))
    M = PolyMatrix(rows, 2)
    r = rank_over_K(M)
    ranks = []
    for _ in range(3):
        point = [Fraction(rng.randint(2, 10**6), rng.randint(1, 10**6)) for _ in range(2)]
        ranks.append(sympy.Matrix([[sympy.Rational(evaluate(x, point)) for x in row] for row in rows]).rank())
    assert all(k <= r for k in ranks)
    assert max(ranks) == r


def test_rank_degenerate_with_dependent_rows():
    rng = random.Random(5)
    base = [[LaurentPoly(2, {(1, 0): rng.randint(-3, 3), (0, 1): rng.randint(-3, 3), (0, 0): 1})
             for _ in range(4)] for _ in range(2)]
    combo = [base[0][j] * parse_poly("t1 - 2", 2) - base[1][j] * parse_poly("t2", 2) for j in range(4)]
    assert rank_over_K(PolyMatrix(base + [combo], 2)) == 2
