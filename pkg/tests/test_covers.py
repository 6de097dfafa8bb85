from itertools import product

import pytest

from linkgate.covers import (
    admissible_homs,
    cover_h1,
    covering,
    format_abelian,
    link_covers,
    reidemeister_schreier,
)
from linkgate.errors import PreconditionError
from linkgate.link_codec import builtin
from linkgate.presentation import abelianize, link_ML, parse_word, presentation

TARGETS = [(2,), (3,), (4,), (5,), (6,), (7,), (8,), (2, 2), (2, 4), (2, 2, 2)]


def free_group(n):
    return presentation(tuple(f"g{k}" for k in range(n)), [])


def torus(n):
    gens = tuple("abc"[:n])
    rels = [parse_word(f"{x} {y} {x}^-1 {y}^-1") for i, x in enumerate(gens) for y in gens[i + 1:]]
    return presentation(gens, rels)


def _surjections(P, moduli):
    elems = list(product(*(range(m) for m in moduli)))
    out = []
    for images in product(elems, repeat=len(P.generators)):
        try:
            out.append(covering(P, moduli, dict(zip(P.generators, images))))
        except PreconditionError:
            continue
    return out


def _euler(P):
    return 1 - len(P.generators) + len(P.relators)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("moduli", TARGETS)
def test_nielsen_schreier(n, moduli):
    F = free_group(n)
    covs = _surjections(F, moduli)
    if len(moduli) > n:
        assert not covs
    for c in covs[:6]:
        S = reidemeister_schreier(c)
        assert len(S.generators) == c.index * (n - 1) + 1
        assert not S.relators
        assert cover_h1(c) == (0,) * (c.index * (n - 1) + 1)


def test_examples():
    Z = free_group(1)
    c = covering(Z, (2,), {"g0": (1,)})
    assert str(reidemeister_schreier(c)) == "⟨g0_1 | ⟩"
    assert cover_h1(c) == (0,)
    F2 = free_group(2)
    assert cover_h1(covering(F2, (2,), {"g0": (1,), "g1": (0,)})) == (0, 0, 0)


@pytest.mark.parametrize("moduli", [(2, 2), (4,), (3,), (2, 2, 2)])
def test_torus_covers_are_tori(moduli):
    T3 = torus(3)
    for c in _surjections(T3, moduli)[:8]:
        S = reidemeister_schreier(c)
        assert len(S.generators) == c.index * 2 + 1
        assert len(S.relators) == c.index * 3
        assert _euler(S) == c.index * _euler(T3)
        assert cover_h1(c) == (0, 0, 0)


def test_euler_characteristic_scales_on_link_groups():
    for name in ["hopf", "hopf_trefoil"]:
        Q, per = link_ML(builtin(name))
        for c in link_covers(builtin(name), 2, 1, 1):
            assert _euler(reidemeister_schreier(c)) == c.index * _euler(Q)


def test_covering_validation():
    T2 = torus(2)
    with pytest.raises(PreconditionError):
        covering(T2, (2,), {"a": (0,), "b": (0,)})
    bad = presentation(("x",), [parse_word("x x x")])
    with pytest.raises(PreconditionError):
        covering(bad, (2,), {"x": (1,)})
    with pytest.raises(ValueError):
        covering(T2, (2,), {"a": (1,)})


@pytest.mark.parametrize("p,i,j", [(2, 1, 1), (3, 1, 1), (2, 2, 1), (3, 1, 0), (2, 0, 0)])
def test_admissible_count(p, i, j):
    homs = link_covers(builtin("hopf"), p, i, j)
    assert len(homs) == p ** (i + j)
    assert len({tuple(sorted(c.hom.items())) for c in homs}) == len(homs)
    for c in homs:
        assert c.moduli == (p ** i, p ** j)


@pytest.mark.parametrize("p", [2, 3])
def test_hopf_ML_covers_are_z3(p):
    for c in link_covers(builtin("hopf"), p, 1, 1):
        assert cover_h1(c) == (0, 0, 0)
        assert format_abelian(cover_h1(c)) == "Z^3"


def test_admissible_sends_meridians_to_basis():
    Q, per = link_ML(builtin("hopf_trefoil"))
    m1, m2 = per.meridians[0][0][0], per.meridians[1][0][0]
    for c in admissible_homs(Q, (m1, m2), 2, 1, 1):
        assert c.hom[m1] == (1, 0) and c.hom[m2] == (0, 1)


def test_admissible_preconditions():
    with pytest.raises(PreconditionError):
        admissible_homs(torus(2), ("a", "b"), 2, 1, 1)
    Q, per = link_ML(builtin("hopf"))
    m = per.meridians[0][0][0]
    with pytest.raises(PreconditionError):
        admissible_homs(Q, (m, m), 2, 1, 1)
    with pytest.raises(PreconditionError):
        link_covers(builtin("unlink2"), 2, 1, 1)


def test_format_abelian():
    assert format_abelian((0, 0, 0)) == "Z^3"
    assert format_abelian((3, 0)) == "Z/3 + Z"
    assert format_abelian(()) == "0"
    assert abelianize(torus(3))[0] == (0, 0, 0)
