import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkgate.errors import ParseError
from linkgate.link_codec import (
    BUILTINS,
    BraidWord,
    builtin,
    from_braid,
    linking_matrix,
    mirror,
    parse_braid,
    parse_link,
    parse_pd,
    print_pd,
    writhe,
)


@pytest.mark.parametrize("name", sorted(BUILTINS) + ["unlink4"])
def test_print_parse_roundtrip(name):
    D = builtin(name)
    assert parse_pd(print_pd(D)) == D


def test_hopf_linking_matrix():
    assert linking_matrix(builtin("hopf")).tolist() == [[0, 1], [1, 0]]
    assert linking_matrix(builtin("unlink2")).tolist() == [[0, 0], [0, 0]]
    assert linking_matrix(parse_link("BR 2: -1 -1")).tolist() == [[0, -1], [-1, 0]]
    assert linking_matrix(builtin("solomon")).tolist() == [[0, 2], [2, 0]]


def test_component_counts():
    expect = {"hopf": 2, "unlink3": 3, "trefoil": 1, "trefoil_braid": 1, "solomon": 2,
              "figure8": 1, "whitehead": 2, "hopf_trefoil": 2, "hopf_r2": 2}
    for name, mu in expect.items():
        assert builtin(name).num_components == mu, name


def test_braid_closure_components_follow_permutation():
    assert from_braid(parse_braid("BR 3: 1 2")).num_components == 1
    assert from_braid(parse_braid("BR 3: 1 1")).num_components == 3
    assert from_braid(parse_braid("BR 3: 1")).num_components == 2
    assert from_braid(parse_braid("BR 4:")).num_components == 4


def test_trefoil_writhe():
    assert writhe(builtin("trefoil_braid"), 0) == 3
    assert writhe(mirror(builtin("trefoil_braid")), 0) == -3


@pytest.mark.parametrize(
    "text",
    [
        "X[1,2,3]",
        "X[1,2,3,4] X[1,2,3,4]",
        "X[1,1,2]",
        "Y[1,2,3,4]",
        "X[1,2,a,4]",
    ],
)
def test_bad_pd_raises(text):
    with pytest.raises(ParseError):
        parse_pd(text)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse_pd("X[1,3,2,4] X[3,1,4]")
    assert info.value.position > 0


@pytest.mark.parametrize("text", ["BR 2: 2", "BR 2: 0", "BR x: 1", "1 1 1"])
def test_bad_braid_raises(text):
    with pytest.raises(ParseError):
        parse_braid(text)


def test_braidword_validates():
    with pytest.raises(ValueError):
        BraidWord(2, (3,))


braids = st.integers(2, 4).flatmap(
    lambda n: st.lists(
        st.integers(1, n - 1).flatmap(lambda i: st.sampled_from([i, -i])), max_size=7
    ).map(lambda w: BraidWord(n, tuple(w)))
)


@settings(max_examples=60, deadline=None)
@given(braids)
def test_linking_matrix_symmetric_zero_diagonal(b):
    L = linking_matrix(from_braid(b))
    assert (L == L.T).all()
    assert not np.diag(L).any()


@settings(max_examples=60, deadline=None)
@given(braids)
def test_mirror_negates_linking(b):
    D = from_braid(b)
    assert (linking_matrix(mirror(D)) == -linking_matrix(D)).all()
    assert parse_pd(print_pd(D)) == D
