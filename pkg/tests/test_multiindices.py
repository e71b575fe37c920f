import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2cohom.multiindices import (
    add_unit,
    enumerate_multiindices,
    enumerate_up_to,
    format_multiindex,
    graded_lex_key,
    index_weight,
    multiset_coeff,
    parse_multiindex,
    sub_unit,
)


def test_multiset_coeff_base_cases():
    assert multiset_coeff(1, 5) == 1
    # enumerate by hand: (0,3),(1,2),(2,1),(3,0)
    assert multiset_coeff(2, 3) == 4
    assert multiset_coeff(0, 0) == 1
    assert multiset_coeff(0, 3) == 0
    assert multiset_coeff(3, -1) == 0
    # one choice of nothing for every slot count
    for m in range(6):
        assert multiset_coeff(m, 0) == 1


def test_multiset_coeff_matches_enumeration():
    for n in range(0, 4):
        for k in range(0, 6):
            elems = enumerate_multiindices(n, k)
            assert len(elems) == multiset_coeff(n, k)
            assert len(set(elems)) == len(elems)
            assert all(index_weight(a) == k for a in elems)


@given(st.integers(min_value=1, max_value=8), st.integers(min_value=1, max_value=8))
@settings(max_examples=60, deadline=None)
def test_pascal_identity(m, k):
    assert multiset_coeff(m, k) == multiset_coeff(m - 1, k) + multiset_coeff(m, k - 1)


@given(st.integers(min_value=1, max_value=8), st.integers(min_value=1, max_value=8))
@settings(max_examples=60, deadline=None)
def test_gamma_difference_identity(n, k):
    assert multiset_coeff(n, k) - multiset_coeff(n, k - 1) == multiset_coeff(n - 1, k)


def test_enumeration_order_is_graded_lex():
    assert enumerate_multiindices(2, 1) == [(0, 1), (1, 0)]
    assert enumerate_multiindices(3, 0) == [(0, 0, 0)]
    elems = enumerate_multiindices(3, 2)
    assert len(elems) == 6
    assert elems == sorted(elems)
    up = enumerate_up_to(2, 3)
    assert up == sorted(up, key=graded_lex_key)


def test_unit_vectors():
    assert add_unit((0, 1), 0) == (1, 1)
    assert add_unit((0, 1), 1) == (0, 2)
    assert sub_unit((2, 1), 0) == (1, 1)
    with pytest.raises(ValueError):
        sub_unit((0, 1), 0)


def test_format_parse_roundtrip():
    for alpha in [(0,), (1, 2, 0), (3, 3)]:
        assert parse_multiindex(format_multiindex(alpha)) == alpha
    assert format_multiindex((1, 0, 2)) == "[1,0,2]"
    with pytest.raises(ValueError):
        parse_multiindex("1,0")
