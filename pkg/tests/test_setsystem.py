import pytest
from hypothesis import given, strategies as st

from oracles import vc_dimension as brute_vc
from nowheredense.logic.setsystem import (SetSystem, from_mask, is_shattered, sauer_shelah_bound,
                                          shatter_count, to_mask, vc_dimension)


@st.composite
def set_systems(draw, max_ground=8, max_sets=20):
    n = draw(st.integers(1, max_ground))
    sets = draw(st.lists(st.integers(0, 2 ** n - 1), max_size=max_sets))
    return SetSystem(n, tuple(sets))


@given(set_systems())
def test_vc_matches_brute_force(sys):
    assert vc_dimension(sys) == brute_vc(sys.ground, sys.sets)


@given(set_systems())
def test_sauer_shelah(sys):
    d = vc_dimension(sys)
    assert shatter_count(sys, range(sys.ground)) <= sauer_shelah_bound(sys.ground, d)


@given(st.sets(st.integers(0, 30)))
def test_mask_round_trip(xs):
    assert from_mask(to_mask(xs)) == sorted(xs)


def test_power_set_is_shattered():
    sys = SetSystem(3, tuple(range(8)))
    assert is_shattered(sys, [0, 1, 2])
    assert vc_dimension(sys) == 3


def test_intervals_have_dimension_two():
    sys = SetSystem.of(6, [range(i, j) for i in range(6) for j in range(i, 7)])
    assert vc_dimension(sys) == 2


def test_empty_system():
    assert vc_dimension(SetSystem(4, ())) == 0
    assert sauer_shelah_bound(5, 0) == 1


def test_dedup():
    assert SetSystem(2, (1, 1, 2)).dedup().sets == (1, 2)


def test_out_of_range_elements():
    with pytest.raises(ValueError):
        SetSystem(2, (8,))
