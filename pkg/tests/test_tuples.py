import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from conftest import graphs
from oracles import all_pairs
from nowheredense.corpus import grid, matching, star
from nowheredense.graph import Graph, InvalidInput, PreconditionError
from nowheredense.tuples import (MutuallySeparated, TupleSet, coordinate_separate, format_tuples,
                                 greedy_mutual_separation, mutually_separated_problems,
                                 parse_tuples, step1, tuple_outcome_from_json,
                                 tuple_outcome_to_json, tuple_uqw_solve, verify_tuple_outcome)
from nowheredense.uqw import dumps_certificate


def mutually_separated(g, tuples, s, r):
    d = all_pairs(g, s)
    for i, x in enumerate(tuples):
        for y in tuples[i + 1:]:
            if any(d[u][v] <= r for u in x for v in y if u not in s and v not in s):
                return False
    return True


def test_tuple_file_round_trip():
    ts = TupleSet.of([(0, 1), (2, 3), (4, 5)])
    assert parse_tuples(format_tuples(ts)) == ts


@pytest.mark.parametrize("text", ["", "2\n0 1\n", "2 2\n0 1\n", "2 1\n0 1 2\n", "2 2\n0 1\n0 1\n"])
def test_tuple_file_errors(text):
    with pytest.raises(InvalidInput):
        parse_tuples(text)


def test_tight_pair_example_keeps_one_of_three():
    # b = (x, y), a = (p, q) with p ~ y, a' = (p', q') with q' ~ x
    x, y, p, q, p2, q2 = range(6)
    g = Graph.from_edges(6, [(p, y), (q2, x)])
    b = TupleSet.of([(x, y), (p, q), (p2, q2)])
    c = greedy_mutual_separation(g, b, (), 1)
    assert c.tuples == ((x, y),)
    assert len(c) == math.ceil(3 / (2 ** 2 + 1))


def test_precondition_is_checked():
    g = Graph.from_edges(4, [(0, 2)])
    with pytest.raises(PreconditionError):
        greedy_mutual_separation(g, TupleSet.of([(0, 1), (2, 3)]), (), 1)


@st.composite
def coordinate_separated_family(draw):
    g = draw(graphs(min_n=2, max_n=9))
    d = draw(st.integers(1, 3))
    r = draw(st.integers(1, 2))
    s = sorted(draw(st.sets(st.integers(0, g.n - 1), max_size=2)))
    raw = draw(st.lists(st.tuples(*[st.integers(0, g.n - 1)] * d), max_size=12, unique=True))
    dist = all_pairs(g, s)
    kept = []
    for tup in raw:
        ok = all(tup[i] in s or other[i] in s or dist[tup[i]][other[i]] > 2 * r
                 for other in kept for i in range(d))
        if ok:
            kept.append(tup)
    return g, TupleSet(d, tuple(kept)), s, r


@settings(max_examples=300)
@given(coordinate_separated_family())
def test_greedy_output_is_mutually_separated_and_large(fam):
    g, b, s, r = fam
    c = greedy_mutual_separation(g, b, s, r)
    assert set(c.tuples) <= set(b.tuples)
    assert mutually_separated(g, c.tuples, s, r)
    assert mutually_separated_problems(g, c, s, r) == []
    assert len(c) >= math.ceil(len(b) / (b.d ** 2 + 1))
    # each kept tuple can only block others through off-diagonal coordinate pairs
    assert len(c) >= math.ceil(len(b) / (b.d * (b.d - 1) + 1))


@settings(max_examples=100)
@given(graphs(min_n=2, max_n=9), st.integers(1, 3), st.integers(1, 2), st.data())
def test_solver_outcomes_certify(g, d, r, data):
    tuples = data.draw(st.lists(st.tuples(*[st.integers(0, g.n - 1)] * d), min_size=1,
                                max_size=10, unique=True))
    ts = TupleSet(d, tuple(tuples))
    out = tuple_uqw_solve(g, ts, r, 3)
    assert verify_tuple_outcome(g, out) == []
    if isinstance(out, MutuallySeparated):
        assert len(out.s) <= d * 2
        assert mutually_separated(g, out.c.tuples, out.s, r)


def test_coordinate_step_keeps_tuples_already_in_separator():
    g = star(4)
    ts = TupleSet.of([(0, 1), (0, 2), (3, 4)])
    b, extra = coordinate_separate(g, ts, 1, 1, 1, s=[0])
    assert (0, 1) in b.tuples and (0, 2) in b.tuples
    assert extra == ()


def test_pigeonhole_branch_on_shared_coordinate():
    g = star(5)
    ts = TupleSet.of([(0, i) for i in range(1, 6)])
    b, s = step1(g, ts, 1, 5)
    assert len(b) == 5 and 0 in s


def test_matching_pairs_are_mutually_separated():
    g = matching(5)
    ts = TupleSet.of([(2 * i, 2 * i + 1) for i in range(5)])
    out = tuple_uqw_solve(g, ts, 1, 3)
    assert isinstance(out, MutuallySeparated)
    assert len(out.c) == 5 and out.s == ()


def test_certificate_round_trip():
    g = grid(6, 6)
    ts = TupleSet.of([(i, 35 - i) for i in range(0, 18, 3)])
    out = tuple_uqw_solve(g, ts, 1, 3)
    text = dumps_certificate(tuple_outcome_to_json(out))
    back = tuple_outcome_from_json(json.loads(text))
    assert back == out
    assert dumps_certificate(tuple_outcome_to_json(back)) == text


def test_tampered_tuple_certificate_fails():
    g = grid(4, 1)
    bad = MutuallySeparated((), TupleSet.of([(0,), (1,)]), 1)
    assert verify_tuple_outcome(g, bad)


def test_rejects_bad_arguments():
    with pytest.raises(InvalidInput):
        tuple_uqw_solve(star(2), TupleSet.of([(0,)]), 0, 3)
    with pytest.raises(InvalidInput):
        TupleSet.of([(0, 1), (2,)])
    with pytest.raises(InvalidInput):
        coordinate_separate(star(2), TupleSet.of([(0, 1)]), 3, 1, 1)
