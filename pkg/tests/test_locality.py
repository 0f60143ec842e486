import pytest
from hypothesis import given, settings, strategies as st

from conftest import graphs
from oracles import all_pairs
from nowheredense.corpus import path, star
from nowheredense.graph import Graph, PreconditionError, is_r_separated
from nowheredense.locality import (build_GS, determination_check, local_neighborhood,
                                   neighborhoods_split, signature)
from nowheredense.logic.formula import dist_formula, parse_formula


@st.composite
def separated_instances(draw, max_side=6, max_s=2):
    """Two random sides joined only through the separator vertices."""
    left = draw(graphs(min_n=1, max_n=max_side))
    right = draw(graphs(min_n=1, max_n=max_side))
    k = draw(st.integers(0, max_s))
    n = left.n + right.n + k
    edges = list(left.edges()) + [(u + left.n, v + left.n) for u, v in right.edges()]
    s = list(range(left.n + right.n, n))
    for sv in s:
        for v in draw(st.sets(st.integers(0, left.n + right.n - 1), max_size=4)):
            edges.append((v, sv))
    g = Graph.from_edges(n, edges)
    a = sorted(draw(st.sets(st.integers(0, left.n - 1), min_size=1)))
    b = sorted(draw(st.sets(st.integers(left.n, left.n + right.n - 1), min_size=1)))
    return g, a, b, s


FORMULAS = [dist_formula(1), parse_formula("E(x,y)"), parse_formula("exists z. E(x,z) & E(z,y)"),
            parse_formula("x = y | exists z. (E(x,z) & !E(z,y))")]


def test_colored_quotient():
    g = star(3)
    gs = build_GS(g, [0])
    assert gs.vertices == (1, 2, 3)
    assert gs.base.m == 0
    assert all(gs.base.colors[i] == frozenset({0}) for i in range(3))


def test_color_order_follows_s_order():
    g = path(5)
    gs = build_GS(g, [1, 3], s_order=[3, 1])
    assert gs.base.colors[gs.local(0)] == frozenset({1})
    assert gs.base.colors[gs.local(4)] == frozenset({0})
    assert gs.base.colors[gs.local(2)] == frozenset({0, 1})
    with pytest.raises(ValueError):
        build_GS(g, [1, 3], s_order=[1])


def test_local_neighborhood_marks_tuple():
    g = path(7)
    ln = local_neighborhood(g, [3], (1, 3), 1)
    assert ln.vertices == (0, 1, 2)
    assert ln.marked == (1, None)
    assert ln.signature == signature((1, 3), [3])


@settings(max_examples=150)
@given(graphs(max_n=9), st.integers(0, 3), st.data())
def test_separation_splits_neighbourhoods(g, r, data):
    s = data.draw(st.sets(st.integers(0, g.n - 1), max_size=3))
    x = data.draw(st.sets(st.integers(0, g.n - 1)))
    y = data.draw(st.sets(st.integers(0, g.n - 1)))
    if is_r_separated(g, x, y, s, 2 * r + 1):
        assert neighborhoods_split(g, s, x, y, r)
    d = all_pairs(g, s)
    want = all(d[u][v] > 2 * r + 1 for u in x - s for v in y - s)
    assert neighborhoods_split(g, s, x, y, r) == want


@settings(max_examples=40)
@given(separated_instances(), st.sampled_from(FORMULAS))
def test_determination_on_separated_instances(inst, f):
    g, a, b, s = inst
    rep = determination_check(g, a, b, s, f)
    assert rep.r == 7 ** f.quantifier_rank
    assert rep.min_p is not None and rep.min_p <= 10
    assert rep.type_count_over_B <= rep.ef_class_count
    assert rep.refinement_ok
    assert rep.disjoint_union


def test_not_separated_is_rejected():
    with pytest.raises(PreconditionError):
        determination_check(path(4), [0], [1], [], dist_formula(1))


def test_report_is_deterministic():
    g = path(9)
    f = parse_formula("exists z. E(x,z) & E(z,y)")
    with pytest.raises(PreconditionError):
        determination_check(g, [0, 1, 2], [6, 7, 8], [], f)
    one = determination_check(g, [0, 1, 2], [6, 7, 8], [4], f)
    two = determination_check(g, [0, 1, 2], [6, 7, 8], [4], f)
    assert one.to_json() == two.to_json()
    assert len(one.instance_hash) == 16
