import math
import pytest
from hypothesis import given, settings, strategies as st

from conftest import graph_and_subset, graphs
from oracles import all_pairs, naive_holds, packing, transversal
from nowheredense.corpus import clique, powerset_branch, powerset_graph
from nowheredense.graph import BudgetExceeded, InvalidInput
from nowheredense.logic.formula import dist_formula, parse_formula
from nowheredense.logic.setsystem import SetSystem
from nowheredense.logic.types import type_count
from nowheredense.metrics import (CSV_COLUMNS, SweepConfig, definable_family, exact_packing,
                                  exact_transversal, greedy_packing, greedy_transversal,
                                  loglog_slope, neighborhood_complexity, packing_number,
                                  projection, projection_complexity, rows_to_csv, sample_set,
                                  transversal_number, trial_seed, vc_density_sweep)


@given(graph_and_subset(max_n=8), st.integers(0, 4))
def test_projection_matches_per_target_distances(gs, r):
    g, b = gs
    for u in range(g.n):
        want = set()
        for v in b:
            if u == v:
                want.add(v)
            elif u not in b:
                # inner vertices avoid B: delete every other member of B
                d = all_pairs(g, [w for w in b if w != v])
                if d[u][v] <= r:
                    want.add(v)
        if u in b:
            want = {u}
        assert projection(g, u, b, r) == want


def test_projection_complexity_in_a_clique():
    g = clique(4)
    count, largest = projection_complexity(g, [1, 2], 1)
    assert largest == 2 and count == 3


@given(graph_and_subset(max_n=8), st.integers(0, 3))
def test_neighborhood_complexity(gs, r):
    g, a = gs
    d = all_pairs(g)
    want = len({frozenset(v for v in a if d[u][v] <= r) for u in range(g.n)})
    assert neighborhood_complexity(g, a, r) == want


@given(graphs(max_n=6), st.sampled_from(["E(x,y)", "dist<=2", "x = y | E(x,y)"]))
def test_definable_family_matches_naive(g, text):
    f = parse_formula(text)
    fam = definable_family(g, f, dedup=False)
    for u, mask in enumerate(fam.sets):
        for v in range(g.n):
            assert bool(mask >> v & 1) == naive_holds(g, f.body, {"x": u, "y": v})


@st.composite
def families(draw, max_ground=8):
    n = draw(st.integers(1, max_ground))
    sets = draw(st.lists(st.integers(1, 2 ** n - 1), min_size=1, max_size=10))
    return SetSystem(n, tuple(sets))


@settings(max_examples=200)
@given(families())
def test_exact_numbers_match_exhaustive_search(fam):
    nu, tau = packing_number(fam), transversal_number(fam)
    assert nu == packing(fam.sets)
    assert tau == transversal(fam.ground, fam.sets)
    assert tau >= nu
    assert len(greedy_packing(fam)) <= nu
    assert len(greedy_transversal(fam)) >= tau


def test_triangle_family():
    fam = definable_family(clique(3), parse_formula("E(x,y)"))
    assert (packing_number(fam), transversal_number(fam)) == (1, 2)


def test_empty_member_has_no_transversal():
    fam = SetSystem(3, (0, 1))
    assert transversal_number(fam) is None
    assert greedy_transversal(fam) is None


def test_mode_and_size_guards():
    fam = SetSystem(30, (1,))
    with pytest.raises(BudgetExceeded):
        packing_number(fam)
    assert packing_number(fam, "greedy") == 1
    with pytest.raises(InvalidInput):
        transversal_number(SetSystem(3, (1,)), "bogus")
    with pytest.raises(BudgetExceeded):
        exact_packing(SetSystem(12, tuple(1 << i | 1 << (i + 1) for i in range(11))), budget=2)
    with pytest.raises(BudgetExceeded):
        exact_transversal(SetSystem(12, tuple(1 << i | 1 << (i + 1) for i in range(11))), budget=1)


@given(st.integers(1, 200), st.data())
def test_sample_set(n, data):
    size = data.draw(st.integers(0, n))
    seed = data.draw(st.integers(0, 10 ** 6))
    a = sample_set(n, size, seed)
    assert len(set(a)) == size and a == sorted(a) and all(0 <= v < n for v in a)
    assert a == sample_set(n, size, seed)


def test_slope_of_exact_power_law():
    xs = [8, 16, 32, 64]
    assert math.isclose(loglog_slope(xs, [3 * x ** 1.5 for x in xs]), 1.5)


def test_sweep_rows_and_csv():
    cfg = SweepConfig(("grid:5x5", "P:n=3,r=1"), "dist<=1", (2, 4, 40), 2, 7)
    rows = vc_density_sweep(cfg)
    assert len(rows) == 2 * 2 * 2
    assert [r["seed"] for r in rows[:2]] == [trial_seed(7, 0), trial_seed(7, 1)]
    text = rows_to_csv(rows)
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    assert all(r["elapsed_ms"] == "" for r in rows)
    assert rows_to_csv(vc_density_sweep(cfg)) == text


def test_parallel_sweep_matches_serial():
    cfg = SweepConfig(("grid:4x4",), "dist<=2", (2, 4), 2, 1)
    par = SweepConfig(cfg.graphs, cfg.formula, cfg.sizes, cfg.trials, cfg.seed, jobs=2)
    assert rows_to_csv(vc_density_sweep(cfg)) == rows_to_csv(vc_density_sweep(par))


def test_grid_counts_grow_slowly():
    g_rows = vc_density_sweep(SweepConfig(("grid:10x10",), "dist<=2", (8, 16, 32), 2, 0))
    for row in g_rows:
        assert row["type_count"] <= 3 * row["sample_size"] + 1


def test_powerset_branch_type_count_is_exponential():
    for n in range(1, 6):
        assert type_count(powerset_graph(n), dist_formula(1), None, powerset_branch(n)) == 2 ** n
