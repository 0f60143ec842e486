from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from conftest import formulas, graphs
from oracles import ef_equivalent, naive_holds
from nowheredense.corpus import cycle, path
from nowheredense.graph import BudgetExceeded
from nowheredense.logic.ef import EFTyper, ef_partition, partition_refines
from nowheredense.logic.formula import free_vars, rank


@settings(max_examples=60)
@given(graphs(max_n=5, max_colors=1), st.integers(0, 2), st.integers(1, 2))
def test_type_ids_match_the_game(g, k, d):
    typer = EFTyper(g)
    tuples = list(product(range(g.n), repeat=d))[:12]
    for a in tuples:
        for b in tuples:
            assert typer.equivalent(a, b, k) == ef_equivalent(g, a, b, k)


@settings(max_examples=100)
@given(graphs(max_n=5, max_colors=2), formulas(max_leaves=6))
def test_equivalent_tuples_agree_on_low_rank_formulas(g, node):
    free = sorted(free_vars(node))
    q = rank(node)
    if q > 2:
        return
    typer = EFTyper(g)
    seen = {}
    for values in product(range(g.n), repeat=len(free)):
        tid = typer.type_id(values, q)
        val = naive_holds(g, node, dict(zip(free, values)))
        assert seen.setdefault(tid, val) == val


@given(graphs(max_n=5), st.integers(0, 2))
def test_higher_rank_refines_lower(g, q):
    fine = ef_partition(g, 1, q + 1)
    coarse = ef_partition(g, 1, q)
    assert partition_refines(fine, coarse)


def test_path_endpoints_and_cycle_vertices():
    assert [len(c) for c in ef_partition(path(5), 1, 3)] == [2, 2, 1]
    assert len(ef_partition(cycle(6), 1, 3)) == 1


def test_budget():
    with pytest.raises(BudgetExceeded):
        ef_partition(path(10), 2, 3, budget=100)
