"""Rank-q equivalence of vertex tuples via Ehrenfeucht-Fraisse back-and-forth.

Two tuples get the same rank-k id iff they have the same atomic type and the
same set of rank-(k-1) ids of their one-vertex extensions. Ids are interned,
so equality of ids is equality of rank-k types.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import product
from typing import Sequence

from ..graph import BudgetExceeded, Graph

DEFAULT_EF_BUDGET = 5_000_000


def atomic_type(g: Graph, tup: Sequence[int]) -> tuple:
    k = len(tup)
    eq = tuple(tup.index(v) for v in tup)
    adj = tuple(g.has_edge(tup[i], tup[j]) for i in range(k) for j in range(i + 1, k))
    colors = tuple(g.colors[v] for v in tup)
    return eq, adj, colors


class EFTyper:
    """Lazily computed, memoised rank-k type ids of tuples of one graph."""

    def __init__(self, g: Graph, budget: int = DEFAULT_EF_BUDGET):
        self.g = g
        self.budget = budget
        self.calls = 0
        self._intern: dict[tuple, int] = {}
        self._memo: dict[tuple[int, tuple[int, ...]], int] = {}

    def _id(self, key: tuple) -> int:
        got = self._intern.get(key)
        if got is None:
            got = self._intern[key] = len(self._intern)
        return got

    def type_id(self, tup: Sequence[int], k: int) -> int:
        tup = tuple(tup)
        memo_key = (k, tup)
        got = self._memo.get(memo_key)
        if got is not None:
            return got
        self.calls += 1
        if self.calls > self.budget:
            raise BudgetExceeded(f"EF typing exceeded {self.budget} tuple evaluations")
        atomic = atomic_type(self.g, tup)
        if k == 0:
            tid = self._id((0, atomic))
        else:
            ext = frozenset(self.type_id(tup + (v,), k - 1) for v in range(self.g.n))
            tid = self._id((k, atomic, ext))
        self._memo[memo_key] = tid
        return tid

    def equivalent(self, a: Sequence[int], b: Sequence[int], k: int) -> bool:
        return len(a) == len(b) and self.type_id(a, k) == self.type_id(b, k)


def ef_partition(g: Graph, d: int, q: int, budget: int = DEFAULT_EF_BUDGET) -> list[list[tuple[int, ...]]]:
    """Classes of V^d under rank-q equivalence, each sorted, ordered by first member."""
    if d < 0 or q < 0:
        raise ValueError("arity and rank must be non-negative")
    cost = g.n ** (d + q)
    if cost > budget:
        raise BudgetExceeded(f"rank-{q} partition of V^{d} needs ~{cost} tuples, budget is {budget}")
    typer = EFTyper(g, budget * 2)
    classes: dict[int, list[tuple[int, ...]]] = defaultdict(list)
    for tup in product(range(g.n), repeat=d):
        classes[typer.type_id(tup, q)].append(tup)
    return sorted(classes.values(), key=lambda c: c[0])


def partition_refines(fine: list[list[tuple]], coarse: list[list[tuple]]) -> bool:
    owner = {t: i for i, cls in enumerate(coarse) for t in cls}
    return all(len({owner[t] for t in cls}) == 1 for cls in fine)

