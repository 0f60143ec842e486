"""Exact search for the longest phi-ladder: u_1..u_n, v_1..v_n with
phi(u_i, v_j) iff i <= j."""

from __future__ import annotations

from itertools import product

from ..graph import BudgetExceeded, Graph
from .evaluate import Evaluator
from .formula import Formula

DEFAULT_RELATION_BUDGET = 4_000_000
DEFAULT_NODE_BUDGET = 2_000_000


def relation_rows(g: Graph, f: Formula, budget: int = DEFAULT_RELATION_BUDGET):
    """Object tuples, parameter tuples and the row bitmasks rows[i] over parameters."""
    us = list(product(range(g.n), repeat=len(f.x)))
    vs = list(product(range(g.n), repeat=len(f.y)))
    if len(us) * len(vs) > budget:
        raise BudgetExceeded(f"relation has {len(us) * len(vs)} entries, budget is {budget}")
    ev = Evaluator(g, f)
    rows = []
    for u in us:
        env = dict(zip(f.x, u))
        bits = 0
        for j, v in enumerate(vs):
            env.update(zip(f.y, v))
            if ev.holds(env):
                bits |= 1 << j
        rows.append(bits)
    return us, vs, rows


def longest_ladder(rows: list[int], ncols: int, cap: int, node_budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Longest ladder (at most ``cap``) in a 0/1 relation given by row bitmasks."""
    cols = [0] * ncols
    for i, row in enumerate(rows):
        r = row
        while r:
            low = r & -r
            cols[low.bit_length() - 1] |= 1 << i
            r ^= low
    best = 0
    nodes = 0
    seen: dict[tuple[int, int], int] = {}

    def grow(k: int, cand_u: int, cand_v: int) -> None:
        # k pairs placed; cand_u: rows that fail every placed column,
        # cand_v: columns that every placed row hits
        nonlocal best, nodes
        best = max(best, k)
        if best >= cap:
            return
        if k + min(cand_u.bit_count(), cand_v.bit_count()) <= best:
            return
        state = (cand_u, cand_v)
        if seen.get(state, -1) >= k:
            return
        seen[state] = k
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded(f"ladder search exceeded {node_budget} nodes")
        us = cand_u
        while us:
            low = us & -us
            us ^= low
            u = low.bit_length() - 1
            vs = cand_v & rows[u]
            while vs:
                lv = vs & -vs
                vs ^= lv
                v = lv.bit_length() - 1
                grow(k + 1, cand_u & ~cols[v], cand_v & rows[u])
                if best >= cap:
                    return

    grow(0, (1 << len(rows)) - 1, (1 << ncols) - 1)
    return best


def ladder_length(g: Graph, f: Formula, cap: int = 8, node_budget: int = DEFAULT_NODE_BUDGET,
                  relation_budget: int = DEFAULT_RELATION_BUDGET) -> int:
    """Maximum n <= cap such that a phi-ladder of length n exists."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    us, vs, rows = relation_rows(g, f, relation_budget)
    return longest_ladder(rows, len(vs), cap, node_budget)


def ladder_index(g: Graph, f: Formula, cap: int = 8) -> int | None:
    """Least n with no ladder of length n, or None when the search hit ``cap``."""
    n = ladder_length(g, f, cap)
    return n + 1 if n < cap else None
