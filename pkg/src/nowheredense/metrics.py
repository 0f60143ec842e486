"""Projections, neighbourhood complexity, packing/transversal numbers of
definable families, and seeded type-count sweeps."""

from __future__ import annotations

import csv
import io
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .corpus import generate
from .graph import BudgetExceeded, Graph, InvalidInput, check_vertices, distances
from .logic.evaluate import Evaluator
from .logic.formula import Formula, format_node, parse_formula
from .logic.setsystem import SetSystem, from_mask
from .logic.types import type_count

EXACT = "exact"
GREEDY = "greedy"
MAX_EXACT_GROUND = 24


# ---------------------------------------------------------------- projections

def projection(g: Graph, u: int, b: Iterable[int], r: float) -> frozenset[int]:
    """Vertices of B reachable from u by a path of length <= r whose inner
    vertices avoid B."""
    b = set(b)
    check_vertices(g, [u])
    check_vertices(g, b)
    if u in b:
        return frozenset((u,))
    dist = {u: 0}
    queue = deque([u])
    hit = set()
    while queue:
        v = queue.popleft()
        if v in b:
            hit.add(v)
            continue
        if dist[v] >= r:
            continue
        for w in g.neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return frozenset(hit)


def projection_complexity(g: Graph, b: Iterable[int], r: float) -> tuple[int, int]:
    """(number of distinct projections over all vertices, largest projection size)."""
    b = set(b)
    projs = {projection(g, u, b, r) for u in range(g.n)}
    if g.n == 0:
        return 0, 0
    return len(projs), max(len(p) for p in projs)


def neighborhood_complexity(g: Graph, a: Iterable[int], r: float) -> int:
    a = set(a)
    check_vertices(g, a)
    return len({frozenset(v for v in distances(g, [u], r) if v in a) for u in range(g.n)})


def definable_family(g: Graph, f: Formula, dedup: bool = True) -> SetSystem:
    """{ {v : phi(u, v)} : u in V } over the ground set V."""
    if len(f.x) != 1 or len(f.y) != 1:
        raise InvalidInput("definable families need one object and one parameter variable")
    ev = Evaluator(g, f)
    (x,), (y,) = f.x, f.y
    sets = []
    for u in range(g.n):
        mask = 0
        for v in range(g.n):
            if ev.holds({x: u, y: v}):
                mask |= 1 << v
        sets.append(mask)
    sys = SetSystem(g.n, tuple(sets))
    return sys.dedup() if dedup else sys


# ---------------------------------------------------------------- packing / transversal

def _members(sys: SetSystem) -> list[int]:
    return sorted(set(sys.sets), key=lambda s: (s.bit_count(), s))


def greedy_packing(sys: SetSystem) -> list[int]:
    used = 0
    out = []
    for s in _members(sys):
        if not s & used:
            out.append(s)
            used |= s
    return out


def greedy_transversal(sys: SetSystem) -> list[int] | None:
    todo = [s for s in set(sys.sets)]
    if 0 in todo:
        return None
    chosen = []
    while todo:
        counts: dict[int, int] = {}
        for s in todo:
            for e in from_mask(s):
                counts[e] = counts.get(e, 0) + 1
        e = min(counts, key=lambda k: (-counts[k], k))
        chosen.append(e)
        todo = [s for s in todo if not s >> e & 1]
    return sorted(chosen)


def exact_packing(sys: SetSystem, budget: int = 2_000_000) -> int:
    members = _members(sys)
    best = len(greedy_packing(sys))
    nodes = 0
    memo: dict[tuple[int, int], int] = {}

    def solve(i: int, used: int) -> int:
        # largest packing among members[i:] avoiding ``used``
        nonlocal nodes
        if i == len(members):
            return 0
        key = (i, used)
        if key in memo:
            return memo[key]
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"exact packing exceeded {budget} nodes")
        s = members[i]
        val = solve(i + 1, used)
        if not s & used:
            val = max(val, 1 + solve(i + 1, used | s))
        memo[key] = val
        return val

    return max(best, solve(0, 0))


def exact_transversal(sys: SetSystem, budget: int = 2_000_000) -> int | None:
    """Minimum hitting set size; None when the family contains the empty set."""
    members = list(set(sys.sets))
    if 0 in members:
        return None
    if not members:
        return 0
    greedy = greedy_transversal(sys)
    best = len(greedy)
    nodes = 0

    def lower_bound(todo: list[int]) -> int:
        used = 0
        k = 0
        for s in sorted(todo, key=lambda s: s.bit_count()):
            if not s & used:
                used |= s
                k += 1
        return k

    def search(todo: list[int], k: int) -> None:
        nonlocal best, nodes
        if not todo:
            best = min(best, k)
            return
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"exact transversal exceeded {budget} nodes")
        if k + lower_bound(todo) >= best:
            return
        pivot = min(todo, key=lambda s: (s.bit_count(), s))
        for e in from_mask(pivot):
            search([s for s in todo if not s >> e & 1], k + 1)

    search(members, 0)
    return best


def packing_number(sys: SetSystem, mode: str = EXACT, budget: int = 2_000_000) -> int:
    if mode == GREEDY:
        return len(greedy_packing(sys))
    if mode != EXACT:
        raise InvalidInput(f"unknown mode {mode!r}")
    if sys.ground > MAX_EXACT_GROUND:
        raise BudgetExceeded(f"exact mode limited to ground sets of size <= {MAX_EXACT_GROUND}")
    return exact_packing(sys, budget)


def transversal_number(sys: SetSystem, mode: str = EXACT, budget: int = 2_000_000) -> int | None:
    if mode == GREEDY:
        t = greedy_transversal(sys)
        return None if t is None else len(t)
    if mode != EXACT:
        raise InvalidInput(f"unknown mode {mode!r}")
    if sys.ground > MAX_EXACT_GROUND:
        raise BudgetExceeded(f"exact mode limited to ground sets of size <= {MAX_EXACT_GROUND}")
    return exact_transversal(sys, budget)


# ---------------------------------------------------------------- sweeps

CSV_COLUMNS = ["family", "graph_id", "n", "m", "formula", "split", "sample_size",
               "type_count", "seed", "elapsed_ms"]


@dataclass(frozen=True)
class SweepConfig:
    graphs: tuple[str, ...]
    formula: str
    sizes: tuple[int, ...]
    trials: int
    seed: int
    jobs: int = 1
    timing: bool = False
    budget: int = 20_000_000


def trial_seed(seed: int, trial: int) -> int:
    return seed * 10_000 + trial


def sample_set(n: int, size: int, seed: int) -> list[int]:
    """``size`` distinct vertices from 0..n-1, PCG64 seeded with (seed, size)."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, size])))
    return sorted(int(v) for v in rng.choice(n, size=size, replace=False))


def _run_job(job: tuple[str, str, int, int, bool, int]) -> dict:
    spec, formula_text, size, tseed, timing, budget = job
    g = generate(spec)
    f = parse_formula(formula_text)
    a = sample_set(g.n, size, tseed)
    start = time.perf_counter()
    count = type_count(g, f, None, a, budget)
    elapsed = (time.perf_counter() - start) * 1000
    return {"family": spec.split(":", 1)[0], "graph_id": spec, "n": g.n, "m": g.m,
            "formula": format_node(f.body), "split": f"{','.join(f.x)};{','.join(f.y)}",
            "sample_size": size, "type_count": count, "seed": tseed,
            "elapsed_ms": f"{elapsed:.1f}" if timing else ""}


def vc_density_sweep(cfg: SweepConfig) -> list[dict]:
    """One row per (graph, size, trial) in that order; sizes above |V| are skipped."""
    jobs = []
    for spec in cfg.graphs:
        n = generate(spec).n
        for size in cfg.sizes:
            if size > n:
                continue
            for trial in range(cfg.trials):
                jobs.append((spec, cfg.formula, size, trial_seed(cfg.seed, trial), cfg.timing, cfg.budget))
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            return list(pool.map(_run_job, jobs))
    return [_run_job(j) for j in jobs]


def rows_to_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def loglog_slope(sizes: Sequence[float], counts: Sequence[float]) -> float:
    """Least-squares slope of log(count) against log(size)."""
    x = np.log(np.asarray(sizes, dtype=float))
    y = np.log(np.asarray(counts, dtype=float))
    design = np.vstack([x, np.ones_like(x)]).T
    (slope, _), *_ = np.linalg.lstsq(design, y, rcond=None)
    return float(slope)

