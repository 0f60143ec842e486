"""Separator-relative locality: the colored graph G^S, neighbourhoods N^r_S,
and an empirical check that rank-p types over S determine phi-types across a
separator."""

from __future__ import annotations

import hashlib
from dataclasses import asdict, dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .graph import BudgetExceeded, Graph, PreconditionError, check_vertices, distances, is_r_separated
from .logic.ef import DEFAULT_EF_BUDGET, EFTyper
from .logic.evaluate import Evaluator
from .logic.formula import Formula, format_formula
from .logic.types import phi_type

STAR = None  # signature entry of a tuple vertex outside S


@dataclass(frozen=True)
class ColoredQuotient:
    """G - S relabelled to 0..k-1 (ascending original id); local vertex i
    carries color j iff vertices[i] is adjacent to s_order[j] in G."""

    base: Graph
    vertices: tuple[int, ...]
    s_order: tuple[int, ...]

    def local(self, v: int) -> int:
        return self.vertices.index(v)

    def color_of(self, s: int) -> int:
        return self.s_order.index(s)


def build_GS(g: Graph, s: Iterable[int], s_order: Sequence[int] | None = None) -> ColoredQuotient:
    s = set(s)
    check_vertices(g, s)
    order = tuple(sorted(s)) if s_order is None else tuple(s_order)
    if set(order) != s or len(order) != len(s):
        raise ValueError("s_order must enumerate S exactly once")
    keep = [v for v in range(g.n) if v not in s]
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[w]) for u in keep for w in g.neighbors(u) if w in index and u < w]
    colors = {}
    for v in keep:
        cs = {j for j, sv in enumerate(order) if g.has_edge(v, sv)}
        if cs:
            colors[index[v]] = cs
    return ColoredQuotient(Graph.from_edges(len(keep), edges, colors), tuple(keep), order)


def signature(u: Sequence[int], s: Iterable[int]) -> tuple:
    s = set(s)
    return tuple(v if v in s else STAR for v in u)


@dataclass(frozen=True)
class LocalNeighborhood:
    graph: Graph                 # colored, induced in G^S on the reachable set
    vertices: tuple[int, ...]    # original ids of the local vertices
    marked: tuple[int | None, ...]  # local id of each tuple entry, None for entries in S
    signature: tuple


def neighborhood_vertices(g: Graph, s: Iterable[int], u: Iterable[int], r: int) -> set[int]:
    s = set(s)
    return set(distances(g, [v for v in u if v not in s], r, s))


def local_neighborhood(g: Graph, s: Iterable[int], u: Sequence[int], r: int) -> LocalNeighborhood:
    s = set(s)
    check_vertices(g, list(u))
    gs = build_GS(g, s)
    reach = sorted(neighborhood_vertices(g, s, u, r))
    sub, ids = gs.base.induced([gs.local(v) for v in reach])
    verts = tuple(gs.vertices[i] for i in ids)
    pos = {v: i for i, v in enumerate(verts)}
    marked = tuple(None if v in s else pos[v] for v in u)
    return LocalNeighborhood(sub, verts, marked, signature(u, s))


def neighborhoods_split(g: Graph, s: Iterable[int], x: Iterable[int], y: Iterable[int], r: int) -> bool:
    """N^r_S(x) and N^r_S(y) are vertex-disjoint with no edge between them,
    i.e. N^r_S(x + y) is their disjoint union."""
    nx = neighborhood_vertices(g, s, x, r)
    ny = neighborhood_vertices(g, s, y, r)
    if nx & ny:
        return False
    return not any(g.neighbor_set(v) & ny for v in nx)


@dataclass
class DeterminationReport:
    q: int
    r: int
    min_p: int | None
    type_count_over_B: int
    ef_class_count: int | None
    ef_counts: dict[int, int] = field(default_factory=dict)
    holds: dict[int, bool] = field(default_factory=dict)
    refinement_ok: bool | None = None
    disjoint_union: bool = True
    full_radius_disjoint: bool = True
    instance_hash: str = ""

    def to_json(self) -> dict:
        d = asdict(self)
        d["ef_counts"] = {str(k): v for k, v in self.ef_counts.items()}
        d["holds"] = {str(k): v for k, v in self.holds.items()}
        return d


def instance_hash(g: Graph, a, b, s, f: Formula) -> str:
    h = hashlib.sha256()
    h.update(repr((g.n, g.edges(), [sorted(c) for c in g.colors])).encode())
    h.update(repr((sorted(a), sorted(b), sorted(s), format_formula(f))).encode())
    return h.hexdigest()[:16]


def determination_check(g: Graph, a: Iterable[int], b: Iterable[int], s: Iterable[int], f: Formula,
                        p_max: int = 10, budget: int = DEFAULT_EF_BUDGET) -> DeterminationReport:
    """Least p such that equal rank-p types of (u, s-bar) force equal phi-types over B."""
    a, b, s = sorted(set(a)), sorted(set(b)), sorted(set(s))
    check_vertices(g, a + b + s)
    q = f.quantifier_rank
    r = 7 ** q
    if not is_r_separated(g, a, b, s, r):
        raise PreconditionError(f"A and B are not {r}-separated by S")
    ev = Evaluator(g, f)
    objs = list(product(a, repeat=len(f.x)))
    types = [phi_type(g, f, u, b, ev).bits for u in objs]
    report = DeterminationReport(q, r, None, len(set(types)), None,
                                 instance_hash=instance_hash(g, a, b, s, f))
    # structural precondition of the disjoint-union argument: radius (r-1)//2
    # neighbourhoods always split under r-separation; the full radius need not
    report.disjoint_union = neighborhoods_split(g, s, a, b, (r - 1) // 2)
    report.full_radius_disjoint = neighborhoods_split(g, s, a, b, r)

    typer = EFTyper(g, budget)
    sbar = tuple(s)

    def determined(p: int) -> bool:
        seen: dict[int, int] = {}
        ok = True
        for u, t in zip(objs, types):
            tid = typer.type_id(tuple(u) + sbar, p)
            if seen.setdefault(tid, t) != t:
                ok = False
        report.ef_counts[p] = len(seen)
        report.holds[p] = ok
        return ok

    for p in range(p_max + 1):
        try:
            ok = determined(p)
        except BudgetExceeded:
            break
        if ok:
            report.min_p = p
            report.ef_class_count = report.ef_counts[p]
            try:
                report.refinement_ok = determined(p + 1)
            except BudgetExceeded:
                report.refinement_ok = None
            break
    return report
