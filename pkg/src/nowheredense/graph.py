"""Simple undirected graphs on dense integer ids, plus the distance machinery
everything else is built on: truncated multi-source BFS, r-independence,
r-separation, ball contraction and minor-model verification."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

INF = float("inf")


class InvalidInput(ValueError):
    pass


class PreconditionError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """A search or enumeration would exceed its configured size budget."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices 0..n-1.

    ``adj[v]`` is the sorted tuple of neighbours of ``v``; ``colors[v]`` is the
    frozenset of color ids carried by ``v`` (empty for uncolored graphs).
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    colors: tuple[frozenset[int], ...] = ()
    _nbr_sets: tuple[frozenset[int], ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise InvalidInput(f"adjacency has {len(self.adj)} rows, expected {self.n}")
        if not self.colors:
            object.__setattr__(self, "colors", tuple(frozenset() for _ in range(self.n)))
        elif len(self.colors) != self.n:
            raise InvalidInput("colors must have one entry per vertex")
        object.__setattr__(self, "_nbr_sets", tuple(frozenset(a) for a in self.adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   colors: Mapping[int, Iterable[int]] | None = None) -> "Graph":
        if n < 0:
            raise InvalidInput("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidInput(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        cols: list[frozenset[int]] = [frozenset() for _ in range(n)]
        if colors:
            for v, ks in colors.items():
                if not 0 <= v < n:
                    raise InvalidInput(f"colored vertex {v} out of range")
                cols[v] = frozenset(ks)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs), tuple(cols))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._nbr_sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr_sets[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def is_colored(self) -> bool:
        return any(self.colors)

    def without(self, removed: Iterable[int]) -> "Graph":
        """Same vertex ids, every edge touching ``removed`` dropped.

        Distances between surviving vertices equal distances in G - removed.
        """
        rem = set(removed)
        if not rem:
            return self
        check_vertices(self, rem)
        adj = tuple(() if v in rem else tuple(u for u in a if u not in rem)
                    for v, a in enumerate(self.adj))
        return Graph(self.n, adj, self.colors)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to 0..k-1 (ascending original id)."""
        vs = sorted(set(vertices))
        check_vertices(self, vs)
        index = {v: i for i, v in enumerate(vs)}
        edges = [(index[u], index[w]) for u in vs for w in self.adj[u] if w in index and u < w]
        colors = {index[v]: self.colors[v] for v in vs if self.colors[v]}
        return Graph.from_edges(len(vs), edges, colors), vs


def check_vertices(g: Graph, vs: Iterable[int]) -> None:
    for v in vs:
        if not isinstance(v, int) or not 0 <= v < g.n:
            raise InvalidInput(f"vertex id {v!r} not in 0..{g.n - 1}")


def distances(g: Graph, sources: Iterable[int], cap: float = INF,
              forbidden: Iterable[int] = ()) -> dict[int, int]:
    """Multi-source BFS in g - forbidden, truncated at ``cap``.

    Forbidden sources are dropped. Unreached vertices are absent.
    """
    sources = list(sources)
    forb = set(forbidden)
    check_vertices(g, sources)
    check_vertices(g, forb)
    dist: dict[int, int] = {}
    queue: deque[int] = deque()
    for s in sorted(set(sources)):
        if s not in forb:
            dist[s] = 0
            queue.append(s)
    while queue:
        v = queue.popleft()
        d = dist[v]
        if d >= cap:
            continue
        for w in g.adj[v]:
            if w not in dist and w not in forb:
                dist[w] = d + 1
                queue.append(w)
    return dist


def ball(g: Graph, v: int, radius: float, forbidden: Iterable[int] = ()) -> set[int]:
    return set(distances(g, [v], radius, forbidden))


def is_r_independent(g: Graph, b: Iterable[int], r: float, s: Iterable[int] = ()) -> bool:
    b = sorted(set(b))
    s = set(s)
    check_vertices(g, b)
    if s & set(b):
        raise PreconditionError(f"independent set meets separator at {sorted(s & set(b))}")
    if len(b) <= 1:
        return True
    members = set(b)
    for v in b:
        reach = distances(g, [v], r, s)
        if any(u != v and u in members for u in reach):
            return False
    return True


def is_r_separated(g: Graph, x: Iterable[int], y: Iterable[int], s: Iterable[int], r: float) -> bool:
    """Every path of length <= r between x and y meets s."""
    s = set(s)
    xs = set(x) - s
    ys = set(y) - s
    check_vertices(g, xs | ys | s)
    if not xs or not ys:
        return True
    reach = distances(g, xs, r, s)
    return not any(v in reach for v in ys)


@dataclass(frozen=True)
class QuotientMap:
    original: Graph
    quotient: Graph
    forward: tuple[int, ...]
    ball_reps: tuple[tuple[int, int], ...]
    radius: int

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.quotient.n)]
        for v, q in enumerate(self.forward):
            out[q].append(v)
        return out

    def image(self, v: int) -> int:
        return self.forward[v]

    def center_of(self, q: int) -> int | None:
        for c, qid in self.ball_reps:
            if qid == q:
                return c
        return None


def contract_balls(g: Graph, centers: Iterable[int], radius: int) -> QuotientMap:
    """Contract the radius-``radius`` balls around ``centers``.

    Balls get quotient ids 0..k-1 in ascending center order, untouched vertices
    follow in ascending id order. Overlapping balls are rejected.
    """
    centers = sorted(set(centers))
    check_vertices(g, centers)
    if radius < 0:
        raise InvalidInput("radius must be non-negative")
    owner: dict[int, int] = {}
    for i, c in enumerate(centers):
        for v in distances(g, [c], radius):
            if v in owner:
                other = centers[owner[v]]
                raise PreconditionError(
                    f"balls of radius {radius} around {other} and {c} overlap at {v}")
            owner[v] = i
    forward = [0] * g.n
    next_id = len(centers)
    for v in range(g.n):
        if v in owner:
            forward[v] = owner[v]
        else:
            forward[v] = next_id
            next_id += 1
    edges = set()
    for u, v in g.edges():
        a, b = forward[u], forward[v]
        if a != b:
            edges.add((min(a, b), max(a, b)))
    colors: dict[int, set[int]] = {}
    for v in range(g.n):
        if g.colors[v]:
            colors.setdefault(forward[v], set()).update(g.colors[v])
    quotient = Graph.from_edges(next_id, sorted(edges), colors)
    return QuotientMap(g, quotient, tuple(forward),
                       tuple((c, i) for i, c in enumerate(centers)), radius)


@dataclass(frozen=True)
class MinorModel:
    """Depth-``depth`` model of K_t: disjoint branch sets with named centers."""

    depth: int
    branch_sets: tuple[frozenset[int], ...]
    centers: tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.branch_sets)

    @classmethod
    def build(cls, depth: int, sets: Iterable[Iterable[int]], centers: Iterable[int]) -> "MinorModel":
        return cls(depth, tuple(frozenset(s) for s in sets), tuple(centers))


def branch_radius(g: Graph, members: frozenset[int], center: int) -> float:
    """Eccentricity of ``center`` inside the subgraph induced by ``members``."""
    outside = set(range(g.n)) - members
    dist = distances(g, [center], INF, outside)
    if len(dist) < len(members):
        return INF
    return max(dist.values())


def verify_minor_model(g: Graph, model: MinorModel) -> list[str]:
    """All violated conditions of ``model`` in ``g``; empty list means pass."""
    problems: list[str] = []
    sets = model.branch_sets
    if len(model.centers) != len(sets):
        return [f"{len(sets)} branch sets but {len(model.centers)} centers"]
    for i, bs in enumerate(sets):
        bad = [v for v in bs if not (isinstance(v, int) and 0 <= v < g.n)]
        if bad:
            problems.append(f"branch set {i} has invalid vertices {sorted(bad)}")
    if problems:
        return problems
    for i, j in combinations(range(len(sets)), 2):
        common = sets[i] & sets[j]
        if common:
            problems.append(f"branch sets {i} and {j} share {sorted(common)}")
    for i, (bs, c) in enumerate(zip(sets, model.centers)):
        if c not in bs:
            problems.append(f"center {c} not in branch set {i}")
            continue
        rad = branch_radius(g, bs, c)
        if rad == INF:
            problems.append(f"branch set {i} is not connected")
        elif rad > model.depth:
            problems.append(f"branch set {i} has radius {rad} > depth {model.depth} from center {c}")
    for i, j in combinations(range(len(sets)), 2):
        if not any(g.neighbor_set(u) & sets[j] for u in sets[i]):
            problems.append(f"no edge between branch sets {i} and {j}")
    return problems
