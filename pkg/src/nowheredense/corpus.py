"""Graph generators for the test corpus and the extremal constructions, and the
edge-list file format.

Spec strings accepted by :func:`generate`::

    P:n=3,r=2          power-set graph P(n), each edge subdivided into an r-path
    subclique:n=5,r=2  K_n with every edge replaced by a path of length r
    grid:10x10  half:5  star:7  path:9  clique:6  cycle:8  matching:4  edgeless:5
    random:n=50,d=4,seed=1
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .graph import Graph, InvalidInput

#: identifier of the random-graph stream; bump if the proposal scheme changes
RANDOM_ALGORITHM = "pcg64-proposals-v1"

MAX_POWERSET_N = 20


class GraphFormatError(ValueError):
    pass


def _subdivide(n: int, edges: list[tuple[int, int]], r: int) -> tuple[int, list[tuple[int, int]]]:
    if r < 1:
        raise InvalidInput("subdivision length r must be >= 1")
    if r == 1:
        return n, list(edges)
    out = []
    nxt = n
    for u, v in edges:
        path = [u] + list(range(nxt, nxt + r - 1)) + [v]
        nxt += r - 1
        out.extend(zip(path, path[1:]))
    return nxt, out


def powerset_graph(n: int, r: int = 1, max_n: int = MAX_POWERSET_N) -> Graph:
    """P(n): v_1..v_n (ids 0..n-1) and w_M (id n + bitmask of M), v_i ~ w_M iff i in M.

    Subdivision vertices follow, edge by edge in (i, M) order.
    """
    if n < 1:
        raise InvalidInput("n must be >= 1")
    if n > max_n:
        raise InvalidInput(f"P(n) has n + 2^n vertices; n={n} exceeds the limit {max_n}")
    edges = [(i, n + mask) for mask in range(1 << n) for i in range(n) if mask >> i & 1]
    edges.sort()
    total, edges = _subdivide(n + (1 << n), edges, r)
    return Graph.from_edges(total, edges)


def powerset_branch(n: int) -> list[int]:
    return list(range(n))


def subdivided_clique(n: int, r: int = 1) -> Graph:
    if n < 1:
        raise InvalidInput("n must be >= 1")
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    total, edges = _subdivide(n, edges, r)
    return Graph.from_edges(total, edges)


def grid(w: int, h: int) -> Graph:
    if w < 1 or h < 1:
        raise InvalidInput("grid dimensions must be >= 1")
    edges = []
    for y in range(h):
        for x in range(w):
            v = y * w + x
            if x + 1 < w:
                edges.append((v, v + 1))
            if y + 1 < h:
                edges.append((v, v + w))
    return Graph.from_edges(w * h, edges)


def half_graph(n: int) -> Graph:
    """a_i = i - 1, b_j = n + j - 1, a_i ~ b_j iff i <= j."""
    if n < 1:
        raise InvalidInput("n must be >= 1")
    return Graph.from_edges(2 * n, [(i, n + j) for i in range(n) for j in range(i, n)])


def star(n: int) -> Graph:
    """K_{1,n}, center 0, leaves 1..n."""
    if n < 1:
        raise InvalidInput("n must be >= 1")
    return Graph.from_edges(n + 1, [(0, i) for i in range(1, n + 1)])


def path(n: int) -> Graph:
    if n < 1:
        raise InvalidInput("n must be >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidInput("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def clique(n: int) -> Graph:
    if n < 1:
        raise InvalidInput("n must be >= 1")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def matching(k: int) -> Graph:
    if k < 1:
        raise InvalidInput("k must be >= 1")
    return Graph.from_edges(2 * k, [(2 * i, 2 * i + 1) for i in range(k)])


def edgeless(n: int) -> Graph:
    if n < 1:
        raise InvalidInput("n must be >= 1")
    return Graph.from_edges(n, [])


def random_bounded_degree(n: int, max_degree: int, seed: int) -> Graph:
    """n * max_degree uniform pair proposals from a PCG64 stream seeded with
    ``seed``; a proposal is kept when it is new and both endpoints still have
    degree below ``max_degree``."""
    if n < 1 or max_degree < 0:
        raise InvalidInput("need n >= 1 and max_degree >= 0")
    rng = np.random.Generator(np.random.PCG64(seed))
    deg = [0] * n
    seen: set[tuple[int, int]] = set()
    if n >= 2 and max_degree > 0:
        proposals = rng.integers(0, n, size=(n * max_degree, 2))
        for u, v in proposals.tolist():
            if u == v:
                continue
            e = (min(u, v), max(u, v))
            if e in seen or deg[u] >= max_degree or deg[v] >= max_degree:
                continue
            seen.add(e)
            deg[u] += 1
            deg[v] += 1
    return Graph.from_edges(n, sorted(seen))


def _kv(body: str) -> dict[str, int]:
    out = {}
    for part in body.split(","):
        if not part:
            continue
        if "=" not in part:
            raise InvalidInput(f"expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = int(v)
    return out


def generate(spec: str) -> Graph:
    if ":" not in spec:
        raise InvalidInput(f"graph spec {spec!r} lacks a family prefix")
    family, body = spec.split(":", 1)
    family = family.strip()
    body = body.strip()
    if family == "P":
        kv = _kv(body)
        return powerset_graph(kv["n"], kv.get("r", 1))
    if family == "subclique":
        kv = _kv(body)
        return subdivided_clique(kv["n"], kv.get("r", 1))
    if family == "grid":
        m = re.fullmatch(r"(\d+)x(\d+)", body)
        if not m:
            raise InvalidInput(f"grid spec must look like 10x10, got {body!r}")
        return grid(int(m.group(1)), int(m.group(2)))
    if family == "random":
        kv = _kv(body)
        return random_bounded_degree(kv["n"], kv["d"], kv.get("seed", 0))
    simple = {"half": half_graph, "star": star, "path": path, "clique": clique,
              "cycle": cycle, "matching": matching, "edgeless": edgeless}
    if family in simple:
        return simple[family](int(body))
    raise InvalidInput(f"unknown graph family {family!r}")


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    lines += [f"c {v} {k}" for v in range(g.n) for k in sorted(g.colors[v])]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    header = None
    edges = []
    colors: dict[int, set[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if header is None:
                if len(parts) != 2:
                    raise ValueError
                header = (int(parts[0]), int(parts[1]))
                if header[0] < 0 or header[1] < 0:
                    raise ValueError
            elif parts[0] == "c":
                if len(parts) != 3:
                    raise ValueError
                colors.setdefault(int(parts[1]), set()).add(int(parts[2]))
            else:
                if len(parts) != 2:
                    raise ValueError
                edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            what = "header 'n m'" if header is None else "edge 'u v' or color 'c v k'"
            raise GraphFormatError(f"line {lineno}: expected {what}, got {raw!r}") from None
    if header is None:
        raise GraphFormatError("missing header line 'n m'")
    n, m = header
    if len(edges) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(edges)}")
    try:
        g = Graph.from_edges(n, edges, colors)
    except InvalidInput as exc:
        raise GraphFormatError(str(exc)) from None
    if g.m != m:
        raise GraphFormatError(f"duplicate edges: {m} lines but {g.m} distinct edges")
    return g


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_graph(g))
