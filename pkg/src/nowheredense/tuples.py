"""Uniform quasi-wideness for sets of d-tuples.

Tuples are mutually r-separated by S when every vertex of one tuple is
r-separated by S from every vertex of the other. Tuples may contain vertices
of S. The solver first makes each coordinate 2r-separated (one uqw call or a
pigeonhole vertex per coordinate) and then keeps a greedy maximal mutually
separated subfamily.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .graph import Graph, InvalidInput, PreconditionError, check_vertices, distances
from .uqw import (BEST_EFFORT, CertificateError, DensityWitness, ExplicitMinor,
                  UqwParams, outcome_from_json, outcome_to_json, uqw_solve, verify_outcome)


@dataclass(frozen=True)
class TupleSet:
    d: int
    tuples: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.d < 1:
            raise InvalidInput("tuple arity must be >= 1")
        for tup in self.tuples:
            if len(tup) != self.d:
                raise InvalidInput(f"tuple {tup} does not have arity {self.d}")
        if len(set(self.tuples)) != len(self.tuples):
            raise InvalidInput("tuple set contains duplicates")

    @classmethod
    def of(cls, tuples: Iterable[Sequence[int]], d: int | None = None) -> "TupleSet":
        ts = tuple(tuple(int(v) for v in tup) for tup in tuples)
        if d is None:
            if not ts:
                raise InvalidInput("cannot infer the arity of an empty tuple set")
            d = len(ts[0])
        return cls(d, ts)

    def __len__(self) -> int:
        return len(self.tuples)

    def column(self, i: int) -> list[int]:
        """i-th coordinates (1-based), in tuple order."""
        return [tup[i - 1] for tup in self.tuples]

    def check(self, g: Graph) -> None:
        for tup in self.tuples:
            check_vertices(g, tup)


def format_tuples(ts: TupleSet) -> str:
    lines = [f"{ts.d} {len(ts)}"] + [" ".join(map(str, tup)) for tup in ts.tuples]
    return "\n".join(lines) + "\n"


def parse_tuples(text: str) -> TupleSet:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise InvalidInput("tuple file must start with a header 'd k'")
    d, k = int(rows[0][0]), int(rows[0][1])
    body = rows[1:]
    if len(body) != k:
        raise InvalidInput(f"header announces {k} tuples, found {len(body)}")
    return TupleSet.of([[int(x) for x in row] for row in body], d)


@dataclass(frozen=True)
class MutuallySeparated:
    s: tuple[int, ...]
    c: TupleSet
    r: int

    variant = "mutually_separated"


TupleUqwOutcome = Union[MutuallySeparated, ExplicitMinor, DensityWitness]


def _coordinates_separated(g: Graph, ts: TupleSet, i: int, s: set[int], radius: int) -> tuple[int, int] | None:
    """First pair of tuple indices whose i-th coordinates are not separated, if any."""
    owner: dict[int, int] = {}
    for idx, v in enumerate(ts.column(i)):
        if v in s:
            continue
        if v in owner:
            return owner[v], idx
        owner[v] = idx
    for v, idx in owner.items():
        for u in distances(g, [v], radius, s):
            if u != v and u in owner:
                return tuple(sorted((idx, owner[u])))
    return None


def coordinate_separate(g: Graph, a: TupleSet, i: int, r: int, target: int, t: int = 3,
                        s: Iterable[int] = ()) -> tuple[TupleSet, tuple[int, ...]] | ExplicitMinor | DensityWitness:
    """Shrink ``a`` so that i-th coordinates are 2r-separated by s + S'.

    Tuples whose i-th coordinate already lies in ``s`` are kept. Returns
    (B', S') or a minor witness from the inner uqw call.
    """
    if not 1 <= i <= a.d:
        raise InvalidInput(f"coordinate {i} not in 1..{a.d}")
    a.check(g)
    s = set(s)
    kept = [tup for tup in a.tuples if tup[i - 1] in s]
    rest = [tup for tup in a.tuples if tup[i - 1] not in s]
    if not rest:
        return TupleSet(a.d, tuple(kept)), ()

    first: dict[int, tuple[int, ...]] = {}
    for tup in rest:
        first.setdefault(tup[i - 1], tup)
    h = g.without(s)
    out = uqw_solve(h, sorted(first), UqwParams(2 * r, t, max(1, target), BEST_EFFORT))
    if isinstance(out, ExplicitMinor):
        return out
    if isinstance(out, DensityWitness):
        return DensityWitness(out.y, out.threshold, out.t, tuple(sorted(s | set(out.removed))),
                              out.contract_centers, out.contract_radius, out.r)
    chosen = set(out.b)
    wide = [tup for tup in rest if tup[i - 1] in chosen and first[tup[i - 1]] == tup]

    counts = Counter(tup[i - 1] for tup in rest)
    star_value = min(counts, key=lambda v: (-counts[v], v))
    pigeon = [tup for tup in rest if tup[i - 1] == star_value]

    if len(wide) >= len(pigeon):
        picked, extra = wide, out.s
    else:
        picked, extra = pigeon, (star_value,)
    keep = set(kept) | set(picked)
    b = TupleSet(a.d, tuple(tup for tup in a.tuples if tup in keep))
    return b, tuple(sorted(extra))


def step1(g: Graph, a: TupleSet, r: int, m: int, t: int = 3):
    """Coordinate-wise 2r-separation for i = 1..d; returns (B, S) or a witness."""
    s: set[int] = set()
    cur = a
    for i in range(1, a.d + 1):
        res = coordinate_separate(g, cur, i, r, m, t, s)
        if not isinstance(res, tuple):
            return res
        cur, extra = res
        s |= set(extra)
    for i in range(1, a.d + 1):
        bad = _coordinates_separated(g, cur, i, s, 2 * r)
        if bad is not None:
            raise CertificateError(f"coordinate {i} of tuples {bad} not {2 * r}-separated")
    return cur, tuple(sorted(s))


def greedy_mutual_separation(g: Graph, b: TupleSet, s: Iterable[int], r: int) -> TupleSet:
    """Maximal mutually r-separated subfamily, scanning ``b`` in order."""
    b.check(g)
    s = set(s)
    check_vertices(g, s)
    for i in range(1, b.d + 1):
        bad = _coordinates_separated(g, b, i, s, 2 * r)
        if bad is not None:
            x, y = b.tuples[bad[0]], b.tuples[bad[1]]
            raise PreconditionError(
                f"coordinate {i} of tuples {x} and {y} is not {2 * r}-separated by S")
    blocked: set[int] = set()
    kept = []
    for tup in b.tuples:
        live = [v for v in tup if v not in s]
        if any(v in blocked for v in live):
            continue
        kept.append(tup)
        if live:
            blocked |= set(distances(g, live, r, s))
    c = TupleSet(b.d, tuple(kept))
    need = math.ceil(len(b) / (b.d ** 2 + 1))
    assert len(c) >= need, f"greedy kept {len(c)} < {need} tuples"
    return c


def mutually_separated_problems(g: Graph, c: TupleSet, s: Iterable[int], r: int) -> list[str]:
    """Pairwise re-check of mutual r-separation, one BFS per tuple."""
    s = set(s)
    problems = []
    tuples = c.tuples
    for idx, x in enumerate(tuples):
        live = [v for v in x if v not in s]
        if not live:
            continue
        reach = distances(g, live, r, s)
        for y in tuples[idx + 1:]:
            hit = [v for v in y if v not in s and v in reach]
            if hit:
                problems.append(f"tuples {x} and {y} are not {r}-separated (vertex {hit[0]})")
    return problems


def verify_tuple_outcome(g: Graph, outcome: TupleUqwOutcome) -> list[str]:
    if isinstance(outcome, MutuallySeparated):
        try:
            outcome.c.check(g)
            check_vertices(g, outcome.s)
        except InvalidInput as exc:
            return [str(exc)]
        return mutually_separated_problems(g, outcome.c, outcome.s, outcome.r)
    return verify_outcome(g, outcome)


def tuple_uqw_solve(g: Graph, a: TupleSet, r: int, t: int, m: int | None = None) -> TupleUqwOutcome:
    a.check(g)
    if r < 1 or t < 2:
        raise InvalidInput("need r >= 1 and t >= 2")
    m = len(a) if m is None else m
    res = step1(g, a, r, (a.d ** 2 + 1) * m, t)
    if not isinstance(res, tuple):
        outcome: TupleUqwOutcome = res
    else:
        b, s = res
        outcome = MutuallySeparated(s, greedy_mutual_separation(g, b, s, r), r)
    problems = verify_tuple_outcome(g, outcome)
    if problems:
        raise CertificateError("; ".join(problems))
    return outcome


def tuple_outcome_to_json(outcome: TupleUqwOutcome) -> dict:
    if isinstance(outcome, MutuallySeparated):
        return {"variant": outcome.variant, "r": outcome.r, "d": outcome.c.d,
                "S": list(outcome.s), "C": [list(tup) for tup in outcome.c.tuples]}
    return outcome_to_json(outcome)


def tuple_outcome_from_json(d: dict) -> TupleUqwOutcome:
    if d.get("variant") == MutuallySeparated.variant:
        try:
            return MutuallySeparated(tuple(d["S"]), TupleSet.of(d["C"], int(d["d"])), int(d["r"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise CertificateError(f"malformed certificate: {exc}") from None
    return outcome_from_json(d)
