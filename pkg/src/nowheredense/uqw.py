"""Constructive uniform quasi-wideness.

Given a graph G, a vertex set A, a radius r and a clique bound t, find a
separator S with |S| < t and a large B inside A - S that is r-independent in
G - S, or exhibit a witness that K_t is a shallow minor of G. Every result is
returned together with enough data to re-check it from scratch.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Union

from .graph import (Graph, InvalidInput, MinorModel, PreconditionError, branch_radius,
                    check_vertices, contract_balls, distances, is_r_independent,
                    verify_minor_model)
from .typetree import TypeTree, alternation_positions, alternations, check_one_independent, distance2_oracle

GUARANTEED = "guaranteed"
BEST_EFFORT = "best_effort"


class TargetNotMet(RuntimeError):
    """Guaranteed mode could neither reach the target nor find a witness."""

    def __init__(self, outcome: "Separated", target: int):
        super().__init__(f"certified |B| = {len(outcome.b)} < target m = {target}")
        self.outcome = outcome
        self.target = target


class CertificateError(RuntimeError):
    pass


@dataclass(frozen=True)
class UqwParams:
    r: int
    t: int
    m: int | None = None
    mode: str = BEST_EFFORT

    def __post_init__(self):
        if self.r < 1:
            raise InvalidInput("radius r must be >= 1")
        if self.t < 2:
            raise InvalidInput("clique bound t must be >= 2")
        if self.m is not None and self.m < 1:
            raise InvalidInput("target m must be >= 1")
        if self.mode not in (GUARANTEED, BEST_EFFORT):
            raise InvalidInput(f"unknown mode {self.mode!r}")
        if self.mode == GUARANTEED and self.m is None:
            raise InvalidInput("guaranteed mode needs a target m")

    @property
    def beta(self) -> int:
        return 4 * self.t + 1

    @property
    def gamma(self) -> int:
        return self.beta ** (2 * self.t)

    @property
    def m_clamped(self) -> int:
        return max(self.m or 1, self.t ** 8)

    @property
    def ell(self) -> int:
        return self.m_clamped


# ---------------------------------------------------------------- outcomes

@dataclass(frozen=True)
class Separated:
    s: tuple[int, ...]
    b: tuple[int, ...]
    r: int
    t: int
    a: tuple[int, ...] | None = None

    variant = "separated"

    @property
    def m_achieved(self) -> int:
        return len(self.b)


@dataclass(frozen=True)
class ExplicitMinor:
    model: MinorModel
    t: int
    r: int = 0

    variant = "explicit_minor"


@dataclass(frozen=True)
class DensityWitness:
    """Y pairwise at distance exactly 2 in the residual graph while no vertex
    has ``threshold`` or more neighbours in Y; with |Y| large enough relative
    to the observed maximum coverage this forces K_t as a depth-4 minor of the
    residual graph. The residual graph is G - removed with the radius
    ``contract_radius`` balls around ``contract_centers`` contracted."""

    y: tuple[int, ...]
    threshold: int
    t: int
    removed: tuple[int, ...] = ()
    contract_centers: tuple[int, ...] = ()
    contract_radius: int = 0
    r: int = 0

    variant = "density_witness"


UqwOutcome = Union[Separated, ExplicitMinor, DensityWitness]


# ---------------------------------------------------------------- apex step

@dataclass
class ApexResult:
    kind: str  # two_independent | apex | minor | density
    tree: TypeTree
    x: list[int]
    y: list[int] = field(default_factory=list)
    apex: int | None = None
    coverage: int = 0
    threshold: int = 0
    model: MinorModel | None = None


def fourth_root_ceil(x: int) -> int:
    k = max(0, int(round(x ** 0.25)) - 1)
    while k ** 4 < x:
        k += 1
    return k


def density_forces_minor(size: int, coverage: int, t: int) -> bool:
    """True when |Y|(|Y|-1)/k > C(t+1,2) |Y|^(3/2) for k = max coverage.

    A random radius-1 grouping of the common neighbours then yields a graph on
    Y too dense to exclude K_t as a depth-1 minor, hence K_t is a depth-4
    minor of the host graph.
    """
    if coverage < 1 or size < 2 or t < 2:
        return False
    c = math.comb(t + 1, 2)
    return (size - 1) ** 2 > (coverage * c) ** 2 * size


def _claim_minor(g: Graph, tree: TypeTree, word: str, t: int) -> MinorModel:
    pos = alternation_positions(word)[: 2 * t]
    a = [tree.label(word[:j]) for j in pos[0::2]]
    b = [tree.label(word[:j]) for j in pos[1::2]]
    sets = []
    for j in range(t):
        members = {a[j], b[j]}
        for i in range(j + 1):
            common = g.neighbor_set(a[i]) & g.neighbor_set(b[j])
            members.add(min(common))
        sets.append(members)
    return MinorModel.build(2, sets, b)


def apex_step(g: Graph, a: Iterable[int], t: int, m: int, ell: int) -> ApexResult:
    a = sorted(set(a))
    if not a:
        raise InvalidInput("apex step needs a non-empty set")
    check_vertices(g, a)
    check_one_independent(g, a)
    close = distance2_oracle(g, a)
    tree = TypeTree()
    for v in a:
        w = tree.insert(v, close)
        if alternations(w) >= 2 * t:
            model = _claim_minor(g, tree, w, t)
            return ApexResult("minor", tree, [], model=model)

    # deepest word, leftmost among the deepest
    word = tree.ordered_words()[0]
    x = tree.letter_set(word, "D") + [tree.label(word)]
    if len(x) >= m:
        return ApexResult("two_independent", tree, sorted(x))

    y = sorted(tree.letter_set(word, "S") + [tree.label(word)])
    hits: dict[int, int] = {}
    for u in y:
        for v in g.neighbors(u):
            hits[v] = hits.get(v, 0) + 1
    if not hits or len(y) < 2:
        return ApexResult("two_independent", tree, sorted(x), y=y)
    apex = min(hits, key=lambda v: (-hits[v], v))
    coverage = hits[apex]
    threshold = fourth_root_ceil(ell)
    kind = "apex"
    if coverage < threshold and density_forces_minor(len(y), coverage, t):
        kind = "density"
    return ApexResult(kind, tree, sorted(x), y=y, apex=apex, coverage=coverage, threshold=threshold)


# ---------------------------------------------------------------- engine

def _extend(g: Graph, chosen: list[int], pool: Iterable[int], radius: int) -> list[int]:
    """Greedily grow ``chosen`` by pool vertices keeping pairwise distance > radius."""
    out = list(chosen)
    blocked: set[int] = set()
    for v in out:
        blocked |= set(distances(g, [v], radius))
    for u in sorted(set(pool) - set(out)):
        if u not in blocked:
            out.append(u)
            blocked |= set(distances(g, [u], radius))
    return sorted(out)


def _ramsey(g: Graph, a: list[int], t: int, m: int) -> tuple[str, list[int]]:
    todo = sorted(a)
    clique: list[int] = []
    indep: list[int] = []
    c, i = t, m
    while todo:
        v, rest = todo[0], todo[1:]
        if c == 1:
            return "clique", clique + [v]
        if i == 1:
            indep.append(v)
            break
        nbrs = [u for u in rest if g.has_edge(v, u)]
        non = [u for u in rest if not g.has_edge(v, u)]
        need_n = math.comb(c + i - 3, c - 2)
        need_m = math.comb(c + i - 3, c - 1)
        if len(nbrs) >= need_n:
            go_n = True
        elif len(non) >= need_m:
            go_n = False
        else:
            go_n = len(nbrs) > len(non)
        if go_n:
            clique.append(v)
            c -= 1
            todo = nbrs
        else:
            indep.append(v)
            i -= 1
            todo = non
    return "independent", _extend(g, indep, a, 1)


@dataclass
class _LoopResult:
    kind: str
    s: list[int] = field(default_factory=list)
    b: list[int] = field(default_factory=list)
    model: MinorModel | None = None
    y: list[int] = field(default_factory=list)
    threshold: int = 0
    removed: list[int] = field(default_factory=list)
    iterations: int = 0


def _apex_loop(g: Graph, a: list[int], t: int, m: int, budget: int, ell: int) -> _LoopResult:
    s: list[int] = []
    cur = sorted(a)
    best_s: list[int] = []
    best_b: list[int] = []
    h = g
    iterations = 0
    while cur:
        iterations += 1
        res = apex_step(h, cur, t, m, ell)
        if res.kind == "minor":
            return _LoopResult("minor", model=res.model, iterations=iterations)
        if len(s) <= budget:
            x = _extend(h, res.x, cur, 2)
            if len(x) > len(best_b):
                best_s, best_b = list(s), x
            if len(x) >= m:
                break
        if res.kind == "density":
            return _LoopResult("density", y=res.y, threshold=res.threshold,
                               removed=list(s), iterations=iterations)
        if res.kind == "two_independent":
            break
        v = res.apex
        s.append(v)
        cur = [u for u in cur if h.has_edge(v, u)]
        h = g.without(s)
        if len(s) == t:
            if len(cur) >= t:
                sets = [{w, sv} for w, sv in zip(cur[:t], s)]
                model = MinorModel.build(1, sets, cur[:t])
                return _LoopResult("minor", model=model, iterations=iterations)
            break
    return _LoopResult("separated", s=best_s, b=best_b, iterations=iterations)


def _measured_depth(g: Graph, sets: list[set[int]], centers: list[int]) -> int:
    depth = 0
    for bs, c in zip(sets, centers):
        depth = max(depth, int(branch_radius(g, frozenset(bs), c)))
    return depth


def engine_step(g: Graph, a: Iterable[int], r: int, t: int, m: int,
                budget: int | None = None, ell: int | None = None) -> UqwOutcome:
    """One radius increment: ``a`` must be (r-1)-independent in ``g``."""
    a = sorted(set(a))
    check_vertices(g, a)
    if r < 1 or t < 2 or m < 1:
        raise InvalidInput("need r >= 1, t >= 2, m >= 1")
    if not is_r_independent(g, a, r - 1):
        raise PreconditionError(f"input set is not {r - 1}-independent")
    budget = t - 1 if budget is None else budget
    ell = max(t ** 8, m) if ell is None else ell
    if not a:
        return Separated((), (), r, t)
    s = (r - 1) // 2
    qm = contract_balls(g, a, s) if s > 0 else None
    q = qm.quotient if qm else g
    image = [qm.forward[v] for v in a] if qm else list(a)
    back = {qv: v for qv, v in zip(image, a)}

    def lift_vertex(qv: int) -> int:
        if qv in back:
            return back[qv]
        if qm is None:
            return qv
        members = [v for v, f in enumerate(qm.forward) if f == qv]
        return members[0]

    def lift_set(qs: Iterable[int]) -> set[int]:
        if qm is None:
            return set(qs)
        qs = set(qs)
        return {v for v, f in enumerate(qm.forward) if f in qs}

    if r % 2 == 1:
        kind, found = _ramsey(q, image, t, m)
        if kind == "clique":
            sets = [lift_set([qv]) for qv in found]
            centers = [lift_vertex(qv) for qv in found]
            model = MinorModel.build(_measured_depth(g, sets, centers), sets, centers)
            return ExplicitMinor(model, t, r)
        return Separated((), tuple(sorted(lift_vertex(qv) for qv in found)), r, t)

    res = _apex_loop(q, image, t, m, budget, ell)
    if res.kind == "minor":
        sets = [lift_set(bs) for bs in res.model.branch_sets]
        centers = [lift_vertex(c) for c in res.model.centers]
        model = MinorModel.build(_measured_depth(g, sets, centers), sets, centers)
        return ExplicitMinor(model, t, r)
    if res.kind == "density":
        return DensityWitness(tuple(sorted(lift_vertex(v) for v in res.y)), res.threshold, t,
                              removed=tuple(sorted(lift_vertex(v) for v in res.removed)),
                              contract_centers=tuple(a) if qm else (),
                              contract_radius=s, r=r)
    return Separated(tuple(sorted(lift_vertex(v) for v in res.s)),
                     tuple(sorted(lift_vertex(v) for v in res.b)), r, t)


# ---------------------------------------------------------------- driver

def uqw_solve(g: Graph, a: Iterable[int], params: UqwParams) -> UqwOutcome:
    a = list(a)
    check_vertices(g, a)
    if len(set(a)) != len(a):
        raise InvalidInput("vertex set contains duplicates")
    r, t = params.r, params.t
    target = params.m if params.m is not None else max(1, len(a))
    if is_r_independent(g, a, r):
        outcome: UqwOutcome = Separated((), tuple(sorted(a)), r, t, tuple(sorted(a)))
    else:
        outcome = _iterate(g, a, r, t, target, params.ell)
    problems = verify_outcome(g, outcome)
    if problems:
        raise CertificateError("; ".join(problems))
    if params.mode == GUARANTEED and isinstance(outcome, Separated) and len(outcome.b) < target:
        raise TargetNotMet(outcome, target)
    return outcome


def _iterate(g: Graph, a: list[int], r: int, t: int, target: int, ell: int) -> UqwOutcome:
    s: list[int] = []
    cur = sorted(a)
    for i in range(1, r + 1):
        h = g.without(s)
        step = engine_step(h, cur, i, t, target, budget=t - 1 - len(s), ell=ell)
        if isinstance(step, ExplicitMinor):
            return ExplicitMinor(step.model, t, r)
        if isinstance(step, DensityWitness):
            return DensityWitness(step.y, step.threshold, t,
                                  removed=tuple(sorted(set(s) | set(step.removed))),
                                  contract_centers=step.contract_centers,
                                  contract_radius=step.contract_radius, r=r)
        s = sorted(set(s) | set(step.s))
        cur = list(step.b)
    return Separated(tuple(s), tuple(cur), r, t, tuple(sorted(a)))


def uqw_bound_N(m: int, r: int, t: int, max_digits: int | None = 10_000_000) -> int:
    """(t+1)^((g^r - 1)/(g - 1)) * m^(g^r) with g = (4t+1)^(2t), m clamped at t^8.

    ``max_digits`` guards against values too large to materialise; pass None
    to lift it.
    """
    if m < 1 or r < 1 or t < 1:
        raise InvalidInput("m, r, t must be >= 1")
    gamma = (4 * t + 1) ** (2 * t)
    m = max(m, t ** 8)
    power = gamma ** r
    if max_digits is not None and power * math.log10(m) > max_digits:
        raise OverflowError(f"N(m) has about {power * math.log10(m):.3g} digits")
    return (t + 1) ** ((power - 1) // (gamma - 1)) * m ** power


def uqw_bound_N_log10(m: int, r: int, t: int) -> float:
    gamma = (4 * t + 1) ** (2 * t)
    m = max(m, t ** 8)
    power = gamma ** r
    return (power - 1) // (gamma - 1) * math.log10(t + 1) + power * math.log10(m)


# ---------------------------------------------------------------- certificates

def verify_outcome(g: Graph, outcome: UqwOutcome) -> list[str]:
    """Re-check a UQW outcome from scratch; returns the list of violations."""
    problems: list[str] = []
    try:
        if isinstance(outcome, Separated):
            check_vertices(g, list(outcome.s) + list(outcome.b))
            s, b = set(outcome.s), set(outcome.b)
            if len(s) >= outcome.t:
                problems.append(f"|S| = {len(s)} is not < t = {outcome.t}")
            if s & b:
                problems.append(f"B meets S at {sorted(s & b)}")
            elif not is_r_independent(g, b, outcome.r, s):
                problems.append(f"B is not {outcome.r}-independent in G - S")
            if outcome.a is not None and not b <= set(outcome.a):
                problems.append("B is not contained in A")
        elif isinstance(outcome, ExplicitMinor):
            if outcome.model.t < outcome.t:
                problems.append(f"model has {outcome.model.t} branch sets, need {outcome.t}")
            problems += verify_minor_model(g, outcome.model)
        elif isinstance(outcome, DensityWitness):
            problems += _check_density(g, outcome)
        else:
            problems.append(f"unknown outcome type {type(outcome).__name__}")
    except (InvalidInput, PreconditionError) as exc:
        problems.append(str(exc))
    return problems


def _check_density(g: Graph, w: DensityWitness) -> list[str]:
    h = g.without(w.removed)
    y = list(w.y)
    if w.contract_radius > 0:
        qm = contract_balls(h, w.contract_centers, w.contract_radius)
        if not set(y) <= set(w.contract_centers):
            return ["Y is not among the contraction centers"]
        h = qm.quotient
        y = [qm.forward[v] for v in y]
    problems = []
    ys = set(y)
    if len(ys) != len(y):
        problems.append("Y has duplicates")
    for v in y:
        dist = distances(h, [v], 2)
        far = [u for u in ys if u != v and dist.get(u) != 2]
        if far:
            problems.append(f"Y vertices {v} and {far[0]} are not at distance exactly 2")
            break
    cover = max((len(h.neighbor_set(v) & ys) for v in range(h.n)), default=0)
    if cover >= w.threshold:
        problems.append(f"a vertex has {cover} >= {w.threshold} neighbours in Y")
    if not density_forces_minor(len(ys), cover, w.t):
        problems.append(f"|Y| = {len(ys)} too small for coverage {cover} to force K_{w.t}")
    return problems


def outcome_to_json(outcome: UqwOutcome) -> dict:
    d = {"variant": outcome.variant, "r": outcome.r, "t": outcome.t, "S": None, "B": None,
         "A": None, "branch_sets": None, "Y": None, "threshold": None}
    if isinstance(outcome, Separated):
        d.update(S=list(outcome.s), B=list(outcome.b),
                 A=None if outcome.a is None else list(outcome.a))
    elif isinstance(outcome, ExplicitMinor):
        d["depth"] = outcome.model.depth
        d["branch_sets"] = [{"center": c, "vertices": sorted(bs)}
                            for bs, c in zip(outcome.model.branch_sets, outcome.model.centers)]
    else:
        d.update(Y=list(outcome.y), threshold=outcome.threshold, removed=list(outcome.removed),
                 contract_centers=list(outcome.contract_centers),
                 contract_radius=outcome.contract_radius)
    return d


def outcome_from_json(d: dict) -> UqwOutcome:
    variant = d.get("variant")
    try:
        if variant == Separated.variant:
            a = d.get("A")
            return Separated(tuple(d["S"]), tuple(d["B"]), int(d["r"]), int(d["t"]),
                             None if a is None else tuple(a))
        if variant == ExplicitMinor.variant:
            sets = [bs["vertices"] for bs in d["branch_sets"]]
            centers = [bs["center"] for bs in d["branch_sets"]]
            return ExplicitMinor(MinorModel.build(int(d["depth"]), sets, centers),
                                 int(d["t"]), int(d.get("r", 0)))
        if variant == DensityWitness.variant:
            return DensityWitness(tuple(d["Y"]), int(d["threshold"]), int(d["t"]),
                                  tuple(d.get("removed", ())), tuple(d.get("contract_centers", ())),
                                  int(d.get("contract_radius", 0)), int(d.get("r", 0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateError(f"malformed certificate: {exc}") from None
    raise CertificateError(f"unknown certificate variant {variant!r}")


def dumps_certificate(d: dict) -> str:
    return json.dumps(d, sort_keys=True, indent=2) + "\n"
