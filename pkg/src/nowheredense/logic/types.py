"""phi-types of object tuples over an ordered parameter set, as bitsets."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from ..graph import BudgetExceeded, Graph, check_vertices
from .evaluate import EvaluationError, Evaluator
from .formula import Formula

DEFAULT_TYPE_BUDGET = 20_000_000


@dataclass(frozen=True)
class PhiType:
    """Bit i is set iff phi(u, w_i) holds, w_i the i-th tuple of A^k in lexicographic order."""

    params: tuple[int, ...]
    arity: int
    bits: int

    @property
    def size(self) -> int:
        return len(self.params) ** self.arity

    def members(self) -> list[tuple[int, ...]]:
        return [w for i, w in enumerate(product(self.params, repeat=self.arity)) if self.bits >> i & 1]

    def bitstring(self) -> str:
        """Bits in index order, index 0 first."""
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(self.size))


def _assign(f: Formula, u: Sequence[int], w: Sequence[int]) -> dict[str, int]:
    env = dict(zip(f.x, u))
    env.update(zip(f.y, w))
    return env


def phi_type(g: Graph, f: Formula, u: Sequence[int], a: Sequence[int],
             evaluator: Evaluator | None = None) -> PhiType:
    if len(u) != len(f.x):
        raise EvaluationError(f"object tuple has length {len(u)}, formula expects {len(f.x)}")
    check_vertices(g, list(u) + list(a))
    ev = evaluator or Evaluator(g, f)
    bits = 0
    for i, w in enumerate(product(a, repeat=len(f.y))):
        if ev.holds(_assign(f, u, w)):
            bits |= 1 << i
    return PhiType(tuple(a), len(f.y), bits)


def type_space(g: Graph, f: Formula, w: Iterable[int] | None, a: Sequence[int],
               budget: int = DEFAULT_TYPE_BUDGET) -> set[PhiType]:
    """All phi-types over ``a`` realised by tuples from ``w`` (all of V when None)."""
    w = list(range(g.n)) if w is None else sorted(set(w))
    a = list(a)
    check_vertices(g, w + a)
    cost = len(a) ** len(f.y) * len(w) ** len(f.x)
    if cost > budget:
        raise BudgetExceeded(f"type space needs {cost} evaluations, budget is {budget}")
    ev = Evaluator(g, f)
    return {phi_type(g, f, u, a, ev) for u in product(w, repeat=len(f.x))}


def type_count(g: Graph, f: Formula, w: Iterable[int] | None, a: Sequence[int],
               budget: int = DEFAULT_TYPE_BUDGET) -> int:
    return len(type_space(g, f, w, a, budget))
