"""Finite set systems as bitmasks: traces, shattering, VC-dimension."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable

from ..graph import BudgetExceeded

MAX_GROUND = 64


def to_mask(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def from_mask(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class SetSystem:
    ground: int
    sets: tuple[int, ...]

    def __post_init__(self):
        if self.ground < 0:
            raise ValueError("ground set size must be non-negative")
        full = (1 << self.ground) - 1
        for s in self.sets:
            if s & ~full:
                raise ValueError(f"set {from_mask(s)} is not inside the ground set 0..{self.ground - 1}")

    @classmethod
    def of(cls, ground: int, sets: Iterable[Iterable[int]]) -> "SetSystem":
        return cls(ground, tuple(to_mask(s) for s in sets))

    def members(self) -> list[list[int]]:
        return [from_mask(s) for s in self.sets]

    def dedup(self) -> "SetSystem":
        return SetSystem(self.ground, tuple(sorted(set(self.sets))))


def shatter_count(sys: SetSystem, a: Iterable[int] | int) -> int:
    """Number of distinct traces F & A."""
    mask = a if isinstance(a, int) else to_mask(a)
    return len({s & mask for s in sys.sets})


def is_shattered(sys: SetSystem, a: Iterable[int] | int) -> bool:
    mask = a if isinstance(a, int) else to_mask(a)
    return shatter_count(sys, mask) == 1 << mask.bit_count()


def vc_dimension(sys: SetSystem, budget: int = 5_000_000) -> int:
    """Largest shattered subset size, growing shattered sets level by level
    (every subset of a shattered set is shattered)."""
    if sys.ground > MAX_GROUND:
        raise BudgetExceeded(f"ground set of size {sys.ground} exceeds {MAX_GROUND}")
    sets = set(sys.sets)
    if not sets:
        return 0
    level = {0}
    dim = 0
    work = 0
    while level:
        nxt = set()
        for a in level:
            top = a.bit_length()
            for e in range(top, sys.ground):
                b = a | 1 << e
                # every k-subset of b must already be shattered
                if any((b & ~(1 << x)) not in level for x in from_mask(a)):
                    continue
                work += len(sets)
                if work > budget:
                    raise BudgetExceeded("VC-dimension search exceeded its budget")
                if len({s & b for s in sets}) == 1 << b.bit_count():
                    nxt.add(b)
        if nxt:
            dim += 1
        level = nxt
    return dim


def sauer_shelah_bound(n: int, d: int) -> int:
    return sum(comb(n, i) for i in range(d + 1))

