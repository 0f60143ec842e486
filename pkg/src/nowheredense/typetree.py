"""{D,S}-labelled type trees over a 1-independent vertex set.

A vertex is inserted by walking down from the root: at node ``w`` it moves to
the son ``wS`` when it is within distance 2 of ``label(w)`` and to the
daughter ``wD`` otherwise, and it is placed at the first missing node.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .graph import Graph, PreconditionError, check_vertices, distances


def alternations(word: str) -> int:
    count = 0
    prev = "D"
    for ch in word:
        if ch != prev:
            count += 1
        prev = ch
    return count


def alternation_positions(word: str) -> list[int]:
    """0-based indices j with word[j] != word[j-1] (word[-1] read as D)."""
    out = []
    prev = "D"
    for j, ch in enumerate(word):
        if ch != prev:
            out.append(j)
        prev = ch
    return out


@dataclass
class TypeTree:
    nodes: dict[str, int] = field(default_factory=dict)
    insertion_order: list[int] = field(default_factory=list)
    words: dict[int, str] = field(default_factory=dict)

    def insert(self, a: int, close: Callable[[int, int], bool]) -> str:
        w = ""
        while w in self.nodes:
            w += "S" if close(a, self.nodes[w]) else "D"
        self.nodes[w] = a
        self.words[a] = w
        self.insertion_order.append(a)
        return w

    @property
    def depth(self) -> int:
        return max((len(w) for w in self.nodes), default=0)

    @property
    def alternation_rank(self) -> int:
        return max((alternations(w) for w in self.nodes), default=0)

    def __len__(self) -> int:
        return len(self.nodes)

    def label(self, word: str) -> int:
        return self.nodes[word]

    def letter_set(self, word: str, letter: str) -> list[int]:
        """Labels of the proper prefixes u of ``word`` with ``u + letter`` a prefix."""
        return [self.nodes[word[:j]] for j, ch in enumerate(word) if ch == letter]

    def ordered_words(self) -> list[str]:
        """Deepest first, then leftmost (D before S)."""
        return sorted(self.nodes, key=lambda w: (-len(w), w))


def distance2_oracle(g: Graph, a: Iterable[int]) -> Callable[[int, int], bool]:
    balls = {v: set(distances(g, [v], 2)) for v in a}
    return lambda u, v: v in balls[u]


def check_one_independent(g: Graph, a: list[int]) -> None:
    members = set(a)
    for v in a:
        hit = g.neighbor_set(v) & members
        if hit:
            raise PreconditionError(f"set is not 1-independent: {v} adjacent to {min(hit)}")


def build_type_tree(g: Graph, a: Iterable[int]) -> TypeTree:
    a = list(a)
    check_vertices(g, a)
    if len(set(a)) != len(a):
        raise PreconditionError("insertion order contains duplicates")
    check_one_independent(g, a)
    close = distance2_oracle(g, a)
    tree = TypeTree()
    for v in a:
        tree.insert(v, close)
    return tree


def replay_matches(g: Graph, tree: TypeTree) -> bool:
    return build_type_tree(g, tree.insertion_order).nodes == tree.nodes


def node_count_bound_holds(tree: TypeTree) -> bool:
    """Fewer than h^(2t) nodes when rank <= 2t-1 and depth <= h-1 (h, t >= 2)."""
    t = max(2, (tree.alternation_rank + 2) // 2)
    h = max(2, tree.depth + 1)
    return len(tree) < h ** (2 * t)
