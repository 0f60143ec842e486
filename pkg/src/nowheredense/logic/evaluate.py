"""Model checking of first-order formulas on finite graphs.

Quantifiers range over all vertices, but the candidates actually tried are cut
down by a guard: a superset of the witnesses computed from the atoms that tie
the quantified variable to variables already assigned (neighbourhoods,
singletons, color classes). Results of quantified subformulas are memoised on
the values of their free variables.
"""

from __future__ import annotations

from typing import Callable, Mapping, Optional

from ..graph import Graph
from .formula import ATOMS, And, Color, Edge, Eq, Exists, Forall, Formula, Node, Not, Or, free_vars

Env = dict
Guard = Optional[Callable[[Env], frozenset]]


class EvaluationError(ValueError):
    pass


def nnf(n: Node, negate: bool = False) -> Node:
    """Negation normal form: Not only directly above atoms."""
    if isinstance(n, ATOMS):
        return Not(n) if negate else n
    if isinstance(n, Not):
        return nnf(n.f, not negate)
    if isinstance(n, And):
        parts = nnf(n.left, negate), nnf(n.right, negate)
        return Or(*parts) if negate else And(*parts)
    if isinstance(n, Or):
        parts = nnf(n.left, negate), nnf(n.right, negate)
        return And(*parts) if negate else Or(*parts)
    if isinstance(n, Exists):
        return Forall(n.var, nnf(n.body, True)) if negate else Exists(n.var, nnf(n.body))
    return Exists(n.var, nnf(n.body, True)) if negate else Forall(n.var, nnf(n.body))


class Evaluator:
    """Compiled evaluator of one formula on one graph."""

    def __init__(self, g: Graph, f: Formula | Node):
        self.g = g
        self.formula = f if isinstance(f, Formula) else None
        body = f.body if isinstance(f, Formula) else f
        self.free = free_vars(body)
        self._color_class: dict[int, frozenset[int]] = {}
        self._all = range(g.n)
        self._run = self._compile(nnf(body))

    def color_class(self, k: int) -> frozenset[int]:
        if k not in self._color_class:
            self._color_class[k] = frozenset(v for v in range(self.g.n) if k in self.g.colors[v])
        return self._color_class[k]

    def holds(self, assignment: Mapping[str, int]) -> bool:
        missing = self.free - set(assignment)
        if missing:
            raise EvaluationError(f"no value for free variables {sorted(missing)}")
        env = dict(assignment)
        for var in self.free:
            v = env[var]
            if not (isinstance(v, int) and 0 <= v < self.g.n):
                raise EvaluationError(f"value {v!r} of {var} is not a vertex")
        return self._run(env)

    # -- compilation

    def _compile(self, n: Node) -> Callable[[Env], bool]:
        g = self.g
        if isinstance(n, Edge):
            a, b = n.a, n.b
            return lambda env: g.has_edge(env[a], env[b])
        if isinstance(n, Eq):
            a, b = n.a, n.b
            return lambda env: env[a] == env[b]
        if isinstance(n, Color):
            k, v = n.k, n.v
            return lambda env: k in g.colors[env[v]]
        if isinstance(n, Not):
            inner = self._compile(n.f)
            return lambda env: not inner(env)
        if isinstance(n, And):
            left, right = self._compile(n.left), self._compile(n.right)
            return lambda env: left(env) and right(env)
        if isinstance(n, Or):
            left, right = self._compile(n.left), self._compile(n.right)
            return lambda env: left(env) or right(env)
        return self._compile_quantifier(n)

    def _compile_quantifier(self, n: Exists | Forall) -> Callable[[Env], bool]:
        var = n.var
        body = self._compile(n.body)
        outer = free_vars(n)
        keys = tuple(sorted(outer))
        if isinstance(n, Exists):
            guard = self._guard(n.body, var, outer)
        else:
            guard = self._guard(nnf(n.body, True), var, outer)
        want = isinstance(n, Exists)
        cache: dict[tuple, bool] = {}
        everything = self._all

        def run(env: Env) -> bool:
            key = tuple(env[k] for k in keys)
            hit = cache.get(key)
            if hit is not None:
                return hit
            cands = everything if guard is None else sorted(guard(env))
            saved = env.get(var, None)
            result = not want
            for c in cands:
                env[var] = c
                if body(env) == want:
                    result = want
                    break
            if saved is None:
                env.pop(var, None)
            else:
                env[var] = saved
            cache[key] = result
            return result

        return run

    def _guard(self, n: Node, v: str, outer: frozenset[str]) -> Guard:
        """Function of the outer assignment returning a superset of the values of
        ``v`` that can make ``n`` true, or None for no restriction."""
        g = self.g
        if isinstance(n, Edge):
            if n.a == v and n.b == v:
                return lambda env: frozenset()
            other = n.b if n.a == v else n.a if n.b == v else None
            if other is None or other not in outer:
                return None
            return lambda env: g.neighbor_set(env[other])
        if isinstance(n, Eq):
            other = n.b if n.a == v else n.a if n.b == v else None
            if other is None or other == v or other not in outer:
                return None
            return lambda env: frozenset((env[other],))
        if isinstance(n, Color):
            if n.v != v:
                return None
            cls = self.color_class(n.k)
            return lambda env: cls
        if isinstance(n, Not):
            return None
        if isinstance(n, And):
            left = self._guard(n.left, v, outer)
            right = self._guard(n.right, v, outer)
            if left is None:
                return right
            if right is None:
                return left
            return lambda env: left(env) & right(env)
        if isinstance(n, Or):
            left = self._guard(n.left, v, outer)
            right = self._guard(n.right, v, outer)
            if left is None or right is None:
                return None
            return lambda env: left(env) | right(env)
        if n.var == v:
            return None
        w = n.var
        if isinstance(n, Exists):
            # union over the candidate witnesses c for w of the guard for v given w = c
            gw = self._guard(n.body, w, outer - {w})
            gv = self._guard(n.body, v, outer | {w})
            if gw is not None and gv is not None:
                def project(env: Env) -> frozenset:
                    e = dict(env)
                    acc: set[int] = set()
                    for c in gw(env):
                        e[w] = c
                        acc |= gv(e)
                    return frozenset(acc)
                return project
        # the inner variable is not assigned yet, so atoms naming it give no restriction
        return self._guard(n.body, v, outer - {w})


def evaluate(g: Graph, f: Formula | Node, assignment: Mapping[str, int]) -> bool:
    return Evaluator(g, f).holds(assignment)
