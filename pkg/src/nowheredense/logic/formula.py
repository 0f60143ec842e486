"""First-order formulas over (colored) graphs: AST, parser and printer.

Grammar (loosest binding first)::

    formula  := [name '(' vars ';' vars ')' ':='] expr
    expr     := or ['->' expr]
    or       := and ('|' and)*
    and      := unary ('&' unary)*
    unary    := '!' unary | ('exists' | 'forall') var '.' expr | '(' expr ')' | atom
    atom     := 'E(' var ',' var ')' | 'C' k '(' var ')' | var '=' var | var '!=' var
              | 'dist<=' k '(' var ',' var ')'

A formula that is only ``dist<=k`` stands for the distance formula in x, y.
Implications are rewritten to disjunctions while parsing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union


class FormulaSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int | None = None):
        super().__init__(msg if pos is None else f"{msg} at position {pos}")
        self.pos = pos


@dataclass(frozen=True)
class Edge:
    a: str
    b: str


@dataclass(frozen=True)
class Eq:
    a: str
    b: str


@dataclass(frozen=True)
class Color:
    k: int
    v: str


@dataclass(frozen=True)
class Not:
    f: "Node"


@dataclass(frozen=True)
class And:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Or:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Node"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Node"


Node = Union[Edge, Eq, Color, Not, And, Or, Exists, Forall]
ATOMS = (Edge, Eq, Color)


def implies(a: Node, b: Node) -> Node:
    return Or(Not(a), b)


def free_vars(n: Node) -> frozenset[str]:
    if isinstance(n, (Edge, Eq)):
        return frozenset((n.a, n.b))
    if isinstance(n, Color):
        return frozenset((n.v,))
    if isinstance(n, Not):
        return free_vars(n.f)
    if isinstance(n, (And, Or)):
        return free_vars(n.left) | free_vars(n.right)
    return free_vars(n.body) - {n.var}


def rank(n: Node) -> int:
    if isinstance(n, ATOMS):
        return 0
    if isinstance(n, Not):
        return rank(n.f)
    if isinstance(n, (And, Or)):
        return max(rank(n.left), rank(n.right))
    return 1 + rank(n.body)


def size(n: Node) -> int:
    if isinstance(n, ATOMS):
        return 1
    if isinstance(n, Not):
        return 1 + size(n.f)
    if isinstance(n, (And, Or)):
        return 1 + size(n.left) + size(n.right)
    return 1 + size(n.body)


def all_names(n: Node) -> Iterator[str]:
    if isinstance(n, (Edge, Eq)):
        yield n.a
        yield n.b
    elif isinstance(n, Color):
        yield n.v
    elif isinstance(n, Not):
        yield from all_names(n.f)
    elif isinstance(n, (And, Or)):
        yield from all_names(n.left)
        yield from all_names(n.right)
    else:
        yield n.var
        yield from all_names(n.body)


def substitute(n: Node, mapping: dict[str, str]) -> Node:
    """Rename free occurrences (binders shadow)."""
    if isinstance(n, Edge):
        return Edge(mapping.get(n.a, n.a), mapping.get(n.b, n.b))
    if isinstance(n, Eq):
        return Eq(mapping.get(n.a, n.a), mapping.get(n.b, n.b))
    if isinstance(n, Color):
        return Color(n.k, mapping.get(n.v, n.v))
    if isinstance(n, Not):
        return Not(substitute(n.f, mapping))
    if isinstance(n, (And, Or)):
        return type(n)(substitute(n.left, mapping), substitute(n.right, mapping))
    inner = {k: v for k, v in mapping.items() if k != n.var}
    return type(n)(n.var, substitute(n.body, inner))


def _fresh(base: str, used: set[str]) -> str:
    stem = base.rstrip("0123456789") or "z"
    i = 1
    while f"{stem}{i}" in used:
        i += 1
    name = f"{stem}{i}"
    used.add(name)
    return name


def rename_bound(n: Node, reserved: set[str]) -> Node:
    """Give every binder a name distinct from ``reserved`` and from every other binder."""
    used = set(reserved) | set(all_names(n))
    taken = set(reserved)

    def go(node: Node) -> Node:
        if isinstance(node, ATOMS):
            return node
        if isinstance(node, Not):
            return Not(go(node.f))
        if isinstance(node, (And, Or)):
            return type(node)(go(node.left), go(node.right))
        var = node.var
        body = node.body
        if var in taken:
            new = _fresh(var, used)
            body = substitute(body, {var: new})
            var = new
        taken.add(var)
        return type(node)(var, go(body))

    return go(n)


@dataclass(frozen=True)
class Formula:
    """A formula body with its split into object variables x and parameters y."""

    body: Node
    x: tuple[str, ...]
    y: tuple[str, ...]

    def __post_init__(self):
        both = set(self.x) & set(self.y)
        if both:
            raise FormulaSyntaxError(f"variables {sorted(both)} on both sides of the split")
        if len(set(self.x)) != len(self.x) or len(set(self.y)) != len(self.y):
            raise FormulaSyntaxError("split lists a variable twice")
        missing = free_vars(self.body) - set(self.x) - set(self.y)
        if missing:
            raise FormulaSyntaxError(f"free variables {sorted(missing)} are not in the split")

    @property
    def quantifier_rank(self) -> int:
        return rank(self.body)

    @property
    def ell(self) -> int:
        return len(self.x)

    @property
    def d(self) -> int:
        return len(self.x) + len(self.y)

    def __str__(self) -> str:
        return format_formula(self)


def make_formula(body: Node, x: tuple[str, ...] | list[str], y: tuple[str, ...] | list[str]) -> Formula:
    x, y = tuple(x), tuple(y)
    return Formula(rename_bound(body, set(x) | set(y)), x, y)


def quantifier_rank(f: Formula | Node) -> int:
    return rank(f.body if isinstance(f, Formula) else f)


def dist_body(r: int, a: str = "x", b: str = "y", used: set[str] | None = None) -> Node:
    """dist(a, b) <= r by halving: rank ceil(log2 r)."""
    if r < 0:
        raise ValueError("distance bound must be >= 0")
    used = {a, b} if used is None else used
    used |= {a, b}
    if r == 0:
        return Eq(a, b)
    if r == 1:
        return Or(Edge(a, b), Eq(a, b))
    z = _fresh("z", used)
    return Exists(z, And(dist_body((r + 1) // 2, a, z, used), dist_body(r // 2, z, b, used)))


def dist_formula(r: int) -> Formula:
    return Formula(dist_body(r), ("x",), ("y",))


# ---------------------------------------------------------------- parser

_TOKEN = re.compile(r"\s*(?:(?P<dist>dist<=(?P<k>\d+))|(?P<arrow>->)|(?P<neq>!=)|(?P<assign>:=)"
                    r"|(?P<color>C(?P<ck>\d+))|(?P<edge>E)(?=\s*\()|(?P<name>[a-z][a-z0-9]*)"
                    r"|(?P<sym>[()!&|=.,;]))")


def _tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while text[pos:].strip():
        m = _TOKEN.match(text, pos)
        if not m:
            at = len(text) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[at]!r}", at)
        for kind in ("dist", "arrow", "neq", "assign", "color", "edge", "name", "sym"):
            value = m.group(kind)
            if value is None:
                continue
            start = m.start(kind)
            if kind == "dist":
                out.append(("dist", m.group("k"), start))
            elif kind == "color":
                out.append(("color", m.group("ck"), start))
            elif kind == "name" and value in ("exists", "forall"):
                out.append((value, value, start))
            elif kind == "sym":
                out.append((value, value, start))
            else:
                out.append((kind, value, start))
            break
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0
        self.used: set[str] = set()

    @property
    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self, kind: str) -> str:
        k, v, pos = self.peek
        if k != kind:
            want = {"eof": "end of input", "name": "a variable"}.get(kind, repr(kind))
            got = "end of input" if k == "eof" else repr(v)
            raise FormulaSyntaxError(f"expected {want}, got {got}", pos)
        self.i += 1
        return v

    def accept(self, kind: str) -> bool:
        if self.peek[0] == kind:
            self.i += 1
            return True
        return False

    def var(self) -> str:
        v = self.take("name")
        self.used.add(v)
        return v

    def header(self) -> tuple[tuple[str, ...], tuple[str, ...]] | None:
        """``name(objects ; parameters) :=``, if present."""
        kinds = [k for k, _, _ in self.toks]
        if kinds[:2] != ["name", "("] or "assign" not in kinds:
            return None
        close = kinds.index(")") if ")" in kinds else -1
        if close < 0 or kinds[close + 1] != "assign":
            return None
        self.i = 2
        sides: list[list[str]] = [[]]
        while not self.accept(")"):
            if self.accept(";"):
                if len(sides) == 2:
                    raise FormulaSyntaxError("split has more than one ';'", self.toks[self.i - 1][2])
                sides.append([])
            elif sides[-1] and self.peek[0] != "name":
                self.take(",")
            else:
                sides[-1].append(self.var())
        self.take("assign")
        if len(sides) != 2:
            raise FormulaSyntaxError("split must be written as (objects ; parameters)", self.peek[2])
        return tuple(sides[0]), tuple(sides[1])

    def expr(self) -> Node:
        left = self.disj()
        if self.accept("arrow"):
            return implies(left, self.expr())
        return left

    def disj(self) -> Node:
        node = self.conj()
        while self.accept("|"):
            node = Or(node, self.conj())
        return node

    def conj(self) -> Node:
        node = self.unary()
        while self.accept("&"):
            node = And(node, self.unary())
        return node

    def unary(self) -> Node:
        k, v, pos = self.peek
        if self.accept("!"):
            return Not(self.unary())
        if k in ("exists", "forall"):
            self.i += 1
            var = self.var()
            self.take(".")
            body = self.expr()
            return Exists(var, body) if k == "exists" else Forall(var, body)
        if self.accept("("):
            node = self.expr()
            self.take(")")
            return node
        if k == "edge":
            self.i += 1
            self.take("(")
            a = self.var()
            self.take(",")
            b = self.var()
            self.take(")")
            return Edge(a, b)
        if k == "color":
            self.i += 1
            self.take("(")
            a = self.var()
            self.take(")")
            return Color(int(v), a)
        if k == "dist":
            self.i += 1
            self.take("(")
            a = self.var()
            self.take(",")
            b = self.var()
            self.take(")")
            return ("dist", int(v), a, b)  # expanded once all names are known
        if k == "name":
            a = self.var()
            if self.accept("="):
                return Eq(a, self.var())
            if self.accept("neq"):
                return Not(Eq(a, self.var()))
            raise FormulaSyntaxError(f"expected '=' or '!=' after variable {a!r}", self.peek[2])
        got = "end of input" if k == "eof" else repr(v)
        raise FormulaSyntaxError(f"expected a formula, got {got}", pos)


def _expand_dist(n, used: set[str]) -> Node:
    if isinstance(n, tuple):
        _, k, a, b = n
        return dist_body(k, a, b, used)
    if isinstance(n, ATOMS):
        return n
    if isinstance(n, Not):
        return Not(_expand_dist(n.f, used))
    if isinstance(n, (And, Or)):
        return type(n)(_expand_dist(n.left, used), _expand_dist(n.right, used))
    return type(n)(n.var, _expand_dist(n.body, used))


def _default_split(free: frozenset[str]) -> tuple[tuple[str, ...], tuple[str, ...]]:
    xs = tuple(sorted(v for v in free if v.startswith("x")))
    ys = tuple(sorted(v for v in free if not v.startswith("x")))
    return xs, ys


def parse_formula(text: str, x: tuple[str, ...] | list[str] | None = None,
                  y: tuple[str, ...] | list[str] | None = None) -> Formula:
    """Parse ``text``; the split comes from the header, else from x/y, else
    variables starting with 'x' are objects and the rest parameters."""
    m = re.fullmatch(r"\s*dist<=(\d+)\s*", text)
    if m:
        f = dist_formula(int(m.group(1)))
        if x is not None or y is not None:
            f = make_formula(f.body, x or ("x",), y or ("y",))
        return f
    p = _Parser(text)
    split = p.header()
    body = p.expr()
    p.take("eof")
    body = _expand_dist(body, p.used)
    if split is None:
        if x is None and y is None:
            split = _default_split(free_vars(body))
        else:
            split = (tuple(x or ()), tuple(y or ()))
    return make_formula(body, *split)


# ---------------------------------------------------------------- printer

def format_node(n: Node) -> str:
    if isinstance(n, Edge):
        return f"E({n.a},{n.b})"
    if isinstance(n, Eq):
        return f"{n.a}={n.b}"
    if isinstance(n, Color):
        return f"C{n.k}({n.v})"
    if isinstance(n, Not):
        return f"!{_wrap(n.f)}"
    if isinstance(n, And):
        return f"({format_node(n.left)} & {format_node(n.right)})"
    if isinstance(n, Or):
        return f"({format_node(n.left)} | {format_node(n.right)})"
    word = "exists" if isinstance(n, Exists) else "forall"
    return f"({word} {n.var}. {format_node(n.body)})"


def _wrap(n: Node) -> str:
    s = format_node(n)
    return f"({s})" if isinstance(n, Eq) else s


def format_formula(f: Formula) -> str:
    return f"phi({', '.join(f.x)} ; {', '.join(f.y)}) := {format_node(f.body)}"
