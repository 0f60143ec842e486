import pytest
from hypothesis import given, strategies as st

from conftest import formulas, graphs
from oracles import all_pairs, naive_holds
from nowheredense.corpus import path
from nowheredense.logic.formula import (And, Edge, Eq, Exists, Formula, FormulaSyntaxError, Not, Or,
                                        dist_body, dist_formula, format_formula, format_node,
                                        free_vars, make_formula, parse_formula, rank)


def closed_over(node):
    fv = sorted(free_vars(node))
    return make_formula(node, [v for v in fv if v.startswith("x")],
                        [v for v in fv if not v.startswith("x")])


@given(formulas())
def test_print_parse_round_trip(node):
    f = closed_over(node)
    again = parse_formula(format_formula(f))
    assert again == f
    assert format_formula(again) == format_formula(f)


def test_parse_header_split():
    f = parse_formula("phi(a, b ; c) := E(a,c) & b = c")
    assert f.x == ("a", "b") and f.y == ("c",)
    assert f.ell == 2 and f.d == 3


def test_default_split_uses_leading_x():
    f = parse_formula("E(x1, y) | x2 = q")
    assert f.x == ("x1", "x2") and f.y == ("q", "y")


def test_explicit_split_argument():
    f = parse_formula("E(u, v)", ["v"], ["u"])
    assert f.x == ("v",) and f.y == ("u",)


def test_precedence_and_implication():
    f = parse_formula("!E(x,y) & x = y | C1(x) -> E(y,x)")
    want = Or(Not(Or(And(Not(Edge("x", "y")), Eq("x", "y")), f.body.left.f.right)), Edge("y", "x"))
    assert f.body == want


def test_quantifier_scope_extends_right():
    f = parse_formula("exists z. E(x,z) & E(z,y)")
    assert isinstance(f.body, Exists)
    assert rank(f.body) == 1


@pytest.mark.parametrize("text, fragment", [
    ("E(x,", "expected a variable"),
    ("E(x,y) &", "expected a formula"),
    ("x", "expected '=' or '!='"),
    ("E(x,y))", "expected end of input"),
    ("exists . E(x,y)", "expected a variable"),
    ("E(x,y) # z", "unexpected character"),
    ("phi(x ; y ; z) := x = y", "more than one"),
    ("phi(x, y) := x = y", "objects ; parameters"),
    ("phi(x ; x) := x = x", "both sides"),
    ("phi(x ; y) := x = q", "not in the split"),
])
def test_syntax_errors(text, fragment):
    with pytest.raises(FormulaSyntaxError, match=fragment):
        parse_formula(text)


def test_error_carries_position():
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula("E(x,y) & ?")
    assert "9" in str(info.value)


@pytest.mark.parametrize("r", range(0, 9))
def test_dist_rank_is_logarithmic(r):
    f = dist_formula(r)
    want = 0 if r <= 1 else (r - 1).bit_length()
    assert f.quantifier_rank == want


@given(graphs(max_n=7), st.integers(0, 6))
def test_dist_formula_means_distance(g, r):
    f = dist_formula(r)
    d = all_pairs(g)
    for u in range(g.n):
        for v in range(g.n):
            assert naive_holds(g, f.body, {"x": u, "y": v}) == (d[u][v] <= r)


def test_dist_atom_inside_formulas_avoids_capture():
    f = parse_formula("exists z. dist<=4(x, z) & E(z, y)")
    assert "z" in {f.body.var}
    assert free_vars(f.body) == {"x", "y"}
    assert format_node(f.body).count("exists") == 1 + 3
    g = path(8)
    d = all_pairs(g)
    for u in range(8):
        for v in range(8):
            want = any(d[u][z] <= 4 and g.has_edge(z, v) for z in range(8))
            assert naive_holds(g, f.body, {"x": u, "y": v}) == want


def test_plain_dist_shorthand():
    assert parse_formula("dist<=3") == dist_formula(3)


def test_make_formula_renames_clashing_bound_variables():
    body = Exists("y", Edge("x", "y"))
    f = make_formula(body, ["x"], ["y"])
    assert f.body.var != "y"
    assert free_vars(f.body) == {"x"}


def test_formula_validates_split():
    with pytest.raises(FormulaSyntaxError):
        Formula(Edge("x", "y"), ("x",), ())
    assert dist_body(0) == Eq("x", "y")
