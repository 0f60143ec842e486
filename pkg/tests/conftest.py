import sys
from pathlib import Path

from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from nowheredense.graph import Graph  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=8, max_colors=0):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    colors = {}
    if max_colors:
        for v in range(n):
            cs = draw(st.sets(st.integers(0, max_colors - 1)))
            if cs:
                colors[v] = cs
    return Graph.from_edges(n, [p for p, k in zip(pairs, keep) if k], colors)


@st.composite
def graph_and_subset(draw, min_n=1, max_n=8):
    g = draw(graphs(min_n, max_n))
    sub = draw(st.sets(st.integers(0, g.n - 1)))
    return g, sorted(sub)


VARS = ("x", "y", "z", "w")


def formulas(max_leaves=8, colors=2):
    from nowheredense.logic.formula import And, Color, Edge, Eq, Exists, Forall, Not, Or

    var = st.sampled_from(VARS)
    atoms = st.one_of(
        st.builds(Edge, var, var),
        st.builds(Eq, var, var),
        st.builds(Color, st.integers(0, colors - 1), var),
    )
    return st.recursive(atoms, lambda sub: st.one_of(
        st.builds(Not, sub),
        st.builds(And, sub, sub),
        st.builds(Or, sub, sub),
        st.builds(Exists, var, sub),
        st.builds(Forall, var, sub),
    ), max_leaves=max_leaves)
