"""Determination check on random separated instances; one JSON report per line.

    python3 scripts/run_locality.py --count 50 --seed 11
"""

import argparse
import json
from itertools import combinations

import numpy as np

from nowheredense.graph import Graph
from nowheredense.locality import determination_check
from nowheredense.logic.formula import parse_formula

FORMULAS = ["E(x,y)", "dist<=1", "exists z. E(x,z) & E(z,y)",
            "x = y | exists z. (E(x,z) & !E(z,y))", "forall z. (E(x,z) -> E(z,y))"]


def instance(rng):
    left, right, k = int(rng.integers(2, 12)), int(rng.integers(2, 12)), int(rng.integers(0, 4))
    n = left + right + k
    edges = [(u, v) for u, v in combinations(range(left), 2) if rng.random() < 0.3]
    edges += [(u, v) for u, v in combinations(range(left, left + right), 2) if rng.random() < 0.3]
    s = list(range(left + right, n))
    for sv in s:
        edges += [(v, sv) for v in range(left + right) if rng.random() < 0.2]
    a = sorted(set(rng.integers(0, left, size=int(rng.integers(1, left + 1))).tolist()))
    b = sorted(set(rng.integers(left, left + right, size=int(rng.integers(1, right + 1))).tolist()))
    return Graph.from_edges(n, edges), a, b, s


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--seed", type=int, default=11)
    args = ap.parse_args()
    rng = np.random.Generator(np.random.PCG64(args.seed))
    for i in range(args.count):
        g, a, b, s = instance(rng)
        rep = determination_check(g, a, b, s, parse_formula(FORMULAS[i % len(FORMULAS)]))
        print(json.dumps({"n": g.n, **rep.to_json()}, sort_keys=True))


if __name__ == "__main__":
    main()
