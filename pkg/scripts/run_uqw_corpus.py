"""Run uqw_solve over a mixed corpus and tally outcomes and certificate checks.

    python3 scripts/run_uqw_corpus.py --out results/uqw_corpus.jsonl
"""

import argparse
import json
import time
from pathlib import Path

from nowheredense.corpus import generate
from nowheredense.uqw import UqwParams, uqw_solve, verify_outcome

CORPUS = ["grid:5x5", "grid:10x10", "grid:20x20", "grid:40x40", "star:10", "star:50",
          "subclique:n=8,r=1", "subclique:n=12,r=2", "subclique:n=6,r=3", "matching:5",
          "matching:30", "clique:4", "clique:5", "clique:6", "clique:7", "clique:8",
          "random:n=60,d=4,seed=0", "random:n=60,d=4,seed=1", "random:n=60,d=4,seed=2"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--radii", type=int, nargs="+", default=[1, 2, 3, 4, 5])
    ap.add_argument("--ts", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()

    records = []
    tally: dict[str, int] = {}
    failures = 0
    for spec in CORPUS:
        g = generate(spec)
        for r in args.radii:
            for t in args.ts:
                start = time.perf_counter()
                out = uqw_solve(g, range(g.n), UqwParams(r=r, t=t))
                problems = verify_outcome(g, out)
                failures += bool(problems)
                tally[out.variant] = tally.get(out.variant, 0) + 1
                rec = {"graph": spec, "r": r, "t": t, "variant": out.variant,
                       "size": len(out.b) if hasattr(out, "b") else None,
                       "separator": len(out.s) if hasattr(out, "s") else None,
                       "problems": problems, "seconds": round(time.perf_counter() - start, 3)}
                records.append(rec)
                print(f"{spec:>24} r={r} t={t}  {out.variant:<16} size={rec['size']}")
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text("".join(json.dumps(r, sort_keys=True) + "\n" for r in records))
    print(f"{len(records)} runs, outcomes {tally}, certificate failures {failures}")


if __name__ == "__main__":
    main()
