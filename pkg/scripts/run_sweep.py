"""Type-count sweep on square grids; writes the CSV and prints log-log slopes.

    python3 scripts/run_sweep.py --out results/grid_sweep.csv
"""

import argparse
from pathlib import Path

from nowheredense.metrics import SweepConfig, loglog_slope, rows_to_csv, vc_density_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grids", type=int, nargs="+", default=[10, 20, 30, 40])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 64, 128])
    ap.add_argument("--formula", default="dist<=2")
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--timing", action="store_true")
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()

    cfg = SweepConfig(tuple(f"grid:{k}x{k}" for k in args.grids), args.formula, tuple(args.sizes),
                      args.trials, args.seed, args.jobs, args.timing)
    rows = vc_density_sweep(cfg)
    text = rows_to_csv(rows)
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text)
    else:
        print(text, end="")

    for spec in cfg.graphs:
        sub = [r for r in rows if r["graph_id"] == spec]
        slope = loglog_slope([r["sample_size"] for r in sub], [r["type_count"] for r in sub])
        print(f"{spec:>12}  slope {slope:.3f}  ({len(sub)} samples)")
    pooled = loglog_slope([r["sample_size"] for r in rows], [r["type_count"] for r in rows])
    print(f"{'pooled':>12}  slope {pooled:.3f}  ({len(rows)} samples)")


if __name__ == "__main__":
    main()
