"""Phi1 (double sum) against Phi2 (explicit formula) along theta = theta(X).

Default truncations are the figure settings Phi1(X, theta, 120, 800) and
Phi2(X, theta, 20, 10) with 20 read as a height; --zeros-count switches to
the first-K-zeros reading. Also prints the gap at higher truncation
(500, 5000 vs 100, 15) to show which side limits the agreement.
"""
from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np

from moebius_partitions.cli import main as cli_main
from moebius_partitions.explicit import compare_grid


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--xmin", type=float, default=20.0)
    parser.add_argument("--xmax", type=float, default=120.0)
    parser.add_argument("--points", type=int, default=101)
    parser.add_argument("--zeros-count", type=int)
    parser.add_argument("--outdir", type=Path, default=Path("figures"))
    args = parser.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    argv = ["figure34", "--xmin", str(args.xmin), "--xmax", str(args.xmax), "--points", str(args.points),
            "--out", str(args.outdir / "figure34.csv"), "--svg", str(args.outdir / "figure34.svg")]
    if args.zeros_count is not None:
        argv += ["--T", "none", "--zeros-count", str(args.zeros_count)]
    code = cli_main(argv)
    if code:
        raise SystemExit(code)

    coarse = compare_grid(args.xmin, args.xmax, 11)
    fine = compare_grid(args.xmin, args.xmax, 11, J=500, N1=5000, T=100, N2=15)
    print(f"{'X':>8} {'|d| figure':>12} {'|d| fine':>12}")
    for a, b in zip(coarse, fine):
        print(f"{a.X:8.2f} {a.abs_diff:12.4e} {b.abs_diff:12.4e}")
    print(f"median |d|: {np.median([r.abs_diff for r in coarse]):.4e} vs {np.median([r.abs_diff for r in fine]):.4e}")
    print(f"wrote {args.outdir}/figure34.csv, figure34.svg")


if __name__ == "__main__":
    main()
