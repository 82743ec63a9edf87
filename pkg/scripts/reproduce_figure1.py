"""Growth of admissible partitions: log A(n) and log |p_mu(n)| for n <= 10^4.

Writes figure1.csv and figure1.svg into --outdir and prints a few summary
rows, including the ratio O(n)/E(n) which tends to 1.
"""
from __future__ import annotations

import argparse
import math
from pathlib import Path

from moebius_partitions.cli import main as cli_main
from moebius_partitions.partitions import growth_report


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=10_000)
    parser.add_argument("--outdir", type=Path, default=Path("figures"))
    args = parser.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    code = cli_main(["figure1", "--n", str(args.n), "--out", str(args.outdir / "figure1.csv"),
                     "--svg", str(args.outdir / "figure1.svg")])
    if code:
        raise SystemExit(code)
    rows = growth_report(args.n)
    print(f"{'n':>6} {'log A(n)':>12} {'log|p_mu|':>12} {'/sqrt n':>8} {'O/E':>8}")
    for n in sorted({10, 100, 1000, args.n} & set(range(1, args.n + 1))):
        r = rows[n - 1]
        lad = "-" if r.log_abs_difference is None else f"{r.log_abs_difference:12.4f}"
        print(f"{n:6d} {r.log_total:12.4f} {lad:>12} {r.log_total / math.sqrt(n):8.4f} {r.odd_over_even:8.5f}")
    print(f"wrote {args.outdir}/figure1.csv, figure1.svg")


if __name__ == "__main__":
    main()
