"""Measure the tolerance for Phi1 (arithmetic side) vs Phi2 (explicit formula).

On X in [20, 120] with theta = theta(X), the difference
|Phi1(X, theta, 500, 5000) - Phi2(X, theta, T=100, N=15)| is bounded by

  * the omitted part of the double sum, bounded by sum |terms| (``phi_tail``),
  * the omitted zeros and trivial terms, measured against Phi2 with every
    bundled zero (height 236) and 20 trivial terms.

The tolerance is ``safety`` times the largest such budget on the grid. It is
written to tests/data/eps_desk.json together with the per-point breakdown and
is not recomputed by the tests.
"""
from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

import numpy as np

from moebius_partitions.circle import phi_tail
from moebius_partitions.explicit import MU2, phi1, phi2, theta_of

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "eps_desk.json"
J, N1, T, N2 = 500, 5000, 100, 15
T_REF, N2_REF = 236.0, 20


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--xmin", type=float, default=20.0)
    parser.add_argument("--xmax", type=float, default=120.0)
    parser.add_argument("--points", type=int, default=101)
    parser.add_argument("--safety", type=float, default=2.0)
    parser.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = parser.parse_args()

    t0 = time.perf_counter()
    rows = []
    for X in np.linspace(args.xmin, args.xmax, args.points):
        X = float(X)
        th = theta_of(X)
        tail = phi_tail(MU2, X, J, N1)
        p2 = phi2(X, th, T, N2)
        zero_trunc = abs(p2 - phi2(X, th, T_REF, N2_REF))
        observed = abs(phi1(X, th, J, N1) - p2)
        rows.append({"X": X, "tail": tail, "zero_truncation": zero_trunc, "budget": tail + zero_trunc, "observed": observed})
        print(f"X={X:8.3f}  tail={tail:.3e}  zeros={zero_trunc:.3e}  observed={observed:.3e}")

    budget = max(r["budget"] for r in rows)
    eps = args.safety * budget
    worst = max(r["observed"] for r in rows)
    print(f"max budget {budget:.4e}, eps_desk {eps:.4e}, max observed {worst:.4e}")
    payload = {
        "eps_desk": eps,
        "safety": args.safety,
        "max_budget": budget,
        "max_observed": worst,
        "grid": {"xmin": args.xmin, "xmax": args.xmax, "points": args.points},
        "phi1": {"J": J, "N": N1},
        "phi2": {"T": T, "N": N2, "reference_T": T_REF, "reference_N": N2_REF},
        "rows": rows,
        "seconds": round(time.perf_counter() - t0, 1),
    }
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(payload, indent=1) + "\n")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
