"""Record first-run maxima of |S_w(X, alpha)| / envelope for the regression gate.

Standard sweep: X = 2^10 .. 2^16, 200 seeded uniform alpha plus the Farey
fractions with q <= 20, epsilon = 0.05. Writes tests/data/envelope_baseline.json.
Rerun only when the envelope definition itself changes.
"""
from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

from moebius_partitions.arith import MOEBIUS, MOEBIUS_HAT, moebius_k, moebius_tilde
from moebius_partitions.expsums import envelope_check

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "envelope_baseline.json"
WEIGHTS = {"k1": MOEBIUS, "k2": moebius_k(2), "hat": MOEBIUS_HAT, "tilde2": moebius_tilde(2)}
X_GRID = [2**j for j in range(10, 17)]
SAMPLES, SEED, FAREY_Q, EPSILON = 200, 20240601, 20, 0.05


def sweep(weight):
    return envelope_check(weight, X_GRID, SAMPLES, EPSILON, SEED, FAREY_Q)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = parser.parse_args()

    payload = {
        "sweep": {"X": X_GRID, "samples": SAMPLES, "seed": SEED, "farey_q": FAREY_Q, "epsilon": EPSILON},
        "baselines": {},
    }
    for key, weight in WEIGHTS.items():
        t0 = time.perf_counter()
        report = sweep(weight)
        top = report.argmax
        payload["baselines"][key] = {
            "weight": weight.name,
            "max_ratio": top.ratio,
            "argmax": {"X": top.X, "alpha": top.alpha, "a": top.a, "q": top.q},
            "rows": len(report.rows),
        }
        print(f"{key:7s} {weight.name:10s} max ratio {top.ratio:.6e} at X={top.X}, alpha={top.alpha:.6f} "
              f"({time.perf_counter() - t0:.1f}s)")
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(payload, indent=1) + "\n")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
