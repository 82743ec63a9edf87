"""Regenerate the bundled table of zeta zero ordinates.

Uses mpmath at 40 digits and writes 30 significant digits per line. The
package never imports mpmath; the test suite re-verifies every ordinate with
``zeta_c`` and ``refine_zero``.
"""
from __future__ import annotations

import argparse
from pathlib import Path

import mpmath

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "src" / "moebius_partitions" / "data" / "zeros100.txt"


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=100)
    parser.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = parser.parse_args()

    mpmath.mp.dps = 40
    lines = [
        "# Imaginary parts of the first %d nontrivial zeros of zeta(s), 30 significant digits." % args.count,
        "# Generated by scripts/make_zeros.py (mpmath.zetazero).",
    ]
    for k in range(1, args.count + 1):
        lines.append(mpmath.nstr(mpmath.zetazero(k).imag, 30, strip_zeros=False))
    args.out.write_text("\n".join(lines) + "\n")
    print(f"wrote {args.count} ordinates to {args.out}")


if __name__ == "__main__":
    main()
