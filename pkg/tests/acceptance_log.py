"""Collects acceptance outcomes; conftest prints one line per criterion."""
from __future__ import annotations

from collections import defaultdict

TITLES = {
    1: "admissible counts for n = 10",
    2: "p_mu(n) = E(n) - O(n) for n <= 2000",
    3: "partition series vs product / pentagonal oracles",
    4: "Cauchy-integral round trip, n <= 200",
    5: "special-function identities",
    6: "zero self-verification",
    7: "Phi1 vs Phi2 within eps_desk on X in [20, 120]",
    8: "pigeonhole count <= 14 gamma on 500 instances",
    9: "envelope ratios within 1.2x frozen baseline",
    10: "exact exponents (a2, b2, c2)",
    11: "arc decomposition soundness",
}

_results: dict[int, list[tuple[str, bool, str]]] = defaultdict(list)


def record(criterion: int, case: str, ok: bool, detail: str = "") -> bool:
    _results[criterion].append((case, bool(ok), detail))
    status = "PASS" if ok else "FAIL"
    print(f"criterion {criterion} [{case}] {status} {detail}")
    return ok


def summary_lines() -> list[str]:
    lines = []
    for k in sorted(_results):
        cases = _results[k]
        ok = all(c[1] for c in cases)
        failed = [f"{c[0]} ({c[2]})" if c[2] else c[0] for c in cases if not c[1]]
        detail = f"; failed: {', '.join(failed)}" if failed else ""
        lines.append(f"{'PASS' if ok else 'FAIL'}  {k:2d}. {TITLES[k]} [{len(cases)} case(s)]{detail}")
    return lines
