"""Command-line front end: ``moebius <subcommand> [options]``.

Every option can also be set through the environment as ``MOEBIUS_<DEST>``
(e.g. ``MOEBIUS_LIMIT=100``); explicit flags win over the environment, the
environment over built-in defaults. Exit status: 0 ok, 2 usage, 3 contract
violation, 4 numeric failure.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import io as csvio
from .arith import WeightKind, sieve_table
from .circle import arc_bound_scan, build_arcs, cauchy_detail
from .errors import ContractError, NumericError
from .explicit import COMPARE_COLUMNS, compare_grid, phi1, phi2, theta_of
from .expsums import envelope_check, exp_sum
from .partitions import admissible_counts, growth_report, partition_series
from .zeta import bundled_zeros, find_zeros, residue_coeffs

ENV_PREFIX = "MOEBIUS_"
EXIT_OK, EXIT_USAGE, EXIT_CONTRACT, EXIT_NUMERIC = 0, 2, 3, 4


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    out_path: str | None = None
    svg_path: str | None = None
    threads: int = 1

    @property
    def format(self) -> str:
        return "svg" if self.svg_path else "csv"


# --- argument types ----------------------------------------------------------

def _real(text: str):
    """Exact rational for ``a/b`` input, float otherwise."""
    if "/" in text:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _height(text: str):
    """Integer nu (selects T_nu) or float height; 'none' for no zeros."""
    if text.lower() == "none":
        return None
    try:
        return int(text)
    except ValueError:
        return _real(text)


def _weight(text: str) -> WeightKind:
    try:
        return WeightKind.parse(text)
    except ContractError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _envelope_weight(text: str):
    try:
        return int(text)
    except ValueError:
        return _weight(text)


class _EnvParser(argparse.ArgumentParser):
    """``add_argument`` picks up MOEBIUS_<DEST> as the default when set."""

    def add_argument(self, *args, **kwargs):
        action = super().add_argument(*args, **kwargs)
        if action.option_strings and action.dest != "help":
            raw = os.environ.get(ENV_PREFIX + action.dest.upper())
            if raw is not None:
                if action.const is not None and action.nargs == 0:  # store_true / store_false
                    value = raw.strip().lower() in ("1", "true", "yes", "on")
                elif action.type is not None:
                    try:
                        value = action.type(raw)
                    except (argparse.ArgumentTypeError, ValueError) as exc:
                        self.error(f"{ENV_PREFIX}{action.dest.upper()}: {exc}")
                else:
                    value = raw
                action.default = value
                action.required = False
        return action


def build_parser() -> argparse.ArgumentParser:
    parser = _EnvParser(prog="moebius", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_EnvParser)

    def command(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
        return p

    p = command("sieve", "table of an arithmetic weight")
    p.add_argument("--kind", type=_weight, required=True)
    p.add_argument("--limit", type=int, required=True)

    p = command("partitions", "weighted partition numbers p_w(0..N)")
    p.add_argument("--weight", type=_weight, required=True)
    p.add_argument("--n", type=int, required=True)

    p = command("admissible", "even/odd admissible partition counts")
    p.add_argument("--n", type=int, required=True)

    p = command("figure1", "log A(n) and log |p_mu(n)|")
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--svg")

    p = command("expsum", "S_w(X, alpha)")
    p.add_argument("--weight", type=_weight, default=WeightKind.parse("moebius"))
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--alpha", type=_real, required=True)

    p = command("envelope", "|S| / envelope over a sweep of X = 2^j")
    p.add_argument("--k", type=_envelope_weight, default=1, help="k (k-fold mu), or a weight name such as hat or tilde:2")
    p.add_argument("--xmin", type=int, default=2**10)
    p.add_argument("--xmax", type=int, default=2**16)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--farey-q", type=int, default=20)

    p = command("arcs", "major arcs around a/q, q <= (log X)^A")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--A", type=float, default=1.0)
    p.add_argument("--allow-overlap", action="store_true")

    p = command("arcscan", "max |Phi| on major and minor arcs")
    p.add_argument("--weight", type=_weight, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--A", type=float, default=1.0)
    p.add_argument("--samples-per-arc", type=int, default=32)

    p = command("pcauchy", "p_w(n) from a Cauchy integral on |z| = rho")
    p.add_argument("--weight", type=_weight, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--points", type=int, default=8192)
    p.add_argument("--radius-x", type=float, help="override X in rho = exp(-1/X)")

    p = command("zeros", "ordinates of the first zeta zeros")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--refine", action="store_true", help="recompute from a Hardy Z scan instead of reading the bundle")

    p = command("rescoeff", "residue coefficients at the trivial zeros")
    p.add_argument("--n", type=int, default=10)

    p = command("phi1", "truncated double sum for mu*mu")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--theta", type=float, help="default theta(X)")
    p.add_argument("--J", type=int, default=120)
    p.add_argument("--N", type=int, default=800)

    p = command("phi2", "truncated explicit formula for mu*mu")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--theta", type=float, help="default theta(X)")
    p.add_argument("--T", type=_height, default=20)
    p.add_argument("--N", type=int, default=10)
    p.add_argument("--zeros-count", type=int)

    p = command("figure34", "Phi1 vs Phi2 along theta = theta(X)")
    p.add_argument("--xmin", type=float, default=20.0)
    p.add_argument("--xmax", type=float, default=120.0)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--J", type=int, default=120)
    p.add_argument("--N1", type=int, default=800)
    p.add_argument("--T", type=_height, default=20)
    p.add_argument("--N2", type=int, default=10)
    p.add_argument("--zeros-count", type=int)
    p.add_argument("--svg")
    return parser


# --- commands ----------------------------------------------------------------

Table = tuple[list[str], list[tuple]]


def _sieve(c: RunConfig) -> Table:
    table = sieve_table(c.params["kind"], c.params["limit"])
    return ["n", "value"], [(n, int(table[n])) for n in range(1, table.limit + 1)]


def _partitions(c: RunConfig) -> Table:
    s = partition_series(c.params["weight"], c.params["n"])
    return ["n", "p"], list(enumerate(s.p))


def _admissible(c: RunConfig) -> Table:
    return ["n", "even", "odd", "total"], [(r.n, r.even, r.odd, r.total) for r in admissible_counts(c.params["n"])]


def _figure1(c: RunConfig) -> Table:
    rows = [(r.n, r.log_total, r.log_abs_difference) for r in growth_report(c.params["n"])]
    if c.svg_path:
        ns = [r[0] for r in rows]
        panel = csvio.Panel(
            "admissible partitions",
            [csvio.Series("log A(n)", ns, [r[1] for r in rows]), csvio.Series("log |p_mu(n)|", ns, [r[2] for r in rows])],
            xlabel="n",
        )
        _write_text(c.svg_path, csvio.render_svg([panel]))
    return ["n", "log_total", "log_abs_p_mu"], rows


def _expsum(c: RunConfig) -> Table:
    X, alpha = c.params["x"], c.params["alpha"]
    s = exp_sum(sieve_table(c.params["weight"], X), X, alpha)
    return ["X", "alpha", "re", "im", "abs"], [(X, alpha, s.real, s.imag, abs(s))]


def _power_grid(lo: int, hi: int) -> list[int]:
    if lo < 2 or hi < lo:
        raise ContractError(f"need 2 <= xmin <= xmax, got {lo}, {hi}")
    grid = [1 << j for j in range(math.ceil(math.log2(lo)), hi.bit_length()) if lo <= 1 << j <= hi]
    if not grid:
        raise ContractError(f"no power of two in [{lo}, {hi}]")
    return grid


def _envelope(c: RunConfig) -> Table:
    p = c.params
    report = envelope_check(
        p["k"], _power_grid(p["xmin"], p["xmax"]), p["samples"], p["epsilon"], c.seed, p["farey_q"]
    )
    rows = [(r.X, r.alpha, r.a, r.q, r.abs_sum, r.rhs, r.ratio) for r in report.rows]
    return ["X", "alpha", "a", "q", "abs_sum", "rhs", "ratio"], rows


def _arcs(c: RunConfig) -> Table:
    d = build_arcs(c.params["x"], c.params["A"], strict=not c.params["allow_overlap"])
    rows = [(arc.q, arc.a, arc.center, arc.lo, arc.hi, arc.width) for arc in d.majors]
    return ["q", "a", "center", "lo", "hi", "width"], rows


def _arcscan(c: RunConfig) -> Table:
    r = arc_bound_scan(c.params["weight"], c.params["x"], c.params["A"], c.params["samples_per_arc"])
    header = ["X", "A", "grid_points", "major_max", "major_argmax", "minor_max", "minor_argmax", "major_ratio", "minor_ratio"]
    return header, [(r.X, r.A, r.grid_points, r.major_max, r.major_argmax, r.minor_max, r.minor_argmax, r.major_ratio, r.minor_ratio)]


def _pcauchy(c: RunConfig) -> Table:
    p = c.params
    d = cauchy_detail(p["weight"], p["n"], p["points"], X=p["radius_x"])
    return ["n", "re", "im", "rounded", "X"], [(p["n"], d.value.real, d.value.imag, round(d.value.real), d.X)]


def _zeros(c: RunConfig) -> str:
    count = c.params["count"]
    table = find_zeros(count) if c.params["refine"] else bundled_zeros().first(count)
    lines = [f"# first {count} zeta zero ordinates ({table.source})"]
    lines += [repr(g) for g in table.ordinates]
    return "\n".join(lines) + "\n"


def _rescoeff(c: RunConfig) -> Table:
    rows = []
    for n in range(1, c.params["n"] + 1):
        r = residue_coeffs(n)
        rows.append((n, r.c1, r.c2, r.c3))
    return ["n", "c1", "c2", "c3"], rows


def _theta(p: dict) -> float:
    return theta_of(p["x"]) if p["theta"] is None else p["theta"]


def _phi1(c: RunConfig) -> Table:
    p = c.params
    theta = _theta(p)
    v = phi1(p["x"], theta, p["J"], p["N"])
    return ["X", "theta", "re", "im"], [(p["x"], theta, v.real, v.imag)]


def _phi2(c: RunConfig) -> Table:
    p = c.params
    theta = _theta(p)
    v = phi2(p["x"], theta, p["T"], p["N"], zeros_count=p["zeros_count"])
    return ["X", "theta", "re", "im"], [(p["x"], theta, v.real, v.imag)]


def _figure34(c: RunConfig) -> Table:
    p = c.params
    rows = compare_grid(
        p["xmin"], p["xmax"], p["points"], p["J"], p["N1"], p["T"], p["N2"],
        zeros_count=p["zeros_count"], threads=c.threads,
    )
    if c.svg_path:
        xs = [r.X for r in rows]
        S = csvio.Series
        panels = [
            csvio.Panel("Re", [S("Re Phi1", xs, [r.phi1.real for r in rows]), S("Re Phi2", xs, [r.phi2.real for r in rows])]),
            csvio.Panel("Re difference", [S("Re (Phi1 - Phi2)", xs, [(r.phi1 - r.phi2).real for r in rows])]),
            csvio.Panel("Im", [S("Im Phi1", xs, [r.phi1.imag for r in rows]), S("Im Phi2", xs, [r.phi2.imag for r in rows])]),
            csvio.Panel("Im difference", [S("Im (Phi1 - Phi2)", xs, [(r.phi1 - r.phi2).imag for r in rows])], xlabel="X"),
        ]
        _write_text(c.svg_path, csvio.render_svg(panels))
    return list(COMPARE_COLUMNS), [r.as_tuple() for r in rows]


COMMANDS: dict[str, Callable[[RunConfig], Table | str]] = {
    "sieve": _sieve,
    "partitions": _partitions,
    "admissible": _admissible,
    "figure1": _figure1,
    "expsum": _expsum,
    "envelope": _envelope,
    "arcs": _arcs,
    "arcscan": _arcscan,
    "pcauchy": _pcauchy,
    "zeros": _zeros,
    "rescoeff": _rescoeff,
    "phi1": _phi1,
    "phi2": _phi2,
    "figure34": _figure34,
}


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(text)


def run(config: RunConfig) -> int:
    """Execute one command; diagnostics go to stderr."""
    handler = COMMANDS.get(config.command)
    if handler is None:
        print(f"moebius: unknown command {config.command!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        result = handler(config)
        text = result if isinstance(result, str) else csvio.csv_text(*result)
        _write_text(config.out_path, text)
    except ContractError as exc:
        print(f"moebius {config.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except (NumericError, OverflowError, ZeroDivisionError) as exc:
        print(f"moebius {config.command}: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def config_from_args(args: argparse.Namespace) -> RunConfig:
    params = dict(vars(args))
    command = params.pop("command")
    out = params.pop("out")
    threads = params.pop("threads")
    svg = params.pop("svg", None)
    seed = params.pop("seed", 0)
    if threads < 1:
        raise ContractError("--threads must be >= 1")
    return RunConfig(command, params, seed, out, svg, threads)


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    try:
        config = config_from_args(args)
    except ContractError as exc:
        print(f"moebius: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
