"""Arc decomposition of the unit interval and numerics for Phi_w(rho e(theta)).

Phi_w(z) = sum_j sum_n w(n) z^(jn) / j = sum_m c_m z^m with
c_m = (1/m) sum_{n | m} n w(n), so Psi_w = exp(Phi_w) generates p_w(n).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .arith import ONE, WeightKind, dirichlet_convolve, sieve_table, ArithmeticTable
from .errors import ConfigurationError, ContractError, NumericError, RangeError

TWO_PI = 2.0 * math.pi
EXP_LIMIT = 700.0  # stay clear of double overflow in exp


@dataclass(frozen=True)
class ArcConfig:
    X: float
    A: float

    def __post_init__(self):
        if self.X < 2:
            raise RangeError(f"X must be >= 2, got {self.X}")
        if self.A <= 0:
            raise RangeError(f"A must be positive, got {self.A}")

    @property
    def Q(self) -> float:
        return math.log(self.X) ** self.A

    @property
    def rho(self) -> float:
        return math.exp(-1.0 / self.X)

    def delta(self, q: int) -> float:
        return self.Q / (q * self.X)


@dataclass(frozen=True)
class MajorArc:
    q: int
    a: int
    halfwidth: float
    lo: float  # clipped to the base interval
    hi: float

    @property
    def center(self) -> float:
        return self.a / self.q

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __contains__(self, theta: float) -> bool:
        return self.lo <= theta <= self.hi


@dataclass(frozen=True)
class ArcDecomposition:
    config: ArcConfig
    majors: list[MajorArc]  # sorted by center
    interval: tuple[float, float]  # [start, end)
    minor_intervals: list[tuple[float, float]] = field(default_factory=list)

    @property
    def major_measure(self) -> float:
        return math.fsum(arc.width for arc in self.majors)

    @property
    def minor_measure(self) -> float:
        return math.fsum(hi - lo for lo, hi in self.minor_intervals)

    def reduce(self, theta: float) -> float:
        """Representative of theta mod 1 inside the base interval."""
        start = self.interval[0]
        return start + (theta - start) % 1.0

    def locate(self, theta: float) -> MajorArc | None:
        t = self.reduce(theta)
        for arc in self.majors:
            if t in arc:
                return arc
        return None

    def is_major(self, theta: float) -> bool:
        return self.locate(theta) is not None


def _reduced_fractions(q_max: int):
    yield 1, 0  # arc at the origin of the base interval
    for q in range(1, q_max + 1):
        for a in range(1, q + 1):
            if math.gcd(a, q) == 1:
                yield q, a


def build_arcs(X: float, A: float, strict: bool = True) -> ArcDecomposition:
    """Major arcs around a/q, q <= Q = (log X)^A, of half-width Q/(q X),
    clipped to [-Q/X, 1 - Q/X).

    With ``strict`` an overlap between two arcs raises ConfigurationError
    naming the pair; otherwise overlapping arcs are kept and the minor set is
    the complement of their union.
    """
    cfg = ArcConfig(X, A)
    start = -cfg.delta(1)
    end = 1.0 + start
    arcs = []
    for q, a in _reduced_fractions(math.floor(cfg.Q)):
        d = cfg.delta(q)
        lo, hi = max(a / q - d, start), min(a / q + d, end)
        if lo < hi:
            arcs.append(MajorArc(q, a, d, lo, hi))
    arcs.sort(key=lambda arc: arc.center)

    minors = []
    cursor = start
    for prev, arc in zip([None] + arcs[:-1], arcs):
        if prev is not None and arc.lo < prev.hi and strict:
            raise ConfigurationError(
                f"major arcs around {prev.a}/{prev.q} and {arc.a}/{arc.q} overlap "
                f"(X={X}, A={A}); need Q (q + q') < X"
            )
        if arc.lo > cursor:
            minors.append((cursor, arc.lo))
        cursor = max(cursor, arc.hi)
    if cursor < end:
        minors.append((cursor, end))
    return ArcDecomposition(cfg, arcs, (start, end), minors)


# --- Phi coefficients and evaluation ----------------------------------------

def _table(weight: WeightKind, limit: int) -> ArithmeticTable:
    return sieve_table(weight, max(limit, 1))


@lru_cache(maxsize=32)
def phi_coefficients(weight: WeightKind, M: int) -> np.ndarray:
    """c_0..c_M of Phi_w as floats (c_0 = 0), read-only."""
    if M < 1:
        raise RangeError(f"M must be >= 1, got {M}")
    w = _table(weight, M)
    nw = ArithmeticTable(None, M, w.values * np.arange(M + 1))
    b = dirichlet_convolve(nw, _table(ONE, M)).values.astype(np.float64)
    c = np.zeros(M + 1)
    c[1:] = b[1:] / np.arange(1, M + 1)
    c.setflags(write=False)
    return c


def phi_eval(weight: WeightKind, X: float, theta: float, J: int, N: int) -> complex:
    """Truncated double sum sum_{j<=J} sum_{n<=N} w(n)/j exp(-jn(1/X - 2 pi i theta)),
    accumulated with exactly rounded sums."""
    if J < 1 or N < 1:
        raise ContractError("J and N must be >= 1")
    w = _table(weight, N).values[1 : N + 1].astype(np.float64)
    n = np.nonzero(w)[0] + 1
    wn = w[n - 1]
    theta = theta - math.floor(theta)
    re_parts, im_parts = [], []
    for j in range(1, J + 1):
        decay = j * n / X
        keep = decay < 745.0
        if not keep.any():
            break
        jn = (j * n[keep]).astype(np.float64)
        mag = wn[keep] / j * np.exp(-decay[keep])
        phase = TWO_PI * np.mod(jn * theta, 1.0)
        re_parts.append(mag * np.cos(phase))
        im_parts.append(mag * np.sin(phase))
    if not re_parts:
        return 0j
    return complex(math.fsum(np.concatenate(re_parts)), math.fsum(np.concatenate(im_parts)))


def phi_tail(weight: WeightKind, X: float, J: int, N: int) -> float:
    """sum over (j > J or n > N) of |w(n)|/j e^(-jn/X): what the truncated
    double sum omits, in absolute value. For each j the n-range stops once
    terms fall e^-46 below the first omitted one."""
    span = 46.0 * X
    top = N + math.ceil(span)
    absw = np.abs(_table(weight, top).values.astype(np.float64))
    parts = []
    for j in range(1, J + math.ceil(span) + 1):
        first = N + 1 if j <= J else 1
        last = min(top, first + math.ceil(span / j))
        n = np.arange(first, last + 1)
        parts.append(absw[n] * np.exp(-j * n / X) / j)
    return math.fsum(np.concatenate(parts))


def phi_on_grid(coeffs: np.ndarray, rho: float, points: int) -> np.ndarray:
    """Phi(rho e(k/points)) for k = 0..points-1 from coefficients c_0..c_M."""
    M = len(coeffs) - 1
    if M >= points:
        raise ContractError("grid must have more points than the polynomial degree")
    a = np.zeros(points, dtype=np.complex128)
    a[: M + 1] = coeffs * rho ** np.arange(M + 1)
    return np.fft.ifft(a) * points


# --- arc bound scan ----------------------------------------------------------

@dataclass(frozen=True)
class ArcScanReport:
    X: float
    A: float
    grid_points: int
    major_max: float
    major_argmax: float
    minor_max: float
    minor_argmax: float

    @property
    def major_ratio(self) -> float:
        """major_max / (X (log X)^-A)."""
        return self.major_max / (self.X / math.log(self.X) ** self.A)

    @property
    def minor_ratio(self) -> float:
        """minor_max / (X (log X)^(-A/9))."""
        return self.minor_max / (self.X / math.log(self.X) ** (self.A / 9))


def arc_bound_scan(weight: WeightKind, X: float, A: float, samples_per_arc: int = 32) -> ArcScanReport:
    """max |Phi_w(rho e(theta))| over theta in the major and in the minor arcs.

    Phi is evaluated by FFT on a uniform grid fine enough to put at least
    ``samples_per_arc`` nodes in the narrowest arc; coefficients beyond
    m = 30 X are dropped (relative weight e^-30).
    """
    if weight.nonnegative:
        raise ContractError(
            f"{weight.name} is nonnegative: |Phi| peaks at theta = 0 and the scan is meaningless"
        )
    if not 2 <= X <= 10**6:
        raise RangeError(f"X must lie in [2, 1e6], got {X}")
    arcs = build_arcs(X, A, strict=False)
    M = math.ceil(30 * X)
    narrowest = min(arc.width for arc in arcs.majors)
    points = 1 << max(2 * M, math.ceil(samples_per_arc / narrowest)).bit_length()
    phi = np.abs(phi_on_grid(phi_coefficients(weight, M), math.exp(-1 / X), points))

    theta = np.arange(points) / points
    start = arcs.interval[0]
    theta = start + np.mod(theta - start, 1.0)
    los = np.array([arc.lo for arc in arcs.majors])
    his = np.array([arc.hi for arc in arcs.majors])
    # arcs are sorted by center; with overlaps allowed use the running max of his
    idx = np.searchsorted(los, theta, side="right") - 1
    reach = np.maximum.accumulate(his)
    major = (idx >= 0) & (theta <= reach[np.clip(idx, 0, None)])
    minor = ~major
    if not minor.any():
        raise ConfigurationError("major arcs cover the whole interval")
    i_maj = int(np.argmax(np.where(major, phi, -1)))
    i_min = int(np.argmax(np.where(minor, phi, -1)))
    return ArcScanReport(X, A, points, float(phi[i_maj]), float(theta[i_maj]), float(phi[i_min]), float(theta[i_min]))


# --- Cauchy integral ---------------------------------------------------------

def nominal_radius(n: int, A: float = 18.0) -> float:
    """X = sqrt(n) (log n)^(A/18), floored at 2."""
    if n < 2:
        return 2.0
    return max(2.0, math.sqrt(n) * math.log(n) ** (A / 18))


def _log_peak(coeffs: np.ndarray, X: float, n: int, points: int) -> float:
    # log of the largest integrand term rho^-n |exp(Phi)| on the grid
    return float(phi_on_grid(coeffs, math.exp(-1 / X), points).real.max()) + n / X


def balanced_radius(weight: WeightKind, n: int, A: float = 18.0, points: int = 2048) -> float:
    """X in [2, nominal_radius(n, A)] minimising max_theta Re Phi(rho e(theta)) + n/X.

    This is the log of the largest term in the quadrature sum; for nonnegative
    weights it is the saddle point, and in general it keeps the cancellation
    in the sum (hence the rounding error) small.
    """
    from scipy.optimize import minimize_scalar  # deferred: slow import

    hi = nominal_radius(n, A)
    if hi <= 2.0:
        return 2.0
    coeffs = phi_coefficients(weight, n)
    res = minimize_scalar(
        lambda x: _log_peak(coeffs, x, n, points), bounds=(2.0, hi), method="bounded", options={"xatol": 1e-3}
    )
    candidates = [(float(res.fun), float(res.x)), (_log_peak(coeffs, hi, n, points), hi)]
    return min(candidates)[1]


@dataclass(frozen=True)
class CauchyEstimate:
    value: complex
    X: float
    points: int
    log_scale: float  # log of the largest term in the sum


def cauchy_detail(
    weight: WeightKind,
    n: int,
    points: int = 8192,
    A: float = 18.0,
    X: float | None = None,
) -> CauchyEstimate:
    """p_w(n) ~ rho^-n (1/P) sum_k exp(Phi(rho e(k/P))) e(-nk/P).

    Only c_1..c_n enter: higher powers of z cannot reach the z^n coefficient,
    so truncating Phi at degree n changes nothing except the aliasing terms
    of order rho^P. The integrand is conjugate symmetric on the grid; it is
    evaluated for k <= P/2 and mirrored so the symmetry holds exactly.
    ``X`` defaults to ``balanced_radius``.
    """
    if not 1 <= n <= 2000:
        raise RangeError(f"n must lie in [1, 2000], got {n}")
    if points < 256 or points & (points - 1):
        raise RangeError(f"points must be a power of two >= 256, got {points}")
    if points <= n:
        raise RangeError("points must exceed n")
    if X is None:
        X = balanced_radius(weight, n, A)
    coeffs = phi_coefficients(weight, n)
    half = points // 2
    phi = phi_on_grid(coeffs, math.exp(-1 / X), points)[: half + 1]
    phi[0], phi[half] = phi[0].real, phi[half].real  # Phi(rho), Phi(-rho) are real
    shift = float(phi.real.max())
    log_scale = shift + n / X
    if log_scale > EXP_LIMIT:
        k = int(np.argmax(phi.real))
        raise NumericError(f"integrand overflows at theta = {k / points} (log size {log_scale:.1f})")
    k = np.arange(half + 1)
    twiddle = np.exp(-1j * TWO_PI * ((n * k) % points) / points)
    twiddle[0], twiddle[half] = 1.0, (-1.0) ** n
    upper = np.exp(phi - shift) * twiddle
    terms = np.concatenate([upper, np.conj(upper[half - 1 : 0 : -1])])
    total = complex(math.fsum(terms.real), math.fsum(terms.imag)) / points
    return CauchyEstimate(total * math.exp(log_scale), X, points, log_scale)


def cauchy_estimate(weight: WeightKind, n: int, points: int = 8192, A: float = 18.0, X: float | None = None) -> complex:
    return cauchy_detail(weight, n, points, A, X).value
