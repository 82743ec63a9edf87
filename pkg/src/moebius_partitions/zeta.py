"""Complex special functions and zeta-zero data in double precision.

Gamma uses the Lanczos approximation (g = 7, 9 terms) in logarithmic form so
that large imaginary parts do not overflow. zeta uses Euler-Maclaurin for
Re s >= 0 and the functional equation for Re s < 0; its derivatives come from
Cauchy integrals on a small circle, which serves every order uniformly.
"""
from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import (
    ConfigurationError,
    CoverageError,
    FormatError,
    PoleError,
    RangeError,
    RefinementError,
)

EULER_GAMMA = 0.57721566490153286061
MAX_IMAG = 500.0
ZEROS_ENV = "MOEBIUS_ZEROS_PATH"

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)


# --- Bernoulli numbers -------------------------------------------------------

@lru_cache(maxsize=1)
def _bernoulli_table(top: int = 200) -> tuple[Fraction, ...]:
    # Akiyama-Tanigawa; yields the B_1 = +1/2 convention
    out = []
    a = [Fraction(0)] * (top + 1)
    for m in range(top + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    return tuple(out)


def bernoulli(m: int) -> Fraction:
    """Exact B_m with B_1 = -1/2; odd m > 1 give 0."""
    if not 0 <= m <= 200:
        raise RangeError(f"bernoulli index must lie in [0, 200], got {m}")
    if m == 1:
        return Fraction(-1, 2)
    if m % 2:
        return Fraction(0)
    return _bernoulli_table()[m]


_B2K = [float(bernoulli(2 * k)) for k in range(1, 13)]
_B2K_OVER_FACT = [float(bernoulli(2 * k) / math.factorial(2 * k)) for k in range(1, 13)]


# --- Gamma and friends -------------------------------------------------------

def _is_pole(s: complex) -> bool:
    return s.imag == 0 and s.real <= 0 and s.real == math.floor(s.real)


def _log_sin_pi(z: complex) -> complex:
    # a logarithm of sin(pi z), stable for large |Im z|
    if z.imag < 0:
        return _log_sin_pi(z.conjugate()).conjugate()
    w = cmath.exp(2j * math.pi * z)
    return -1j * math.pi * z + cmath.log((w - 1) / 2j)


def _cot_pi(z: complex) -> complex:
    if z.imag < 0:
        return _cot_pi(z.conjugate()).conjugate()
    w = cmath.exp(2j * math.pi * z)
    return 1j * (w + 1) / (w - 1)


def loggamma(s: complex) -> complex:
    """A logarithm of Gamma(s) (not necessarily the principal branch when
    Re s < 1/2)."""
    s = complex(s)
    if _is_pole(s):
        raise PoleError(f"Gamma has a pole at {s}")
    if s.real < 0.5:
        return math.log(math.pi) - _log_sin_pi(s) - loggamma(1 - s)
    z = s - 1
    x = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def gamma_c(s: complex) -> complex:
    return cmath.exp(loggamma(s))


def digamma_c(s: complex) -> complex:
    s = complex(s)
    if _is_pole(s):
        raise PoleError(f"digamma has a pole at {s}")
    if s.real < 0.5:
        return digamma_c(1 - s) - math.pi * _cot_pi(s)
    acc = 0j
    z = s
    while z.real < 10:
        acc -= 1 / z
        z += 1
    inv2 = 1 / (z * z)
    series = 0j
    power = inv2
    for k in range(1, 9):
        series += _B2K[k - 1] / (2 * k) * power
        power *= inv2
    return acc + cmath.log(z) - 0.5 / z - series


def trigamma_at(m: int) -> float:
    """psi'(m) for a positive integer m."""
    if m < 1:
        raise PoleError(f"trigamma has a pole at {m}")
    if m < 10:
        return math.pi**2 / 6 - math.fsum(1.0 / (j * j) for j in range(1, m))
    z = float(m)
    out = 1 / z + 0.5 / z**2
    for k in range(1, 9):
        out += _B2K[k - 1] / z ** (2 * k + 1)
    return out


# --- zeta --------------------------------------------------------------------

def _zeta_em(s: complex) -> complex:
    N = 20 + math.ceil(abs(s.imag))
    n = np.arange(1, N, dtype=np.float64)
    head = np.exp(-s * np.log(n)).sum()
    Ns = cmath.exp(-s * math.log(N))
    tail = N * Ns / (s - 1) + 0.5 * Ns
    term = s * Ns / N  # s (s+1) ... (s+2k-2) N^(-s-2k+1) for k = 1
    for k in range(1, 13):
        tail += _B2K_OVER_FACT[k - 1] * term
        term *= (s + 2 * k - 1) * (s + 2 * k) / (N * N)
    return complex(head) + tail


def zeta_c(s: complex) -> complex:
    s = complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    if abs(s.imag) > MAX_IMAG:
        raise RangeError(f"|Im s| must not exceed {MAX_IMAG}")
    if s.real >= 0:
        return _zeta_em(s)
    if s.imag == 0 and s.real % 2 == 0:
        return 0j  # trivial zero
    log_chi = s * math.log(2) + (s - 1) * math.log(math.pi) + _log_sin_pi(s / 2) + loggamma(1 - s)
    return cmath.exp(log_chi) * _zeta_em(1 - s)


def zeta_derivs(s: complex, max_order: int, radius: float = 0.25, nodes: int = 64) -> list[complex]:
    """[zeta'(s), ..., zeta^(max_order)(s)] from one Cauchy integral on a circle.

    The radius shrinks to half the distance to the pole when needed.
    """
    s = complex(s)
    if not 1 <= max_order <= 3:
        raise RangeError(f"derivative order must be 1..3, got {max_order}")
    dist = abs(s - 1)
    if dist < 1e-6:
        raise PoleError(f"derivative requested too close to the pole ({dist:.3g})")
    r = min(radius, 0.5 * dist)
    w = np.exp(2j * math.pi * np.arange(nodes) / nodes)
    vals = np.array([zeta_c(s + r * wj) for wj in w])
    return [complex(math.factorial(k) / r**k * np.mean(vals * w ** (-k))) for k in range(1, max_order + 1)]


def zeta_deriv(s: complex, order: int, radius: float = 0.25, nodes: int = 64) -> complex:
    """order-th derivative of zeta at s (order 0 is zeta itself)."""
    if order == 0:
        return zeta_c(s)
    if not 1 <= order <= 3:
        raise RangeError(f"derivative order must be 0..3, got {order}")
    return zeta_derivs(s, order, radius, nodes)[-1]


def siegel_theta(t: float) -> float:
    """Riemann-Siegel theta by its Stirling series (t >= 1)."""
    return (
        t / 2 * math.log(t / (2 * math.pi))
        - t / 2
        - math.pi / 8
        + 1 / (48 * t)
        + 7 / (5760 * t**3)
        + 31 / (80640 * t**5)
        + 127 / (430080 * t**7)
        + 511 / (1216512 * t**9)
    )


def hardy_z(t: float) -> float:
    return (cmath.exp(1j * siegel_theta(t)) * zeta_c(complex(0.5, t))).real


# --- zero ordinates ----------------------------------------------------------

@dataclass(frozen=True)
class ZeroTable:
    ordinates: tuple[float, ...]
    source: str
    precision: int  # fewest significant digits among the parsed entries

    def __len__(self) -> int:
        return len(self.ordinates)

    @property
    def height(self) -> float:
        """Largest ordinate; the table is taken to be complete below it."""
        return self.ordinates[-1] if self.ordinates else 0.0

    def below(self, T: float) -> tuple[float, ...]:
        return tuple(g for g in self.ordinates if g < T)

    def first(self, count: int) -> ZeroTable:
        if count > len(self.ordinates):
            raise CoverageError(f"table holds {len(self.ordinates)} zeros, {count} requested")
        return ZeroTable(self.ordinates[:count], self.source, self.precision)


def _significant_digits(text: str) -> int:
    mantissa = text.lower().split("e")[0].lstrip("+-").replace(".", "")
    return len(mantissa.lstrip("0"))


def parse_zeros(text: str, source: str = "bundled") -> ZeroTable:
    values = []
    digits = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            v = float(line)
        except ValueError:
            raise FormatError(f"line {lineno}: not a number: {line!r}") from None
        if not math.isfinite(v) or v <= 0:
            raise FormatError(f"line {lineno}: ordinate must be positive and finite")
        if values and v <= values[-1]:
            raise FormatError(f"line {lineno}: ordinates must be strictly ascending")
        values.append(v)
        digits.append(_significant_digits(line))
    return ZeroTable(tuple(values), source, min(digits) if digits else 0)


def load_zeros(path: str | os.PathLike) -> ZeroTable:
    return parse_zeros(Path(path).read_text(), source="bundled")


def bundled_zeros() -> ZeroTable:
    """The shipped table, or the file named by $MOEBIUS_ZEROS_PATH."""
    override = os.environ.get(ZEROS_ENV)
    if override:
        return load_zeros(override)
    text = resources.files(__package__).joinpath("data/zeros100.txt").read_text()
    return parse_zeros(text)


def _nearest_bracket(lo_t: np.ndarray, z: np.ndarray, target: float):
    sign_change = np.nonzero(np.signbit(z[:-1]) != np.signbit(z[1:]))[0]
    if sign_change.size == 0:
        return None
    mids = 0.5 * (lo_t[sign_change] + lo_t[sign_change + 1])
    i = sign_change[np.argmin(np.abs(mids - target))]
    return lo_t[i], lo_t[i + 1]


def refine_zero(gamma0: float, window: float = 0.5, step: float = 0.01) -> float:
    """Ordinate of the zero nearest gamma0, found by bracketing a sign change of
    Hardy's Z(t) within gamma0 +- window and polishing with Brent's method."""
    from scipy.optimize import brentq  # deferred: scipy import dominates CLI start-up
    if gamma0 - window < 1:
        raise RangeError("seed too small for the Stirling theta series")
    ts = np.linspace(gamma0 - window, gamma0 + window, int(round(2 * window / step)) + 1)
    zs = np.array([hardy_z(t) for t in ts])
    bracket = _nearest_bracket(ts, zs, gamma0)
    if bracket is None:
        raise RefinementError(f"no sign change of Z(t) within {window} of {gamma0}")
    return brentq(hardy_z, *bracket, xtol=1e-13, rtol=4 * np.finfo(float).eps)


def find_zeros(count: int, t_start: float = 10.0, step: float = 0.05) -> ZeroTable:
    """First ``count`` ordinates from a sign-change scan of Z(t)."""
    from scipy.optimize import brentq
    if not 0 <= count <= 500:
        raise RangeError(f"count must lie in [0, 500], got {count}")
    found: list[float] = []
    t, zt = t_start, hardy_z(t_start)
    while len(found) < count:
        u = t + step
        zu = hardy_z(u)
        if math.copysign(1, zt) != math.copysign(1, zu):
            found.append(brentq(hardy_z, t, u, xtol=1e-13, rtol=4 * np.finfo(float).eps))
        t, zt = u, zu
        if t > MAX_IMAG:
            raise RefinementError("scan left the supported height range")
    return ZeroTable(tuple(found), "refined", 16)


# --- truncation heights ------------------------------------------------------

@dataclass(frozen=True)
class TruncationHeights:
    heights: tuple[float, ...]  # heights[nu - 1] = T_nu

    def __getitem__(self, nu: int) -> float:
        if not 1 <= nu <= len(self.heights):
            raise RangeError(f"nu must lie in [1, {len(self.heights)}], got {nu}")
        return self.heights[nu - 1]


MIN_ZERO_CLEARANCE = 0.05


def truncation_height(nu: int, zeros: ZeroTable) -> float:
    """Midpoint of the longest piece of [nu, nu+1] cut at the ordinates."""
    if nu + 1 > zeros.height:
        raise CoverageError(f"zero table covers height {zeros.height:.3f}, need {nu + 1}")
    cuts = [float(nu)] + [g for g in zeros.ordinates if nu < g < nu + 1] + [float(nu + 1)]
    lo, hi = max(zip(cuts, cuts[1:]), key=lambda piece: piece[1] - piece[0])
    T = 0.5 * (lo + hi)
    if min(abs(T - g) for g in zeros.ordinates) < MIN_ZERO_CLEARANCE:
        raise ConfigurationError(f"no height in [{nu}, {nu + 1}] keeps {MIN_ZERO_CLEARANCE} from the zeros")
    return T


def choose_truncations(nu_max: int, zeros: ZeroTable) -> TruncationHeights:
    return TruncationHeights(tuple(truncation_height(nu, zeros) for nu in range(1, nu_max + 1)))


# --- residues at the trivial zeros -------------------------------------------

@dataclass(frozen=True)
class ResidueCoefficients:
    n: int
    c1: float
    c2: float
    c3: float


@lru_cache(maxsize=None)
def residue_coeffs(n: int, radius: float = 0.25) -> ResidueCoefficients:
    """Coefficients of y^(-2n) (c1 L^2 + c2 L + c3), L = log y, in the residue of
    Gamma(s) zeta(s+1) zeta(s)^(-2) y^s at the triple pole s = -2n."""
    if not 1 <= n <= 20:
        raise RangeError(f"n must lie in [1, 20], got {n}")
    B = float(bernoulli(2 * n))
    z1, z2, z3 = (v.real for v in zeta_derivs(-2 * n, 3, radius))
    w1, w2 = (v.real for v in zeta_derivs(1 - 2 * n, 2, radius))
    psi = digamma_c(2 * n + 1).real
    tri = trigamma_at(2 * n + 1)
    gamma_2n = math.factorial(2 * n - 1)
    fact_2n = math.factorial(2 * n)

    c1 = -B / (8 * n**2 * gamma_2n * z1**2)
    c2 = (B * z2 + z1 * (2 * n * w1 - B * psi)) / (2 * n * fact_2n * z1**3)
    bracket = B * (
        -9 * z2**2
        - 2 * (3 * psi**2 - 3 * tri + math.pi**2) * z1**2
        + 4 * z1 * (z3 + 3 * psi * z2)
    ) + 12 * n * z1 * (z1 * w2 + 2 * w1 * (psi * z1 - z2))
    c3 = bracket / (48 * n**2 * gamma_2n * z1**4)
    return ResidueCoefficients(n, c1, c2, c3)
