"""Explicit formula for Phi_{mu*mu}(rho e(theta)) and its arithmetic counterpart.

With y = X / (1 - 2 pi i X theta) the analytic side is

    4 log y - 8 log(2 pi) + 72/y + sum_rho f(rho) + sum_n g(n),

where f is the residue at a nontrivial zero and g the residue at the trivial
zero -2n. ``phi1`` is the truncated double sum over j and n, ``phi2`` the
truncated analytic side.
"""
from __future__ import annotations

import cmath
import logging
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import moebius_k
from .circle import phi_eval
from .errors import CoverageError, RangeError
from .zeta import (
    ZeroTable,
    bundled_zeros,
    digamma_c,
    loggamma,
    residue_coeffs,
    truncation_height,
    zeta_c,
    zeta_derivs,
)

log = logging.getLogger(__name__)

MU2 = moebius_k(2)
LOG_2PI = math.log(2 * math.pi)
MAX_TRIVIAL_TERMS = 20
CONDITIONING_FLOOR = 1e-3


class ConditioningWarning(RuntimeWarning):
    """zeta'(rho) is small enough to make the zero term unreliable."""


@dataclass(frozen=True)
class EvalPoint:
    X: float
    theta: float

    def __post_init__(self):
        if self.X < 1:
            raise RangeError(f"X must be >= 1, got {self.X}")

    @property
    def y(self) -> complex:
        return self.X / complex(1.0, -2 * math.pi * self.X * self.theta)

    @property
    def log_y(self) -> complex:
        # principal branch; Re(1/y) = 1/X > 0 keeps arg y inside (-pi/2, pi/2)
        return cmath.log(self.y)

    @property
    def Delta(self) -> float:
        return 1.0 / math.sqrt(1 + 4 * math.pi**2 * self.X**2 * self.theta**2)

    @property
    def rho_radius(self) -> float:
        return math.exp(-1.0 / self.X)


def theta_of(X: float) -> float:
    """theta = sqrt(X^(-4/3) - X^(-2)) / (2 pi), the point where X Delta^3 = 1."""
    if X < 1:
        raise RangeError(f"theta_of needs X >= 1, got {X}")
    if X == 1:
        return 0.0
    return math.sqrt(X ** (-4 / 3) - X ** (-2)) / (2 * math.pi)


def principal_terms(y: complex) -> complex:
    return 4 * cmath.log(y) - 8 * LOG_2PI + 72 / y


@dataclass(frozen=True)
class ZeroData:
    """Theta-independent pieces of the residue at rho = 1/2 + i gamma:
    f = y^rho exp(log_a) (log y + b)."""

    gamma: float
    log_a: complex  # log of zeta(1+rho) Gamma(rho) / zeta'(rho)^2
    b: complex  # psi(rho) - zeta''/zeta'(rho) + zeta'/zeta(1+rho)
    zeta_prime: complex


@lru_cache(maxsize=1024)
def zero_data(gamma: float) -> ZeroData:
    rho = complex(0.5, gamma)
    d1, d2 = zeta_derivs(rho, 2)
    z1p = zeta_c(1 + rho)
    (z1p_prime,) = zeta_derivs(1 + rho, 1)
    log_a = cmath.log(z1p) + loggamma(rho) - 2 * cmath.log(d1)
    b = digamma_c(rho) - d2 / d1 + z1p_prime / z1p
    return ZeroData(gamma, log_a, b, d1)


def zero_pair_term(point: EvalPoint, data: ZeroData) -> complex:
    """f(rho) + f(conj rho). For theta != 0 the two are not conjugate to each
    other (y is not real), so both are evaluated; the zeta-side factors at
    conj rho are the conjugates of those at rho."""
    L = point.log_y
    rho = complex(0.5, data.gamma)
    f = cmath.exp(rho * L + data.log_a) * (L + data.b)
    f_bar = cmath.exp(rho.conjugate() * L + data.log_a.conjugate()) * (L + data.b.conjugate())
    return f + f_bar


def trivial_term(point: EvalPoint, n: int) -> complex:
    """g(n) = y^(-2n) (c1 L^2 + c2 L + c3), L = log y."""
    c = residue_coeffs(n)
    L = point.log_y
    return cmath.exp(-2 * n * L) * (c.c1 * L * L + c.c2 * L + c.c3)


def _zero_set(T: float | int | None, zeros: ZeroTable, zeros_count: int | None) -> tuple[float, ...]:
    if zeros_count is not None:
        return zeros.first(zeros_count).ordinates
    if T is None or T == 0:
        return ()
    if isinstance(T, (int, np.integer)):
        height = truncation_height(int(T), zeros)
    else:
        height = float(T)
        if height > zeros.height:
            raise CoverageError(f"zero table covers height {zeros.height:.3f}, requested {height}")
    return zeros.below(height)


def phi2(
    X: float,
    theta: float,
    T: float | int | None = 20,
    N: int = 10,
    zeros: ZeroTable | None = None,
    zeros_count: int | None = None,
) -> complex:
    """Truncated explicit formula.

    An integer ``T`` = nu selects the height T_nu in [nu, nu + 1] from
    ``truncation_height``; a float is used as the height itself. With
    ``zeros_count`` the first that many zeros are used instead. ``N`` trivial
    zeros are included, capped at 20.
    """
    point = EvalPoint(X, theta)
    if zeros is None:
        zeros = bundled_zeros()
    if N < 0:
        raise RangeError(f"N must be >= 0, got {N}")
    if N > MAX_TRIVIAL_TERMS:
        log.info("trivial-zero sum capped at %d terms (requested %d)", MAX_TRIVIAL_TERMS, N)
        N = MAX_TRIVIAL_TERMS
    total = [principal_terms(point.y)]
    for gamma in _zero_set(T, zeros, zeros_count):
        data = zero_data(gamma)
        if abs(data.zeta_prime) < CONDITIONING_FLOOR:
            warnings.warn(f"|zeta'(rho)| = {abs(data.zeta_prime):.2e} at gamma = {gamma}", ConditioningWarning)
        total.append(zero_pair_term(point, data))
    total.extend(trivial_term(point, n) for n in range(1, N + 1))
    return complex(math.fsum(v.real for v in total), math.fsum(v.imag for v in total))


def phi1(X: float, theta: float, J: int = 120, N: int = 800) -> complex:
    """Truncated arithmetic double sum for the weight mu*mu."""
    return phi_eval(MU2, X, theta, J, N)


@dataclass(frozen=True)
class CompareRow:
    X: float
    theta: float
    phi1: complex
    phi2: complex

    @property
    def abs_diff(self) -> float:
        return abs(self.phi1 - self.phi2)

    def as_tuple(self) -> tuple[float, ...]:
        return (self.X, self.phi1.real, self.phi1.imag, self.phi2.real, self.phi2.imag, self.abs_diff)


COMPARE_COLUMNS = ("X", "re_phi1", "im_phi1", "re_phi2", "im_phi2", "abs_diff")


def compare_grid(
    X_min: float,
    X_max: float,
    points: int,
    J: int = 120,
    N1: int = 800,
    T: float | int | None = 20,
    N2: int = 10,
    zeros: ZeroTable | None = None,
    zeros_count: int | None = None,
    threads: int = 1,
) -> list[CompareRow]:
    """Phi1 and Phi2 at theta = theta_of(X) on an evenly spaced X grid.
    Rows are independent; with ``threads`` > 1 they are computed in a pool
    and returned in grid order."""
    if points < 1:
        raise RangeError("points must be >= 1")
    if X_max < X_min:
        raise RangeError("X_max must not be below X_min")
    if points == 1 and X_max != X_min:
        raise RangeError("a single point needs X_min == X_max")
    if zeros is None:
        zeros = bundled_zeros()

    def row(X: float) -> CompareRow:
        theta = theta_of(X)
        return CompareRow(X, theta, phi1(X, theta, J, N1), phi2(X, theta, T, N2, zeros, zeros_count))

    grid = [float(X) for X in np.linspace(X_min, X_max, points)]
    if threads <= 1:
        return [row(X) for X in grid]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(row, grid))
