"""Twisted exponential sums S_w(X, alpha) and empirical checks of their bounds.

The bounds for S_mu, S_{mu_k}, S_{hat mu} and S_{tilde mu_2} have ineffective
implied constants, so ``envelope_check`` reports |S| / RHS with constant 1 and
leaves judgement to the caller (regression against a frozen baseline).
"""
from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

import numpy as np

from .arith import (
    MOEBIUS,
    MOEBIUS_HAT,
    TAU3,
    ArithmeticTable,
    Tag,
    WeightKind,
    moebius_k,
    sieve_table,
)
from .errors import ContractError, RangeError

TWO_PI = 2.0 * math.pi


def _frac_part(alpha: Real) -> float:
    if isinstance(alpha, Fraction):
        return float(alpha - math.floor(alpha))
    alpha = float(alpha)
    return alpha - math.floor(alpha)


def distance_to_integer(x):
    """||x|| elementwise, as min(frac, 1 - frac)."""
    frac = np.mod(x, 1.0)
    return np.minimum(frac, 1.0 - frac)


def exp_sum(table: ArithmeticTable, X: int, alpha: Real) -> complex:
    """sum_{n <= X} w(n) e(n alpha), with exactly rounded (fsum) accumulation."""
    if X > table.limit:
        raise RangeError(f"X={X} exceeds table limit {table.limit}")
    if X < 1:
        return 0j
    n = np.arange(1, X + 1, dtype=np.float64)
    phase = TWO_PI * np.mod(n * _frac_part(alpha), 1.0)
    w = table.values[1 : X + 1].astype(np.float64)
    return complex(math.fsum(w * np.cos(phase)), math.fsum(w * np.sin(phase)))


@dataclass(frozen=True)
class RationalApprox:
    alpha: float
    a: int
    q: int
    beta: float
    gamma: float
    Q: int


def dirichlet_approx(alpha: Real, Q: int) -> RationalApprox:
    """Last continued-fraction convergent a/q of alpha with q <= Q.

    The expansion runs on the exact rational value of ``alpha`` (floats are
    dyadic rationals), so no rounding drift enters the partial quotients.
    Then |alpha - a/q| <= 1/(q (Q + 1)).
    """
    if Q < 1:
        raise ContractError(f"Q must be >= 1, got {Q}")
    x = Fraction(alpha)
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    best = (math.floor(x), 1)
    rest = x
    while True:
        digit = math.floor(rest)
        h, h_prev = digit * h + h_prev, h
        k, k_prev = digit * k + k_prev, k
        if k > Q:
            break
        best = (h, k)
        if rest == digit:
            break
        rest = 1 / (rest - digit)
    a, q = best
    beta = float(x - Fraction(a, q))
    return RationalApprox(float(x), a, q, beta, max(1.0, q * q * abs(beta)), Q)


@dataclass(frozen=True)
class BoundParams:
    k: int
    a: Fraction
    b: Fraction
    c: Fraction


def bound_sequences(k_max: int) -> list[BoundParams]:
    """Exponent triples (a_k, b_k, c_k) for k = 1..k_max."""
    if not 1 <= k_max <= 64:
        raise RangeError(f"k_max must lie in [1, 64], got {k_max}")
    a, b, c = Fraction(4, 5), Fraction(1, 2), Fraction(1, 2)
    out = []
    for k in range(1, k_max + 1):
        out.append(BoundParams(k, a, b, c))
        a, b, c = (4 - a) / (5 - 2 * a), b / 3, (4 - c) / (5 - 2 * c)
    return out


def envelope_rhs(weight: WeightKind, X: float, q: int, epsilon: float) -> float:
    """Right-hand side of the relevant exponential-sum bound with constant 1."""
    L = math.log(X)
    if weight.tag is Tag.MOEBIUS or (weight.tag is Tag.MOEBIUS_K and weight.k == 1):
        return X ** (0.8 + epsilon) + X * L**3 / math.sqrt(q) + math.sqrt(X * q) * L**3
    if weight.tag is Tag.MOEBIUS_K:
        k = weight.k
        p = bound_sequences(k)[-1]
        a, b, c = float(p.a), float(p.b), float(p.c)
        return X ** (a + epsilon) + X * L ** (k * k) / q**b + X**c * q ** (1 - c) * L ** (k * k)
    if weight.tag is Tag.MOEBIUS_HAT:
        return (X ** (5 / 6) + math.sqrt(q * X) + X / math.sqrt(q)) * L**2.5
    if weight.tag is Tag.MOEBIUS_TILDE_K and weight.k == 2:
        return (X ** (23 / 28) + X / q**0.25 + X**0.75 * q**0.25) * L**10
    raise ContractError(f"no exponential-sum bound available for weight {weight}")


def farey_points(q_max: int) -> list[Fraction]:
    return sorted({Fraction(a, q) for q in range(1, q_max + 1) for a in range(q)})


@dataclass(frozen=True)
class EnvelopeRow:
    X: int
    alpha: float
    a: int
    q: int
    abs_sum: float
    rhs: float

    @property
    def ratio(self) -> float:
        return self.abs_sum / self.rhs


@dataclass(frozen=True)
class EnvelopeReport:
    weight: WeightKind
    rows: list[EnvelopeRow]

    @property
    def argmax(self) -> EnvelopeRow:
        return max(self.rows, key=lambda r: r.ratio)

    @property
    def max_ratio(self) -> float:
        return self.argmax.ratio


def _as_weight(weight: WeightKind | int) -> WeightKind:
    if isinstance(weight, WeightKind):
        return weight
    return MOEBIUS if weight == 1 else moebius_k(int(weight))


def envelope_check(
    weight: WeightKind | int,
    X_grid: list[int],
    alpha_samples: int,
    epsilon: float = 0.05,
    seed: int = 0,
    farey_q: int = 20,
    alphas: list[Real] | None = None,
) -> EnvelopeReport:
    """Ratio |S_w(X, alpha)| / RHS over a grid of X and sampled alpha.

    alpha runs over ``alpha_samples`` seeded uniform draws in [0, 1) plus all
    Farey fractions with denominator <= ``farey_q``; pass ``alphas`` to use an
    explicit list instead. Each alpha is classified with Q = X / (log X)^2.
    An integer weight k means the k-fold Moebius convolution.
    """
    weight = _as_weight(weight)
    if not X_grid:
        raise ContractError("X grid is empty")
    if min(X_grid) < 2:
        raise ContractError("every X must be >= 2")
    if alphas is None:
        if alpha_samples < 1:
            raise ContractError("alpha_samples must be >= 1")
        rng = np.random.default_rng(seed)
        alphas = list(rng.random(alpha_samples)) + list(farey_points(farey_q))
    table = sieve_table(weight, max(X_grid))
    rows = []
    for X in X_grid:
        Q = max(1, math.floor(X / math.log(X) ** 2))
        for alpha in alphas:
            approx = dirichlet_approx(alpha, Q)
            s = exp_sum(table, X, alpha)
            rows.append(EnvelopeRow(X, float(alpha), approx.a, approx.q, abs(s), envelope_rhs(weight, X, approx.q, epsilon)))
    return EnvelopeReport(weight, rows)


def pigeonhole_check(alpha: float, q: int, gamma: float, a: int | None = None) -> int:
    """max over m1 in 1..q of #{m2 in 1..q : | ||m1 alpha|| - ||m2 alpha|| | < 1/q},
    evaluated in exact rational arithmetic on the value of ``alpha``.

    ``a`` defaults to the nearest integer to q alpha; the pair must be reduced
    and satisfy |alpha - a/q| <= gamma / q^2.
    """
    if not 1 <= q <= 5000:
        raise RangeError(f"q must lie in [1, 5000], got {q}")
    if gamma < 1:
        raise ContractError(f"gamma must be >= 1, got {gamma}")
    if a is None:
        a = round(alpha * q)
    if math.gcd(a, q) != 1:
        raise ContractError(f"{a}/{q} is not reduced")
    if abs(alpha - a / q) > gamma / q**2 * (1 + 1e-12):
        raise ContractError(f"|alpha - {a}/{q}| exceeds gamma/q^2")
    # exact rationals: the 1/q window has ties whenever alpha is close to a/q
    x = Fraction(alpha)
    norms = sorted(min(f, 1 - f) for f in (m * x - math.floor(m * x) for m in range(1, q + 1)))
    width = Fraction(1, q)
    return max(bisect_left(norms, v + width) - bisect_right(norms, v - width) for v in norms)


def min_norm_sum(
    X: float,
    K: int,
    alpha: float,
    mode: str = "linear",
    M: int | None = None,
    J: int | None = None,
) -> float:
    """Diagnostic sums behind the Type I/II estimates.

    ``linear``: sum_{k <= K} min(X/k, 1/||k alpha||).
    ``square_weighted``: sum over m in (M, 2M], j in (J, 2J] of
    tau_3(j) min(X/(m^2 j), 1/||alpha m^2 j||).
    A vanishing norm selects the X/... branch.
    """
    if mode == "linear":
        if not 1 <= K <= 10**7:
            raise RangeError(f"K must lie in [1, 1e7], got {K}")
        k = np.arange(1, K + 1, dtype=np.float64)
        first = X / k
        nrm = distance_to_integer(k * alpha)
        second = np.divide(1.0, nrm, out=np.full_like(nrm, np.inf), where=nrm > 0)
        return math.fsum(np.minimum(first, second))
    if mode == "square_weighted":
        if M is None or J is None or M < 1 or J < 1:
            raise ContractError("square_weighted mode needs dyadic block sizes M, J >= 1")
        if M * J > 10**7:
            raise RangeError("block too large")
        m = np.arange(M + 1, 2 * M + 1, dtype=np.float64)
        j_int = np.arange(J + 1, 2 * J + 1)
        tau = sieve_table(TAU3, 2 * J).values[j_int].astype(np.float64)
        prod = np.outer(m * m, j_int.astype(np.float64))
        first = X / prod
        nrm = distance_to_integer(alpha * prod)
        second = np.divide(1.0, nrm, out=np.full_like(nrm, np.inf), where=nrm > 0)
        return math.fsum((tau[None, :] * np.minimum(first, second)).ravel())
    raise ContractError(f"unknown mode {mode!r}")


__all__ = [
    "BoundParams",
    "EnvelopeReport",
    "EnvelopeRow",
    "MOEBIUS_HAT",
    "RationalApprox",
    "bound_sequences",
    "dirichlet_approx",
    "distance_to_integer",
    "envelope_check",
    "envelope_rhs",
    "exp_sum",
    "farey_points",
    "min_norm_sum",
    "pigeonhole_check",
]
