"""Weighted partition coefficients p_w(n) and admissible-partition counts.

Three routes to the same numbers, kept deliberately separate:

* ``partition_series``: the recurrence n p(n) = sum_m b_m p(n-m) that follows
  from Psi' = Phi' Psi, with b_m = sum_{d|m} d w(d);
* ``product_oracle``: direct expansion of prod (1 - z^n)^(-w(n));
* ``admissible_counts``: blue/red generating functions, from which the even
  and odd admissible counts come out as half-sum and half-difference.
"""
from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .arith import MOEBIUS, ONE, ArithmeticTable, WeightKind, dirichlet_convolve, sieve_table
from .errors import ConsistencyError, RangeError

SERIES_LIMIT = 20_000
ORACLE_LIMIT = 2_000
ADMISSIBLE_LIMIT = 10_000
ENUMERATION_LIMIT = 60


@dataclass(frozen=True)
class PartitionSeries:
    weight: WeightKind
    N: int
    b: list[int]  # b[0] = 0 placeholder
    p: list[int]  # p[0] = 1

    def check_recurrence(self) -> bool:
        return all(
            n * self.p[n] == sum(self.b[m] * self.p[n - m] for m in range(1, n + 1))
            for n in range(1, self.N + 1)
        )


@dataclass(frozen=True)
class AdmissibleCounts:
    n: int
    even: int
    odd: int

    @property
    def total(self) -> int:
        return self.even + self.odd

    @property
    def difference(self) -> int:
        return self.even - self.odd


def convolution_weights(weight: WeightKind, N: int) -> list[int]:
    """b_m = sum_{d | m} d w(d) for m = 0..N (b_0 = 0)."""
    limit = max(N, 1)
    w = sieve_table(weight, limit)
    dw = ArithmeticTable(None, limit, w.values * np.arange(limit + 1))
    b = dirichlet_convolve(dw, sieve_table(ONE, limit))
    return [0] + [int(v) for v in b.values[1 : N + 1]]


def partition_series(weight: WeightKind, N: int) -> PartitionSeries:
    """Exact p_w(0..N) from n p(n) = sum_{m=1}^n b_m p(n-m), with p(0) = 1."""
    if not 0 <= N <= SERIES_LIMIT:
        raise RangeError(f"N must lie in [0, {SERIES_LIMIT}], got {N}")
    b = convolution_weights(weight, N)
    p = [1] + [0] * N
    mul = operator.mul
    for n in range(1, N + 1):
        s = sum(map(mul, b[1 : n + 1], p[n - 1 :: -1]))
        q, r = divmod(s, n)
        if r:
            raise ConsistencyError(f"non-integral coefficient at n={n} for {weight}")
        p[n] = q
    return PartitionSeries(weight, N, b, p)


def product_oracle(weight: WeightKind, N: int) -> list[int]:
    """Coefficients of prod_{n<=N} (1 - z^n)^(-w(n)) modulo z^(N+1).

    Each factor is expanded by the binomial series: the coefficient of z^(nj)
    in (1 - z^n)^(-w) is C(w + j - 1, j), which terminates for w < 0.
    """
    if not 0 <= N <= ORACLE_LIMIT:
        raise RangeError(f"N must lie in [0, {ORACLE_LIMIT}], got {N}")
    c = [1] + [0] * N
    if N == 0:
        return c
    w_table = sieve_table(weight, N)
    for n in range(1, N + 1):
        w = int(w_table[n])
        if w == 0:
            continue
        new = c[:]
        g = 1
        j = 1
        while n * j <= N:
            g = g * (w + j - 1) // j
            if g == 0:
                break
            shift = n * j
            for m in range(shift, N + 1):
                new[m] += g * c[m - shift]
            j += 1
        c = new
    return c


def _times_geometric(series: list[int], part: int) -> None:
    # in place: series *= 1/(1 - z^part); block k depends on the updated block k-1
    top = len(series)
    for start in range(part, top, part):
        stop = min(start + part, top)
        series[start:stop] = map(operator.add, series[start:stop], series[start - part : stop - part])


def _times_binomial(series: list[int], part: int, sign: int) -> list[int]:
    # series * (1 + sign z^part)
    head = series[:part]
    if sign > 0:
        tail = list(map(operator.add, series[part:], series[: len(series) - part]))
    else:
        tail = list(map(operator.sub, series[part:], series[: len(series) - part]))
    return head + tail


def admissible_counts(N: int) -> list[AdmissibleCounts]:
    """Even and odd admissible partition counts for n = 1..N.

    Blue parts (squarefree, even number of prime factors) are unlimited and
    contribute 1/(1 - z^b); each red part appears at most once and contributes
    (1 + z^r) to even+odd and (1 - z^r) to even-odd.
    """
    if not 1 <= N <= ADMISSIBLE_LIMIT:
        raise RangeError(f"N must lie in [1, {ADMISSIBLE_LIMIT}], got {N}")
    mu = sieve_table(MOEBIUS, N)
    blue = [m for m in range(1, N + 1) if mu[m] == 1]
    red = [m for m in range(1, N + 1) if mu[m] == -1]

    base = [1] + [0] * N
    for part in blue:
        _times_geometric(base, part)
    total = base
    diff = base[:]
    for part in red:
        total = _times_binomial(total, part, +1)
        diff = _times_binomial(diff, part, -1)

    out = []
    for n in range(1, N + 1):
        even2, odd2 = total[n] + diff[n], total[n] - diff[n]
        if even2 % 2 or odd2 % 2:
            raise ConsistencyError(f"half-sum not integral at n={n}")
        out.append(AdmissibleCounts(n, even2 // 2, odd2 // 2))
    return out


def admissible_partitions(n: int) -> Iterator[tuple[tuple[int, str], ...]]:
    """Yield every admissible partition of n as ((part, colour), ...), parts
    non-increasing. Backtracking; only meant for tiny n."""
    if not 1 <= n <= ENUMERATION_LIMIT:
        raise RangeError(f"enumeration supports 1 <= n <= {ENUMERATION_LIMIT}, got {n}")
    mu = sieve_table(MOEBIUS, n)
    colour = {m: ("blue" if mu[m] == 1 else "red") for m in range(1, n + 1) if mu[m] != 0}

    def rec(rest: int, largest: int, used_red: frozenset[int], acc: list):
        if rest == 0:
            yield tuple(acc)
            return
        for m in range(min(rest, largest), 0, -1):
            c = colour.get(m)
            if c is None or (c == "red" and m in used_red):
                continue
            acc.append((m, c))
            yield from rec(rest - m, m, used_red | {m} if c == "red" else used_red, acc)
            acc.pop()

    yield from rec(n, n, frozenset(), [])


def enumerate_admissible(n: int) -> AdmissibleCounts:
    even = odd = 0
    for part in admissible_partitions(n):
        reds = sum(1 for _, c in part if c == "red")
        if reds % 2:
            odd += 1
        else:
            even += 1
    return AdmissibleCounts(n, even, odd)


@dataclass(frozen=True)
class GrowthRow:
    n: int
    log_total: float
    log_abs_difference: float | None
    odd_over_even: float


def growth_report(N: int) -> list[GrowthRow]:
    """Rows n, log A(n), log |p_mu(n)| (None when p_mu(n) = 0), O(n)/E(n)."""
    rows = []
    for c in admissible_counts(N):
        d = abs(c.difference)
        rows.append(GrowthRow(c.n, math.log(c.total), math.log(d) if d else None, c.odd / c.even))
    return rows


def root_growth(series: PartitionSeries) -> list[float | None]:
    """log |p_w(n)| / sqrt(n) for n = 1..N; the quantity bounded in the
    partition theorem. None where p_w(n) = 0."""
    return [math.log(abs(v)) / math.sqrt(n) if v else None for n, v in enumerate(series.p) if n >= 1]
