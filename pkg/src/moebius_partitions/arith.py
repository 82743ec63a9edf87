"""Sieved tables of the arithmetic weights: Moebius convolutions and friends.

Every table is an ``int64`` array indexed directly by ``n`` (slot 0 is unused
and holds 0). Values are exact; the limits are guarded so that no weight or
partial sum leaves the signed 64-bit range.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError, RangeError

SIEVE_LIMIT = 10**8


class Tag(enum.Enum):
    MOEBIUS = "moebius"
    MOEBIUS_K = "moebius_k"
    MOEBIUS_HAT = "hat"
    MOEBIUS_TILDE_K = "tilde"
    LIOUVILLE = "liouville"
    DIVISOR_K = "divisor"
    TAU3 = "tau3"
    SQUAREFULL = "squarefull"
    SQUAREFREE = "squarefree"
    ONE = "one"


_PARAMETRIZED = {Tag.MOEBIUS_K, Tag.MOEBIUS_TILDE_K, Tag.DIVISOR_K}
_NONNEGATIVE = {Tag.DIVISOR_K, Tag.TAU3, Tag.SQUAREFULL, Tag.SQUAREFREE, Tag.ONE}


@dataclass(frozen=True)
class WeightKind:
    """Which arithmetic function a table holds; ``k`` only matters for the
    parametrized families (k-fold Moebius convolution, 1/zeta(ks), d_k)."""

    tag: Tag
    k: int = 1

    def __post_init__(self) -> None:
        if self.tag in _PARAMETRIZED:
            if self.k < 1:
                raise ContractError(f"{self.tag.value} needs k >= 1, got {self.k}")
        elif self.k != 1:
            raise ContractError(f"{self.tag.value} takes no parameter")

    @property
    def name(self) -> str:
        if self.tag is Tag.MOEBIUS_K:
            return f"moebius:{self.k}"
        if self.tag in _PARAMETRIZED:
            return f"{self.tag.value}:{self.k}"
        return self.tag.value

    @property
    def nonnegative(self) -> bool:
        return self.tag in _NONNEGATIVE

    @classmethod
    def parse(cls, text: str) -> "WeightKind":
        """Parse ``name[:k]``, e.g. ``moebius``, ``moebius:2``, ``tilde:2``."""
        name, _, param = text.strip().lower().partition(":")
        aliases = {"mu": "moebius", "mobius": "moebius", "lambda": "liouville", "d": "divisor"}
        name = aliases.get(name, name)
        k = int(param) if param else None
        if name == "moebius":
            return cls(Tag.MOEBIUS_K, k) if k is not None else cls(Tag.MOEBIUS)
        for tag in Tag:
            if tag.value == name and tag is not Tag.MOEBIUS_K:
                if tag in _PARAMETRIZED:
                    if k is None:
                        raise ContractError(f"weight {name!r} needs a parameter, e.g. {name}:2")
                    return cls(tag, k)
                if k is not None:
                    raise ContractError(f"weight {name!r} takes no parameter")
                return cls(tag)
        raise ContractError(f"unknown weight {text!r}")

    def __str__(self) -> str:
        return self.name


MOEBIUS = WeightKind(Tag.MOEBIUS)
MOEBIUS_HAT = WeightKind(Tag.MOEBIUS_HAT)
LIOUVILLE = WeightKind(Tag.LIOUVILLE)
TAU3 = WeightKind(Tag.TAU3)
SQUAREFULL = WeightKind(Tag.SQUAREFULL)
SQUAREFREE = WeightKind(Tag.SQUAREFREE)
ONE = WeightKind(Tag.ONE)


def moebius_k(k: int) -> WeightKind:
    return WeightKind(Tag.MOEBIUS_K, k)


def moebius_tilde(k: int) -> WeightKind:
    return WeightKind(Tag.MOEBIUS_TILDE_K, k)


def divisor_k(k: int) -> WeightKind:
    return WeightKind(Tag.DIVISOR_K, k)


@dataclass(frozen=True)
class ArithmeticTable:
    """Values of a weight on ``1..limit``; ``kind`` is None for ad-hoc
    convolutions that do not correspond to a named weight."""

    kind: WeightKind | None
    limit: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        self.values.setflags(write=False)

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self) -> int:
        return self.limit

    def as_list(self) -> list[int]:
        return [int(v) for v in self.values[1:]]


def _check_limit(limit: int) -> None:
    if not 1 <= limit <= SIEVE_LIMIT:
        raise RangeError(f"limit must lie in [1, {SIEVE_LIMIT}], got {limit}")


def primes_up_to(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    is_prime = np.ones(n + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def _moebius_values(limit: int) -> np.ndarray:
    mu = np.ones(limit + 1, dtype=np.int64)
    prod = np.ones(limit + 1, dtype=np.int64)
    for p in primes_up_to(math.isqrt(limit)):
        p = int(p)
        mu[p::p] *= -1
        prod[p::p] *= p
        mu[p * p :: p * p] = 0
    # one prime factor above sqrt(limit) is left over wherever prod < n
    n = np.arange(limit + 1, dtype=np.int64)
    mu[prod < n] *= -1
    mu[0] = 0
    return mu


def _liouville_values(limit: int) -> np.ndarray:
    omega = np.zeros(limit + 1, dtype=np.int64)
    rest = np.arange(limit + 1, dtype=np.int64)
    for p in primes_up_to(math.isqrt(limit)):
        p = int(p)
        pk = p
        while pk <= limit:
            omega[pk::pk] += 1
            rest[pk::pk] //= p
            pk *= p
    omega += rest > 1
    lam = np.where(omega % 2 == 0, 1, -1).astype(np.int64)
    lam[0] = 0
    return lam


def _squarefull_values(limit: int) -> np.ndarray:
    # n is squarefull iff n = a^2 b^3; n = 1 counts (a = b = 1)
    ind = np.zeros(limit + 1, dtype=np.int64)
    b = 1
    while b**3 <= limit:
        cube = b**3
        a = np.arange(1, math.isqrt(limit // cube) + 1, dtype=np.int64)
        ind[a * a * cube] = 1
        b += 1
    return ind


def _convolve_values(a: np.ndarray, b: np.ndarray, limit: int) -> np.ndarray:
    out = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, limit + 1):
        ad = int(a[d])
        if ad == 0:
            continue
        m = limit // d
        out[d :: d][:m] += ad * b[1 : m + 1]
    return out


def _integer_root(n: int, k: int) -> int:
    r = int(round(n ** (1.0 / k)))
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def _values(kind: WeightKind, limit: int) -> np.ndarray:
    tag = kind.tag
    if tag is Tag.MOEBIUS:
        return _moebius_values(limit)
    if tag is Tag.MOEBIUS_K:
        mu = _moebius_values(limit)
        out = mu
        for _ in range(kind.k - 1):
            out = _convolve_values(mu, out, limit)
        return out
    if tag is Tag.MOEBIUS_TILDE_K:
        mu = _moebius_values(_integer_root(limit, kind.k))
        out = np.zeros(limit + 1, dtype=np.int64)
        m = np.arange(1, len(mu), dtype=np.int64)
        out[m**kind.k] = mu[1:]
        return out
    if tag is Tag.MOEBIUS_HAT:
        return _convolve_values(_moebius_values(limit), _squarefull_values(limit), limit)
    if tag is Tag.LIOUVILLE:
        return _liouville_values(limit)
    if tag in (Tag.DIVISOR_K, Tag.TAU3, Tag.ONE):
        k = 3 if tag is Tag.TAU3 else (1 if tag is Tag.ONE else kind.k)
        one = np.ones(limit + 1, dtype=np.int64)
        one[0] = 0
        out = one
        for _ in range(k - 1):
            out = _convolve_values(one, out, limit)
        return out
    if tag is Tag.SQUAREFULL:
        return _squarefull_values(limit)
    if tag is Tag.SQUAREFREE:
        return _moebius_values(limit) ** 2
    raise ContractError(f"unhandled weight {kind}")  # pragma: no cover


def sieve_table(kind: WeightKind, limit: int) -> ArithmeticTable:
    """Exact values of ``kind`` on ``[1, limit]``.

    Moebius is sieved over primes up to sqrt(limit); the k-fold convolutions
    are built by repeated divisor convolution with the Moebius table, and
    1/zeta(ks) puts mu(m) at n = m**k.
    """
    _check_limit(limit)
    return ArithmeticTable(kind, limit, _values(kind, limit))


def dirichlet_convolve(a: ArithmeticTable, b: ArithmeticTable) -> ArithmeticTable:
    """c[n] = sum over d | n of a[d] b[n/d], by the harmonic double loop."""
    if a.limit != b.limit:
        raise ContractError(f"tables have different limits ({a.limit} vs {b.limit})")
    return ArithmeticTable(None, a.limit, _convolve_values(a.values, b.values, a.limit))


def ap_sum(table: ArithmeticTable, X: int, q: int, r: int) -> int:
    """Sum of table values over n <= X with n = r (mod q)."""
    if X > table.limit:
        raise RangeError(f"X={X} exceeds table limit {table.limit}")
    if q < 1 or not 0 <= r < q:
        raise ContractError(f"need q >= 1 and 0 <= r < q, got q={q}, r={r}")
    if X < 1:
        return 0
    start = r if r > 0 else q
    return int(table.values[start : X + 1 : q].sum())


@dataclass(frozen=True)
class NortonReport:
    k: int
    r: int
    ladder: list[int]
    sums: list[int]
    ratios: list[float]

    @property
    def max_ratio(self) -> float:
        return max(self.ratios) if self.ratios else math.nan


def norton_envelope(k: int, r: int, X: int) -> NortonReport:
    """Measure sum_{n<=X'} d_k(n)^r / (X' (log X')^(k^r - 1)) on X' = 2, 4, ..., X.

    The ratio at X' = 1 is undefined (log 1 = 0); the ladder still records the
    exact sum there.
    """
    if k < 2 or r < 2 or k**r > 64:
        raise RangeError(f"need k, r >= 2 and k**r <= 64, got k={k}, r={r}")
    if not 1 <= X <= 10**7:
        raise RangeError(f"X must lie in [1, 1e7], got {X}")
    d = sieve_table(divisor_k(k), X).values[1:]
    biggest = int(d.max())
    if biggest**r * X < 2**62:
        partial = np.cumsum(d**r)
        as_int = lambda i: int(partial[i])  # noqa: E731
    else:
        powered = [int(v) ** r for v in d]
        partial_obj = np.cumsum(np.array(powered, dtype=object))
        as_int = lambda i: int(partial_obj[i])  # noqa: E731

    ladder = []
    x = 1
    while x < X:
        ladder.append(x)
        x *= 2
    ladder.append(X)
    sums = [as_int(x - 1) for x in ladder]
    ratios = [s / (x * math.log(x) ** (k**r - 1)) for x, s in zip(ladder, sums) if x >= 2]
    return NortonReport(k, r, ladder, sums, ratios)
