import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from moebius_partitions.arith import MOEBIUS, MOEBIUS_HAT, ONE, moebius_k, moebius_tilde, sieve_table
from moebius_partitions.errors import ContractError, RangeError
from moebius_partitions.expsums import (
    bound_sequences,
    dirichlet_approx,
    envelope_check,
    exp_sum,
    min_norm_sum,
    pigeonhole_check,
)


@pytest.fixture(scope="module")
def mu():
    return sieve_table(MOEBIUS, 5000)


def direct_sum(n_max, alpha, w):
    return sum(w(n) * cmath.exp(2j * math.pi * n * alpha) for n in range(1, n_max + 1))


def test_exp_sum_examples(mu):
    assert exp_sum(mu, 3, 0.0) == pytest.approx(-1)  # M(3) = 1 - 1 - 1
    s = exp_sum(mu, 4, 0.5)
    assert s == pytest.approx(direct_sum(4, 0.5, oracles.mu), abs=1e-14)
    assert s == pytest.approx(-1.0)  # e(1/2) - e(1) - e(3/2)
    assert exp_sum(mu, 1, 0.37) == pytest.approx(cmath.exp(2j * math.pi * 0.37))


def test_exp_sum_matches_direct(mu):
    for alpha in (0.1, 0.3141, 0.77, Fraction(3, 7)):
        assert exp_sum(mu, 500, alpha) == pytest.approx(direct_sum(500, float(alpha), oracles.mu), abs=1e-9)


def test_exp_sum_range_guard(mu):
    with pytest.raises(RangeError):
        exp_sum(mu, 5001, 0.1)


@settings(max_examples=50, deadline=None)
@given(alpha=st.floats(-5, 5, allow_nan=False), X=st.integers(1, 5000))
def test_exp_sum_symmetries(mu, alpha, X):
    s = exp_sum(mu, X, alpha)
    assert abs(exp_sum(mu, X, alpha + 1) - s) < 1e-9
    assert abs(exp_sum(mu, X, -alpha).conjugate() - s) < 1e-9
    assert abs(s) <= np.abs(mu.values[1 : X + 1]).sum() + 1e-9


def test_exp_sum_trivial_bound_equality():
    one = sieve_table(ONE, 300)
    assert exp_sum(one, 300, 0.0) == pytest.approx(300.0)


def _brute_best(alpha, Q):
    # convergents are exactly the record minima of |q alpha - a| as q increases
    best, record = None, math.inf
    for q in range(1, Q + 1):
        a = round(alpha * q)
        if abs(q * alpha - a) < record:
            best, record = (a, q), abs(q * alpha - a)
    return best


def test_dirichlet_examples():
    r = dirichlet_approx(math.pi, 100)
    assert (r.a, r.q) == (22, 7) == _brute_best(math.pi, 100)
    r = dirichlet_approx(math.sqrt(2), 50)
    assert (r.a, r.q) == (41, 29) == _brute_best(math.sqrt(2), 50)
    r = dirichlet_approx(Fraction(1, 3), 10)
    assert (r.a, r.q, r.beta, r.gamma) == (1, 3, 0.0, 1.0)


def test_dirichlet_guard():
    with pytest.raises(ContractError):
        dirichlet_approx(0.5, 0)


@settings(max_examples=200, deadline=None)
@given(alpha=st.floats(-10, 10, allow_nan=False), Q=st.integers(1, 10**6))
def test_dirichlet_properties(alpha, Q):
    r = dirichlet_approx(alpha, Q)
    assert 1 <= r.q <= Q
    assert math.gcd(r.a, r.q) == 1
    err = abs(Fraction(alpha) - Fraction(r.a, r.q))
    assert err <= Fraction(1, r.q * (Q + 1))
    assert r.gamma >= 1 and abs(r.beta) <= r.gamma / r.q**2 * (1 + 1e-12)


def test_bound_sequences_values():
    seq = bound_sequences(3)
    assert (seq[0].a, seq[0].b, seq[0].c) == (Fraction(4, 5), Fraction(1, 2), Fraction(1, 2))
    assert (seq[1].a, seq[1].b, seq[1].c) == (Fraction(16, 17), Fraction(1, 6), Fraction(7, 8))
    assert seq[2].a == Fraction(52, 53)


def test_bound_sequences_monotone():
    seq = bound_sequences(64)
    for k, (p, nxt) in enumerate(zip(seq, seq[1:]), start=1):
        assert p.a < nxt.a < 1
        assert p.c < nxt.c < 1
        assert p.b == Fraction(1, 2 * 3 ** (k - 1))
    with pytest.raises(RangeError):
        bound_sequences(65)


def _brute_pigeonhole(alpha, q):
    x = Fraction(alpha)
    norms = [abs(m * x - round(m * x)) for m in range(1, q + 1)]
    return max(sum(1 for v2 in norms if abs(v1 - v2) < Fraction(1, q)) for v1 in norms)


def test_pigeonhole_examples():
    assert pigeonhole_check(0.1, 10, 1.0) <= 14
    assert pigeonhole_check(0.1, 10, 1.0) == _brute_pigeonhole(0.1, 10)
    assert pigeonhole_check(0.25, 1, 1.0, a=0) == 1
    alpha = 22 / 7 + 1e-4
    assert pigeonhole_check(alpha, 7, 1.0) <= 14
    assert pigeonhole_check(alpha, 7, 1.0) == _brute_pigeonhole(alpha, 7)


def test_pigeonhole_hypothesis_violation():
    with pytest.raises(ContractError):
        pigeonhole_check(0.2, 10, 1.0, a=2)  # not reduced
    with pytest.raises(ContractError):
        pigeonhole_check(0.5, 10, 1.0, a=1)


@settings(max_examples=100, deadline=None)
@given(q=st.integers(1, 120), a=st.integers(0, 500), slack=st.floats(-1, 1), gamma=st.floats(1, 5))
def test_pigeonhole_matches_brute(q, a, slack, gamma):
    if math.gcd(a, q) != 1:
        a = 1 if q > 1 else 0
    alpha = a / q + slack * gamma / q**2 * 0.999
    got = pigeonhole_check(alpha, q, gamma, a=a)
    assert got == _brute_pigeonhole(alpha, q)
    assert got <= 14 * gamma


def test_min_norm_sum_examples():
    assert min_norm_sum(10, 3, 0.0) == pytest.approx(10 + 5 + 10 / 3)
    assert min_norm_sum(100, 1, 0.3) == pytest.approx(10 / 3)
    expected = sum(100 / k if k % 2 == 0 else min(100 / k, 2.0) for k in range(1, 51))
    assert min_norm_sum(100, 50, 0.5) == pytest.approx(expected)


def test_min_norm_square_weighted():
    X, M, J, alpha = 10**4, 4, 8, 0.123
    expected = 0.0
    for m in range(M + 1, 2 * M + 1):
        for j in range(J + 1, 2 * J + 1):
            n = oracles.norm(alpha * m * m * j)
            expected += oracles.d_k(3, j) * min(X / (m * m * j), 1 / n if n else math.inf)
    assert min_norm_sum(X, 1, alpha, mode="square_weighted", M=M, J=J) == pytest.approx(expected)
    with pytest.raises(ContractError):
        min_norm_sum(X, 1, alpha, mode="square_weighted")
    with pytest.raises(ContractError):
        min_norm_sum(X, 1, alpha, mode="cubic")


def test_envelope_trivial():
    rep = envelope_check(1, [2], 1, alphas=[0.0])
    assert rep.max_ratio == 0.0
    assert rep.argmax.X == 2


def test_envelope_small_sweep():
    rep = envelope_check(2, [2**10, 2**11], 20, seed=3, farey_q=5)
    assert len(rep.rows) == 2 * (20 + 10)  # 10 Farey fractions in [0, 1) with q <= 5
    assert math.isfinite(rep.max_ratio) and rep.max_ratio > 0
    best = rep.argmax
    assert best.ratio == rep.max_ratio and best.q >= 1


@pytest.mark.parametrize("weight", [MOEBIUS_HAT, moebius_tilde(2), moebius_k(3)])
def test_envelope_dispatch(weight):
    rep = envelope_check(weight, [1024], 5, farey_q=3)
    assert math.isfinite(rep.max_ratio)


def test_envelope_guards():
    with pytest.raises(ContractError):
        envelope_check(1, [], 10)
    with pytest.raises(ContractError):
        envelope_check(ONE, [100], 10)
    with pytest.raises(ContractError):
        envelope_check(1, [100], 0)


def test_envelope_seed_reproducible():
    a = envelope_check(1, [2048], 10, seed=7, farey_q=2)
    b = envelope_check(1, [2048], 10, seed=7, farey_q=2)
    assert a.rows == b.rows
