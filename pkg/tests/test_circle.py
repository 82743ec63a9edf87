import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from moebius_partitions.arith import LIOUVILLE, MOEBIUS, ONE, moebius_k
from moebius_partitions.circle import (
    ArcConfig,
    arc_bound_scan,
    build_arcs,
    cauchy_detail,
    cauchy_estimate,
    nominal_radius,
    phi_coefficients,
    phi_eval,
    phi_on_grid,
    phi_tail,
)
from moebius_partitions.errors import ConfigurationError, ContractError, RangeError
from moebius_partitions.partitions import partition_series

MU2 = moebius_k(2)


def test_arc_config():
    cfg = ArcConfig(math.e**10, 1)
    assert cfg.Q == pytest.approx(10)
    assert 0 < cfg.rho < 1
    with pytest.raises(RangeError):
        ArcConfig(1.5, 1)
    with pytest.raises(RangeError):
        ArcConfig(100, 0)


def test_arcs_direct_construction():
    X = math.e**10
    d = build_arcs(X, 1)
    expected = {(1, 0)} | {(q, a) for q in range(1, 11) for a in range(1, q) if math.gcd(a, q) == 1}
    assert {(arc.q, arc.a) for arc in d.majors} == expected
    for arc in d.majors:
        assert arc.halfwidth == pytest.approx(10 / (arc.q * X))
    assert d.interval[0] == pytest.approx(-10 / X)


def test_small_Q_single_family():
    d = build_arcs(5.0, 1)  # Q = log 5 < 2
    assert {arc.q for arc in d.majors} == {1}
    assert len(d.majors) == 1


def test_membership():
    X = 1e5
    d = build_arcs(X, 1)
    delta2 = d.config.delta(2)
    arc = d.locate(0.5 + delta2 / 2)
    assert (arc.q, arc.a) == (2, 1)
    assert d.is_major(1.0)  # theta = 1 is the origin arc mod 1
    assert not d.is_major(0.5 + 3 * delta2)


def test_overlap_error_names_pair():
    with pytest.raises(ConfigurationError, match="1/84 and 1/83"):
        build_arcs(1e4, 2)


@pytest.mark.parametrize("X, A", [(1e3, 1), (1e4, 1), (1e5, 1), (1e5, 2), (math.e**10, 1)])
def test_arc_soundness(X, A):
    d = build_arcs(X, A)
    start, end = d.interval
    for arc in d.majors:
        assert start <= arc.lo < arc.hi <= end
        assert math.gcd(arc.a, arc.q) == 1
    for left, right in zip(d.majors, d.majors[1:]):
        assert left.hi < right.lo
    assert d.minor_measure == pytest.approx(1 - d.major_measure, abs=1e-12)
    Q = d.config.Q
    assert d.major_measure <= 2 / X * Q**2 * (Q + 1)  # crude count of q <= Q arcs


def test_non_strict_allows_overlap():
    d = build_arcs(1e4, 2, strict=False)
    assert d.minor_measure > 1 - d.major_measure  # the union is smaller than the sum


def test_phi_coefficients_match_double_sum():
    M = 300
    c = phi_coefficients(MU2, M)
    direct = [0.0] * (M + 1)
    for n in range(1, M + 1):
        w = oracles.convolve(oracles.mu, oracles.mu, n)
        for j in range(1, M // n + 1):
            direct[j * n] += w / j
    assert np.allclose(c, direct, atol=1e-13)


def test_phi_eval_single_term():
    assert phi_eval(ONE, 7.0, 0.0, 1, 1) == pytest.approx(math.exp(-1 / 7))
    assert phi_eval(MOEBIUS, 3.0, 0.25, 1, 1) == pytest.approx(math.exp(-1 / 3) * 1j)


def test_phi_eval_matches_direct_oracle():
    X, theta, J, N = 50.0, 0.0321, 30, 200
    z = math.exp(-1 / X) * complex(math.cos(2 * math.pi * theta), math.sin(2 * math.pi * theta))
    ref = sum(
        oracles.convolve(oracles.mu, oracles.mu, n) / j * z ** (j * n) for j in range(1, J + 1) for n in range(1, N + 1)
    )
    assert abs(phi_eval(MU2, X, theta, J, N) - ref) < 1e-12


def test_phi_eval_truncation_tail():
    X, theta = 50.0, 0.0173
    a = phi_eval(MU2, X, theta, 400, 4000)
    b = phi_eval(MU2, X, theta, 800, 8000)
    # both differ from the full series by at most their omitted tails
    assert abs(a - b) <= phi_tail(MU2, X, 400, 4000) + phi_tail(MU2, X, 800, 8000)
    assert phi_tail(MU2, X, 800, 8000) < 1e-8


def test_phi_grid_matches_direct():
    X = 40.0
    c = phi_coefficients(MU2, 2000)
    grid = phi_on_grid(c, math.exp(-1 / X), 4096)
    for k in (0, 17, 1000, 2048):
        assert abs(grid[k] - phi_eval(MU2, X, k / 4096, 2000, 2000)) < 1e-10


@settings(max_examples=30, deadline=None)
@given(theta=st.floats(-1, 1), X=st.floats(2, 60))
def test_phi_conjugate_symmetry(theta, X):
    a = phi_eval(LIOUVILLE, X, theta, 20, 300)
    b = phi_eval(LIOUVILLE, X, -theta, 20, 300)
    assert abs(a - b.conjugate()) < 1e-10


def test_arc_scan_reports():
    r = arc_bound_scan(MU2, 1e3, 1, 32)
    again = arc_bound_scan(MU2, 1e3, 1, 32)
    assert r == again
    assert math.isfinite(r.major_ratio) and math.isfinite(r.minor_ratio)
    assert r.major_max > 0 and r.minor_max > 0
    d = build_arcs(1e3, 1)
    assert d.is_major(r.major_argmax) and not d.is_major(r.minor_argmax)


def test_arc_scan_rejects_nonnegative_weight():
    with pytest.raises(ContractError):
        arc_bound_scan(ONE, 1e3, 1)


def test_cauchy_examples():
    assert abs(cauchy_estimate(MOEBIUS, 10, 4096) - 1) < 0.5
    assert cauchy_estimate(ONE, 10, 4096).real == pytest.approx(42, abs=1e-6)


@pytest.mark.parametrize("weight", [ONE, MOEBIUS, MU2])
def test_cauchy_round_trip(weight):
    p = partition_series(weight, 120).p
    for n in range(1, 121, 7):
        v = cauchy_estimate(weight, n, 8192)
        assert round(v.real) == p[n]
        assert abs(v.imag) < 1e-6


def test_cauchy_point_doubling_stable():
    for n in (30, 90):
        a = cauchy_estimate(MU2, n, 2048)
        b = cauchy_estimate(MU2, n, 4096)
        assert abs(a - b) < 1e-6


def test_cauchy_nominal_radius_for_signed_weight():
    n = 60
    X = nominal_radius(n)
    assert X == pytest.approx(math.sqrt(n) * math.log(n))
    assert round(cauchy_estimate(MOEBIUS, n, 8192, X=X).real) == partition_series(MOEBIUS, n).p[n]


def test_cauchy_radius_never_exceeds_nominal_choice():
    d = cauchy_detail(ONE, 150)
    assert 2 <= d.X <= nominal_radius(150)


def test_cauchy_guards():
    with pytest.raises(RangeError):
        cauchy_estimate(ONE, 10, 1000)
    with pytest.raises(RangeError):
        cauchy_estimate(ONE, 2001)
    with pytest.raises(RangeError):
        cauchy_estimate(ONE, 300, 256)
