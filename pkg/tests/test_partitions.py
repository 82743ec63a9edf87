import pytest
from hypothesis import given, settings, strategies as st

import oracles
from moebius_partitions.arith import LIOUVILLE, MOEBIUS, ONE, moebius_k
from moebius_partitions.errors import RangeError
from moebius_partitions.partitions import (
    admissible_counts,
    admissible_partitions,
    enumerate_admissible,
    growth_report,
    partition_series,
    product_oracle,
    root_growth,
)


def test_moebius_series_examples():
    s = partition_series(MOEBIUS, 10)
    assert s.p[10] == 1  # 8 even minus 7 odd admissible partitions
    assert s.p[1] == 1
    assert s.p[0] == 1


def test_classical_p10():
    assert partition_series(ONE, 10).p[10] == 42


def test_product_oracle_examples():
    assert product_oracle(ONE, 5) == [1, 1, 2, 3, 5, 7]
    assert product_oracle(MOEBIUS, 0) == [1]
    assert product_oracle(MOEBIUS, 50) == partition_series(MOEBIUS, 50).p


@pytest.mark.parametrize("weight", [MOEBIUS, moebius_k(2), LIOUVILLE, ONE, moebius_k(3)])
def test_recurrence_holds(weight):
    assert partition_series(weight, 150).check_recurrence()


def test_table1_counts():
    c = admissible_counts(10)
    assert (c[9].even, c[9].odd, c[9].total) == (8, 7, 15)
    assert (c[0].even, c[0].odd, c[0].total) == (1, 0, 1)
    assert (c[1].even, c[1].odd, c[1].total) == (1, 1, 2)


def test_table1_listing():
    parts = list(admissible_partitions(10))
    assert len(parts) == 15
    assert ((10, "blue"),) in parts
    assert ((5, "red"), (3, "red"), (2, "red")) in parts
    # 6 + 2 + 2 repeats a red part
    assert ((6, "blue"), (2, "red"), (2, "red")) not in parts


def test_three_counting_routes_agree():
    dp = admissible_counts(40)
    for n in range(1, 41):
        brute_even, brute_odd = oracles.admissible_brute(n)
        enum = enumerate_admissible(n) if n <= 30 else None
        assert (dp[n - 1].even, dp[n - 1].odd) == (brute_even, brute_odd)
        if enum is not None:
            assert (enum.even, enum.odd) == (brute_even, brute_odd)


def test_difference_identity_small():
    p = partition_series(MOEBIUS, 300).p
    for c in admissible_counts(300):
        assert c.difference == p[c.n]


def test_total_non_decreasing():
    totals = [c.total for c in admissible_counts(1000)]
    assert all(a <= b for a, b in zip(totals, totals[1:]))


def test_pentagonal_oracle_small():
    assert partition_series(ONE, 600).p == oracles.partition_numbers(600)


def test_growth_rows():
    rows = growth_report(5000)
    assert rows[9].odd_over_even == pytest.approx(7 / 8)
    assert rows[0].odd_over_even == 0
    assert abs(rows[4999].odd_over_even - 1) < abs(rows[499].odd_over_even - 1)


def test_growth_rows_missing_log():
    rows = growth_report(12)
    p = partition_series(MOEBIUS, 12).p
    for r in rows:
        assert (r.log_abs_difference is None) == (p[r.n] == 0)


def test_root_growth_shape():
    s = partition_series(moebius_k(2), 50)
    g = root_growth(s)
    assert len(g) == 50
    assert all(v is None or v >= 0 for v in g)


def test_guards():
    with pytest.raises(RangeError):
        partition_series(MOEBIUS, 20_001)
    with pytest.raises(RangeError):
        product_oracle(MOEBIUS, 2001)
    with pytest.raises(RangeError):
        admissible_counts(0)
    with pytest.raises(RangeError):
        list(admissible_partitions(61))


@settings(max_examples=25, deadline=None)
@given(N=st.integers(1, 120), k=st.integers(1, 4))
def test_recurrence_matches_product(N, k):
    assert partition_series(moebius_k(k), N).p == product_oracle(moebius_k(k), N)
