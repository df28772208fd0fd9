"""Dirichlet approximation, dyadic families and the counting oracles."""
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from deltalab.config import DiophConfig
from deltalab.dioph import (BudgetError, approximate, approximate_brute, count_A, count_B,
                            count_equal_ratios, count_rational_proximity, dirichlet_approx,
                            dyadic_floor, families, family_census, r_range, tuple_set)
from deltalab.suites import suite_count
from deltalab.summation import AnalyticParams

P = AnalyticParams(1000.0, 200.0, 100.0, 101)


def test_approximation_matches_brute_force_for_all_residues():
    p = 10007
    Q2 = Fraction(p)
    for num in range(1, p):
        tr = approximate(num, p, Q2)
        assert (tr.a, tr.q) == approximate_brute(num, p, Q2)
        assert (Fraction(num, p) - Fraction(tr.a, tr.q)) ** 2 * tr.q ** 2 * Q2 <= 1


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 10 ** 6), st.integers(1, 10 ** 4))
def test_approximation_bounds(den, q_max):
    num = den - 1
    tr = approximate(num, den, Fraction(q_max * q_max))
    assert 1 <= tr.q <= q_max
    assert tr.beta == Fraction(num, den) - Fraction(tr.a, tr.q)
    assert abs(tr.beta) * tr.q * q_max <= 1


def test_dirichlet_example():
    tr = dirichlet_approx(150, P)
    assert tr.rbar == pow(150, -1, 101)
    assert tr.rbar * 150 % 101 == 1
    assert tr.q * tr.q <= P.Q ** 2 + 1e-9
    with pytest.raises(ValueError):
        dirichlet_approx(202, P)


def test_dyadic_floor():
    assert dyadic_floor(Fraction(3, 7)) == Fraction(1, 4)
    assert dyadic_floor(Fraction(8)) == 8
    with pytest.raises(ValueError):
        dyadic_floor(Fraction(0))


def test_families_partition_the_r_range():
    lo, hi = r_range(P)
    members = sorted(r for fam in families(P).values() for r in fam.members)
    assert members == [r for r in range(lo, hi + 1) if r % P.p]
    for qb, bb, size, bound, ratio in family_census(P):
        assert qb <= P.Q and ratio <= 16


def test_tuple_set_congruence():
    U, Qs, Rs = tuple_set(P, 2, Fraction(1, 8))
    assert len(U) > 0
    assert np.all((U * Rs - Qs) % P.p == 0)


def test_count_A_diagonal_lower_bound():
    U, _, _ = tuple_set(P, 2, Fraction(1, 8))
    assert count_A(P, 2, Fraction(1, 8), 0).count >= len(U)


def test_count_B_theta_zero_contains_diagonal():
    assert count_B(P, 2, Fraction(1, 8), 1, 1, 0).count >= len(tuple_set(P, 2, Fraction(1, 8))[0])


def test_counting_budget():
    with pytest.raises(BudgetError):
        tuple_set(P, 2, Fraction(1, 8), budget=10)
    with pytest.raises(BudgetError):
        count_rational_proximity(100, 100, 0.1, budget=1000)


def test_rational_proximity_limits():
    assert count_rational_proximity(6, 5, 0).count == count_equal_ratios(6, 5)
    assert count_rational_proximity(6, 5, 10).count == (6 * 5) ** 2
    brute = sum(1 for a in range(4, 8) for b in range(4, 8) for c in range(3, 6) for d in range(3, 6)
                if abs(Fraction(a, b) - Fraction(c, d)) <= Fraction(1, 10))
    assert count_rational_proximity(4, 3, 0.1).count == brute


@pytest.mark.parametrize("which", ["A", "B", "C"])
def test_count_constant_does_not_grow_with_p(which):
    res = suite_count(DiophConfig(), which)
    trend = [c for c in res.checks if c.case_id.startswith("trend/")][0]
    assert trend.passed, trend.actual


def test_exact_rational_hit_flags_zero_beta():
    tr = approximate(3, 7, Fraction(100))
    assert (tr.a, tr.q) == (3, 7) and tr.beta == 0 and tr.zero_beta


def test_small_fraction():
    tr = approximate(1, 1000, Fraction(100))
    assert (tr.a, tr.q) == (0, 1) and tr.beta == Fraction(1, 1000)


def test_count_A_empty_theta_block():
    U, _, _ = tuple_set(P, 2, Fraction(1, 8))
    m = U * U * tuple_set(P, 2, Fraction(1, 8))[2]
    theta = 4 * int(np.max(m))
    res = count_A(P, 2, Fraction(1, 8), theta)
    assert res.count == 0 and res.bound > 0


def test_count_B_empty_when_targets_unreachable():
    assert count_B(P, 2, Fraction(1, 8), 1, 1, 10 ** 15).count == 0


def test_count_C_measure_limits():
    from deltalab.dioph import count_C, xi_measure, _equal_pairs
    pairs = len(_equal_pairs(*tuple_set(P, 2, Fraction(1, 8)))[0])
    assert count_C(P, 2, Fraction(1, 8), 1.0, 1e12).count == pytest.approx(2.0 * pairs)
    centers = np.linspace(-3.0, 3.0, 101)
    assert np.all(xi_measure(centers, 1e-3) <= 2e-3 + 1e-15)
