"""Exponential sums and the van der Corput bound."""
import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from deltalab.expsum import (PhaseKind, PhaseSpec, estimate_lambda, exp_sum, exp_sum_mp,
                             gauss_sum, log_phase, vdc_bound, vdc_check, vdc_kappa)


def test_zero_phase_counts_terms():
    spec = PhaseSpec(PhaseKind.Custom, (1, 100), func=lambda x: np.zeros_like(x))
    assert exp_sum(spec) == 100


def test_half_integer_phase_cancels():
    spec = PhaseSpec(PhaseKind.Custom, (1, 100), func=lambda x: x / 2)
    assert abs(exp_sum(spec)) < 1e-12


def test_gauss_sum_101():
    assert abs(gauss_sum(101) - math.sqrt(101)) < 1e-12
    assert abs(gauss_sum(103) - 1j * math.sqrt(103)) < 1e-12


def test_empty_and_oversized_ranges():
    assert exp_sum(PhaseSpec(PhaseKind.Custom, (5, 4), func=lambda x: x)) == 0j
    with pytest.raises(ValueError):
        exp_sum(PhaseSpec(PhaseKind.Custom, (1, 10 ** 8), func=lambda x: x))


def test_vdc_bound_values():
    assert vdc_kappa(2) == 0.5
    assert vdc_bound(2, 0.01, 100) == pytest.approx(100 * 0.1 + 1 / 0.1)
    assert vdc_bound(3, 1e-4, 1000) == pytest.approx(1000 * 1e-4 ** (1 / 6) + 1000 ** 0.5 * 1e-4 ** (-1 / 6))
    with pytest.raises(ValueError):
        vdc_bound(1, 1.0, 10)


def test_lambda_sign_check():
    spec = PhaseSpec(PhaseKind.Custom, (1, 100), func=lambda x: (x - 50.0) ** 3 / 1e4,
                     deriv=lambda x, k: 6e-4 * (x - 50.0) if k == 2 else None)
    with pytest.raises(ValueError):
        estimate_lambda(spec, 2)


def test_log_phase_derivative_closed_form():
    spec = log_phase(1e4, 100.0, 101, 7)
    x = 150.0
    expected = 1e4 / (2 * math.pi) * (-1) ** 3 * 6 * 101 ** 4 / (101 * x + 7) ** 4
    assert spec.derivative(x, 4) == pytest.approx(expected, rel=1e-13)


@settings(max_examples=15, deadline=None)
@given(st.floats(1e3, 1e5), st.integers(11, 997), st.integers(1, 50))
def test_log_phase_matches_mp_oracle(t, p, ell):
    spec = log_phase(t, t ** 0.6, p, ell)
    assert abs(exp_sum(spec) - exp_sum_mp(spec)) < 1e-9 * max(1.0, spec.length)


@settings(max_examples=15, deadline=None)
@given(st.floats(-1e-3, 1e-3), st.floats(-1e4, 1e4), st.floats(-100.0, 100.0))
def test_cubic_phase_matches_mp_oracle(A, B, C):
    spec = PhaseSpec(PhaseKind.CubicSqrtPhase, (1000, 1400), {"A": A, "B": B, "C": C})
    assert abs(exp_sum(spec) - exp_sum_mp(spec)) < 1e-9


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 1.0), st.integers(1, 500))
def test_trivial_bound(alpha, n):
    spec = PhaseSpec(PhaseKind.Custom, (1, n), func=lambda x: alpha * x * x)
    assert abs(exp_sum(spec)) <= n + 1e-9


def test_vdc_check_log_phase():
    row = vdc_check(log_phase(1e4, 1e4 ** 0.65, 211, 3), 4)
    assert row.ratio <= 8
    assert row.length == math.floor(2 * 1e4 / 1e4 ** 0.65) - math.ceil(1e4 / 1e4 ** 0.65) + 1


def test_lambda_one_bound():
    for k in (2, 3, 4):
        assert vdc_bound(k, 1.0, 100) == pytest.approx(100 + 100 ** (1 - 2 ** (2 - k)))
    assert vdc_kappa(4) == pytest.approx(1 / 14)


def test_nearly_constant_phase_is_handled():
    spec = PhaseSpec(PhaseKind.Custom, (1, 200), func=lambda x: 1e-9 * x * x,
                     deriv=lambda x, k: np.full(np.shape(x), 2e-9) if k == 2 else None)
    row = vdc_check(spec, 2)
    assert math.isfinite(row.ratio) and row.ratio <= 1.0
