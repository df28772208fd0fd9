"""Stationary-phase predictors against quadrature."""
import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from deltalab.numerics import OscIntegral, bump, osc_integrate, plateau
from deltalab.phase import (CubicPhaseSpec, PhaseError, bisect_root, bky_expand,
                            cubic_phase_asymptotic, cubic_phase_integral, sign_changes,
                            spa_first_order, stationary_point, voronoi_transform_asymptotic)

W = bump(1.0, 2.0)
U = plateau(1.0, 1.25, 1.75, 2.0)


def quadratic(Y, x0=1.5):
    return OscIntegral(W.eval, lambda x: 0.5 * Y * (np.asarray(x) - x0) ** 2, (1.0, 2.0),
                       phase_deriv=lambda x: Y * (np.asarray(x) - x0))


@settings(max_examples=30, deadline=None)
@given(st.floats(-3.0, 3.0))
def test_bisect_root_cubic(c):
    root = bisect_root(lambda x: x ** 3 - c, -2.0, 2.0)
    assert abs(root - math.copysign(abs(c) ** (1 / 3), c)) < 1e-12


def test_sign_changes_counts_roots():
    assert len(sign_changes(np.sin, 0.5, 10.0)) == 3


def test_stationary_point_unique_and_absent():
    assert stationary_point(lambda x: (x - 1.3) ** 2, 1.0, 2.0) == pytest.approx(1.3, abs=1e-10)
    assert stationary_point(lambda x: x, 1.0, 2.0) is None
    with pytest.raises(PhaseError):
        stationary_point(lambda x: np.cos(20 * x), 1.0, 2.0)


def test_spa_first_order_stationary_point_and_phase():
    pred = spa_first_order(quadratic(400.0), Y=400.0, Z=1.0)
    assert pred.valid
    assert pred.stationary_point == pytest.approx(1.5, abs=1e-10)
    assert abs(pred.phase_at_sp) < 1e-12


def test_spa_first_order_negligible_without_critical_point():
    spec = OscIntegral(W.eval, lambda x: 30.0 * np.asarray(x), (1.0, 2.0))
    assert spa_first_order(spec, Y=30.0, Z=1.0).verdict == "negligible"


@pytest.mark.parametrize("Y", [200.0, 800.0])
def test_bky_higher_order_improves(Y):
    spec = quadratic(Y)
    exact = osc_integrate(spec, 1e-13).value
    g0 = abs(bky_expand(spec, r_max=0) - exact)
    g1 = abs(bky_expand(spec, r_max=1) - exact)
    assert g1 < g0
    # the leading term is W(x0) e^{i pi/4} / sqrt(Y)
    assert abs(bky_expand(spec, r_max=0) - cmath.exp(1j * math.pi / 4) / math.sqrt(Y)) < 1e-6


def test_bky_rejects_order():
    with pytest.raises(ValueError):
        bky_expand(quadratic(100.0), r_max=3)


def test_cubic_prediction_tracks_quadrature():
    gaps = []
    for A in (300.0, 600.0, 1200.0):
        spec = CubicPhaseSpec(A, -2.0 * A * math.sqrt(1.5), 0.0, 1.0, U)
        pred = cubic_phase_asymptotic(spec)
        assert pred.valid and pred.stationary_point == pytest.approx(1.5, rel=1e-12)
        value = cubic_phase_integral(spec).value
        quotient = value / pred.leading()
        # phase'' = A / (2 x0), so the inert factor tends to U(x0) e(1/8) sqrt(2 x0)
        gaps.append(abs(quotient - U(1.5) * cmath.exp(1j * math.pi / 4) * math.sqrt(3.0)))
    assert gaps[0] > gaps[1] > gaps[2]


def test_cubic_inadmissible_and_outside_support():
    with pytest.raises(PhaseError):
        cubic_phase_asymptotic(CubicPhaseSpec(0.5, 1.0, 0.0, 1.0, U))
    spec = CubicPhaseSpec(300.0, -2.0 * 300.0 * math.sqrt(3.0), 0.0, 1.0, U)
    assert cubic_phase_asymptotic(spec).verdict == "negligible"


def test_voronoi_transform_branches_shift_B():
    spec = CubicPhaseSpec(1.0, 0.0, 0.002, 100.0, U)
    out = voronoi_transform_asymptotic(spec, n=4 * 150, c=2)
    assert set(out) == {1, -1}
    assert out[-1].valid and not out[1].valid
    assert out[-1].stationary_point == pytest.approx(150.0, rel=1e-12)


def test_quadratic_stationary_point_large_Y():
    spec = OscIntegral(W.eval, lambda x: 1e4 * (np.asarray(x) - 1.5) ** 2, (1.0, 2.0))
    assert spa_first_order(spec, Y=1e4, Z=1.0).stationary_point == pytest.approx(1.5, abs=1e-10)


def test_non_stationary_phase_is_negligible():
    R = 10.0
    spec = OscIntegral(W.eval, lambda x: R * np.asarray(x), (1.0, 2.0))
    assert spa_first_order(spec, Y=R, Z=1.0).verdict == "negligible"
    assert abs(osc_integrate(spec, 1e-13).value) < R ** -3


@pytest.mark.parametrize("A", [200.0, 400.0])
def test_bky_leading_term_against_quadrature(A):
    spec = OscIntegral(W.eval, lambda x: A * (np.asarray(x) - 1.5) ** 2, (1.0, 2.0))
    exact = osc_integrate(spec, 1e-13).value
    lead = cmath.exp(1j * math.pi / 4) * W(1.5) / math.sqrt(2 * A)
    assert abs(bky_expand(spec, r_max=0) - lead) < 1e-9
    assert abs(lead - exact) < 0.05 * abs(exact)


def test_bky_zero_amplitude():
    spec = OscIntegral(lambda x: np.zeros(np.shape(x)), lambda x: 100.0 * (np.asarray(x) - 1.5) ** 2,
                       (1.0, 2.0))
    assert bky_expand(spec, r_max=2) == 0


def test_zero_B_has_zero_phase_and_no_interior_critical_point():
    # with B = 0 the critical point sits at x = 0, outside a weight supported on [1, 2]
    for A in (300.0, 600.0, 1200.0):
        spec = CubicPhaseSpec(A, 0.0, 0.0, 1.0, U)
        pred = cubic_phase_asymptotic(spec)
        assert pred.phase_at_sp == 0 and pred.verdict == "negligible"
        assert abs(cubic_phase_integral(spec).value) * math.sqrt(A) < 1e-10


def test_admissibility_arithmetic():
    spec = CubicPhaseSpec(100.0, 0.0, 5.0, 1.0, U, eta=0.1)
    assert spec.admissible
    assert not CubicPhaseSpec(25.0, 0.0, 5.0, 1.0, U, eta=0.1).admissible
