"""zeta and L-function evaluators against mpmath and each other."""
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from deltalab.lfunc import (fit_constants, hardy_z, l_delta_theta_oracle, l_delta_value,
                            l_eisenstein_value, scan_envelope, t_grid, zeta_value, zeta_zeros)


@pytest.mark.parametrize("t", [0.0, 1.0, 14.0, 100.0, 777.7])
def test_zeta_against_mpmath(t):
    v = zeta_value(t)
    ref = complex(mpmath.zeta(mpmath.mpc(0.5, t)))
    assert abs(v.value - ref) <= max(v.err_est, 1e-12)


def test_zeta_off_line():
    assert abs(zeta_value(0.0, sigma=2.0).value - math.pi ** 2 / 6) < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.floats(1.0, 2000.0))
def test_zeta_conjugate_symmetry(t):
    a, b = zeta_value(t), zeta_value(-t)
    assert abs(a.value - b.value.conjugate()) <= a.err_est + b.err_est


def test_zeta_range_guard():
    with pytest.raises(ValueError):
        zeta_value(2e5)


def test_first_zeros():
    zeros = zeta_zeros(5)
    for i, z in enumerate(zeros, start=1):
        assert abs(z - float(mpmath.zetazero(i).imag)) < 1e-6


def test_hardy_z_real_and_matches_mpmath():
    assert hardy_z(20.0) == pytest.approx(float(mpmath.siegelz(20.0)), abs=1e-10)


@pytest.mark.parametrize("t", [5.0, 12.0])
def test_delta_against_theta_oracle(t):
    assert abs(l_delta_value(t).value - l_delta_theta_oracle(t)) < 1e-10


def test_delta_symmetry():
    a, b = l_delta_value(40.0), l_delta_value(-40.0)
    assert abs(a.value - b.value.conjugate()) <= a.err_est + b.err_est


@pytest.mark.parametrize("t", [10.0, 60.0])
def test_eisenstein_is_zeta_squared(t):
    e = l_eisenstein_value(t)
    z = zeta_value(t)
    tol = e.err_est + 2 * abs(z.value) * z.err_est + 1e-10 * max(1.0, abs(e.value))
    assert abs(e.value - z.value ** 2) <= tol


def test_t_grid_counts():
    assert len(t_grid(10.0, 500.0, 0.25)) == 1961
    assert len(t_grid(10.0, 1000.0, 0.25)) == 3961


def test_fit_constants_cover_running_max():
    ts = np.linspace(10.0, 100.0, 50)
    vals = np.abs(np.sin(ts)) * ts ** 0.2
    c = fit_constants(ts, vals)
    assert np.all(np.maximum.accumulate(vals) <= c["weyl"] * ts ** (1 / 3) * (1 + 1e-12))


def test_scan_report(tmp_path):
    rep = scan_envelope("eisenstein", 10.0, 30.0, 0.5)
    assert len(rep.t_grid) == 41
    assert rep.label == "illustrative"
    rep.write(tmp_path / "s.csv", tmp_path / "s.dat")
    assert len((tmp_path / "s.csv").read_text().splitlines()) == 42
    with pytest.raises(ValueError):
        scan_envelope("maass", 10.0, 20.0, 1.0)


def test_zeta_half_and_first_zero():
    assert zeta_value(0.0).value == pytest.approx(-1.4603545088, abs=1e-10)
    assert abs(zeta_value(14.134725).value) < 1e-4
    a, b = zeta_value(37.5), zeta_value(-37.5)
    assert abs(a.value - b.value.conjugate()) <= a.err_est + b.err_est


def test_delta_at_zero_is_real_and_matches_oracle():
    v = l_delta_value(0.0)
    assert abs(v.value.imag) <= v.err_est
    assert abs(v.value - l_delta_theta_oracle(0.0)) < 1e-6


def test_afe_resolution_doubling():
    from deltalab.lfunc import AfeConfig
    coarse = l_delta_value(30.0, cfg=AfeConfig())
    fine = l_delta_value(30.0, cfg=AfeConfig().doubled())
    assert abs(coarse.value - fine.value) <= coarse.err_est


def test_zeta_sixth_power_constant_reported():
    rep = scan_envelope("eisenstein", 10.0, 100.0, 0.5)
    ts = t_grid(10.0, 100.0, 0.5)
    mags = np.array([abs(complex(mpmath.zeta(mpmath.mpc(0.5, t)))) for t in ts])
    oracle = float(np.max(np.maximum.accumulate(mags) / ts ** (1 / 6)))
    assert rep.zeta_sixth_constant == pytest.approx(oracle, rel=1e-9)
