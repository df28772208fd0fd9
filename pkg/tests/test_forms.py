"""Coefficient tables against product oracles and the Hecke relations."""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from deltalab.forms import (FormId, delta_coefficients, divisor_counts, form_table, hecke_lambda,
                            ramanujan_average, read_cache, tau_by_products, tau_table, write_cache)


def naive_tau(n_max):
    """q prod (1 - q^m)^24 by repeated polynomial multiplication."""
    poly = [1] + [0] * n_max
    for m in range(1, n_max + 1):
        for _ in range(24):
            for k in range(n_max, m - 1, -1):
                poly[k] -= poly[k - m]
    return poly[:n_max]


def test_tau_small_values():
    assert tau_table(1) == [1]
    assert tau_table(2)[1] == -24
    assert tau_table(12)[11] == -370944


def test_tau_matches_naive_product():
    assert tau_table(60) == naive_tau(60)


def test_tau_matches_product_oracle():
    assert tau_table(500) == tau_by_products(500)[:500]


def test_tau_cap():
    with pytest.raises(MemoryError):
        tau_table(20, cap=10)


def test_lambda_values(delta_small, eis_small):
    assert hecke_lambda(delta_small, 1) == 1.0
    assert hecke_lambda(delta_small, 2) == pytest.approx(-24 / 2 ** 5.5, rel=1e-15)
    assert hecke_lambda(eis_small, 12) == 6
    with pytest.raises(IndexError):
        hecke_lambda(delta_small, 10 ** 6)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 60), st.integers(1, 60))
def test_tau_multiplicative(m, n):
    raw = (0,) + tuple(tau_table(3600))
    if math.gcd(m, n) == 1:
        assert raw[m * n] == raw[m] * raw[n]


def test_hecke_recursion(delta_small):
    lam = delta_small.lam
    for p in (2, 3, 5, 7):
        k = 1
        while p ** (k + 1) <= delta_small.n_max:
            assert abs(lam[p ** (k + 1)] - lam[p] * lam[p ** k] + lam[p ** (k - 1)]) < 1e-12
            k += 1


def test_deligne_spot_check(delta_small):
    d = divisor_counts(delta_small.n_max)
    assert np.all(np.abs(delta_small.lam[1:]) <= d[1:])


def test_divisor_counts_brute():
    d = divisor_counts(200)
    for n in range(1, 201):
        assert d[n] == sum(1 for k in range(1, n + 1) if n % k == 0)


def test_ramanujan_average(delta_small, eis_small):
    assert ramanujan_average(delta_small, 1) == 1.0
    values = [ramanujan_average(delta_small, x) for x in (100, 1000, 4000)]
    assert all(0 < v < 2 for v in values)
    direct = sum(float(divisor_counts(1000)[n]) ** 2 for n in range(1, 1001)) / 1000
    assert ramanujan_average(form_table("eisenstein", 1000), 1000) == pytest.approx(direct, rel=1e-14)


def test_cache_roundtrip(tmp_path):
    path = tmp_path / "tau.bin"
    first = delta_coefficients(300, cache=path)
    assert path.read_bytes()[:4] == b"SWL1"
    again = read_cache(path, FormId.HolomorphicDelta, 300)
    assert again == list(first.raw)
    assert read_cache(path, FormId.HolomorphicDelta, 301) is None
    assert read_cache(path, FormId.Eisenstein, 10) is None
    write_cache(path, FormId.HolomorphicDelta, [1, -24])
    assert read_cache(path, FormId.HolomorphicDelta, 2) == [1, -24]


def test_ramanujan_average_bounded_and_eisenstein_growth():
    table = form_table("delta", 10 ** 4)
    values = [ramanujan_average(table, x) for x in (100, 1000, 10000)]
    assert all(0 < v <= 2 for v in values)
    eis = form_table("eisenstein", 1000)
    shape = [ramanujan_average(eis, x) / math.log(x) ** 3 for x in (100, 1000)]
    assert 0.5 < shape[1] / shape[0] < 2
