"""Fourier coefficients of the discriminant form and of the Eisenstein series.

tau(n) is exact: eta^3 has the sparse expansion sum (-1)^k (2k+1) q^{k(k+1)/2},
and Delta = q (eta^3)^8 is formed by three exact squarings.  Each squaring packs
the polynomial into one big integer (Kronecker substitution) so GMP does the
convolution.
"""
from __future__ import annotations

import enum
import math
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import gmpy2
import numpy as np

DEFAULT_CAP = 10 ** 6
CACHE_MAGIC = b"SWL1"
_RAW_BYTES = 16  # each raw coefficient is stored as a signed 128-bit integer


class FormId(enum.Enum):
    HolomorphicDelta = 0
    Eisenstein = 1


@dataclass(frozen=True)
class FormCoefficients:
    """Raw and unit-normalized coefficients; index n holds the n-th value (index 0 unused)."""

    form_id: FormId
    weight: int
    raw: Optional[tuple]
    lam: np.ndarray

    @property
    def n_max(self) -> int:
        return len(self.lam) - 1

    @property
    def holomorphic(self) -> bool:
        return self.form_id is FormId.HolomorphicDelta


# ---------------------------------------------------------------------------
# Exact tau via Kronecker substitution
# ---------------------------------------------------------------------------


def _slot_bits(bound: int) -> int:
    bits = int(bound).bit_length() + 2
    return 8 * ((bits + 7) // 8)


def _pack(coeffs, bits: int):
    nbytes = bits // 8
    half = 1 << (bits - 1)
    data = b"".join((c + half).to_bytes(nbytes, "little") for c in coeffs)
    return gmpy2.mpz(int.from_bytes(data, "little")) - _offset(len(coeffs), bits)


def _offset(length: int, bits: int):
    # sum_{i < length} 2^(bits-1) * 2^(bits*i)
    base = gmpy2.mpz(1) << bits
    return ((base ** length - 1) // (base - 1)) << (bits - 1)


def _unpack(value, length: int, bits: int) -> list:
    nbytes = bits // 8
    half = 1 << (bits - 1)
    shifted = gmpy2.f_mod(value + _offset(length, bits), gmpy2.mpz(1) << (bits * length))
    data = int(shifted).to_bytes(length * nbytes, "little")
    return [int.from_bytes(data[i * nbytes:(i + 1) * nbytes], "little") - half
            for i in range(length)]


def _square_truncated(coeffs: list) -> list:
    length = len(coeffs)
    top = max(abs(c) for c in coeffs)
    bits = _slot_bits(length * top * top)
    packed = _pack(coeffs, bits)
    return _unpack(packed * packed, length, bits)


def _eta_cubed(length: int) -> list:
    out = [0] * length
    k = 0
    while k * (k + 1) // 2 < length:
        out[k * (k + 1) // 2] = (-1) ** k * (2 * k + 1)
        k += 1
    return out


def tau_table(n_max: int, cap: int = DEFAULT_CAP) -> list:
    """Exact tau(1..n_max) as Python integers."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if n_max > cap:
        raise MemoryError(f"n_max={n_max} exceeds the coefficient cap {cap}")
    poly = _eta_cubed(n_max)
    for _ in range(3):
        poly = _square_truncated(poly)
    return poly


def tau_by_products(n_max: int) -> list:
    """tau(1..n_max) from 24 successive multiplications by (1 - q^m); quadratic cost."""
    series = [0] * n_max
    series[0] = 1
    for m in range(1, n_max):
        for _ in range(24):
            for i in range(n_max - 1, m - 1, -1):
                series[i] -= series[i - m]
    return series


def divisor_counts(n_max: int) -> np.ndarray:
    """d(n) for 0 <= n <= n_max (index 0 is 0)."""
    d = np.zeros(n_max + 1, dtype=np.int64)
    for i in range(1, n_max + 1):
        d[i::i] += 1
    return d


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------


def delta_coefficients(n_max: int, cap: int = DEFAULT_CAP,
                       cache: Optional[Path] = None) -> FormCoefficients:
    raw = None
    if cache is not None and Path(cache).exists():
        raw = read_cache(cache, FormId.HolomorphicDelta, n_max)
    if raw is None:
        raw = tau_table(n_max, cap)
        if cache is not None:
            write_cache(cache, FormId.HolomorphicDelta, raw)
    raw = raw[:n_max]
    n = np.arange(1, n_max + 1, dtype=float)
    lam = np.zeros(n_max + 1)
    lam[1:] = np.array([float(v) for v in raw]) / (n ** 5 * np.sqrt(n))
    return FormCoefficients(FormId.HolomorphicDelta, 12, tuple(raw), lam)


def eisenstein_coefficients(n_max: int, cap: int = DEFAULT_CAP) -> FormCoefficients:
    if n_max > cap:
        raise MemoryError(f"n_max={n_max} exceeds the coefficient cap {cap}")
    d = divisor_counts(n_max)
    return FormCoefficients(FormId.Eisenstein, 0, None, d.astype(float))


def form_table(name: str, n_max: int, cap: int = DEFAULT_CAP,
               cache: Optional[Path] = None) -> FormCoefficients:
    """Table for ``name`` in {'delta', 'eisenstein'}."""
    key = name.lower()
    if key in ("delta", "holomorphicdelta", "holomorphic"):
        return delta_coefficients(n_max, cap, cache)
    if key in ("eisenstein", "eis"):
        return eisenstein_coefficients(n_max, cap)
    raise ValueError(f"unknown form {name!r}")


def hecke_lambda(form: FormCoefficients, n: int) -> float:
    """Normalized coefficient lambda(n)."""
    if not 1 <= n <= form.n_max:
        raise IndexError(f"n={n} outside tabulated range 1..{form.n_max}")
    return float(form.lam[n])


def ramanujan_average(form: FormCoefficients, x: float) -> float:
    """(sum_{n <= x} lambda(n)^2) / x."""
    if x < 1:
        raise ValueError("x must be >= 1")
    m = int(math.floor(x))
    if m > form.n_max:
        raise IndexError(f"x={x} outside tabulated range")
    return math.fsum((form.lam[1:m + 1] ** 2).tolist()) / x


# ---------------------------------------------------------------------------
# Binary cache
# ---------------------------------------------------------------------------


def write_cache(path, form_id: FormId, raw) -> None:
    header = CACHE_MAGIC + struct.pack("<BQ", form_id.value, len(raw))
    body = b"".join(int(v).to_bytes(_RAW_BYTES, "little", signed=True) for v in raw)
    Path(path).write_bytes(header + body)


def read_cache(path, form_id: FormId, n_max: int) -> Optional[list]:
    """Raw coefficients from ``path`` if it holds at least n_max values for this form."""
    data = Path(path).read_bytes()
    if data[:4] != CACHE_MAGIC:
        raise ValueError(f"{path}: bad magic {data[:4]!r}")
    fid, count = struct.unpack("<BQ", data[4:13])
    if fid != form_id.value or count < n_max:
        return None
    body = data[13:]
    return [int.from_bytes(body[i * _RAW_BYTES:(i + 1) * _RAW_BYTES], "little", signed=True)
            for i in range(n_max)]
