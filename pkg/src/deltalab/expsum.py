"""Direct exponential sums and the van der Corput k-th derivative test."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import mpmath
import numpy as np

from .summation import fsum_complex

MAX_LENGTH = 10 ** 7
CHUNK = 1 << 16


class PhaseKind(enum.Enum):
    LogPhase = "log"
    CubicSqrtPhase = "cubic_sqrt"
    Custom = "custom"


@dataclass(frozen=True)
class PhaseSpec:
    """F on the integers lo..hi (inclusive).

    LogPhase:       F(x) = (t / 2 pi) log(p x + ell),    coeffs {t, p, ell}
    CubicSqrtPhase: F(x) = A x^{3/2} + B x + C sqrt(x),  coeffs {A, B, C}
    Custom:         F = func, derivatives from ``deriv(x, k)`` or finite differences
    """

    kind: PhaseKind
    interval: tuple
    coeffs: dict = field(default_factory=dict)
    func: Optional[Callable] = None
    deriv: Optional[Callable] = None

    @property
    def length(self) -> int:
        return self.interval[1] - self.interval[0] + 1

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        c = self.coeffs
        if self.kind is PhaseKind.LogPhase:
            return c["t"] / (2.0 * math.pi) * np.log(c["p"] * x + c["ell"])
        if self.kind is PhaseKind.CubicSqrtPhase:
            s = np.sqrt(x)
            return c["A"] * x * s + c["B"] * x + c["C"] * s
        return np.asarray(self.func(x), dtype=float)

    def frac(self, x):
        """F(x) mod 1.  The linear cubic term is reduced via an exact product split."""
        if self.kind is not PhaseKind.CubicSqrtPhase:
            return np.mod(self(x), 1.0)
        x = np.asarray(x, dtype=float)
        c = self.coeffs
        s = np.sqrt(x)
        hi, lo = _two_product(c["B"], x)
        rest = c["A"] * x * s + c["C"] * s
        return np.mod(np.mod(hi, 1.0) + lo + np.mod(rest, 1.0), 1.0)

    def derivative(self, x, k: int):
        x = np.asarray(x, dtype=float)
        c = self.coeffs
        if self.kind is PhaseKind.LogPhase:
            p = c["p"]
            return (c["t"] / (2.0 * math.pi) * (-1) ** (k - 1) * math.factorial(k - 1)
                    * p ** k / (p * x + c["ell"]) ** k)
        if self.kind is PhaseKind.CubicSqrtPhase:
            return (c["A"] * _power_deriv(x, 1.5, k) + c["B"] * _power_deriv(x, 1.0, k)
                    + c["C"] * _power_deriv(x, 0.5, k))
        if self.deriv is not None:
            return np.asarray(self.deriv(x, k), dtype=float)
        return _finite_difference(self.func, x, k, 1e-2 * max(1.0, float(np.max(np.abs(x)))) ** 0.5)

    def mp_value(self, n: int):
        """F(n) in the current mpmath precision, from the binary64 coefficients."""
        c = {key: mpmath.mpf(v) for key, v in self.coeffs.items()}
        n = mpmath.mpf(n)
        if self.kind is PhaseKind.LogPhase:
            return c["t"] / (2 * mpmath.pi) * mpmath.log(c["p"] * n + c["ell"])
        if self.kind is PhaseKind.CubicSqrtPhase:
            s = mpmath.sqrt(n)
            return c["A"] * n * s + c["B"] * n + c["C"] * s
        raise ValueError("no high-precision form for Custom phases")


def _split(a):
    c = 134217729.0 * a  # 2^27 + 1
    hi = c - (c - a)
    return hi, a - hi


def _two_product(a: float, b):
    """(p, e) with p + e = a * b exactly (Dekker)."""
    b = np.asarray(b, dtype=float)
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def _power_deriv(x, alpha: float, k: int):
    coef = 1.0
    for j in range(k):
        coef *= alpha - j
    if coef == 0.0:
        return np.zeros_like(x)
    return coef * x ** (alpha - k)


def _finite_difference(f: Callable, x, k: int, h: float):
    def d(step):
        total = 0.0
        for j in range(k + 1):
            total = total + (-1) ** j * math.comb(k, j) * np.asarray(f(x + (k / 2 - j) * step))
        return total / step ** k

    return (4.0 * d(h / 2) - d(h)) / 3.0


# ---------------------------------------------------------------------------
# Sums
# ---------------------------------------------------------------------------


def exp_sum(spec: PhaseSpec) -> complex:
    """sum_{n in I} e(F(n)) with phases reduced mod 1 and compensated summation."""
    lo, hi = spec.interval
    if spec.length > MAX_LENGTH:
        raise ValueError(f"|I| = {spec.length} exceeds {MAX_LENGTH}")
    if spec.length <= 0:
        return 0j
    parts = []
    for start in range(lo, hi + 1, CHUNK):
        n = np.arange(start, min(start + CHUNK, hi + 1), dtype=float)
        frac = spec.frac(n)
        parts.append(fsum_complex(np.exp(2j * math.pi * frac)))
    return fsum_complex(np.array(parts))


def exp_sum_mp(spec: PhaseSpec, bits: int = 256) -> complex:
    """Oracle: the same sum with every phase in ``bits``-bit precision."""
    lo, hi = spec.interval
    with mpmath.workprec(bits):
        total = mpmath.mpc(0)
        for n in range(lo, hi + 1):
            total += mpmath.expjpi(2 * spec.mp_value(n))
        return complex(total)


def gauss_sum(q: int) -> complex:
    """sum_{n mod q} e(n^2 / q) with exact residues."""
    n = np.arange(q, dtype=np.int64)
    res = (n * n) % q
    return fsum_complex(np.exp(2j * math.pi * res / q))


# ---------------------------------------------------------------------------
# van der Corput
# ---------------------------------------------------------------------------


def vdc_kappa(k: int) -> float:
    return 1.0 / (2 ** k - 2)


def vdc_bound(k: int, Lambda: float, length: float) -> float:
    """|I| Lambda^kappa + |I|^{1 - 2^{2-k}} Lambda^{-kappa}."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if Lambda <= 0:
        raise ValueError("Lambda must be positive")
    kappa = vdc_kappa(k)
    return length * Lambda ** kappa + length ** (1.0 - 2.0 ** (2 - k)) * Lambda ** (-kappa)


def estimate_lambda(spec: PhaseSpec, k: int, samples: int = 257) -> float:
    """Geometric mean of |F^(k)| at both endpoints and the midpoint, after a sign check."""
    lo, hi = spec.interval
    grid = np.linspace(lo, hi, samples)
    vals = spec.derivative(grid, k)
    if not (np.all(vals > 0) or np.all(vals < 0)):
        raise ValueError(f"F^({k}) changes sign or vanishes on [{lo}, {hi}]")
    pts = np.array([lo, 0.5 * (lo + hi), hi], dtype=float)
    return float(np.exp(np.mean(np.log(np.abs(spec.derivative(pts, k))))))


@dataclass(frozen=True)
class VdcRow:
    kind: str
    k: int
    Lambda: float
    length: int
    sum_abs: float
    bound: float
    ratio: float

    CSV_HEADER = ("kind", "k", "Lambda", "length", "sum_abs", "bound", "ratio")

    def as_row(self) -> tuple:
        return (self.kind, self.k, self.Lambda, self.length, self.sum_abs, self.bound, self.ratio)


def vdc_check(spec: PhaseSpec, k: int) -> VdcRow:
    Lam = estimate_lambda(spec, k)
    s = abs(exp_sum(spec))
    bound = vdc_bound(k, Lam, spec.length)
    return VdcRow(spec.kind.value, k, Lam, spec.length, s, bound, s / bound)


# ---------------------------------------------------------------------------
# Corpora built from the two phase shapes
# ---------------------------------------------------------------------------


def log_phase(t: float, N: float, p: int, ell: int) -> PhaseSpec:
    """(t / 2 pi) log(p lambda + ell) over lambda in [t/N, 2t/N]."""
    lo = math.ceil(t / N)
    hi = math.floor(2 * t / N)
    return PhaseSpec(PhaseKind.LogPhase, (lo, hi), {"t": float(t), "p": float(p), "ell": float(ell)})


def cubic_coefficients(params, u: int, q: int, r: int, xi: float, eta: float = 0.0,
                       sign: int = 1, b_block: float = 1.0, n_scale: float = 1.0) -> tuple:
    """(a, b, c) with e(a n^{3/2} + b n + c sqrt(n)) the n-dependence after the second Voronoi step."""
    t, N, K, p = params.t, params.N, params.K, params.p
    A = u / (p * q) - 1.0 / (2 * p * r)
    ubar = pow(u, -1, p)
    a = -math.sqrt(math.pi) / (48 * q ** 3 * math.sqrt(2 * p ** 3 * r ** 3 * t) * A ** 3)
    b = (p * ubar / q - 1.0 / (4 * q * q * A) + sign / (16 * p * p * r * r * q * q * A ** 3)
         - eta / n_scale)
    scale = b_block * p * K / math.sqrt(N)
    c = (sign * math.sqrt(t) / (q * math.sqrt(2 * math.pi * p * r) * A)
         - math.sqrt(t) / (8 * q * math.sqrt(2 * math.pi * p ** 5 * r ** 5) * A ** 3)
         - xi / (q * scale))
    return a, b, c


def cubic_difference_phase(params, first: tuple, second: tuple, interval: tuple,
                           xi: tuple = (0.0, 0.0), b_block: float = 1.0, sign: int = 1) -> PhaseSpec:
    """A n^{3/2} + B n + C sqrt(n) with (A, B, C) the differences of two tuples' coefficients."""
    c1 = cubic_coefficients(params, *first, xi[0], sign=sign, b_block=b_block)
    c2 = cubic_coefficients(params, *second, xi[1], sign=sign, b_block=b_block)
    A, B, C = (x - y for x, y in zip(c1, c2))
    return PhaseSpec(PhaseKind.CubicSqrtPhase, interval, {"A": A, "B": B, "C": C})
