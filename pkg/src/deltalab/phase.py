"""Stationary-phase predictors checked against the quadrature oracle.

Every predictor returns only what the asymptotics fix: a modulus factor, the
phase at the stationary point and the stationary point itself.  Inert factors
are never modeled; tests compare quotients and extracted phases instead.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .numerics import InertWeight, OscIntegral, bessel_split, osc_integrate

DEFAULT_ETA = 0.1


@dataclass(frozen=True)
class SpaPrediction:
    modulus_factor: float
    phase_at_sp: float
    stationary_point: Optional[float]
    valid: bool

    @property
    def verdict(self) -> str:
        return "valid" if self.valid else "negligible"

    def leading(self) -> complex:
        """modulus_factor * e(phase_at_sp), the part of the main term that is predicted."""
        return self.modulus_factor * cmath.exp(2j * math.pi * self.phase_at_sp)


@dataclass(frozen=True)
class CubicPhaseSpec:
    """Data for integrals of U(x/X) e(Ax + B sqrt(x) + C x^{3/2})."""

    A: float
    B: float
    C: float
    X: float
    weight: InertWeight
    eta: float = DEFAULT_ETA

    @property
    def admissible(self) -> bool:
        return abs(self.A) >= (self.C ** 2 + 1.0) * self.X ** self.eta

    @property
    def transform_admissible(self) -> bool:
        X = self.X
        return abs(self.A * X) >= (self.C ** 2 * X ** 3 + 1.0) * X ** self.eta

    def phase(self, x, shift: float = 0.0):
        """Ax + (B + shift) sqrt(x) + C x^{3/2}, in cycles."""
        x = np.asarray(x, dtype=float)
        s = np.sqrt(x)
        return self.A * x + (self.B + shift) * s + self.C * x * s

    def dphase(self, x, shift: float = 0.0):
        x = np.asarray(x, dtype=float)
        s = np.sqrt(x)
        return self.A + 0.5 * (self.B + shift) / s + 1.5 * self.C * s


class PhaseError(ValueError):
    """Raised when the hypotheses of a stationary-phase predictor fail."""


# ---------------------------------------------------------------------------
# Root finding and derivatives
# ---------------------------------------------------------------------------


def bisect_root(f: Callable, lo: float, hi: float, tol: float = 1e-14) -> float:
    """Root of f on [lo, hi] given a sign change."""
    flo = f(lo)
    fhi = f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise PhaseError("no sign change on bracket")
    while hi - lo > tol * max(1.0, abs(lo)):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sign_changes(f: Callable, a: float, b: float, samples: int = 513) -> list:
    """Brackets [x_i, x_{i+1}] on which f changes sign."""
    x = np.linspace(a, b, samples)
    y = np.asarray(f(x), dtype=float)
    s = np.sign(y)
    idx = np.nonzero(s[:-1] * s[1:] <= 0)[0]
    brackets = []
    for i in idx:
        if s[i] == 0 and i > 0 and s[i - 1] * s[i + 1] > 0:
            continue
        brackets.append((float(x[i]), float(x[i + 1])))
    # merge brackets sharing an exact zero at a grid point
    merged = []
    for br in brackets:
        if merged and merged[-1][1] >= br[0]:
            merged[-1] = (merged[-1][0], br[1])
        else:
            merged.append(br)
    return merged


def central_derivative(f: Callable, x0: float, order: int, step: float) -> complex:
    """order-th derivative (order in {1, 2, 4}) by central differences plus one Richardson step."""
    stencils = {
        1: ([-1, 1], [-0.5, 0.5]),
        2: ([-1, 0, 1], [1.0, -2.0, 1.0]),
        4: ([-2, -1, 0, 1, 2], [1.0, -4.0, 6.0, -4.0, 1.0]),
    }
    if order == 0:
        return f(x0)
    offsets, coeffs = stencils[order]

    def d(h):
        xs = np.array([x0 + k * h for k in offsets])
        vals = np.asarray(f(xs))
        return np.dot(coeffs, vals) / h ** order

    coarse, fine = d(step), d(step / 2.0)
    return (4.0 * fine - coarse) / 3.0


def _numeric_dphase(phase: Callable, width: float) -> Callable:
    h = 1e-6 * width

    def dphase(x):
        x = np.asarray(x, dtype=float)
        return (np.asarray(phase(x + h)) - np.asarray(phase(x - h))) / (2.0 * h)

    return dphase


def stationary_point(phase: Callable, a: float, b: float,
                     dphase: Optional[Callable] = None) -> Optional[float]:
    """Unique zero of phase' on [a, b], or None if phase' keeps one sign."""
    dphase = dphase or _numeric_dphase(phase, b - a)
    brackets = sign_changes(dphase, a, b)
    if not brackets:
        return None
    if len(brackets) > 1:
        raise PhaseError(f"{len(brackets)} stationary points on [{a}, {b}]")
    lo, hi = brackets[0]
    return bisect_root(lambda x: float(dphase(np.array(x))), lo, hi)


# ---------------------------------------------------------------------------
# Predictors
# ---------------------------------------------------------------------------


def spa_first_order(integral: OscIntegral, Y: float, Z: float,
                    min_curvature: float = 1e-3) -> SpaPrediction:
    """First-order prediction (Z / sqrt(Y)) e(phi(t0)) for a phase with phi'' >> Y/Z^2."""
    a, b = integral.interval
    dphase = integral.phase_deriv or _numeric_dphase(integral.phase, b - a)
    t0 = stationary_point(integral.phase, a, b, dphase)
    if t0 is None:
        return SpaPrediction(Z / math.sqrt(Y), float("nan"), None, False)
    curv = central_derivative(lambda x: np.asarray(dphase(x)), t0, 1, 1e-3 * (b - a))
    if abs(curv) < min_curvature * Y / Z ** 2:
        raise PhaseError(f"phase'' = {curv:.3g} is not >> Y/Z^2 = {Y / Z ** 2:.3g}")
    return SpaPrediction(Z / math.sqrt(Y), float(integral.phase(np.array(t0))), t0, True)


def bky_expand(integral: OscIntegral, h: Optional[Callable] = None, r_max: int = 0,
               min_curvature: float = 1e-8) -> complex:
    """Stationary-phase expansion of int w(x) e(h(x)) dx up to order r_max <= 2.

    I ~ e(h(x0)) / sqrt(h''(x0)) * sum_r e^{i pi/4} / r! * (i / (4 pi h''(x0)))^r * G^(2r)(x0),
    with G = w e(H) and H = h - h(x0) - h''(x0)(x - x0)^2 / 2.
    """
    if not 0 <= r_max <= 2:
        raise ValueError("r_max must be in {0, 1, 2}")
    h = h or integral.phase
    a, b = integral.interval
    step = 1e-3 * (b - a)
    x0 = stationary_point(h, a, b)
    if x0 is None:
        raise PhaseError("no stationary point in the support")
    h0 = float(h(np.array(x0)))
    h2 = float(np.real(central_derivative(h, x0, 2, step)))
    if h2 <= min_curvature:
        raise PhaseError(f"h''(x0) = {h2:.3g} must be positive")

    def G(x):
        x = np.asarray(x, dtype=float)
        H = np.asarray(h(x)) - h0 - 0.5 * h2 * (x - x0) ** 2
        return np.asarray(integral.amplitude(x)) * np.exp(2j * math.pi * H)

    total = 0j
    for r in range(r_max + 1):
        g = complex(central_derivative(G, x0, 2 * r, step))
        total += cmath.exp(1j * math.pi / 4) / math.factorial(r) * (1j / (4 * math.pi * h2)) ** r * g
    return cmath.exp(2j * math.pi * h0) / math.sqrt(h2) * total


def cubic_phase_asymptotic(spec: CubicPhaseSpec, shift: float = 0.0) -> SpaPrediction:
    """Prediction for int U(x) e(Ax + B' sqrt(x) + C x^{3/2}) dx with B' = B + shift.

    Main term |A|^{-1/2} e(-B'^2/(4A) - C B'^3/(8A^3)) times an inert factor.
    """
    if not spec.admissible:
        raise PhaseError(f"inadmissible: |A|={abs(spec.A):g} < (C^2+1) X^eta")
    A, C = spec.A, spec.C
    Bp = spec.B + shift
    y0 = -Bp / (2.0 * A)
    a, b = spec.weight.support
    x0 = y0 * y0 if y0 > 0 else None
    valid = x0 is not None and a < x0 < b
    phase = -Bp * Bp / (4.0 * A) - C * Bp ** 3 / (8.0 * A ** 3)
    return SpaPrediction(abs(A) ** -0.5, phase, x0, valid)


def cubic_phase_integral(spec: CubicPhaseSpec, shift: float = 0.0, tol: float = 1e-12):
    """Quadrature of int U(x) e(Ax + (B + shift) sqrt(x) + C x^{3/2}) dx."""
    U = spec.weight
    integral = OscIntegral(U.eval, lambda x: spec.phase(x, shift), U.support,
                           phase_deriv=lambda x: spec.dphase(x, shift))
    return osc_integrate(integral, tol)


def voronoi_transform_asymptotic(spec: CubicPhaseSpec, n: int, c: int, nu: int = 11) -> dict:
    """Predictions for the two Bessel branches of H(n/c^2), h(x) = U(x/X) e(Ax + B sqrt x + C x^{3/2}).

    With J(4 pi sqrt(x n)/c) = sum_{+-} e(+-2 sqrt(x n)/c) P^{+-}, branch +- has the
    cubic phase with B' = B +- 2 sqrt(n)/c.  Keyed by +1 and -1.
    """
    if not spec.transform_admissible:
        raise PhaseError("inadmissible: |AX| < (C^2 X^3 + 1) X^eta")
    A, C, X = spec.A, spec.C, spec.X
    modulus = n ** -0.25 * math.sqrt(c) * X ** 0.25 * abs(A) ** -0.5
    a, b = spec.weight.support
    out = {}
    for sign in (1, -1):
        Bp = spec.B + sign * 2.0 * math.sqrt(n) / c
        y0 = -Bp / (2.0 * A)
        x0 = y0 * y0 if y0 > 0 else None
        valid = x0 is not None and a * X < x0 < b * X
        phase = -Bp * Bp / (4.0 * A) - C * Bp ** 3 / (8.0 * A ** 3)
        out[sign] = SpaPrediction(modulus, phase, x0, valid)
    return out


def hankel_transform_branches(spec: CubicPhaseSpec, n: int, c: int, nu: int = 11,
                              tol: float = 1e-12) -> dict:
    """Both branches of H(n/c^2) = 2 pi i^(nu+1) int h(x) J_nu(4 pi sqrt(x n)/c) dx by quadrature."""
    U = spec.weight.dilated(spec.X)
    a, b = U.support
    root = math.sqrt(n) / c
    unit = 2.0 * math.pi * 1j ** ((nu + 1) % 4)
    out = {}
    for sign in (1, -1):
        def amp(x, sign=sign):
            z = 4.0 * math.pi * root * np.sqrt(x)
            p_plus, p_minus = bessel_split(nu, z)
            return unit * U.eval(x) * (p_plus if sign > 0 else p_minus)

        integral = OscIntegral(amp, lambda x, s=sign: spec.phase(x, 2.0 * s * root), (a, b),
                               phase_deriv=lambda x, s=sign: spec.dphase(x, 2.0 * s * root))
        out[sign] = osc_integrate(integral, tol)
    return out
