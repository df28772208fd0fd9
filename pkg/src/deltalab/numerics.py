"""Smooth weights, Bessel functions and an adaptive oscillatory quadrature.

Phase convention throughout the package: ``e(x) = exp(2*pi*i*x)``, so an
``OscIntegral`` phase is measured in cycles, not radians.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import special

TWO_PI = 2.0 * math.pi

# ---------------------------------------------------------------------------
# Truncated Taylor arithmetic (jets)
# ---------------------------------------------------------------------------
# A jet is an array of shape (J+1, n): row k holds f^{(k)}(x)/k! at n points.


def _jet_var(x, order, scale=1.0, shift=0.0):
    x = np.asarray(x, dtype=float)
    out = np.zeros((order + 1,) + x.shape)
    out[0] = scale * x + shift
    if order >= 1:
        out[1] = scale
    return out


def _jet_mul(a, b):
    out = np.zeros_like(a)
    for k in range(a.shape[0]):
        for i in range(k + 1):
            out[k] += a[i] * b[k - i]
    return out


def _jet_recip(a):
    out = np.zeros_like(a)
    out[0] = 1.0 / a[0]
    for k in range(1, a.shape[0]):
        acc = np.zeros_like(a[0])
        for i in range(1, k + 1):
            acc += a[i] * out[k - i]
        out[k] = -acc * out[0]
    return out


def _jet_exp(a):
    out = np.zeros_like(a)
    out[0] = np.exp(a[0])
    for k in range(1, a.shape[0]):
        acc = np.zeros_like(a[0])
        for i in range(1, k + 1):
            acc += i * a[i] * out[k - i]
        out[k] = acc / k
    return out


def _jet_log(a):
    out = np.zeros_like(a)
    out[0] = np.log(a[0])
    for k in range(1, a.shape[0]):
        acc = np.zeros_like(a[0])
        for i in range(1, k):
            acc += i * out[i] * a[k - i]
        out[k] = (a[k] - acc / k) / a[0]
    return out


def _const_jet(c, like):
    out = np.zeros_like(like)
    out[0] = c
    return out


def _bump_jet(x, a, b, order):
    """Jet of exp(1 - 1/(1-u^2)) with u the affine map [a,b] -> [-1,1]."""
    x = np.asarray(x, dtype=float)
    u0 = (2.0 * x - a - b) / (b - a)
    inside = np.abs(u0) < 1.0
    out = np.zeros((order + 1,) + x.shape)
    if not np.any(inside):
        return out
    u = _jet_var(x[inside], order, 2.0 / (b - a), -(a + b) / (b - a))
    one_minus = _const_jet(1.0, u) - _jet_mul(u, u)
    out[:, inside] = _jet_exp(_const_jet(1.0, u) - _jet_recip(one_minus))
    return out


def _step_jet(v):
    """Jet of the smooth step sigma(v): 0 for v <= 0, 1 for v >= 1."""
    v0 = v[0]
    out = np.zeros_like(v)
    out[0] = np.where(v0 >= 1.0, 1.0, 0.0)
    inside = (v0 > 0.0) & (v0 < 1.0)
    if not np.any(inside):
        return out
    vi = v[:, inside]
    e_left = _jet_exp(-_jet_recip(vi))
    e_right = _jet_exp(-_jet_recip(_const_jet(1.0, vi) - vi))
    out[:, inside] = _jet_mul(e_left, _jet_recip(e_left + e_right))
    return out


# ---------------------------------------------------------------------------
# Inert weights
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InertWeight:
    """Smooth weight on ``support`` with sup|x^j w^(j)(x)| <= deriv_bounds[j]."""

    support: tuple
    jet: Callable = field(repr=False)
    deriv_bounds: tuple = ()
    j_max: int = 8
    label: str = ""

    def eval(self, x):
        x = np.asarray(x, dtype=float)
        return self.jet(x, 0)[0]

    def __call__(self, x):
        return self.eval(x)

    def derivative(self, x, j: int):
        """w^(j)(x) from the Taylor jet."""
        return self.jet(np.asarray(x, dtype=float), j)[j] * math.factorial(j)

    def scaled(self, c: float) -> "InertWeight":
        """The weight c*w (same support, bounds scaled by |c|)."""
        base = self.jet
        return InertWeight(self.support, lambda x, order: c * base(x, order),
                           tuple(abs(c) * v for v in self.deriv_bounds), self.j_max,
                           self.label)

    def dilated(self, s: float) -> "InertWeight":
        """The weight x -> w(x/s); the scaled bounds are dilation invariant."""
        base = self.jet
        a, b = self.support

        def jet(x, order):
            out = base(np.asarray(x, dtype=float) / s, order)
            for k in range(order + 1):
                out[k] = out[k] / s ** k
            return out

        return InertWeight((a * s, b * s), jet, self.deriv_bounds, self.j_max, self.label)

    def integral(self, nodes: int = 400) -> float:
        a, b = self.support
        return gauss_legendre(lambda x: self.eval(x), a, b, panels=8, nodes=nodes // 8).real


def certify_bounds(jet: Callable, support, j_max: int = 8, grid: int = 4001) -> tuple:
    """Grid maxima of |x^j w^(j)(x)| for j <= j_max."""
    a, b = support
    x = np.linspace(a, b, grid)
    coeffs = jet(x, j_max)
    return tuple(
        float(np.max(np.abs(x ** j * coeffs[j] * math.factorial(j)))) for j in range(j_max + 1)
    )


def bump(a: float, b: float, j_max: int = 8, grid: int = 4001) -> InertWeight:
    """The mollifier exp(1 - 1/(1-u^2)) on [a, b], peak 1 at the midpoint."""
    if not (0.0 < a < b):
        raise ValueError(f"bump needs 0 < a < b, got a={a}, b={b}")
    jet = lambda x, order: _bump_jet(x, a, b, order)
    return InertWeight((a, b), jet, certify_bounds(jet, (a, b), j_max, grid), j_max,
                       f"bump({a:g},{b:g})")


def plateau(a: float, b: float, c: float, d: float, j_max: int = 8,
            grid: int = 4001) -> InertWeight:
    """Smooth weight equal to 1 on [b, c] and supported on [a, d]."""
    if not (0.0 < a < b <= c < d):
        raise ValueError("plateau needs 0 < a < b <= c < d")

    def jet(x, order):
        x = np.asarray(x, dtype=float)
        left = _step_jet(_jet_var(x, order, 1.0 / (b - a), -a / (b - a)))
        right = _step_jet(_jet_var(x, order, -1.0 / (d - c), d / (d - c)))
        return _jet_mul(left, right)

    return InertWeight((a, d), jet, certify_bounds(jet, (a, d), j_max, grid), j_max,
                       f"plateau({a:g},{b:g},{c:g},{d:g})")


def _dyadic_cutoff_jet(x, order):
    """phi(x) = sigma(1 - log2 x): 1 for x <= 1, 0 for x >= 2."""
    x = np.asarray(x, dtype=float)
    out = np.zeros((order + 1,) + x.shape)
    out[0] = np.where(x <= 1.0, 1.0, 0.0)
    inside = (x > 1.0) & (x < 2.0)
    if np.any(inside):
        lx = _jet_log(_jet_var(x[inside], order))
        v = _const_jet(1.0, lx) - lx / math.log(2.0)
        out[:, inside] = _step_jet(v)
    return out


def _dyadic_piece_jet(x, order):
    """W(x) = phi(x/2) - phi(x), supported on [1, 4]."""
    x = np.asarray(x, dtype=float)
    half = _dyadic_cutoff_jet(x / 2.0, order)
    for k in range(order + 1):
        half[k] /= 2.0 ** k
    return half - _dyadic_cutoff_jet(x, order)


def dyadic_partition(x_min: float, x_max: float, j_max: int = 8) -> list:
    """Weights W_k(x) = W(x/2^k) summing to 1 on [x_min, x_max]."""
    if not (0.0 < x_min < x_max):
        raise ValueError("dyadic_partition needs 0 < x_min < x_max")
    base = InertWeight((1.0, 4.0), _dyadic_piece_jet,
                       certify_bounds(_dyadic_piece_jet, (1.0, 4.0), j_max), j_max, "W")
    k_lo = math.floor(math.log2(x_min)) - 1
    k_hi = math.ceil(math.log2(x_max)) - 1
    pieces = []
    for k in range(k_lo, k_hi + 1):
        w = base.dilated(2.0 ** k)
        pieces.append(InertWeight(w.support, w.jet, w.deriv_bounds, j_max, f"W_{k}"))
    return pieces


# ---------------------------------------------------------------------------
# Bessel functions
# ---------------------------------------------------------------------------


def bessel_j(nu: int, y):
    """J_nu(y) for integer nu >= 0 and y >= 0 (vectorized)."""
    if nu < 0:
        raise ValueError("nu must be >= 0")
    return special.jv(nu, np.asarray(y, dtype=float))


def bessel_split(nu: int, y, y_min: float = 10.0):
    """(P+, P-) with J_nu(y) = e^{iy} P+(y) + e^{-iy} P-(y) and |P+-| << y^{-1/2}.

    P+ = H1_nu(y) e^{-iy} / 2 and P- = conj(P+) for real y.
    """
    y = np.asarray(y, dtype=float)
    if np.any(y < y_min):
        raise ValueError(f"bessel_split requires y >= {y_min}")
    p_plus = 0.5 * special.hankel1e(nu, y)
    return p_plus, np.conj(p_plus)


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------


class QuadratureBudgetError(RuntimeError):
    """Raised when adaptive refinement would exceed the panel cap."""


@dataclass
class OscIntegral:
    """Integral of amplitude(x) * e(phase(x)) over ``interval``."""

    amplitude: Callable
    phase: Callable
    interval: tuple
    freq_scale: float = 0.0
    phase_deriv: Optional[Callable] = None

    def __post_init__(self):
        if self.freq_scale < 0:
            raise ValueError("freq_scale must be >= 0")
        a, b = self.interval
        if not a < b:
            raise ValueError("interval must satisfy a < b")

    def dphase(self, x):
        if self.phase_deriv is not None:
            return np.asarray(self.phase_deriv(x), dtype=float)
        a, b = self.interval
        h = 1e-6 * (b - a)
        return (np.asarray(self.phase(x + h)) - np.asarray(self.phase(x - h))) / (2.0 * h)


@dataclass(frozen=True)
class QuadResult:
    value: complex
    err_est: float
    panels: int


_GL_CACHE: dict = {}


def gl_rule(m: int):
    if m not in _GL_CACHE:
        _GL_CACHE[m] = np.polynomial.legendre.leggauss(m)
    return _GL_CACHE[m]


def gauss_legendre(f: Callable, a: float, b: float, panels: int = 1, nodes: int = 20):
    """Composite Gauss-Legendre rule with equal panels."""
    x, w = panel_nodes(np.linspace(a, b, panels + 1), nodes)
    return _fsum_complex(np.sum(w * f(x), axis=1))


def panel_nodes(edges, m: int = 20):
    """Nodes and weights (shape (P, m)) for panels with the given edges."""
    t, w = gl_rule(m)
    edges = np.asarray(edges, dtype=float)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    return mid[:, None] + half[:, None] * t[None, :], half[:, None] * w[None, :]


def oscillation_edges(dphase: Callable, a: float, b: float, nodes: int = 20,
                      min_panels: int = 8, nodes_per_cycle: float = 10.0,
                      cap: int = 10 ** 6, samples: int = 33):
    """Panel edges on [a, b] so every panel gets >= nodes_per_cycle nodes per oscillation.

    ``dphase`` is the phase derivative in cycles per unit length.
    """
    edges = np.linspace(a, b, min_panels + 1)
    s = np.linspace(0.0, 1.0, samples)
    while True:
        lo, hi = edges[:-1], edges[1:]
        pts = lo[:, None] + (hi - lo)[:, None] * s[None, :]
        freq = np.max(np.abs(dphase(pts)), axis=1)
        allowed = (nodes / nodes_per_cycle) / np.maximum(freq, 1e-300)
        split = np.ceil((hi - lo) / allowed).astype(np.int64)
        if np.all(split <= 1):
            return edges
        total = int(np.sum(np.maximum(split, 1)))
        if total > cap:
            raise QuadratureBudgetError(f"panel layout needs {total} panels (cap {cap})")
        new = [np.linspace(l, h, k + 1)[:-1] for l, h, k in zip(lo, hi, np.maximum(split, 1))]
        edges = np.concatenate(new + [np.array([b])])


def _fsum_complex(values) -> complex:
    values = np.asarray(values)
    return complex(math.fsum(values.real.tolist()), math.fsum(np.imag(values).tolist()))


def _panel_sum(spec: OscIntegral, edges, nodes: int, chunk: int = 20000) -> complex:
    parts = []
    for i in range(0, len(edges) - 1, chunk):
        x, w = panel_nodes(edges[i:i + chunk + 1], nodes)
        vals = spec.amplitude(x) * np.exp(1j * TWO_PI * np.asarray(spec.phase(x), dtype=float))
        parts.append(np.sum(w * vals, axis=1))
    return _fsum_complex(np.concatenate(parts))


def _refine(edges):
    mid = 0.5 * (edges[1:] + edges[:-1])
    out = np.empty(2 * len(edges) - 1)
    out[0::2] = edges
    out[1::2] = mid
    return out


def osc_integrate(spec: OscIntegral, tol: float = 1e-10, nodes: int = 20,
                  cap: int = 10 ** 6, min_panels: int = 8) -> QuadResult:
    """Adaptive Gauss-Legendre quadrature of amplitude * e(phase).

    Panels are first laid out so that each oscillation gets at least 10 nodes,
    then halved until two successive results differ by less than ``tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a, b = spec.interval
    edges = oscillation_edges(spec.dphase, a, b, nodes, min_panels, cap=cap)
    prev = _panel_sum(spec, edges, nodes)
    while True:
        if 2 * (len(edges) - 1) > cap:
            raise QuadratureBudgetError(f"refinement would exceed {cap} panels")
        edges = _refine(edges)
        value = _panel_sum(spec, edges, nodes)
        err = abs(value - prev)
        if err < tol:
            return QuadResult(value, err, len(edges) - 1)
        prev = value
