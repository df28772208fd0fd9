"""Delta-symbol, Voronoi and Poisson identities and the full transformation chain.

Notation: S(N) = sum_n lambda(n) n^{-it} W(n/N).  The chain rewrites S(N) through
the delta expansion with modulus p and v-weight W(v/K), then applies Voronoi
to the n-sum and Poisson to the r-sum, ending at

    (N^2/p^2) sum_{n} sum_{(r,p)=1} lambda(n) e(n rbar/p) I_p(n, r),
    I_p(n, r) = int W(v) I_p(Kv, n) J_p(Kv, r) dv,

which is evaluated by nested quadrature and compared with S(N).
"""
from __future__ import annotations

import cmath
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import mpmath
import numpy as np
import sympy

from .forms import FormCoefficients
from .numerics import (InertWeight, OscIntegral, bessel_j, gl_rule, osc_integrate,
                       oscillation_edges, panel_nodes, plateau)

TWO_PI = 2.0 * math.pi


def fsum_complex(values) -> complex:
    values = np.asarray(values, dtype=complex).ravel()
    return complex(math.fsum(values.real.tolist()), math.fsum(values.imag.tolist()))


def e_rational(num, den):
    """e(num/den) with the fraction reduced exactly before exponentiating."""
    num = np.asarray(num, dtype=np.int64) % den
    return np.exp(2j * math.pi * num / den)


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AnalyticParams:
    t: float
    N: float
    K: float
    p: int

    @property
    def Q(self) -> float:
        return self.p * math.sqrt(self.K / self.N)

    @property
    def N0(self) -> float:
        return self.p ** 2 * self.K ** 2 / self.N

    def check(self, margin: float = 10.0) -> None:
        if not sympy.isprime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.p <= margin * self.N / self.K:
            raise ValueError(f"p={self.p} must exceed margin*N/K = {margin * self.N / self.K:.3f}")


def chain_params(t: float, n_exp: float = 0.9, k_exp: float = 0.7,
                 margin: float = 10.0) -> AnalyticParams:
    """N = t^n_exp, K = t^k_exp and p the smallest prime above margin*N/K."""
    N = t ** n_exp
    K = t ** k_exp
    p = int(sympy.nextprime(int(math.floor(margin * N / K))))
    return AnalyticParams(t, N, K, p)


def _support_range(W: InertWeight, N: float):
    a, b = W.support
    return int(math.ceil(a * N)), int(math.floor(b * N))


def _require(form: FormCoefficients, n_max: int) -> None:
    if n_max > form.n_max:
        raise IndexError(f"coefficient table too short: need {n_max}, have {form.n_max}")


# ---------------------------------------------------------------------------
# Direct sum and the delta symbol
# ---------------------------------------------------------------------------


def s_direct(form: FormCoefficients, params: AnalyticParams, W: InertWeight) -> complex:
    """sum_n lambda(n) n^{-it} W(n/N), summed with exact rounding."""
    lo, hi = _support_range(W, params.N)
    _require(form, hi)
    n = np.arange(max(lo, 1), hi + 1)
    terms = form.lam[n] * W(n / params.N) * np.exp(-1j * params.t * np.log(n))
    return fsum_complex(terms)


def trivial_delta(n: int, r: int, params: AnalyticParams, W: InertWeight,
                  restricted: bool = False, tol: float = 1e-12) -> complex:
    """(1/(Kp)) sum_{a mod p} e(a(n-r)/p) int W(v/K) (n/r)^{iv} dv, normalized to 1 at n = r.

    The normalization divides by int W.  ``restricted`` drops a = 0.
    """
    return trivial_delta_estimate(n, r, params, W, restricted, tol)[0]


def trivial_delta_estimate(n: int, r: int, params: AnalyticParams, W: InertWeight,
                           restricted: bool = False, tol: float = 1e-12) -> tuple:
    """(value, err_est) for ``trivial_delta``; err_est covers quadrature and rounding."""
    p, K = params.p, params.K
    char = p if (n - r) % p == 0 else 0
    if restricted:
        char -= 1
    if char == 0:
        return 0j, 0.0
    omega = K * math.log(n / r) / TWO_PI
    a, b = W.support
    integral = OscIntegral(W.eval, lambda s: omega * np.asarray(s), (a, b),
                           phase_deriv=lambda s: np.full(np.shape(s), omega))
    quad = osc_integrate(integral, tol)
    scale = abs(char) / (p * W.integral())
    value = char * quad.value / (p * W.integral())
    err = scale * quad.err_est + 16.0 * np.finfo(float).eps * max(1.0, abs(value))
    return value, float(err)


# ---------------------------------------------------------------------------
# Voronoi
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityResult:
    lhs: complex
    rhs: complex
    rel_gap: float
    dual_terms: int
    err_est: float
    outside_share: float = 0.0


def _hankel_nodes(h: InertWeight, y_max: float, resolution: float):
    a, b = h.support
    dphase = lambda x: np.sqrt(y_max / np.asarray(x))
    edges = oscillation_edges(dphase, a, b, nodes=20, min_panels=16,
                              nodes_per_cycle=10.0 * resolution)
    x, w = panel_nodes(edges, 20)
    return x.ravel(), w.ravel()


def hankel_transform(h: InertWeight, y, k: int = 12, resolution: float = 1.0,
                     with_noise: bool = False):
    """H(y) = 2 pi i^k int h(x) J_{k-1}(4 pi sqrt(x y)) dx for an array of y.

    With ``with_noise`` also returns eps * sum |quadrature terms|, the rounding floor.
    """
    y = np.atleast_1d(np.asarray(y, dtype=float))
    x, w = _hankel_nodes(h, float(np.max(y)), resolution)
    weights = w * h(x)
    mat = bessel_j(k - 1, 4.0 * math.pi * np.sqrt(np.outer(y, x)))
    value = 2.0 * math.pi * (1j ** (k % 4)) * (mat @ weights)
    if not with_noise:
        return value
    noise = 2.0 * math.pi * np.finfo(float).eps * (np.abs(mat) @ np.abs(weights))
    return value, noise


def voronoi_family(form: FormCoefficients, c: int, h: InertWeight, a_values,
                   tol: float = 1e-8, chunk: Optional[int] = None,
                   resolution: float = 1.0) -> list:
    """Both sides of sum lambda(n) e(an/c) h(n) = (1/c) sum lambda(n) e(-abar n/c) H(n/c^2).

    H(n/c^2) does not depend on a, so it is computed once for all a in ``a_values``.
    """
    if not form.holomorphic:
        raise ValueError("the Voronoi formula here is for the holomorphic form only")
    a_values = list(a_values)
    for a in a_values:
        if math.gcd(a, c) != 1:
            raise ValueError(f"gcd({a}, {c}) != 1")
    lo, hi = int(math.ceil(h.support[0])), int(math.floor(h.support[1]))
    _require(form, hi)
    n = np.arange(max(lo, 1), hi + 1)
    lhs = [fsum_complex(form.lam[n] * e_rational(a * n, c) * h(n)) for a in a_values]
    abars = [pow(a, -1, c) if c > 1 else 0 for a in a_values]
    mass = float(np.sum(np.abs(form.lam[n]) * h(n)))
    scale = max(min(abs(v) for v in lhs), 1e-3 * mass)
    # H decays faster than any power once y exceeds a few cycles per unit x, so a
    # whole block below tol (or at the rounding floor) certifies the tail.
    chunk = chunk or min(4096, max(64, 32 * c * c))
    parts = [[] for _ in a_values]
    start = 1
    while True:
        stop = start + chunk
        _require(form, stop - 1)
        m = np.arange(start, stop)
        H, noise = hankel_transform(h, m / c ** 2, form.weight, resolution, with_noise=True)
        base = form.lam[m] * H / c
        for part, abar in zip(parts, abars):
            part.append(base * e_rational(-abar * m, c))
        block_abs = float(np.sum(np.abs(base)))
        floor = 100.0 * float(np.sum(np.abs(form.lam[m]) * noise)) / c
        start = stop
        if block_abs < max(tol * scale, floor):
            break
    out = []
    for a, left, part in zip(a_values, lhs, parts):
        rhs = fsum_complex(np.concatenate(part))
        out.append(IdentityResult(left, rhs, abs(left - rhs) / max(abs(left), 1e-300),
                                  start - 1, block_abs))
    return out


def voronoi_pair(form: FormCoefficients, a: int, c: int, h: InertWeight,
                 tol: float = 1e-8, resolution: float = 1.0) -> IdentityResult:
    """Both sides of the Voronoi formula for a single a mod c."""
    return voronoi_family(form, c, h, [a], tol, resolution=resolution)[0]


def voronoi_corpus(c_max: int, N_values, count: int = 24) -> list:
    """(a, c, N) triples by increasing c with every reduced residue a, until ``count``."""
    triples = []
    for c in range(1, c_max + 1):
        for N in N_values:
            for a in range(1, c + 1) if c > 1 else [1]:
                if math.gcd(a, c) == 1:
                    triples.append((a, c, N))
        if len(triples) >= count:
            break
    return triples


# ---------------------------------------------------------------------------
# Poisson
# ---------------------------------------------------------------------------


def poisson_dual_integrals(params: AnalyticParams, W: InertWeight, v: float, r,
                           resolution: float = 1.0, with_noise: bool = False):
    """J_p(v, r) = N^{-i(t+v)} int W(y) y^{-i(t+v)} e(N r y / p) dy for an array of r."""
    r = np.atleast_1d(np.asarray(r, dtype=float))
    t, N, p = params.t, params.N, params.p
    a, b = W.support
    fmax = abs(t + v) / (TWO_PI * a) + N * float(np.max(np.abs(r))) / p
    edges = oscillation_edges(lambda y: np.full(np.shape(y), fmax), a, b, nodes=20,
                              min_panels=16, nodes_per_cycle=10.0 * resolution)
    y, w = panel_nodes(edges, 20)
    y, w = y.ravel(), w.ravel()
    base = w * W(y) * np.exp(-1j * (t + v) * np.log(y))
    mat = np.exp(2j * math.pi * np.outer(r, y) * (N / p))
    value = cmath.exp(-1j * (t + v) * math.log(N)) * (mat @ base)
    if not with_noise:
        return value
    return value, np.finfo(float).eps * float(np.sum(np.abs(base))) * np.ones(len(r))


def poisson_window(params: AnalyticParams, W: InertWeight, v: float, dilation: float = 8.0):
    """r-range around the stationary localization r = p(t+v)/(2 pi N y), y in supp W."""
    a, b = W.support
    centre_lo = params.p * (params.t + v) / (TWO_PI * params.N * b)
    centre_hi = params.p * (params.t + v) / (TWO_PI * params.N * a)
    return centre_lo / dilation, centre_hi * dilation


def poisson_stationary_residues(params: AnalyticParams, W: InertWeight, v: float = 0.0) -> list:
    """Residues 0 < a < p whose dual class r = -a (mod p) meets the stationary window.

    For the other residues the r-sum has no stationary point and is itself tiny, so
    shares of it measure rounding rather than localization.
    """
    p = params.p
    lo, hi = poisson_window(params, W, v, dilation=1.0)
    hit = {(-r) % p for r in range(int(math.ceil(lo)), int(math.floor(hi)) + 1)}
    return sorted(a for a in hit if 0 < a < p)


def poisson_pair(params: AnalyticParams, a: int, W: InertWeight, v: float = 0.0,
                 tol: float = 1e-12, block: int = 8, resolution: float = 1.0) -> IdentityResult:
    """Both sides of sum_r e(-ar/p) r^{-i(t+v)} W(r/N) = N sum_{r = -a (p)} J_p(v, r)."""
    p, N, t = params.p, params.N, params.t
    if not 0 < a < p:
        raise ValueError("need 0 < a < p")
    lo, hi = _support_range(W, N)
    r = np.arange(max(lo, 1), hi + 1)
    lhs = fsum_complex(e_rational(-a * r, p) * np.exp(-1j * (t + v) * np.log(r)) * W(r / N))
    scale = max(abs(lhs), 1e-300)
    # walk outward from the residue class member nearest the stationary window
    w_lo, w_hi = poisson_window(params, W, v, dilation=1.0)
    centre = 0.5 * (w_lo + w_hi)
    k0 = int(round((centre + a) / p))
    parts = []
    r_all = []
    terms = 0
    noise_floor = 0.0
    for direction in (1, -1):
        k = k0 if direction == 1 else k0 - 1
        quiet = 0
        while quiet < 2:
            ks = k + direction * np.arange(block)
            rs = ks * p - a
            vals, noise = poisson_dual_integrals(params, W, v, rs, resolution, with_noise=True)
            vals = N * vals
            parts.append(vals)
            r_all.append(rs)
            terms += block
            floor = 1000.0 * N * float(np.max(noise))
            noise_floor = max(noise_floor, N * float(np.max(noise)) * block)
            quiet = quiet + 1 if float(np.max(np.abs(vals))) < max(tol * scale, floor) else 0
            k += direction * block
            if terms > 10 ** 6:
                raise RuntimeError("Poisson truncation budget exceeded")
    vals = np.concatenate(parts)
    rs = np.concatenate(r_all)
    rhs = fsum_complex(vals)
    gap = abs(lhs - rhs) / scale
    w_lo, w_hi = poisson_window(params, W, v)
    outside = fsum_complex(vals[(rs < w_lo) | (rs > w_hi)])
    return IdentityResult(lhs, rhs, gap, terms, noise_floor * terms / block,
                          abs(outside) / max(abs(rhs), 1e-300))


# ---------------------------------------------------------------------------
# Transformation chain
# ---------------------------------------------------------------------------


@dataclass
class ChainReport:
    t: float
    N: float
    K: float
    p: int
    s_direct: complex
    s_transformed: complex
    rel_err: float
    stage: str
    budget: dict = field(default_factory=dict)
    s_delta: Optional[complex] = None
    zero_term: Optional[complex] = None

    @property
    def transform_gap(self) -> float:
        """Relative gap between the transformed side and the restricted delta stage."""
        return rel_err(self.s_delta, self.s_transformed - self.zero_term, self.N)

    def to_json(self) -> dict:
        return {
            "t": self.t, "N": self.N, "K": self.K, "p": self.p,
            "s_direct_re": self.s_direct.real, "s_direct_im": self.s_direct.imag,
            "s_trans_re": self.s_transformed.real, "s_trans_im": self.s_transformed.imag,
            "rel_err": self.rel_err, "stage": self.stage,
            "panels": int(self.budget.get("panels", 0)),
        }


def rel_err(s_ref: complex, s_other: complex, N: float) -> float:
    return abs(s_ref - s_other) / max(abs(s_ref), 1e-6 * math.sqrt(N))


def default_chain_weights():
    """W for the r- and v-variables and V for the n-variable (V = 1 on supp W)."""
    from .numerics import bump
    return bump(1.0, 2.0), plateau(0.75, 1.0, 2.0, 2.5)


def _s_nodes(params: AnalyticParams, W: InertWeight, V: InertWeight, resolution: float):
    a, b = W.support
    spread = math.log(V.support[1]) - math.log(V.support[0]) + math.log(b / a)
    fmax = params.K * spread / TWO_PI
    edges = oscillation_edges(lambda s: np.full(np.shape(s), fmax), a, b, nodes=20,
                              min_panels=16, nodes_per_cycle=10.0 * resolution)
    s, w = panel_nodes(edges, 20)
    return s.ravel(), w.ravel()


def delta_stage(form: FormCoefficients, params: AnalyticParams, W: InertWeight,
                V: InertWeight, resolution: float = 1.0):
    """(restricted, zero-frequency) parts of sum_{n,r} lambda(n) r^{-it} V(n/N) W(r/N) delta*(n, r).

    The restricted part runs over residues a != 0 mod p; the zero-frequency part is the
    a = 0 term.  Their sum is the full residue sum.
    """
    t, N, K, p = params.t, params.N, params.K, params.p
    n_lo, n_hi = _support_range(V, N)
    r_lo, r_hi = _support_range(W, N)
    _require(form, n_hi)
    n = np.arange(max(n_lo, 1), n_hi + 1)
    r = np.arange(max(r_lo, 1), r_hi + 1)
    s, ws = _s_nodes(params, W, V, resolution)
    mass = W.integral()
    an = form.lam[n] * V(n / N)
    br = np.exp(-1j * t * np.log(r)) * W(r / N)
    restricted = 0j
    zero = 0j
    # class sums: p * sum_b A(b) B(b) is the full residue sum, (sum A)(sum B) its a = 0 term
    for chunk in np.array_split(np.arange(len(s)), max(1, len(s) // 64)):
        A = np.exp(1j * K * np.outer(s[chunk], np.log(n))) * an
        B = np.exp(-1j * K * np.outer(s[chunk], np.log(r))) * br
        weight = ws[chunk] * W(s[chunk]) / mass
        Aclass = np.stack([A[:, n % p == b].sum(axis=1) for b in range(p)], axis=1)
        Bclass = np.stack([B[:, r % p == b].sum(axis=1) for b in range(p)], axis=1)
        a0 = A.sum(axis=1) * B.sum(axis=1) / p
        restricted += np.sum(weight * (np.sum(Aclass * Bclass, axis=1) - a0))
        zero += np.sum(weight * a0)
    return complex(restricted), complex(zero)


def s_delta_only(form: FormCoefficients, params: AnalyticParams, W: InertWeight,
                 V: InertWeight, resolution: float = 1.0) -> complex:
    """Delta-stage sum with the restricted residue sum (a != 0 mod p)."""
    return delta_stage(form, params, W, V, resolution)[0]


def chain_windows(params: AnalyticParams, W: InertWeight, V: InertWeight,
                  dilation: float = 2.0):
    """n- and r-ranges from stationary localization, widened by ``dilation`` on each side.

    n: x0 = p^2 v^2/(4 pi^2 N n) in supp V with v in K supp W.
    r: y0 = p(t+v)/(2 pi N r) in supp W.
    """
    t, N, K, p = params.t, params.N, params.K, params.p
    (wa, wb), (va, vb) = W.support, V.support
    base = p ** 2 * K ** 2 / (4.0 * math.pi ** 2 * N)
    n_lo = max(1, int(math.floor(base * wa ** 2 / vb / dilation)))
    n_hi = int(math.ceil(base * wb ** 2 / va * dilation))
    r_lo = max(1, int(math.floor(p * (t + K * wa) / (TWO_PI * N * wb) / dilation)))
    r_hi = int(math.ceil(p * (t + K * wb) / (TWO_PI * N * wa) * dilation))
    return (n_lo, n_hi), (r_lo, r_hi)


def _voronoi_side(form, params, V, s, n_range, resolution, chunk=2048):
    """Phi[j, b] = int V(x) x^{iK s_j} sum_{n = b (p)} lambda(n) J_11(4 pi sqrt(N n x)/p) dx."""
    N, K, p = params.N, params.K, params.p
    n_lo, n_hi = n_range
    xa, xb = V.support
    bessel_rate = math.sqrt(N * n_hi / xa) / p
    fmax = bessel_rate + K * float(np.max(s)) / (TWO_PI * xa)
    edges = oscillation_edges(lambda x: np.full(np.shape(x), fmax), xa, xb, nodes=20,
                              min_panels=16, nodes_per_cycle=10.0 * resolution)
    x, wx = panel_nodes(edges, 20)
    x, wx = x.ravel(), wx.ravel()
    F = np.zeros((len(x), p))
    for start in range(n_lo, n_hi + 1, chunk):
        m = np.arange(start, min(start + chunk, n_hi + 1))
        J = bessel_j(form.weight - 1, 4.0 * math.pi * np.sqrt(np.outer(x, m) * N) / p)
        onehot = np.zeros((len(m), p))
        onehot[np.arange(len(m)), m % p] = form.lam[m]
        F += J @ onehot
    E = np.exp(1j * K * np.outer(s, np.log(x))) * (wx * V(x))
    return E @ F, len(x), (n_hi - n_lo + 1) * len(x)


def _poisson_side(params, W, s, r_range, resolution):
    """G[j, b] = sum_{(r,p)=1} Jt(K s_j, r) e(b rbar/p), Jt without the N^{-i(t+v)} factor."""
    t, N, K, p = params.t, params.N, params.K, params.p
    r_lo, r_hi = r_range
    r = np.array([x for x in range(r_lo, r_hi + 1) if x % p])
    ya, yb = W.support
    fmax = (t + K * float(np.max(s))) / (TWO_PI * ya) + N * r_hi / p
    edges = oscillation_edges(lambda y: np.full(np.shape(y), fmax), ya, yb, nodes=20,
                              min_panels=16, nodes_per_cycle=10.0 * resolution)
    y, wy = panel_nodes(edges, 20)
    y, wy = y.ravel(), wy.ravel()
    E = np.exp(-1j * K * np.outer(s, np.log(y)))
    M = (wy * W(y) * np.exp(-1j * t * np.log(y)))[:, None] * np.exp(
        2j * math.pi * np.outer(y, r) * (N / p))
    Jt = E @ M
    rbar = np.array([pow(int(x), -1, p) for x in r])
    chars = e_rational(np.outer(rbar, np.arange(p)), p)
    return Jt @ chars, len(y), len(r)


def s_transformed(form: FormCoefficients, params: AnalyticParams, W: InertWeight,
                  V: InertWeight, resolution: float = 1.0, dilation: float = 2.0):
    """Right side of the fully transformed identity by nested quadrature."""
    t, N, K, p = params.t, params.N, params.K, params.p
    n_range, r_range = chain_windows(params, W, V, dilation)
    _require(form, n_range[1])
    s, ws = _s_nodes(params, W, V, resolution)
    mass = W.integral()
    Phi, x_nodes, bessel_evals = _voronoi_side(form, params, V, s, n_range, resolution)
    G, y_nodes, r_count = _poisson_side(params, W, s, r_range, resolution)
    inner = np.sum(Phi * G, axis=1)
    k = form.weight
    prefactor = (N ** 2 / p ** 2) * TWO_PI * (1j ** (k % 4)) * cmath.exp(-1j * t * math.log(N))
    value = prefactor * fsum_complex(ws * W(s) / mass * inner)
    budget = {"s_nodes": len(s), "x_nodes": x_nodes, "y_nodes": y_nodes,
              "n_terms": n_range[1] - n_range[0] + 1, "r_terms": r_count,
              "bessel_evals": bessel_evals, "panels": (len(s) + x_nodes + y_nodes) // 20,
              "n_range": list(n_range), "r_range": list(r_range)}
    return value, budget


def chain_verify(form: FormCoefficients, params: AnalyticParams, W: Optional[InertWeight] = None,
                 V: Optional[InertWeight] = None, resolution: float = 1.0,
                 margin: float = 10.0) -> ChainReport:
    """Compare S(N) with the transformed right side plus the a = 0 residue term.

    The transformed side carries only residues a != 0 mod p.  The a = 0 term is explicit
    and is evaluated directly, so rel_err measures the delta-symbol leak at p | n - r,
    n != r, together with transform truncation.  ``s_delta`` holds the restricted
    delta stage, which the transformed side must reproduce on its own.
    """
    params.check(margin)
    Wd, Vd = default_chain_weights()
    W = W or Wd
    V = V or Vd
    if not (V.support[0] <= W.support[0] and W.support[1] <= V.support[1]):
        raise ValueError("V must cover the support of W")
    s0 = s_direct(form, params, W)
    start = time.perf_counter()
    if W.integral() == 0.0:
        return ChainReport(params.t, params.N, params.K, params.p, s0, 0j, 0.0,
                           "PostVoronoiPoisson", {"panels": 0}, 0j, 0j)
    value, budget = s_transformed(form, params, W, V, resolution)
    restricted, zero = delta_stage(form, params, W, V, resolution)
    budget["seconds"] = time.perf_counter() - start
    total = value + zero
    return ChainReport(params.t, params.N, params.K, params.p, s0, total,
                       rel_err(s0, total, params.N), "PostVoronoiPoisson", budget,
                       restricted, zero)


# ---------------------------------------------------------------------------
# Phase at the v-stationary point
# ---------------------------------------------------------------------------


def v_stationary(params: AnalyticParams, n: float, r: float) -> float:
    """Positive root of e A v^2 = t + K v with A = p K^2 r/(2 e pi n)."""
    t, K, p = params.t, params.K, params.p
    return (math.pi * n / (p * K * r)) * (math.sqrt(1.0 + 2.0 * p * r * t / (math.pi * n)) + 1.0)


def phi_v(params: AnalyticParams, n: float, r: float, v):
    """K v log A + 2 K v log v - (t + K v) log(t + K v), in radians."""
    t, K, p = params.t, params.K, params.p
    logA = math.log(p * K ** 2 * r / (2.0 * math.e * math.pi * n))
    v = np.asarray(v, dtype=float)
    return K * v * logA + 2.0 * K * v * np.log(v) - (t + K * v) * np.log(t + K * v)


def dphi_v(params: AnalyticParams, n: float, r: float, v):
    """d/dv phi_v = K log(e A v^2 / (t + K v)), in radians."""
    t, K, p = params.t, params.K, params.p
    logA = math.log(p * K ** 2 * r / (2.0 * math.e * math.pi * n))
    v = np.asarray(v, dtype=float)
    return K * (logA + 2.0 * np.log(v) + 1.0 - np.log(t + K * v))


def phase_expansion_check(params: AnalyticParams, n: float, r: float) -> dict:
    """|exact phi(v0) - three-term expansion| and its ratio to K^4/t^3.

    Exact side: -K v0 - t log(t + K v0).  Expansion:
    -t log t - sqrt(8 pi t n/(p r)) - pi n/(p r) - sqrt(pi^3 n^3/(p^3 r^3 t)) / (3 sqrt 2).
    Both are computed with 50 significant digits.
    """
    with mpmath.workdps(50):
        t, K, p = mpmath.mpf(params.t), mpmath.mpf(params.K), mpmath.mpf(params.p)
        n, r = mpmath.mpf(n), mpmath.mpf(r)
        pi = mpmath.pi
        v0 = (pi * n / (p * K * r)) * (mpmath.sqrt(1 + 2 * p * r * t / (pi * n)) + 1)
        exact = -K * v0 - t * mpmath.log(t + K * v0)
        x = n / (p * r)
        approx = (-t * mpmath.log(t) - mpmath.sqrt(8 * pi * t * x) - pi * x
                  - mpmath.sqrt(pi ** 3 * x ** 3 / t) / (3 * mpmath.sqrt(2)))
        gap = abs(exact - approx)
        scale = K ** 4 / t ** 3
        return {"gap": float(gap), "scale": float(scale), "ratio": float(gap / scale),
                "v0": float(v0)}
