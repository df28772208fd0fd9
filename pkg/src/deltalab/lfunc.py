"""Critical-line values of zeta, L(s, Delta) and L(s, E) = zeta(s)^2, plus the envelope scan.

zeta uses Euler-Maclaurin.  The degree-two L-functions use a smoothed approximate
functional equation: for Lambda(s) = gamma(s) L(s) = Lambda(1 - s),

    Lambda(s) = I(s) + I(1 - s) - (polar residues),
    I(s) = (1 / 2 pi i) int_{(c)} gamma(s + u) D(s + u) G(u) du / u,  G(u) = exp(b u^2),

and on the critical line I(1 - s) = conj I(s) because the coefficients are real.
The contour integral is a trapezoid sum on Re u = c with the Dirichlet series
summed inside, always as the ratio gamma(s + u) / gamma(s) to avoid underflow.
"""
from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np
from scipy.special import bernoulli, loggamma

from .forms import FormCoefficients, form_table
from .summation import fsum_complex

EULER_GAMMA = 0.5772156649015329
# Laurent constant of pi^{-s/2} Gamma(s/2) zeta(s) at s = 1
XI_CONST = EULER_GAMMA / 2.0 - math.log(2.0 * math.sqrt(math.pi))
ZETA_T_MAX = 1e5
DELTA_T_MAX = 1e4
CUTOFF_MARGIN = 1.5
EPS = float(np.finfo(float).eps)
ENVELOPES = {"weyl": 1.0 / 3.0, "subweyl": 19.0 / 58.0, "limit": 0.25}


class Method(enum.Enum):
    EulerMaclaurin = "euler_maclaurin"
    RiemannSiegelLike = "riemann_siegel_like"
    SmoothedAFE = "smoothed_afe"


@dataclass(frozen=True)
class LValue:
    t: float
    value: complex
    err_est: float
    method: Method


@dataclass
class EnvelopeReport:
    form: str
    t_grid: np.ndarray
    abs_values: np.ndarray
    err_est: np.ndarray
    constants: dict
    zeta_sixth_constant: Optional[float] = None
    label: str = "illustrative"

    def envelope(self, name: str) -> np.ndarray:
        return self.constants[name] * self.t_grid ** ENVELOPES[name]

    def rows(self):
        env = {name: self.envelope(name) for name in ENVELOPES}
        for i, t in enumerate(self.t_grid):
            yield (float(t), float(self.abs_values[i]), float(self.err_est[i]),
                   float(env["weyl"][i]), float(env["subweyl"][i]), float(env["limit"][i]))

    CSV_HEADER = ("t", "abs_L", "err_est", "env_weyl", "env_subweyl", "env_limit")

    def write(self, csv_path, dat_path=None) -> None:
        with open(csv_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(self.CSV_HEADER)
            for row in self.rows():
                writer.writerow([f"{v:.12g}" for v in row])
        if dat_path is not None:
            with open(dat_path, "w") as fh:
                fh.write(f"# {self.label} envelope scan, form={self.form}\n")
                fh.write("# " + " ".join(self.CSV_HEADER) + "\n")
                for row in self.rows():
                    fh.write(" ".join(f"{v:.12g}" for v in row) + "\n")

    def summary(self) -> dict:
        return {"form": self.form, "label": self.label, "points": int(len(self.t_grid)),
                "t_min": float(self.t_grid[0]), "t_max": float(self.t_grid[-1]),
                "max_abs": float(np.max(self.abs_values)),
                "constants": {k: float(v) for k, v in self.constants.items()},
                "zeta_sixth_constant": self.zeta_sixth_constant}


# ---------------------------------------------------------------------------
# zeta by Euler-Maclaurin
# ---------------------------------------------------------------------------

_BERNOULLI = bernoulli(40)


def zeta_value(t: float, sigma: float = 0.5, corrections: int = 6,
               cutoff: Optional[int] = None) -> LValue:
    """zeta(sigma + i t) by Euler-Maclaurin with cutoff max(50, 3|t|)."""
    if abs(t) > ZETA_T_MAX:
        raise ValueError(f"|t| = {abs(t)} exceeds {ZETA_T_MAX}")
    s = complex(sigma, t)
    M = cutoff or int(max(50, math.ceil(3 * abs(t))))
    n = np.arange(1, M, dtype=float)
    head = fsum_complex(np.exp(-s * np.log(n)))
    Ms = math.exp(-sigma * math.log(M)) * complex(math.cos(t * math.log(M)), -math.sin(t * math.log(M)))
    total = head + M * Ms / (s - 1) + 0.5 * Ms
    rising = s  # s (s+1) ... (s + 2k - 2)
    term = 0j
    for k in range(1, corrections + 1):
        term = _BERNOULLI[2 * k] / math.factorial(2 * k) * rising * Ms / M ** (2 * k - 1)
        total += term
        rising *= (s + 2 * k - 1) * (s + 2 * k)
    # phases t log n carry absolute error ~ eps t log n per term
    rounding = EPS * (1.0 + abs(t) * math.log(M)) * math.fsum(np.exp(-sigma * np.log(n)).tolist())
    return LValue(t, total, abs(term) + rounding, Method.EulerMaclaurin)


def riemann_siegel_theta(t):
    t = np.asarray(t, dtype=float)
    return np.imag(loggamma(0.25 + 0.5j * t)) - 0.5 * t * math.log(math.pi)


def hardy_z(t: float) -> float:
    z = zeta_value(t).value
    return float((np.exp(1j * riemann_siegel_theta(t)) * z).real)


def zeta_zeros(count: int = 5, t_start: float = 10.0, step: float = 0.05,
               tol: float = 1e-9) -> list:
    """First ``count`` zeros above t_start from sign changes of Hardy's Z."""
    zeros = []
    a, fa = t_start, hardy_z(t_start)
    while len(zeros) < count:
        b = a + step
        fb = hardy_z(b)
        if fa == 0.0:
            zeros.append(a)
        elif fa * fb < 0:
            lo, hi, flo = a, b, fa
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                fm = hardy_z(mid)
                if (fm < 0) == (flo < 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            zeros.append(0.5 * (lo + hi))
        a, fa = b, fb
    return zeros


# ---------------------------------------------------------------------------
# Smoothed approximate functional equation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AfeConfig:
    """b: G(u) = exp(b u^2); c: contour abscissa; h: trapezoid step; tail: log of target decay."""

    b: float = 0.25
    c: float = 2.0
    h: float = 0.1
    tail: float = 36.0
    margin: float = CUTOFF_MARGIN

    def doubled(self) -> "AfeConfig":
        return AfeConfig(self.b, self.c, self.h / 2.0, self.tail, self.margin)


def _log_gamma_delta(s):
    """log of (2 pi)^{-s} Gamma(s + 11/2)."""
    return -s * math.log(2 * math.pi) + loggamma(s + 5.5)


def _log_gamma_eis(s):
    """log of pi^{-s} Gamma(s/2)^2."""
    return -s * math.log(math.pi) + 2.0 * loggamma(s / 2.0)


_GAMMA = {"delta": (_log_gamma_delta, 5.5), "eisenstein": (_log_gamma_eis, 0.5)}


def afe_length(t: float, shift: float, cfg: AfeConfig) -> int:
    """Number of terms: the cutoff decays like exp(-log(x/T)^2 / (4b)) beyond T."""
    T = (abs(t) + shift + 1.0) / (2.0 * math.pi)
    return int(math.ceil(cfg.margin * T * math.exp(math.sqrt(4.0 * cfg.b * cfg.tail)))) + 1


def _contour(cfg: AfeConfig):
    ymax = math.sqrt((cfg.tail + 4.0 * cfg.b * cfg.c ** 2) / cfg.b) + 4.0
    y = np.arange(-ymax, ymax + cfg.h / 2, cfg.h)
    return cfg.c + 1j * y


def _afe_inner(kind: str, lam: np.ndarray, t: float, cfg: AfeConfig, n_terms: int,
               n_short: int) -> tuple:
    """I(s) / gamma(s) at s = 1/2 + i t, and the part from n > n_short."""
    log_gamma, _ = _GAMMA[kind]
    s = 0.5 + 1j * t
    u = _contour(cfg)
    ratio = np.exp(log_gamma(s + u) - log_gamma(s)) * np.exp(cfg.b * u * u) / u
    n = np.arange(1, n_terms + 1, dtype=float)
    logn = np.log(n)
    coef = lam[1:n_terms + 1] * np.exp(-s * logn)
    total = np.zeros(len(u), dtype=complex)
    tail = np.zeros(len(u), dtype=complex)
    for chunk in np.array_split(np.arange(len(u)), max(1, len(u) * n_terms // 2_000_000)):
        terms = np.exp(-np.outer(u[chunk], logn)) * coef
        total[chunk] = terms.sum(axis=1)
        tail[chunk] = terms[:, n_short:].sum(axis=1)
    scale = cfg.h / (2.0 * math.pi)
    mass = math.fsum((np.abs(ratio) * float(np.sum(np.abs(coef) * n ** -cfg.c))).tolist())
    rounding = EPS * (1.0 + abs(t) * math.log(n_terms)) * mass * scale
    return (fsum_complex(ratio * total) * scale, fsum_complex(ratio * tail) * scale, rounding)


def _eis_polar(t: float, cfg: AfeConfig) -> complex:
    """(R_0 + R_1) / gamma(s) for the double poles at u = 1 - s and u = -s."""
    s = 0.5 + 1j * t
    log_gamma = _log_gamma_eis(s)

    def g(u):
        # G(u) / (u gamma(s)), combined in log space so neither factor overflows
        return np.exp(cfg.b * u * u - log_gamma) / u

    def dg(u):
        return g(u) * (2.0 * cfg.b * u - 1.0 / u)

    u0, u1 = 1.0 - s, -s
    return complex((dg(u0) + 2.0 * XI_CONST * g(u0)) + (dg(u1) - 2.0 * XI_CONST * g(u1)))


def _afe_value(kind: str, lam: np.ndarray, t: float, cfg: AfeConfig) -> tuple:
    """(value, size of the terms beyond the cutoff for a tail six e-folds shorter)."""
    log_gamma, shift = _GAMMA[kind]
    n_terms = afe_length(t, shift, cfg)
    n_short = afe_length(t, shift, AfeConfig(cfg.b, cfg.c, cfg.h, cfg.tail - 6.0, cfg.margin))
    if n_terms > len(lam) - 1:
        raise IndexError(f"coefficient table too short: need {n_terms}, have {len(lam) - 1}")
    s = 0.5 + 1j * t
    inner, tail, rounding = _afe_inner(kind, lam, t, cfg, n_terms, min(n_short, n_terms))
    # root number +1 for both forms at level one (weight 12 gives i^12 = 1)
    root = np.exp(log_gamma(np.conj(s)) - log_gamma(s))
    value = inner + root * np.conj(inner)
    if kind == "eisenstein":
        value -= _eis_polar(t, cfg)
    return complex(value), 2.0 * (abs(tail) + rounding)


def afe_value(kind: str, lam: np.ndarray, t: float, cfg: Optional[AfeConfig] = None) -> LValue:
    """Value at step h/2 with err_est the change from step h (plus a rounding floor)."""
    cfg = cfg or AfeConfig()
    coarse, _ = _afe_value(kind, lam, t, cfg)
    fine, tail = _afe_value(kind, lam, t, cfg.doubled())
    floor = 1e-13 * max(1.0, abs(fine))
    return LValue(t, fine, abs(fine - coarse) + tail + floor, Method.SmoothedAFE)


def required_terms(t_max: float, form: str = "delta", cfg: Optional[AfeConfig] = None) -> int:
    cfg = cfg or AfeConfig()
    return afe_length(t_max, _GAMMA[form][1], cfg)


def l_delta_value(t: float, form: Optional[FormCoefficients] = None,
                  cfg: Optional[AfeConfig] = None) -> LValue:
    """L(1/2 + i t, Delta) in the unit normalization."""
    if abs(t) > DELTA_T_MAX:
        raise ValueError(f"|t| = {abs(t)} exceeds {DELTA_T_MAX}")
    cfg = cfg or AfeConfig()
    form = form or form_table("delta", required_terms(t, "delta", cfg))
    return afe_value("delta", form.lam, t, cfg)


def l_eisenstein_value(t: float, form: Optional[FormCoefficients] = None,
                       cfg: Optional[AfeConfig] = None) -> LValue:
    """L(1/2 + i t, E) from its own AFE with d(n); equals zeta^2 as a check."""
    cfg = cfg or AfeConfig()
    form = form or form_table("eisenstein", required_terms(t, "eisenstein", cfg))
    return afe_value("eisenstein", form.lam, t, cfg)


def l_delta_theta_oracle(t: float, terms: int = 40, dps: int = 40) -> complex:
    """Independent value from the incomplete-gamma series of the completed L-function."""
    import mpmath

    from .forms import tau_table

    taus = tau_table(terms)
    with mpmath.workdps(dps):
        w = mpmath.mpf(6) + 1j * mpmath.mpf(t)
        total = mpmath.mpc(0)
        for n, tau in enumerate(taus, start=1):
            x = 2 * mpmath.pi * n
            total += tau * (mpmath.gammainc(w, x) / x ** w + mpmath.gammainc(12 - w, x) / x ** (12 - w))
        value = total / ((2 * mpmath.pi) ** (-w) * mpmath.gamma(w))
        return complex(value)


# ---------------------------------------------------------------------------
# Envelope scan
# ---------------------------------------------------------------------------


def t_grid(t_min: float, t_max: float, step: float) -> np.ndarray:
    count = int(math.floor((t_max - t_min) / step + 1e-9)) + 1
    return t_min + step * np.arange(count)


def fit_constants(ts: np.ndarray, values: np.ndarray) -> dict:
    """Smallest c with c t^theta >= running max of values on the grid, per exponent."""
    running = np.maximum.accumulate(values)
    return {name: float(np.max(running / ts ** theta)) for name, theta in ENVELOPES.items()}


def scan_envelope(form: str, t_min: float, t_max: float, step: float,
                  cfg: Optional[AfeConfig] = None) -> EnvelopeReport:
    """|L(1/2 + i t)| on the grid; Eisenstein values come from |zeta|^2."""
    ts = t_grid(t_min, t_max, step)
    vals = np.empty(len(ts))
    errs = np.empty(len(ts))
    zeta_abs = None
    key = form.lower()
    if key.startswith("eis"):
        zeta_abs = np.empty(len(ts))
        for i, t in enumerate(ts):
            z = zeta_value(float(t))
            zeta_abs[i] = abs(z.value)
            vals[i] = zeta_abs[i] ** 2
            errs[i] = 2.0 * zeta_abs[i] * z.err_est + z.err_est ** 2
        key = "eisenstein"
    elif key.startswith("delta") or key.startswith("holo"):
        cfg = cfg or AfeConfig()
        table = form_table("delta", required_terms(float(np.max(np.abs(ts))), "delta", cfg))
        for i, t in enumerate(ts):
            v = l_delta_value(float(t), table, cfg)
            vals[i] = abs(v.value)
            errs[i] = v.err_est
        key = "delta"
    else:
        raise ValueError(f"unknown form {form!r}")
    sixth = None
    if zeta_abs is not None:
        sixth = float(np.max(np.maximum.accumulate(zeta_abs) / ts ** (1.0 / 6.0)))
    return EnvelopeReport(key, ts, vals, errs, fit_constants(ts, vals), sixth)
