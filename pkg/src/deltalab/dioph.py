"""Dirichlet approximation of rbar/p, dyadic families and brute-force counting oracles.

All Diophantine data is exact: fractions and integers only.  The counting oracles
enumerate the parametrized set

    S(qb, bb) = {(u, q, r): p bb qb <= |u| < 2 p bb qb, qb <= q < 2 qb,
                 R <= r < 2R, r = ubar q (mod p)},  R = p t / N,

which is the summation range after the change of variables u = rbar q - a p.
"""
from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .summation import AnalyticParams

DEFAULT_BUDGET = 10 ** 8


class BudgetError(RuntimeError):
    """Raised when an enumeration would exceed its configured budget."""


@dataclass(frozen=True)
class DiophTriple:
    r: int
    a: int
    q: int
    beta: Fraction
    u: int
    rbar: int
    zero_beta: bool = False

    @property
    def q_block(self) -> int:
        return 1 << (self.q.bit_length() - 1)

    @property
    def b_block(self) -> Optional[Fraction]:
        return None if self.beta == 0 else dyadic_floor(abs(self.beta))


@dataclass
class DyadicFamily:
    q_block: int
    b_block: Fraction
    members: list = field(default_factory=list)


@dataclass(frozen=True)
class CountResult:
    count: float
    bound: float

    @property
    def ratio(self) -> float:
        return self.count / self.bound if self.bound > 0 else float("inf")


def dyadic_floor(x: Fraction) -> Fraction:
    """Largest power of two not exceeding x > 0, exactly."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    k = x.numerator.bit_length() - x.denominator.bit_length()
    while Fraction(2) ** k > x:
        k -= 1
    while Fraction(2) ** (k + 1) <= x:
        k += 1
    return Fraction(2) ** k


def _exact(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def q_squared(params: AnalyticParams) -> Fraction:
    """Q^2 = p^2 K / N, exact in the binary64 values of K and N."""
    return params.p ** 2 * _exact(params.K) / _exact(params.N)


# ---------------------------------------------------------------------------
# Dirichlet approximation
# ---------------------------------------------------------------------------


def convergents(num: int, den: int):
    """Continued-fraction convergents (a, q) of num/den, in order."""
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    while den:
        c, rem = divmod(num, den)
        h0, h1 = h1, c * h1 + h0
        k0, k1 = k1, c * k1 + k0
        yield h1, k1
        num, den = den, rem


def approximate(num: int, den: int, Q2: Fraction, r: int = 0) -> DiophTriple:
    """Smallest q with q^2 <= Q2 and |num/den - a/q| <= 1/(q Q) for some a.

    The record minima of |q alpha - a| occur at convergent denominators, so the
    smallest admissible q is the first convergent meeting |q num - a den|^2 Q2 <= den^2.
    """
    Q2 = _exact(Q2)
    if math.gcd(num, den) != 1:
        raise ValueError(f"gcd({num}, {den}) != 1")
    for a, q in convergents(num, den):
        if q * q > Q2:
            break
        u = num * q - a * den
        if u * u * Q2 <= den * den:
            beta = Fraction(u, den * q)
            return DiophTriple(r, a, q, beta, u, num, zero_beta=(u == 0))
    raise AssertionError("Dirichlet's theorem guarantees a convergent")


def approximate_brute(num: int, den: int, Q2: Fraction) -> tuple:
    """Oracle: scan q = 1, 2, ... with q^2 <= Q2 and return the first admissible (a, q)."""
    Q2 = _exact(Q2)
    q = 1
    while q * q <= Q2:
        for a in {(num * q) // den, (num * q) // den + 1}:
            u = num * q - a * den
            if 0 <= a <= q and u * u * Q2 <= den * den:
                return a, q
        q += 1
    raise AssertionError("no admissible q")


def dirichlet_approx(r: int, params: AnalyticParams) -> DiophTriple:
    """(a, q, beta, u) for rbar/p with Q = p sqrt(K/N); rbar is the least positive inverse."""
    p = params.p
    if math.gcd(r, p) != 1:
        raise ValueError(f"gcd({r}, {p}) != 1")
    if not params.K < params.N:
        raise ValueError("dirichlet_approx requires K < N")
    rbar = pow(r, -1, p)
    return approximate(rbar, p, q_squared(params), r)


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------


def r_range(params: AnalyticParams) -> tuple:
    """Integers r in [R, 2R), R = p t / N."""
    R = params.p * params.t / params.N
    return math.ceil(R), math.ceil(2 * R) - 1


def families(params: AnalyticParams) -> dict:
    """Partition of {r in [R, 2R): p does not divide r} into dyadic families keyed by (qb, bb)."""
    lo, hi = r_range(params)
    out = {}
    for r in range(lo, hi + 1):
        if r % params.p == 0:
            continue
        tr = dirichlet_approx(r, params)
        key = (tr.q_block, tr.b_block)
        out.setdefault(key, DyadicFamily(tr.q_block, tr.b_block)).members.append(r)
    return out


def smallq_bound(params: AnalyticParams, q_block: int) -> float:
    return params.p * params.t * q_block / (params.N * params.Q)


def family_census(params: AnalyticParams) -> list:
    """Rows (q_block, b_block, family_size, bound, ratio) sorted by block."""
    rows = []
    for (qb, bb), fam in sorted(families(params).items()):
        bound = smallq_bound(params, qb)
        size = len(fam.members)
        rows.append((qb, bb, size, bound, size / bound))
    return rows


# ---------------------------------------------------------------------------
# Parametrized tuples
# ---------------------------------------------------------------------------


def tuple_set(params: AnalyticParams, q_block: int, b_block, budget: int = DEFAULT_BUDGET):
    """Arrays (u, q, r) enumerating S(qb, bb)."""
    p = params.p
    bb = _exact(b_block)
    u_lo = p * bb * q_block
    us = [u for u in range(math.ceil(u_lo), math.ceil(2 * u_lo)) if u % p]
    us = us + [-u for u in us]
    lo, hi = r_range(params)
    if len(us) * q_block * ((hi - lo) // p + 1) > budget:
        raise BudgetError("tuple enumeration exceeds budget")
    U, Qs, Rs = [], [], []
    for u in us:
        ubar = pow(u, -1, p)
        for q in range(q_block, 2 * q_block):
            res = ubar * q % p
            first = lo + (res - lo) % p
            for r in range(first, hi + 1, p):
                U.append(u)
                Qs.append(q)
                Rs.append(r)
    return np.array(U, dtype=np.int64), np.array(Qs, dtype=np.int64), np.array(Rs, dtype=np.int64)


def _dyadic_pair_count(values: np.ndarray, theta: int) -> int:
    """Ordered pairs (i, j) with theta <= |v_j - v_i| < 2 theta."""
    v = np.sort(values)
    up = np.searchsorted(v, v + 2 * theta, "left") - np.searchsorted(v, v + theta, "left")
    return int(2 * up.sum())


def _theta_blocks(span: int) -> list:
    out = [0]
    theta = 1
    while theta <= span:
        out.append(theta)
        theta *= 2
    return out


def count_A(params: AnalyticParams, q_block: int, b_block, theta: int,
            budget: int = DEFAULT_BUDGET) -> CountResult:
    """Pairs of tuples with |u2^2 r2 - u1^2 r1| in [theta, 2 theta) (theta = 0: equality)."""
    U, Qs, Rs = tuple_set(params, q_block, b_block, budget)
    m = U * U * Rs
    if len(m) ** 2 > budget:
        raise BudgetError("pair enumeration exceeds budget")
    if theta == 0:
        count = sum(c * c for c in Counter(m.tolist()).values())
    else:
        count = _dyadic_pair_count(m, theta)
    return CountResult(count, bound_A(params, q_block, b_block, theta))


def bound_A(params, q_block, b_block, theta) -> float:
    p, t, N = params.p, params.t, params.N
    bb = float(b_block)
    return q_block ** 2 * t / N + theta * t / (p * bb * N) + theta * q_block ** 2 * t / (p * N)


def _equal_pairs(U, Qs, Rs):
    """Index pairs (i, j) with u_j^2 r_j - u_i^2 r_i = u_j q_j - u_i q_i."""
    key = U * (U * Rs - Qs)
    groups = defaultdict(list)
    for idx, k in enumerate(key.tolist()):
        groups[k].append(idx)
    I, J = [], []
    for members in groups.values():
        for i in members:
            for j in members:
                I.append(i)
                J.append(j)
    return np.array(I, dtype=np.int64), np.array(J, dtype=np.int64)


def count_B(params: AnalyticParams, q_block: int, b_block, a: int, b: int, theta: int,
            budget: int = DEFAULT_BUDGET) -> CountResult:
    """Equality-filtered pairs with |a u2 q2 - b u1 q1| in [theta, 2 theta) (theta = 0: zero)."""
    U, Qs, Rs = tuple_set(params, q_block, b_block, budget)
    I, J = _equal_pairs(U, Qs, Rs)
    val = np.abs(a * U[J] * Qs[J] - b * U[I] * Qs[I])
    if theta == 0:
        count = int(np.count_nonzero(val == 0))
    else:
        count = int(np.count_nonzero((val >= theta) & (val < 2 * theta)))
    return CountResult(count, bound_B(params, b_block, theta))


def bound_B(params, b_block, theta) -> float:
    p, t, N = params.p, params.t, params.N
    return p * t / N + theta * t / (p * float(b_block) * N)


def xi_measure(center: np.ndarray, half_width: float) -> np.ndarray:
    """Length of [center - hw, center + hw] intersected with [-1, 1]."""
    lo = np.maximum(center - half_width, -1.0)
    hi = np.minimum(center + half_width, 1.0)
    return np.maximum(hi - lo, 0.0)


def count_C(params: AnalyticParams, q_block: int, b_block, h_scale: float, theta: float,
            xi2: float = 0.5, budget: int = DEFAULT_BUDGET) -> CountResult:
    """Equality-filtered pairs weighted by the measure of xi1 in [-1, 1] with

    |m (u2 q2 + u1 q1) + h (xi1 - xi2 q1 / q2)| <= theta,  m = u2 q2 - u1 q1.
    """
    if h_scale <= 0:
        raise ValueError("h_scale must be positive")
    U, Qs, Rs = tuple_set(params, q_block, b_block, budget)
    I, J = _equal_pairs(U, Qs, Rs)
    m = (U[J] * Qs[J] - U[I] * Qs[I]).astype(float)
    s = (U[J] * Qs[J] + U[I] * Qs[I]).astype(float)
    center = xi2 * Qs[I] / Qs[J] - m * s / h_scale
    measure = xi_measure(center, theta / h_scale)
    return CountResult(math.fsum(measure.tolist()), bound_C(params, q_block, b_block, theta))


def bound_C(params, q_block, b_block, theta) -> float:
    p, t, N = params.p, params.t, params.N
    bb = float(b_block)
    return p * t / N + theta * t / (p ** 2 * bb ** 2 * q_block ** 2 * N)


# ---------------------------------------------------------------------------
# Rational proximity
# ---------------------------------------------------------------------------


def proximity_bound(X: int, Y: int, Z: float) -> float:
    return math.log(X * Y) ** 2 * (X * Y + X * X * Y * Y * Z)


def count_rational_proximity(X: int, Y: int, Z, budget: int = DEFAULT_BUDGET) -> CountResult:
    """#{(a, b, c, d): a, b in [X, 2X), c, d in [Y, 2Y), |a/b - c/d| <= Z}, exactly.

    Z is read as the decimal it prints as, so 1e-3 means 1/1000.
    """
    if X ** 2 * Y ** 2 > budget:
        raise BudgetError("enumeration exceeds budget")
    Zf = Fraction(str(Z)) if isinstance(Z, float) else Fraction(Z)
    if Zf < 0:
        raise ValueError("Z must be non-negative")
    zn, zd = Zf.numerator, Zf.denominator
    ab = np.arange(X, 2 * X, dtype=object if zn * 16 * X * Y > 2 ** 62 else np.int64)
    cd = np.arange(Y, 2 * Y, dtype=ab.dtype)
    a, b = np.meshgrid(ab, ab, indexing="ij")
    a, b = a.ravel(), b.ravel()
    c, d = np.meshgrid(cd, cd, indexing="ij")
    c, d = c.ravel(), d.ravel()
    count = 0
    for i in range(len(a)):
        diff = np.abs(a[i] * d - b[i] * c)
        count += int(np.count_nonzero(diff * zd <= zn * b[i] * d))
    return CountResult(count, proximity_bound(X, Y, float(Zf)))


def count_equal_ratios(X: int, Y: int) -> int:
    """Oracle for Z = 0: sum over products v of #{(a, d): ad = v} * #{(b, c): bc = v}."""
    left = Counter(a * d for a in range(X, 2 * X) for d in range(Y, 2 * Y))
    return sum(n * n for n in left.values())
