"""Hurwitz zeta function zeta(s, a) for complex s and a > 0.

Euler-Maclaurin summation with the cutoff chosen from |s| so that the
correction series contracts by at least 1/4 per term.  For Re s < 0 and
rational a = p/q the Hurwitz formula maps the evaluation to Re(1-s) > 1,
where Euler-Maclaurin has no cancellation:

    zeta(1-w, p/q) = 2 Gamma(w) (2 pi q)^(-w)
                     * sum_{r=1}^{q} cos(pi w / 2 - 2 pi r p / q) zeta(w, r/q)

Other shifts use the same formula with periodic zeta functions,

    zeta(1-w, a) = Gamma(w) (2 pi)^(-w) [e^{-i pi w/2} F(w, a) + e^{i pi w/2} F(w, 1-a)],
    F(w, a) = sum_{n>=1} e^{2 pi i n a} n^{-w},

where F is summed up to N and its tail expanded in Taylor terms of
(N+k)^{-w} against the Abel sums  sum_k k^j z^k.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..errors import DomainError, PoleError
from .exact import bernoulli_number
from .gamma import digamma, log_gamma

EM_TERMS = 20
_MAX_BLOCK = 1 << 21
_MAX_REFLECT_DENOMINATOR = 1000

# B_{2j} / (2j)!
_EM_COEF = [float(bernoulli_number(2 * j) / math.factorial(2 * j)) for j in range(1, EM_TERMS + 1)]


def _cutoff(smax: float, a: float) -> int:
    return max(10, int(math.ceil((smax + 2 * EM_TERMS) / math.pi - a)) + 1)


def _as_rational(a) -> Fraction | None:
    if isinstance(a, Fraction):
        return a
    if isinstance(a, int):
        return Fraction(a)
    fr = Fraction(float(a)).limit_denominator(_MAX_REFLECT_DENOMINATOR)
    return fr if float(fr) == float(a) else None


@lru_cache(maxsize=256)
def _log_nodes(a: float, n: int) -> np.ndarray:
    return np.log(np.arange(n, dtype=float) + a)


def _em(s: np.ndarray, a: float, derivative: bool):
    """Euler-Maclaurin on a 1-D array; returns (value, derivative or None)."""
    smax = float(np.max(np.abs(s))) if s.size else 0.0
    n = _cutoff(smax, a)
    logs = _log_nodes(a, n)
    value = np.empty_like(s)
    deriv = np.empty_like(s) if derivative else None
    step = max(1, _MAX_BLOCK // n)
    for lo in range(0, s.size, step):
        blk = s[lo:lo + step]
        powers = np.exp(-np.outer(blk, logs))
        value[lo:lo + step] = powers.sum(axis=1)
        if derivative:
            deriv[lo:lo + step] = -(powers @ logs)

    x = n + a
    lx = math.log(x)
    xs = np.exp(-s * lx)
    sm1 = s - 1.0
    value += x * xs / sm1 + 0.5 * xs
    if derivative:
        deriv += -lx * x * xs / sm1 - x * xs / (sm1 * sm1) - 0.5 * lx * xs

    # j-th correction: c_j * poch_j(s) * x^(-s-2j+1), poch_j = s (s+1) ... (s+2j-2)
    poch = s.copy()
    dpoch = np.ones_like(s)
    xpow = xs / x
    for j in range(1, EM_TERMS + 1):
        c = _EM_COEF[j - 1]
        value += c * poch * xpow
        if derivative:
            deriv += c * (dpoch - lx * poch) * xpow
        u = s + (2 * j - 1)
        v = s + 2 * j
        if derivative:
            dpoch = dpoch * u * v + poch * (u + v)
        poch = poch * u * v
        xpow = xpow / (x * x)
    return value, deriv


def _reflect(s: np.ndarray, a: Fraction, derivative: bool):
    w = 1.0 - s
    p, q = a.numerator, a.denominator
    log_pref = math.log(2.0) + log_gamma(w) - w * math.log(2.0 * math.pi * q)
    pref = np.exp(log_pref)
    half = 0.5 * math.pi * w
    acc = np.zeros_like(s)
    dacc = np.zeros_like(s)
    for r in range(1, q + 1):
        theta = 2.0 * math.pi * ((r * p) % q) / q
        zv, zd = _em(w, r / q, derivative)
        cos_t = np.cos(half - theta)
        acc += cos_t * zv
        if derivative:
            dacc += cos_t * zd - 0.5 * math.pi * np.sin(half - theta) * zv
    value = pref * acc
    if not derivative:
        return value, None
    dlog = digamma(w) - math.log(2.0 * math.pi * q)
    # d/ds = -d/dw
    return value, -(pref * (dlog * acc + dacc))


_PERIODIC_TERMS = 30
_MAX_PERIODIC_CUTOFF = 2_000_000


def _periodic_zeta(w: np.ndarray, a: float, derivative: bool):
    """F(w, a) for Re w > 1 and 0 < a < 1; returns (value, dF/dw or None)."""
    dist = min(a, 1.0 - a)
    wmax = float(np.max(np.abs(w)))
    J = _PERIODIC_TERMS
    # tail terms shrink by (|w| + j) / (2 pi dist N) <= 1/4
    n_cut = max(16, int(math.ceil(2.0 * (wmax + J) / (math.pi * dist))))
    if n_cut > _MAX_PERIODIC_CUTOFF:
        raise DomainError(f"shift a={a} too close to an integer for the reflected evaluation")
    z = complex(math.cos(2 * math.pi * a), math.sin(2 * math.pi * a))
    ns = np.arange(1, n_cut, dtype=float)
    logs = np.log(ns)
    phase = np.exp(2j * math.pi * ((ns * a) % 1.0))
    value = np.empty_like(w)
    deriv = np.empty_like(w) if derivative else None
    step = max(1, _MAX_BLOCK // n_cut)
    for lo in range(0, w.size, step):
        powers = phase * np.exp(-np.outer(w[lo:lo + step], logs))
        value[lo:lo + step] = powers.sum(axis=1)
        if derivative:
            deriv[lo:lo + step] = -(powers @ logs)

    # Abel sums: sum_k k^j z^k = j! (-2 pi i)^{-j-1} [zeta(j+1, a) + (-1)^{j+1} zeta(j+1, 1-a)]
    abel = [1.0 / (1.0 - z)]
    for j in range(1, J + 1):
        h = hurwitz_zeta(float(j + 1), a).real + (-1) ** (j + 1) * hurwitz_zeta(float(j + 1), 1.0 - a).real
        abel.append(math.factorial(j) * h / (-2j * math.pi) ** (j + 1))
    lnn = math.log(n_cut)
    base = np.exp(-w * lnn)
    zn = np.exp(2j * math.pi * ((n_cut * a) % 1.0))
    # (-1)^j (w)_j / j! n_cut^{-w-j}, and its w-derivative
    coef = base.copy()
    dcoef = -lnn * base
    tail = coef * abel[0]
    dtail = dcoef * abel[0]
    for j in range(1, J + 1):
        factor = -(w + (j - 1)) / (j * n_cut)
        if derivative:
            dcoef = dcoef * factor - coef / (j * n_cut)
        coef = coef * factor
        tail = tail + coef * abel[j]
        if derivative:
            dtail = dtail + dcoef * abel[j]
    value += zn * tail
    if derivative:
        deriv += zn * dtail
    return value, deriv


def _reflect_periodic(s: np.ndarray, a: float, derivative: bool):
    w = 1.0 - s
    f1, d1 = _periodic_zeta(w, a, derivative)
    f2, d2 = _periodic_zeta(w, 1.0 - a, derivative)
    lg = log_gamma(w) - w * math.log(2.0 * math.pi)
    e_minus = np.exp(lg - 0.5j * math.pi * w)
    e_plus = np.exp(lg + 0.5j * math.pi * w)
    value = e_minus * f1 + e_plus * f2
    if not derivative:
        return value, None
    dlg = digamma(w) - math.log(2.0 * math.pi)
    dw = e_minus * ((dlg - 0.5j * math.pi) * f1 + d1) + e_plus * ((dlg + 0.5j * math.pi) * f2 + d2)
    return value, -dw


def hurwitz_zeta(s, a=1, derivative: bool = False):
    """zeta(s, a), optionally with d/ds zeta(s, a).

    ``s`` may be a scalar or array; ``a`` is a positive scalar.  Rational
    shifts above 1 are reduced into (0, 1] before reflecting.
    """
    af = float(a)
    if not af > 0.0:
        raise DomainError(f"shift a={a} must be positive")
    arr = np.asarray(s, dtype=complex)
    scalar = arr.ndim == 0
    flat = np.atleast_1d(arr).ravel()
    if np.any(flat == 1.0):
        raise PoleError("Hurwitz zeta has a pole at s = 1")

    value = np.empty_like(flat)
    deriv = np.empty_like(flat) if derivative else None
    rational = _as_rational(a)
    # reflect only well left of Re s = 0, where 1 - s stays clear of the pole
    left = flat.real < -0.5
    if np.any(~left):
        v, d = _em(flat[~left], af, derivative)
        value[~left] = v
        if derivative:
            deriv[~left] = d
    if np.any(left):
        if rational is not None:
            k = math.ceil(rational) - 1
            v, d = _reflect(flat[left], rational - k, derivative)
        else:
            k = math.ceil(af) - 1
            if af - k == 1.0:
                v, d = _reflect(flat[left], Fraction(1), derivative)
            else:
                v, d = _reflect_periodic(flat[left], af - k, derivative)
        for j in range(k):
            base = float(rational - k + j) if rational is not None else af - k + j
            term = np.exp(-flat[left] * math.log(base))
            v = v - term
            if derivative:
                d = d + math.log(base) * term
        value[left] = v
        if derivative:
            deriv[left] = d

    shape = np.shape(arr)
    if scalar:
        return (value[0], deriv[0]) if derivative else value[0]
    value = value.reshape(shape)
    return (value, deriv.reshape(shape)) if derivative else value


def riemann_zeta(s, derivative: bool = False):
    """zeta(s) = zeta(s, 1)."""
    return hurwitz_zeta(s, Fraction(1), derivative)
