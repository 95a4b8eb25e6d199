"""Complex log-gamma and digamma on numpy arrays.

log_gamma uses the g=7, n=9 Lanczos sum on Re s >= 1/2 and the upward
recurrence log G(s) = log G(s+m) - sum log(s+k) elsewhere.  Every log in the
recurrence is principal, so the result is analytic off (-inf, 0] and agrees
with the principal branch on the right half-plane.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import PoleError
from .exact import bernoulli_number

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
EULER_GAMMA = 0.57721566490153286061

_DIGAMMA_SHIFT = 12.0
_DIGAMMA_COEF = [float(bernoulli_number(2 * k)) / (2 * k) for k in range(1, 11)]


def _as_complex(s):
    arr = np.asarray(s, dtype=complex)
    return arr, arr.ndim == 0


def _check_poles(s):
    bad = (s.imag == 0) & (s.real <= 0) & (s.real == np.round(s.real))
    if np.any(bad):
        raise PoleError(f"pole at nonpositive integer {s[bad].ravel()[0].real:g}")


def _lanczos_log_gamma(z):
    # valid for Re z >= 1/2
    z = z - 1.0
    acc = np.full_like(z, _LANCZOS[0])
    for k in range(1, len(_LANCZOS)):
        acc = acc + _LANCZOS[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * np.log(t) - t + np.log(acc)


def log_gamma(s):
    """Principal log Gamma(s) for complex s (scalar or array)."""
    s, scalar = _as_complex(s)
    s = np.atleast_1d(s)
    _check_poles(s)
    shift = np.where(s.real < 0.5, np.ceil(0.5 - s.real), 0.0)
    out = _lanczos_log_gamma(s + shift)
    mmax = int(shift.max()) if shift.size else 0
    for k in range(mmax):
        active = shift > k
        out = out - np.where(active, np.log(np.where(active, s + k, 1.0)), 0.0)
    return out[0] if scalar else out


def gamma(s):
    """Gamma(s) = exp(log_gamma(s))."""
    return np.exp(log_gamma(s))


def digamma(s):
    """psi(s) = Gamma'(s)/Gamma(s) for complex s."""
    s, scalar = _as_complex(s)
    s = np.atleast_1d(s)
    _check_poles(s)
    shift = np.maximum(np.ceil(_DIGAMMA_SHIFT - s.real), 0.0)
    z = s + shift
    inv2 = 1.0 / (z * z)
    series = np.zeros_like(z)
    for c in reversed(_DIGAMMA_COEF):
        series = (series + c) * inv2
    out = np.log(z) - 0.5 / z - series
    mmax = int(shift.max()) if shift.size else 0
    for k in range(mmax):
        active = shift > k
        out = out - np.where(active, 1.0 / np.where(active, s + k, 1.0), 0.0)
    return out[0] if scalar else out
