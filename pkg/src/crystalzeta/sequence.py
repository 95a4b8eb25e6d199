"""Candidate sequences alpha_n: structural checks, zero sums and theta sums.

A zero s = beta + i gamma of a zeta-like function maps to the term
alpha = gamma + i(1/2 - beta); zeros on the critical line give real terms.
Truncated sequences can carry a tail model, a smooth counting density
d(t) = log(t/2pi)/(2pi) above a cutoff, used to compensate sums over terms
that were not stored.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import integrate, optimize

from .asymptotics import coeff_a, constant_A, expansion_main, expansion_smallx
from .errors import DomainError, InsufficientDataError, NearSingularityError, PoleError
from .numerics import digamma, euler_number, riemann_zeta

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class TailModel:
    """Terms above t_max are distributed with density log(t/2pi)/(2pi)."""

    t_max: float

    @staticmethod
    def density(t):
        return np.log(np.asarray(t, dtype=float) / TWO_PI) / TWO_PI

    @staticmethod
    def smooth_count(t: float) -> float:
        """(t/2pi) log(t/(2pi e)) + 7/8."""
        return t / TWO_PI * math.log(t / (TWO_PI * math.e)) + 0.875

    @classmethod
    def for_count(cls, count: int, last: float) -> "TailModel":
        """Cutoff where the smooth count reaches the stored count (never below the last term)."""
        lo, hi = TWO_PI * math.e, max(2 * last, 100.0)
        if cls.smooth_count(lo) >= count:
            return cls(last)
        t = optimize.brentq(lambda t: cls.smooth_count(t) - count, lo, hi)
        return cls(max(t, last))

    def integral(self, g, upper: float = math.inf) -> float:
        """int_{t_max}^upper g(t) d(t) dt."""
        val, _ = integrate.quad(lambda t: g(t) * math.log(t / TWO_PI) / TWO_PI, self.t_max, upper, limit=200)
        return val


@dataclass(frozen=True)
class RiemannSequenceCandidate:
    terms: tuple[complex, ...]
    label: str = ""
    tail: TailModel | None = None

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(complex(a) for a in self.terms))

    def __len__(self):
        return len(self.terms)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.terms, dtype=complex)

    @property
    def is_real(self) -> bool:
        return all(a.imag == 0 for a in self.terms)

    def head(self, k: int) -> "RiemannSequenceCandidate":
        terms = self.terms[:k]
        tail = TailModel.for_count(len(terms), terms[-1].real) if self.tail is not None else None
        return RiemannSequenceCandidate(terms, self.label, tail)

    def with_tail(self) -> "RiemannSequenceCandidate":
        return RiemannSequenceCandidate(self.terms, self.label, TailModel.for_count(len(self.terms), self.terms[-1].real))


def zeta_sequence(ordinates, label: str = "zeta", tail: bool = True) -> RiemannSequenceCandidate:
    terms = tuple(complex(float(t), 0.0) for t in ordinates)
    model = TailModel.for_count(len(terms), terms[-1].real) if tail else None
    return RiemannSequenceCandidate(terms, label, model)


# --------------------------------------------------------------------------
# conditions (a) - (d)


@dataclass(frozen=True)
class CertificationReport:
    verdicts: dict
    min_re: float
    monotone: bool
    unmatched: tuple[complex, ...]
    max_abs_im: float
    max_ratio: float
    C: float
    kind: str
    e_table: tuple = ()

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def recheck(self) -> dict:
        """Verdicts recomputed from the stored witnesses."""
        return {
            "a": self.min_re > 1 and self.monotone,
            "b": not self.unmatched,
            "c": self.max_abs_im < self.C,
            "d": self.max_ratio < 1,
        }


def _unmatched_conjugates(terms, tol: float) -> list[complex]:
    pool = [a for a in terms if a.imag != 0]
    left = list(pool)
    unmatched = []
    while left:
        a = left.pop(0)
        for j, b in enumerate(left):
            if abs(b - a.conjugate()) <= tol * max(1.0, abs(a)):
                left.pop(j)
                break
        else:
            unmatched.append(a)
    return unmatched


def check_structure(seq: RiemannSequenceCandidate, C: float, tol: float = 1e-8,
                    e_grid=None, e_orders=(0, 1, 2)) -> CertificationReport:
    """Verdicts for conditions (a)-(d); optional residual table for (e)."""
    if not seq.terms:
        raise ValueError("empty sequence")
    re = np.array([a.real for a in seq.terms])
    im = np.array([a.imag for a in seq.terms])
    monotone = bool(np.all(np.diff(re) >= 0))
    min_re = float(re[0])
    unmatched = tuple(_unmatched_conjugates(seq.terms, tol))
    max_abs_im = float(np.max(np.abs(im)))
    max_ratio = float(np.max(np.abs(im) / re)) if np.all(re > 0) else math.inf
    kind = "real" if max_abs_im == 0 else "complex"
    table = ()
    if e_grid is not None:
        table = tuple(
            (float(x), n, float(abs(zero_sum(seq, x) - expansion_main(x, n)))) for x in e_grid for n in e_orders
        )
    report = CertificationReport({}, min_re, monotone, unmatched, max_abs_im, max_ratio, float(C), kind, table)
    report.verdicts.update(report.recheck())
    return report


# --------------------------------------------------------------------------
# sums over the sequence


def zero_sum(seq: RiemannSequenceCandidate, x: float) -> complex:
    """sum 2x/(x^2 + alpha^2), plus the tail-model integral when present."""
    if x <= 0:
        raise DomainError("x must be positive")
    a = seq.array
    den = x * x + a * a
    if np.any(np.abs(den) < 1e-12):
        raise NearSingularityError(f"x^2 + alpha^2 vanishes near x = {x}")
    total = complex(np.sum(2 * x / den))
    if seq.tail is not None:
        total += seq.tail.integral(lambda t: 2 * x / (x * x + t * t))
    return total


def zeta_zero_sum_oracle(x: float) -> float:
    """sum over zeta zeros of 2x/(x^2+tau^2), from the log-derivative of xi(1/2 + x)."""
    if x == 0.5:
        raise PoleError("oracle has a pole at x = 1/2")
    if x <= 0.5:
        raise DomainError("oracle needs x > 1/2")
    z, dz = riemann_zeta(0.5 + x, derivative=True)
    return float((dz / z).real - 0.5 * math.log(math.pi) + 1 / (x - 0.5) + 0.5 * digamma(0.5 * x + 1.25).real)


def log_sum(seq: RiemannSequenceCandidate, x: float) -> complex:
    """sum log(1 + x^2/alpha^2) with tail compensation."""
    a = seq.array
    total = complex(np.sum(np.log1p(x * x / (a * a))))
    if seq.tail is not None:
        total += seq.tail.integral(lambda t: math.log1p(x * x / (t * t)))
    return total


@dataclass(frozen=True)
class BEstimate:
    value: float
    spread: float
    imag_residue: float
    grid: tuple[float, ...]
    raw: tuple[float, ...]


def estimate_B(seq: RiemannSequenceCandidate, x_grid, tol: float = 1e-2, degree: int = 3) -> BEstimate:
    """Constant term of sum log(1+x^2/alpha^2) - (x/2)log(x/2pi) + x/2 - (7/4)log x.

    The bracket is evaluated on ``x_grid`` and extrapolated to 1/x -> 0 by
    polynomial fits in 1/x; the spread is the range of the intercepts over
    fit degrees 1..degree.  A RuntimeWarning flags spreads above ``tol``.
    """
    xs = np.asarray(sorted(float(x) for x in x_grid))
    if xs.size < degree + 2:
        raise ValueError("grid too short for the requested fit degree")
    vals = np.array([log_sum(seq, x) for x in xs])
    bracket = vals.real - 0.5 * xs * np.log(xs / TWO_PI) + 0.5 * xs - 1.75 * np.log(xs)
    intercepts = [np.polyfit(1 / xs, bracket, d)[-1] for d in range(1, degree + 1)]
    value = float(intercepts[-1])
    spread = float(max(intercepts) - min(intercepts))
    if spread > tol:
        warnings.warn(f"B estimate not stable: spread {spread:.3e} > {tol:g}", RuntimeWarning, stacklevel=2)
    return BEstimate(value, spread, float(np.max(np.abs(vals.imag))), tuple(xs), tuple(bracket))


def xi_alpha_zero(B: float) -> float:
    """Xi_alpha(0) = exp((1/4) log(pi/2) - B)."""
    return math.exp(0.25 * math.log(math.pi / 2) - B)


def xi_alpha(seq: RiemannSequenceCandidate, z, B: float) -> complex:
    """Xi_alpha(0) prod (1 - z^2/alpha^2), with the tail as exp(int log(1 - z^2/t^2) d(t) dt)."""
    z = complex(z)
    a = seq.array
    with np.errstate(divide="ignore"):
        log_p = complex(np.sum(np.log(1 - z * z / (a * a))))
    if seq.tail is not None:
        re = seq.tail.integral(lambda t: cmath.log(1 - z * z / (t * t)).real)
        im = seq.tail.integral(lambda t: cmath.log(1 - z * z / (t * t)).imag)
        log_p += complex(re, im)
    return xi_alpha_zero(B) * cmath.exp(log_p)


def order_trend(seq: RiemannSequenceCandidate, B: float, radii, points: int = 64) -> list[tuple[float, float]]:
    """(r, log M(r) / (r log r)) with M(r) = max |Xi_alpha| on |z| = r (informative)."""
    out = []
    for r in radii:
        ang = np.linspace(0, 2 * np.pi, points, endpoint=False)
        m = max(abs(xi_alpha(seq, r * cmath.exp(1j * t), B)) for t in ang)
        out.append((float(r), math.log(m) / (r * math.log(r))))
    return out


def theta_tail_bound(seq: RiemannSequenceCandidate, x: float) -> float:
    """Bound on sum over unstored terms of |exp(-alpha^2 x)|, from the counting density."""
    tail = seq.tail or TailModel(seq.terms[-1].real)
    return tail.integral(lambda t: math.exp(-t * t * x))


def theta_sum(seq: RiemannSequenceCandidate, x: float, tol: float = 1e-12) -> complex:
    """f(x) = sum exp(-alpha_n^2 x) over the stored terms."""
    if x <= 0:
        raise DomainError("x must be positive")
    bound = theta_tail_bound(seq, x)
    if bound > tol:
        raise InsufficientDataError(f"tail bound {bound:.3e} exceeds {tol:g} at x = {x}")
    a = seq.array
    return complex(np.sum(np.exp(-a * a * x)))


def smallx_residual(seq: RiemannSequenceCandidate, x: float, N: int, tol: float = 1e-12,
                    subtract_primes: bool = False) -> float:
    """2 f(x) minus the small-x expansion through x^{(N-1)/2}.

    Of size a_{N+1} x^{N/2} / Gamma(1+N/2) as x -> 0+.  For the zeta zeros
    the terms of :func:`prime_power_term` are smaller than every power of x
    but dominate for x above about 0.01; ``subtract_primes`` removes them.
    """
    r = 2 * theta_sum(seq, x, tol).real - expansion_smallx(x, N - 1)
    if subtract_primes:
        r -= prime_power_term(x)
    return r


def _von_mangoldt(n_max: int) -> np.ndarray:
    lam = np.zeros(n_max + 1)
    sieve = np.ones(n_max + 1, bool)
    sieve[:2] = False
    for p in range(2, n_max + 1):
        if sieve[p]:
            sieve[p * p::p] = False
            q = p
            while q <= n_max:
                lam[q] = math.log(p)
                q *= p
    return lam


def prime_power_term(x: float, n_max: int | None = None) -> float:
    """-2 sum_n Lambda(n) n^{-1/2} exp(-(log n)^2 / 4x) / sqrt(4 pi x): the prime side of 2 f(x)."""
    if n_max is None:
        # exp(-(log n)^2 / 4x) < 1e-30 beyond this n
        n_max = int(min(10 ** 7, math.exp(math.sqrt(4 * x * 70)) + 2))
    lam = _von_mangoldt(n_max)
    n = np.arange(2, n_max + 1)
    ln = np.log(n)
    terms = lam[2:] / np.sqrt(n) * np.exp(-ln * ln / (4 * x))
    return float(-2 * terms.sum() / math.sqrt(4 * math.pi * x))


def laplace_residual(seq: RiemannSequenceCandidate, t, tol: float = 1e-11) -> float:
    """|int_0^inf f(x) exp(-x t^2) dx - sum 1/(t^2 + alpha^2)| over the stored terms."""
    t = complex(t)
    if t == 0 or abs(cmath.phase(t)) >= math.pi / 4:
        raise DomainError("need |arg t| < pi/4")
    a = seq.array
    w = t * t + a * a
    rhs = complex(np.sum(1 / w))
    # the integrand is a sum of exponentials; integrate on the scale of the slowest one
    scale = 1.0 / float(np.min(w.real))

    def part(g):
        v1, _ = integrate.quad(g, 0, 20 * scale, epsabs=tol * 1e-2, epsrel=1e-13, limit=400)
        v2, _ = integrate.quad(g, 20 * scale, math.inf, epsabs=tol * 1e-2, epsrel=1e-13, limit=400)
        return v1 + v2

    lhs = part(lambda x: np.sum(np.exp(-x * w)).real) + 1j * part(lambda x: np.sum(np.exp(-x * w)).imag)
    return abs(lhs - rhs)


def z_partial(seq: RiemannSequenceCandidate, s, K: int | None = None) -> tuple[complex, float]:
    """(sum_{n<=K} alpha_n^{-s}, tail bound); principal branch."""
    s = complex(s)
    if s.real <= 1:
        raise DomainError("need Re s > 1")
    K = len(seq) if K is None else K
    if not 1 <= K <= len(seq):
        raise ValueError(f"K must be in 1..{len(seq)}")
    a = seq.array[:K]
    value = complex(np.sum(np.exp(-s * np.log(a))))
    start = a[-1].real
    growth = math.exp(math.pi * abs(s.imag) / 4)
    bound = growth * TailModel(start).integral(lambda t: t ** -s.real)
    return value, bound


def z_special_value(n: int) -> Fraction:
    """Z_alpha(-2n) = (-1)^n (8 - E_{2n}) / 2^{2n+3}."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return (-1) ** n * (8 - euler_number(2 * n)) / Fraction(2 ** (2 * n + 3))


def z_special_value_from_coefficients(n: int) -> Fraction:
    """The same value assembled as (-1)^n a_{2n+1} / 2."""
    return (-1) ** n * coeff_a(2 * n + 1) / 2


def z_pole_main_part(n: int) -> Fraction:
    """Coefficient c with main part c / (pi (s + 2n - 1)) at s = 1 - 2n: (-1)^n a_{2n}."""
    if n < 1:
        raise ValueError("n must be positive")
    return (-1) ** n * coeff_a(2 * n)


def z_double_pole_residue() -> float:
    """Residue of Z_alpha at its double pole s = 1."""
    return -math.log(TWO_PI) / TWO_PI


def counting_check(seq: RiemannSequenceCandidate) -> tuple[float, bool]:
    """Smallest C with N(x) <= C x log(x+1) at every stored Re alpha, and whether the ratio stays bounded.

    The ratio is judged bounded when its maximum over the upper half of the
    data is at most twice its maximum over the lower half.
    """
    if len(seq) < 10:
        raise ValueError("need at least 10 terms")
    re = np.array(sorted(a.real for a in seq.terms))
    counts = np.searchsorted(re, re, side="right")
    ratio = counts / (re * np.log(re + 1))
    C = float(np.max(ratio))
    half = ratio.size // 2
    bounded = bool(np.isfinite(C) and np.max(ratio[half:]) <= 2 * np.max(ratio[:half]))
    return C, bounded


def reference_A() -> float:
    return constant_A()
