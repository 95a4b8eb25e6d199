"""Coefficient algebra and truncated evaluators for the zero-sum expansions.

The coefficients a_n are exact rationals built from Euler and Bernoulli
numbers; the three evaluators return truncations only, never sums of the
(divergent) full series.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError
from .numerics import EULER_GAMMA, bernoulli_number, euler_number
from .numerics.gamma import log_gamma


def coeff_a(n: int) -> Fraction:
    """a_n: (8 - E_{2m}) / 2^{2m+2} for n = 2m+1, (1 - 2^{1-2m}) B_{2m} / (4m) for n = 2m."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m, odd = divmod(n, 2)
    if odd:
        return (8 - euler_number(2 * m)) / Fraction(2 ** (2 * m + 2))
    return (1 - Fraction(2, 4 ** m)) * bernoulli_number(2 * m) / (4 * m)


def log_expansion_coeff(n: int) -> Fraction:
    """Coefficient of z^-n in the log-sum expansion, i.e. -a_{n+1}/n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return -coeff_a(n + 1) / n


def bernoulli_at_5_4(n: int) -> Fraction:
    """B_n(5/4) through its closed forms in E_{2m} and B_{2m}."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    m, odd = divmod(n, 2)
    if odd:
        return Fraction(2 * m + 1, 2 ** (4 * m + 2)) * (4 - euler_number(2 * m))
    return (8 * m - (4 ** m - 2) * bernoulli_number(2 * m)) / Fraction(2 ** (4 * m))


@dataclass(frozen=True)
class ExpansionCoefficients:
    """a_1 .. a_n together with the additive constants of the log form.

    ``A`` belongs to the zeta zeros; ``B`` is the constant of a generic
    sequence and stays ``None`` until estimated.
    """

    n: int
    a: tuple[Fraction, ...] = field(init=False)
    A: float | None = None
    B: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(coeff_a(k) for k in range(1, self.n + 1)))

    def __getitem__(self, k: int) -> Fraction:
        if k < 1:
            raise IndexError("coefficients are indexed from 1")
        return self.a[k - 1]


def constant_A() -> float:
    """A = (1/4) log(pi/2) - log Xi(0), with Xi(0) = xi(1/2)."""
    from .numerics import riemann_zeta

    # xi(1/2) = (-1/8) pi^{-1/4} Gamma(1/4) zeta(1/2)
    xi_half = -0.125 * math.pi ** -0.25 * math.exp(log_gamma(0.25).real) * riemann_zeta(0.5).real
    return 0.25 * math.log(math.pi / 2) - math.log(xi_half)


def _check_right_half_plane(z) -> complex:
    z = complex(z)
    if z.real <= 0:
        raise DomainError("expansion needs Re z > 0")
    return z


def expansion_log(z, n_terms: int, constant: float) -> complex:
    """(z/2) log(z/2pi) - z/2 + (7/4) log z + constant - sum_{n<=N} a_{n+1} / (n z^n)."""
    z = _check_right_half_plane(z)
    out = 0.5 * z * cmath.log(z / (2 * math.pi)) - 0.5 * z + 1.75 * cmath.log(z) + constant
    for n in range(1, n_terms + 1):
        out += float(log_expansion_coeff(n)) / z ** n
    return out


def expansion_main(z, n_terms: int) -> complex:
    """(1/2) log(z/2pi) + sum_{n<=N} a_n / z^n."""
    z = _check_right_half_plane(z)
    out = 0.5 * cmath.log(z / (2 * math.pi))
    for n in range(1, n_terms + 1):
        out += float(coeff_a(n)) / z ** n
    return out


def derivative_of_log_terms(n_terms: int) -> list[Fraction]:
    """Coefficients of z^-(n+1), n = 1..N, in d/dz of the truncated log form.

    d/dz [-a_{n+1} / (n z^n)] = a_{n+1} / z^{n+1}; together with the derivative
    of (7/4) log z these reproduce a_1 .. a_{N+1} of the main expansion.
    """
    return [-n * log_expansion_coeff(n) for n in range(1, n_terms + 1)]


def smallx_log_term(x: float) -> float:
    """(1/(4 sqrt(pi x))) log(e^{-C0} / (16 pi^2 x))."""
    if x <= 0:
        raise DomainError("small-x expansion needs x > 0")
    return math.log(math.exp(-EULER_GAMMA) / (16 * math.pi ** 2 * x)) / (4 * math.sqrt(math.pi * x))


def smallx_coefficient(n: int) -> float:
    """a_{n+1} / Gamma(1 + n/2), the coefficient of x^{n/2}."""
    return float(coeff_a(n + 1)) / math.gamma(1 + n / 2)


def expansion_smallx(x: float, n_terms: int) -> float:
    """Log term plus sum_{n=0}^{N} a_{n+1} / Gamma(1+n/2) x^{n/2}.

    ``n_terms = -1`` keeps only the logarithmic term.
    """
    out = smallx_log_term(x)
    for n in range(0, n_terms + 1):
        out += smallx_coefficient(n) * x ** (n / 2)
    return out
