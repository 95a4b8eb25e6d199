"""Real double-double arithmetic (about 32 significant digits).

Only what the extended-precision root solves need: the four operations,
exp, log, sqrt, conversion from exact fractions, and a real-argument
Hurwitz zeta for Re s > 1.
"""

from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import total_ordering

from .exact import bernoulli_number


def _two_sum(a: float, b: float):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a: float, b: float):
    s = a + b
    return s, b - (s - a)


def _two_prod(a: float, b: float):
    p = a * b
    return p, math.fma(a, b, -p) if hasattr(math, "fma") else _dekker_err(a, b, p)


def _dekker_err(a: float, b: float, p: float) -> float:
    split = 134217729.0
    c = split * a
    ahi = c - (c - a)
    alo = a - ahi
    c = split * b
    bhi = c - (c - b)
    blo = b - bhi
    return ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo


@total_ordering
class DD:
    """A value hi + lo with |lo| <= ulp(hi)/2."""

    __slots__ = ("hi", "lo")

    def __init__(self, hi: float, lo: float = 0.0):
        self.hi, self.lo = _quick_two_sum(float(hi), float(lo))

    @classmethod
    def from_fraction(cls, x) -> "DD":
        x = Fraction(x)
        hi = float(x)
        return cls(hi, float(x - Fraction(hi)))

    def to_fraction(self) -> Fraction:
        return Fraction(self.hi) + Fraction(self.lo)

    def _coerce(self, other) -> "DD":
        if isinstance(other, DD):
            return other
        if isinstance(other, Fraction):
            return DD.from_fraction(other)
        return DD(float(other))

    def __add__(self, other):
        o = self._coerce(other)
        s, e = _two_sum(self.hi, o.hi)
        t, f = _two_sum(self.lo, o.lo)
        e += t
        s, e = _quick_two_sum(s, e)
        e += f
        return DD(*_quick_two_sum(s, e))

    __radd__ = __add__

    def __neg__(self):
        return DD(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        p, e = _two_prod(self.hi, o.hi)
        e += self.hi * o.lo + self.lo * o.hi
        return DD(*_quick_two_sum(p, e))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        q1 = self.hi / o.hi
        r = self - o * q1
        q2 = r.hi / o.hi
        r = r - o * q2
        q3 = r.hi / o.hi
        return DD(*_quick_two_sum(q1, q2)) + q3

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __abs__(self):
        return -self if self.hi < 0 or (self.hi == 0 and self.lo < 0) else self

    def __eq__(self, other):
        o = self._coerce(other)
        return self.hi == o.hi and self.lo == o.lo

    def __lt__(self, other):
        o = self._coerce(other)
        return self.hi < o.hi or (self.hi == o.hi and self.lo < o.lo)

    def __hash__(self):
        return hash((self.hi, self.lo))

    def __float__(self):
        return self.hi + self.lo

    def __repr__(self):
        return f"DD({self.hi!r}, {self.lo!r})"

    def to_string(self, digits: int = 20) -> str:
        with localcontext() as ctx:
            ctx.prec = digits
            return str(+(Decimal(self.hi) + Decimal(self.lo)))

    def ldexp(self, k: int) -> "DD":
        return DD(math.ldexp(self.hi, k), math.ldexp(self.lo, k))


LN2 = DD(0.6931471805599453, 2.3190468138462996e-17)
_INV_FACT = [DD.from_fraction(Fraction(1, math.factorial(k))) for k in range(28)]


def dd_exp(x: DD) -> DD:
    x = x if isinstance(x, DD) else DD(float(x))
    k = int(round(x.hi / LN2.hi))
    r = (x - LN2 * k).ldexp(-10)
    # Taylor on |r| < 2^-10 * ln2/2 to well below 1e-32
    term = DD(1.0)
    total = DD(1.0)
    for n in range(1, 14):
        term = term * r
        total = total + term * _INV_FACT[n]
    for _ in range(10):
        total = total * total
    return total.ldexp(k)


def dd_log(x) -> DD:
    x = x if isinstance(x, DD) else DD.from_fraction(x)
    if x.hi <= 0:
        raise ValueError("log of nonpositive value")
    y = DD(math.log(x.hi))
    for _ in range(2):
        y = y + x * dd_exp(-y) - 1.0
    return y


def dd_sqrt(x) -> DD:
    x = x if isinstance(x, DD) else DD.from_fraction(x)
    if x.hi == 0:
        return DD(0.0)
    y = DD(math.sqrt(x.hi))
    return (y + x / y) * 0.5


def dd_pow(base, exponent: DD) -> DD:
    """base ** exponent for positive base."""
    return dd_exp(exponent * dd_log(base))


_EM_DD_TERMS = 22
_EM_DD_COEF = [
    DD.from_fraction(bernoulli_number(2 * j) / math.factorial(2 * j)) for j in range(1, _EM_DD_TERMS + 1)
]


def hurwitz_zeta_dd(s: DD, a) -> DD:
    """zeta(s, a) for real s > 1 and rational a in (0, 1], in double-double."""
    s = s if isinstance(s, DD) else DD(float(s))
    if s.hi <= 1.0:
        raise ValueError("double-double Hurwitz zeta needs s > 1")
    a = Fraction(a)
    n = max(24, int(math.ceil((abs(s.hi) + 2 * _EM_DD_TERMS) / math.pi)))
    neg_s = -s
    total = DD(0.0)
    for k in range(n):
        total = total + dd_exp(neg_s * dd_log(a + k))
    x = a + n
    lx = dd_log(x)
    xs = dd_exp(neg_s * lx)
    xd = DD.from_fraction(x)
    total = total + xd * xs / (s - 1.0) + xs * 0.5
    poch = s
    xpow = xs / xd
    x2 = xd * xd
    for j in range(1, _EM_DD_TERMS + 1):
        total = total + _EM_DD_COEF[j - 1] * poch * xpow
        poch = poch * (s + (2 * j - 1)) * (s + 2 * j)
        xpow = xpow / x2
    return total
