"""Zeta-like functions built from self-dual periodic combs.

A comb is a finite sum of arithmetic-progression families
``c * sum_k delta_{offset + period * k}``.  Its Dirichlet function
``F(s) = sum_{lambda > 0} c_lambda lambda^{-s}`` is a finite combination of
Hurwitz zeta functions, one term ``c * period^{-s} * zeta(s, offset/period)``
per family.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable

import numpy as np

from .crystal import CrystallineMeasure
from .errors import ConsistencyError, DomainError, NoRootError, PoleError
from .numerics import digamma, hurwitz_zeta, log_gamma
from .numerics.ddouble import DD, dd_exp, dd_log, dd_sqrt, hurwitz_zeta_dd

LOG_PI = math.log(math.pi)
LOG2 = math.log(2.0)
LOG_2PI = math.log(2.0 * math.pi)
SNAP_TOL = 1e-10


# --------------------------------------------------------------------------
# exact arithmetic in Q(sqrt 3)


@dataclass(frozen=True)
class Surd:
    """p + q*sqrt(3) with rational p, q."""

    p: Fraction = Fraction(0)
    q: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))

    @staticmethod
    def of(x) -> "Surd":
        return x if isinstance(x, Surd) else Surd(Fraction(x))

    def __add__(self, o):
        o = Surd.of(o)
        return Surd(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.p, -self.q)

    def __sub__(self, o):
        return self + (-Surd.of(o))

    def __rsub__(self, o):
        return Surd.of(o) - self

    def __mul__(self, o):
        o = Surd.of(o)
        return Surd(self.p * o.p + 3 * self.q * o.q, self.p * o.q + self.q * o.p)

    __rmul__ = __mul__

    def inverse(self) -> "Surd":
        norm = self.p * self.p - 3 * self.q * self.q
        if norm == 0:
            raise ZeroDivisionError("zero surd")
        return Surd(self.p / norm, -self.q / norm)

    def __truediv__(self, o):
        return self * Surd.of(o).inverse()

    def __rtruediv__(self, o):
        return Surd.of(o) * self.inverse()

    def __bool__(self):
        return bool(self.p) or bool(self.q)

    def __float__(self):
        return float(self.p) + float(self.q) * math.sqrt(3.0)

    def to_dd(self) -> DD:
        return DD.from_fraction(self.p) + DD.from_fraction(self.q) * dd_sqrt(3)

    def __str__(self):
        if not self.q:
            return str(self.p)
        if not self.p:
            return f"{self.q}*sqrt(3)"
        sign = "+" if self.q > 0 else "-"
        return f"{self.p}{sign}{abs(self.q)}*sqrt(3)"

    @classmethod
    def parse(cls, text: str) -> "Surd":
        """Inverse of ``str``: "p", "q*sqrt(3)" or "p+q*sqrt(3)"."""
        m = re.fullmatch(r"\s*(-?\d+(?:/\d+)?)?\s*(?:([+-]?)\s*(\d+(?:/\d+)?)\*sqrt\(3\))?\s*", text)
        if m is None or not (m.group(1) or m.group(3)):
            raise ValueError(f"not an element of Q(sqrt 3): {text!r}")
        p = Fraction(m.group(1)) if m.group(1) else Fraction(0)
        q = Fraction(m.group(3)) if m.group(3) else Fraction(0)
        return cls(p, -q if m.group(2) == "-" else q)


SQRT3 = Surd(0, 1)

# cos(2 pi k / 12) in Q(sqrt 3)
_COS_TWELFTHS = [
    Surd(1), Surd(0, Fraction(1, 2)), Surd(Fraction(1, 2)), Surd(0),
    Surd(Fraction(-1, 2)), Surd(0, Fraction(-1, 2)), Surd(-1), Surd(0, Fraction(-1, 2)),
    Surd(Fraction(-1, 2)), Surd(0), Surd(Fraction(1, 2)), Surd(0, Fraction(1, 2)),
]


def cos_turns(x: Fraction) -> Surd:
    """cos(2 pi x) for x a multiple of 1/12."""
    k = Fraction(x) * 12
    if k.denominator != 1:
        raise ValueError(f"cos(2 pi * {x}) is not in Q(sqrt 3) table")
    return _COS_TWELFTHS[int(k) % 12]


# --------------------------------------------------------------------------
# periodic combs


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(math.gcd(a.numerator * b.denominator, b.numerator * a.denominator), a.denominator * b.denominator)


def _frac_lcm(a: Fraction, b: Fraction) -> Fraction:
    return a * b / _frac_gcd(a, b)


@dataclass(frozen=True)
class Family:
    """coef * sum_{k in Z} delta_{offset + period k}, with 0 <= offset < period."""

    coef: float
    period: Fraction
    offset: Fraction
    exact: Surd | None = None

    def __post_init__(self):
        period = Fraction(self.period)
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "offset", Fraction(self.offset) % period)


@dataclass(frozen=True)
class CombMeasure:
    """A finite sum of families; families sharing (period, offset) are merged."""

    families: tuple[Family, ...]

    @classmethod
    def build(cls, families) -> "CombMeasure":
        merged: dict[tuple[Fraction, Fraction], list] = {}
        for fam in families:
            key = (fam.period, fam.offset)
            if key in merged:
                slot = merged[key]
                slot[0] += fam.coef
                slot[1] = None if slot[1] is None or fam.exact is None else slot[1] + fam.exact
            else:
                merged[key] = [fam.coef, fam.exact]
        out = []
        for (period, offset), (coef, exact) in sorted(merged.items()):
            if exact is not None:
                if not exact:
                    continue
                coef = float(exact)
            elif coef == 0.0:
                continue
            out.append(Family(coef, period, offset, exact))
        return cls(tuple(out))

    def scaled(self, factor) -> "CombMeasure":
        exact_factor = factor if isinstance(factor, Surd) else None
        ff = float(factor)
        return CombMeasure.build(
            Family(f.coef * ff, f.period, f.offset, f.exact * exact_factor if f.exact is not None and exact_factor is not None else None)
            for f in self.families
        )

    def __add__(self, other: "CombMeasure") -> "CombMeasure":
        return CombMeasure.build(self.families + other.families)

    def mass(self, x) -> float:
        x = Fraction(x)
        return sum(f.coef for f in self.families if (x - f.offset) % f.period == 0)

    def exact_mass(self, x) -> Surd | None:
        x = Fraction(x)
        total = Surd()
        for f in self.families:
            if (x - f.offset) % f.period == 0:
                if f.exact is None:
                    return None
                total = total + f.exact
        return total

    def lattice(self) -> tuple[Fraction, Fraction]:
        """(spacing, period) of a lattice carrying every atom."""
        spacing = reduce(_frac_gcd, [f.period for f in self.families] + [f.offset for f in self.families if f.offset])
        period = reduce(_frac_lcm, [f.period for f in self.families])
        return spacing, period

    def density(self) -> float:
        """Mean mass per unit length, sum coef/period (the residue at s=1)."""
        return sum(f.coef / float(f.period) for f in self.families)

    def fourier(self) -> list[tuple[complex, Fraction, Fraction]]:
        """Transform as complex families (coef, period, offset).

        sum_k delta_{o + p k}  ->  (1/p) sum_m exp(-2 pi i o m / p) delta_{m/p}
        """
        out = []
        for f in self.families:
            ratio = f.offset / f.period
            v = ratio.denominator
            for j in range(v):
                phase = -2 * math.pi * float(ratio * j % 1)
                coef = f.coef / float(f.period) * complex(math.cos(phase), math.sin(phase))
                out.append((coef, Fraction(v) / f.period, Fraction(j) / f.period))
        return out

    def self_duality_defect(self) -> float:
        """max |mass(mu^) - mass(mu)| over one period of a common lattice."""
        transformed = self.fourier()
        spacing, period = self.lattice()
        t_spacing = reduce(_frac_gcd, [p for _, p, _ in transformed] + [o for _, _, o in transformed if o])
        t_period = reduce(_frac_lcm, [p for _, p, _ in transformed])
        step = _frac_gcd(spacing, t_spacing)
        span = _frac_lcm(period, t_period)
        worst = 0.0
        for k in range(int(span / step)):
            x = k * step
            m_t = sum(c for c, p, o in transformed if (x - o) % p == 0)
            worst = max(worst, abs(m_t - self.mass(x)))
        return worst

    def is_symmetric(self) -> bool:
        spacing, period = self.lattice()
        return all(
            abs(self.mass(k * spacing) - self.mass(-k * spacing)) <= 1e-14 for k in range(int(period / spacing))
        )


# --------------------------------------------------------------------------
# Hurwitz combinations and the function object


@dataclass(frozen=True)
class HurwitzTerm:
    weight: float
    base: Fraction
    shift: Fraction
    exact: Surd | None = None

    @property
    def first_frequency(self) -> Fraction:
        return self.base * self.shift


@dataclass(frozen=True)
class HurwitzCombination:
    """F(s) = sum_j w_j b_j^{-s} zeta(s, a_j); pole at 1 with residue sum w_j / b_j."""

    terms: tuple[HurwitzTerm, ...]
    self_dual: bool = False

    def __post_init__(self):
        for t in self.terms:
            if not 0 < t.shift <= 1:
                raise DomainError(f"shift {t.shift} outside (0, 1]")
            if t.base <= 0:
                raise DomainError(f"base {t.base} must be positive")

    @property
    def residue(self) -> float:
        return sum(t.weight / float(t.base) for t in self.terms)

    def scaled(self, factor: float) -> "HurwitzCombination":
        return HurwitzCombination(
            tuple(HurwitzTerm(t.weight * factor, t.base, t.shift, None) for t in self.terms), self.self_dual
        )

    def __add__(self, other: "HurwitzCombination") -> "HurwitzCombination":
        return HurwitzCombination(self.terms + other.terms, self.self_dual and other.self_dual)

    def evaluate(self, s: np.ndarray, derivative: bool = False):
        """Direct term-by-term evaluation on a 1-D complex array."""
        value = np.zeros_like(s)
        deriv = np.zeros_like(s) if derivative else None
        by_shift: dict[Fraction, list[HurwitzTerm]] = {}
        for t in self.terms:
            by_shift.setdefault(t.shift, []).append(t)
        for shift, group in by_shift.items():
            if derivative:
                z, dz = hurwitz_zeta(s, shift, derivative=True)
            else:
                z = hurwitz_zeta(s, shift)
            for t in group:
                lb = math.log(t.base)
                bs = t.weight * np.exp(-s * lb)
                value += bs * z
                if derivative:
                    deriv += bs * (dz - lb * z)
        return value, deriv


def combination_from_comb(comb: CombMeasure, self_dual: bool = True) -> HurwitzCombination:
    """One Hurwitz term per family: positive atoms offset + period*k."""
    terms = []
    for f in comb.families:
        shift = f.offset / f.period if f.offset else Fraction(1)
        terms.append(HurwitzTerm(f.coef, f.period, shift, f.exact))
    return HurwitzCombination(tuple(terms), self_dual)


def comb_from_measure(m: CrystallineMeasure) -> CombMeasure:
    """The N^2 residue classes of a crystalline measure as families of period N."""
    n = m.n
    return CombMeasure.build(
        Family(float(c), Fraction(n), Fraction(r, n)) for r, c in enumerate(m.coefficients) if c != 0.0
    )


def combination_from_measure(m: CrystallineMeasure) -> HurwitzCombination:
    """g_N(s) = N^{-s} sum_{r=1}^{N^2} c_r zeta(s, r/N^2).

    r runs over the full period; r = N^2 (shift 1) carries c_0 and the pole.
    """
    n = m.n
    terms = []
    for r in range(1, m.period + 1):
        c = m.coefficient(r)
        if c != 0.0:
            terms.append(HurwitzTerm(c, Fraction(n), Fraction(r, m.period)))
    return HurwitzCombination(tuple(terms), self_dual=True)


def _sin_turns(x: Fraction) -> Surd:
    return cos_turns(Fraction(1, 4) - x)


def reflected_combinations(comb: CombMeasure) -> tuple[HurwitzCombination, HurwitzCombination]:
    """Cosine and sine parts of the transformed comb, merged on a common period.

    A family (c, p, o) with o/p = u/v reflects to the families
    (c/p * cos(2 pi r u/v), v/p, r/p) and the same with sin, r = 1..v.
    Merging on one period makes cancellations between families explicit;
    coefficients are exact in Q(sqrt 3) when the phases allow it and are
    otherwise snapped to zero below SNAP_TOL relative to the largest one.
    """
    parts = ([], [])
    for f in comb.families:
        ratio = f.offset / f.period if f.offset else Fraction(1)
        u, v = ratio.numerator, ratio.denominator
        exact_ok = f.exact is not None and 12 % v == 0
        for r in range(1, v + 1):
            turn = Fraction(r * u, v) % 1
            per, off = Fraction(v) / f.period, Fraction(r) / f.period
            for which, trig, ftrig in ((0, cos_turns, math.cos), (1, _sin_turns, math.sin)):
                fl = f.coef / float(f.period) * ftrig(2 * math.pi * float(turn))
                ex = f.exact / f.period * trig(turn) if exact_ok else None
                parts[which].append((fl, ex, per, off))

    out = []
    for fams in parts:
        if not fams:
            out.append(HurwitzCombination((), True))
            continue
        period = reduce(_frac_lcm, [per for _, _, per, _ in fams])
        acc: dict[Fraction, list] = {}
        for fl, ex, per, off in fams:
            for j in range(int(period / per)):
                key = (off + j * per) % period
                slot = acc.setdefault(key, [0.0, Surd(), True])
                slot[0] += fl
                if ex is None:
                    slot[2] = False
                else:
                    slot[1] = slot[1] + ex
        scale = max(abs(fl) for fl, *_ in fams)
        terms = []
        for key in sorted(acc):
            fl, ex, is_exact = acc[key]
            if is_exact:
                if not ex:
                    continue
                fl = float(ex)
            elif abs(fl) <= SNAP_TOL * scale:
                continue
            shift = key / period if key else Fraction(1)
            terms.append(HurwitzTerm(fl, period, shift))
        out.append(HurwitzCombination(tuple(terms), True))
    return out[0], out[1]


class ZetaLike:
    """A zeta-like function: ``riemann``, ``combination`` or ``zeta_N``.

    Calling the object evaluates it on scalars or arrays.  For self-dual
    variants points with Re s < 0 are evaluated through
    F(s) = pi^{s-1/2} Gamma((1-s)/2) / Gamma(s/2) F(1-s).
    """

    def __init__(self, kind: str, combination: HurwitzCombination, *, measure=None, delta: float = 0.0,
                 comb: CombMeasure | None = None, label: str = ""):
        if kind not in ("riemann", "combination", "zeta_N"):
            raise ValueError(f"unknown variant {kind!r}")
        self.kind = kind
        self.combination = combination
        self.measure = measure
        self.delta = delta
        self.comb = comb
        self.label = label or kind
        self._dual = None

    def __repr__(self):
        return f"ZetaLike({self.label!r}, {len(self.combination.terms)} terms)"

    @property
    def self_dual(self) -> bool:
        return self.combination.self_dual

    @property
    def residue(self) -> float:
        return self.combination.residue

    @property
    def poles(self) -> tuple[complex, ...]:
        return (1.0 + 0j,) if abs(self.residue) > 1e-14 else ()

    def _evaluate(self, s, derivative: bool, strategy: str):
        arr = np.asarray(s, dtype=complex)
        scalar = arr.ndim == 0
        flat = np.atleast_1d(arr).ravel()
        if np.any(flat == 1.0):
            raise PoleError("pole at s = 1")
        value = np.zeros_like(flat)
        deriv = np.zeros_like(flat) if derivative else None

        if strategy not in ("auto", "direct"):
            raise ValueError(f"unknown strategy {strategy!r}")
        left = flat.real < 0
        direct = ~left
        if np.any(left) and strategy == "auto" and self.self_dual:
            trivial = left & (flat.imag == 0) & (flat.real == np.round(flat.real)) & (np.round(flat.real) % 2 == 0)
            if np.any(trivial):
                # F(-2n) = 0 exactly: 1/Gamma(s/2) vanishes there
                value[trivial] = 0.0
                if derivative:
                    deriv[trivial] = self._trivial_zero_derivative(flat[trivial])
            reflect = left & ~trivial
            if np.any(reflect):
                v, d = self._global_reflection(flat[reflect], derivative)
                value[reflect] = v
                if derivative:
                    deriv[reflect] = d
        elif np.any(left):
            if self.comb is not None:
                v, d = self._dual_route(flat[left], derivative)
            else:
                v, d = self.combination.evaluate(flat[left], derivative)
            value[left] = v
            if derivative:
                deriv[left] = d
        if np.any(direct):
            v, d = self.combination.evaluate(flat[direct], derivative)
            value[direct] = v
            if derivative:
                deriv[direct] = d

        shape = np.shape(arr)
        if scalar:
            return (value[0], deriv[0]) if derivative else value[0]
        value = value.reshape(shape)
        return (value, deriv.reshape(shape)) if derivative else value

    def _global_reflection(self, s, derivative: bool):
        """F(s) = pi^{s-1/2} Gamma((1-s)/2) / Gamma(s/2) F(1-s)."""
        w = 1.0 - s
        v, d = self.combination.evaluate(w, derivative)
        chi = np.exp((s - 0.5) * LOG_PI + log_gamma(w / 2) - log_gamma(s / 2))
        if not derivative:
            return chi * v, None
        dlog_chi = LOG_PI - 0.5 * digamma(w / 2) - 0.5 * digamma(s / 2)
        return chi * v, chi * (dlog_chi * v - d)

    def _dual_route(self, s, derivative: bool):
        """Hurwitz formula applied to the whole comb, with exact cancellation.

        F(1-w) = 2 Gamma(w) (2 pi)^{-w} [cos(pi w/2) D_c(w) + sin(pi w/2) D_s(w)]
        where D_c, D_s are Dirichlet functions of the transformed comb.
        """
        if self._dual is None:
            self._dual = reflected_combinations(self.comb)
        dc, ds = self._dual
        w = 1.0 - s
        vc, dvc = dc.evaluate(w, derivative)
        vs, dvs = ds.evaluate(w, derivative)
        pref = np.exp(LOG2 + log_gamma(w) - w * LOG_2PI)
        cw, sw = np.cos(0.5 * math.pi * w), np.sin(0.5 * math.pi * w)
        inner = cw * vc + sw * vs
        if not derivative:
            return pref * inner, None
        d_inner = 0.5 * math.pi * (-sw * vc + cw * vs) + cw * dvc + sw * dvs
        dg = pref * ((digamma(w) - LOG_2PI) * inner + d_inner)
        return pref * inner, -dg

    def _trivial_zero_derivative(self, s):
        # near s = -2n: 1/Gamma(s/2) ~ (-1)^n n! (s+2n)/2
        out = np.empty_like(s)
        for i, x in enumerate(s):
            n = int(round(-x.real)) // 2
            w = 1.0 - x
            g = math.exp(log_gamma(w / 2).real)
            fv, _ = self.combination.evaluate(np.array([w]), False)
            out[i] = math.pi ** (x.real - 0.5) * g * (-1) ** n * math.factorial(n) / 2 * fv[0]
        return out

    def __call__(self, s, strategy: str = "auto"):
        return self._evaluate(s, False, strategy)

    def value_and_derivative(self, s, strategy: str = "auto"):
        return self._evaluate(s, True, strategy)


def riemann() -> ZetaLike:
    return ZetaLike(
        "riemann",
        HurwitzCombination((HurwitzTerm(1.0, Fraction(1), Fraction(1), Surd(1)),), self_dual=True),
        comb=CombMeasure.build([Family(1.0, Fraction(1), Fraction(0), Surd(1))]),
        label="riemann",
    )


def build_g_N(measure: CrystallineMeasure) -> ZetaLike:
    return ZetaLike(
        "combination", combination_from_measure(measure), measure=measure, comb=comb_from_measure(measure),
        label=f"g_{measure.n}",
    )


def build_zeta_N(measure: CrystallineMeasure, delta: float) -> ZetaLike:
    """zeta(s) + delta * g_N(s)."""
    combo = riemann().combination + combination_from_measure(measure).scaled(delta)
    comb = riemann().comb + comb_from_measure(measure).scaled(delta)
    return ZetaLike("zeta_N", combo, measure=measure, delta=delta, comb=comb, label=f"zeta_{measure.n}")


def eval(f: ZetaLike, s, strategy: str = "auto"):  # noqa: A001 - public name
    """Evaluate a zeta-like function (see :class:`ZetaLike`)."""
    return f(s, strategy)


# --------------------------------------------------------------------------
# the concrete example built from a trigonometric polynomial


@dataclass(frozen=True)
class CosineTerm:
    """amplitude * cos(2 pi frequency x)."""

    amplitude: Surd
    frequency: Fraction


ZETA_M_POLYNOMIAL = (
    CosineTerm(1 - SQRT3, Fraction(1)),
    CosineTerm(Surd(2), Fraction(5, 4)),
    CosineTerm(-(1 + SQRT3), Fraction(3, 2)),
    CosineTerm(Surd(2), Fraction(7, 4)),
    CosineTerm(1 - SQRT3, Fraction(2)),
)
ZETA_M_SAMPLING = Fraction(1, 3)

# weight, base, shift as displayed for the normalized example
ZETA_M_DISPLAY = (
    (-(1 + SQRT3) / 2, 4, Fraction(1, 4)),
    (-(1 + SQRT3) / 2, 4, Fraction(3, 4)),
    ((6 + 4 * SQRT3) / 3, 4, Fraction(1, 3)),
    ((6 + 4 * SQRT3) / 3, 4, Fraction(2, 3)),
    (-2 * (2 + SQRT3), 4, Fraction(5, 12)),
    (-2 * (2 + SQRT3), 4, Fraction(7, 12)),
    ((9 + 5 * SQRT3) / 2, 4, Fraction(1, 2)),
    ((3 - SQRT3) / 6, 4, Fraction(1)),
    ((3 + SQRT3) / 2, 3, Fraction(1, 3)),
    ((3 + SQRT3) / 2, 3, Fraction(2, 3)),
    (-(3 + 2 * SQRT3), 3, Fraction(5, 12)),
    (-(3 + 2 * SQRT3), 3, Fraction(7, 12)),
    ((9 + 5 * SQRT3) / 2, 3, Fraction(1, 2)),
)


def _poly_value(poly, x: Fraction) -> Surd:
    return sum((term.amplitude * cos_turns(term.frequency * x) for term in poly), Surd())


def _poly_period(poly) -> Fraction:
    return reduce(_frac_lcm, [1 / t.frequency for t in poly])


def sampled_comb(poly, h: Fraction) -> CombMeasure:
    """mu = P * (h sum_n delta_{n h}) as families of the period of P."""
    period = _poly_period(poly)
    count = period / h
    if count.denominator != 1:
        raise ValueError("sampling step must divide the period")
    return CombMeasure.build(
        Family(float(c), period, r * h, c)
        for r in range(int(count))
        for c in [_poly_value(poly, r * h) * h]
        if c
    )


def sampled_comb_transform(poly, h: Fraction) -> CombMeasure:
    """nu = P^ * sum_n delta_{n/h}; each cosine splits into two half-amplitude combs."""
    period = 1 / h
    fams = []
    for term in poly:
        half = term.amplitude / 2
        fams.append(Family(float(half), period, term.frequency, half))
        fams.append(Family(float(half), period, -term.frequency, half))
    return CombMeasure.build(fams)


def build_zeta_M() -> ZetaLike:
    """The normalized zeta function of mu + nu, mu = P sigma, nu = mu^."""
    mu = sampled_comb(ZETA_M_POLYNOMIAL, ZETA_M_SAMPLING)
    nu = sampled_comb_transform(ZETA_M_POLYNOMIAL, ZETA_M_SAMPLING)
    total = mu + nu
    unit = total.exact_mass(1)
    comb = total.scaled(unit.inverse())
    combo = combination_from_comb(comb)

    expected = {(Fraction(b), a): w for w, b, a in ZETA_M_DISPLAY}
    got = {(t.base, t.shift): t.exact for t in combo.terms}
    if set(got) != set(expected):
        raise ConsistencyError(f"generated terms {sorted(got)} differ from the 13-term display")
    for key, w in expected.items():
        if abs(float(got[key] - w)) > 1e-12:
            raise ConsistencyError(f"weight mismatch at base {key[0]}, shift {key[1]}: {got[key]} vs {w}")
    return ZetaLike("combination", combo, comb=comb, label="zeta_M")


# --------------------------------------------------------------------------
# Dirichlet heads, residues, completed functions


@dataclass(frozen=True)
class DirichletSeries:
    """Ascending (frequency, coefficient, exact coefficient or None) entries."""

    entries: tuple[tuple[Fraction, float, Surd | None], ...]

    def coefficient(self, lam) -> float:
        lam = Fraction(lam)
        for f, c, _ in self.entries:
            if f == lam:
                return c
        return 0.0

    def __call__(self, s) -> complex:
        return sum(c * complex(float(f)) ** (-complex(s)) for f, c, _ in self.entries)

    @property
    def frequencies(self) -> list[Fraction]:
        return [f for f, _, _ in self.entries]


def dirichlet_head(f: ZetaLike, limit) -> DirichletSeries:
    """All (lambda, c_lambda) with lambda <= limit, summed over overlapping families."""
    limit = Fraction(limit)
    acc: dict[Fraction, list] = {}
    for t in f.combination.terms:
        k = 0
        while True:
            lam = t.base * (k + t.shift)
            if lam > limit:
                break
            slot = acc.setdefault(lam, [0.0, Surd()])
            slot[0] += t.weight
            slot[1] = None if slot[1] is None or t.exact is None else slot[1] + t.exact
            k += 1
    entries = []
    for lam in sorted(acc):
        c, exact = acc[lam]
        if exact is not None:
            if not exact:
                continue
            c = float(exact)
        elif abs(c) < 1e-15:
            continue
        entries.append((lam, c, exact))
    return DirichletSeries(tuple(entries))


def residue_at_1(f: ZetaLike, tol: float = 1e-8) -> float:
    """Residue from the pole descriptor, cross-checked by (s-1) F(s) as s -> 1+."""
    descriptor = f.residue
    hs = [10.0 ** -k for k in range(2, 6)]
    table = [[h * f(1.0 + h).real for h in hs]]
    while len(table[-1]) > 1:
        prev = table[-1]
        p = len(table)
        table.append([(10 ** p * prev[i + 1] - prev[i]) / (10 ** p - 1) for i in range(len(prev) - 1)])
    numeric = table[-1][0]
    if abs(numeric - descriptor) > tol:
        raise ConsistencyError(f"residue descriptor {descriptor} vs numeric limit {numeric}")
    return descriptor


def completed_log_factor(s):
    """log(pi^{-s/2} Gamma(s/2))."""
    s = np.asarray(s, dtype=complex)
    return -0.5 * s * LOG_PI + log_gamma(s / 2)


def xi_eval(f: ZetaLike, s, strategy: str = "direct"):
    """xi(s) = s (s-1)/2 * pi^{-s/2} Gamma(s/2) F(s); entire."""
    arr = np.asarray(s, dtype=complex)
    scalar = arr.ndim == 0
    flat = np.atleast_1d(arr).ravel().copy()
    out = np.empty_like(flat)
    special = (flat == 1.0) | (flat == 0.0)
    out[special] = 0.5 * f.residue
    # at s = -2n the Gamma pole cancels the trivial zero; use xi(s) = xi(1-s)
    neg_even = (flat.imag == 0) & (flat.real < 0) & (flat.real == np.round(flat.real)) & (np.round(flat.real) % 2 == 0)
    work = np.where(neg_even, 1.0 - flat, flat)
    rest = ~special
    if np.any(rest):
        w = work[rest]
        out[rest] = 0.5 * w * (w - 1.0) * np.exp(completed_log_factor(w)) * f(w, strategy)
    if scalar:
        return out[0]
    return out.reshape(arr.shape)


def Xi_eval(f: ZetaLike, t, strategy: str = "direct"):
    """Xi(t) = xi(1/2 + i t)."""
    return xi_eval(f, 0.5 + 1j * np.asarray(t, dtype=complex), strategy)


def functional_equation_residual(f: ZetaLike, s, strategy: str = "direct"):
    """|L(s) - L(1-s)| / max(|L(s)|, |L(1-s)|) with L = pi^{-s/2} Gamma(s/2) F."""
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    left = np.exp(completed_log_factor(s)) * f(s, strategy)
    right = np.exp(completed_log_factor(1 - s)) * f(1 - s, strategy)
    scale = np.maximum(np.abs(left), np.abs(right))
    return np.abs(left - right) / np.where(scale > 0, scale, 1.0)


# --------------------------------------------------------------------------
# zero-free abscissa


def _majorant_terms(f: ZetaLike):
    terms = []
    constant = 0.0
    for t in f.combination.terms:
        if t.first_frequency < 1:
            raise DomainError(f"term with first frequency {t.first_frequency} < 1")
        hits = t.first_frequency == 1
        if hits:
            constant += t.weight
        terms.append((abs(t.weight), t, hits))
    return terms, abs(constant)


def majorant(f: ZetaLike, sigma: float) -> float:
    """sum_j |w_j| (b_j^{-sigma} zeta(sigma, a_j) - [b_j a_j = 1])."""
    terms, _ = _majorant_terms(f)
    total = 0.0
    cache: dict[Fraction, float] = {}
    for aw, t, hits in terms:
        if t.shift not in cache:
            cache[t.shift] = hurwitz_zeta(sigma, t.shift).real
        v = float(t.base) ** -sigma * cache[t.shift]
        total += aw * ((v - 1.0) if hits else v)
    return total


def _majorant_dd(f: ZetaLike, sigma: DD) -> DD:
    terms, _ = _majorant_terms(f)
    total = DD(0.0)
    cache: dict[Fraction, DD] = {}
    for aw, t, hits in terms:
        if t.shift not in cache:
            cache[t.shift] = hurwitz_zeta_dd(sigma, t.shift)
        weight = abs(t.exact.to_dd()) if t.exact is not None else DD(aw)
        v = dd_exp(-sigma * dd_log(t.base)) * cache[t.shift]
        total = total + weight * ((v - 1.0) if hits else v)
    return total


def sigma0(f: ZetaLike, tol: float = 1e-13, precision: str = "double", bracket=None):
    """Root of majorant(sigma) = |constant Dirichlet coefficient| by bisection.

    Returns a float in double mode and a :class:`DD` in extended mode.
    """
    terms, target = _majorant_terms(f)
    if target == 0.0:
        raise NoRootError("no constant Dirichlet coefficient: the majorant has no positive target")
    if bracket is None:
        lo, hi = 1.0 + 1e-6, 2.0
        while majorant(f, hi) > target and hi < 1e4:
            lo, hi = hi, 2 * hi
    else:
        lo, hi = map(float, bracket)
    g_lo = majorant(f, lo) - target
    g_hi = majorant(f, hi) - target
    if not (math.isfinite(g_lo) and math.isfinite(g_hi)) or g_lo <= 0 or g_hi > 0:
        raise NoRootError(f"majorant - {target:g} does not change sign on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if majorant(f, mid) > target:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    if precision == "double":
        return root
    if precision != "extended":
        raise ValueError(f"unknown precision {precision!r}")

    exact_target = sum((t.exact for _, t, hits in terms if hits and t.exact is not None), Surd())
    target_dd = abs(exact_target.to_dd()) if exact_target else DD(target)
    lo_dd, hi_dd = DD(root - 1e-11), DD(root + 1e-11)
    if not (_majorant_dd(f, lo_dd) > target_dd and _majorant_dd(f, hi_dd) <= target_dd):
        raise NoRootError("extended-precision bracket lost the root")
    while float(hi_dd - lo_dd) > 1e-27:
        mid = (lo_dd + hi_dd) * 0.5
        if _majorant_dd(f, mid) > target_dd:
            lo_dd = mid
        else:
            hi_dd = mid
    return (lo_dd + hi_dd) * 0.5


# --------------------------------------------------------------------------
# perturbation size for zeta + delta g_N


@dataclass(frozen=True)
class Delta0Report:
    delta0: float
    criterion_i: float
    criterion_ii: float
    m_hat: float
    M_hat: float
    safety: float
    binding: str


def _times_s_minus_1(f: ZetaLike, s: np.ndarray) -> np.ndarray:
    out = np.empty_like(s)
    at_pole = s == 1.0
    out[at_pole] = f.residue
    out[~at_pole] = (s[~at_pole] - 1.0) * f(s[~at_pole])
    return out


def delta0_details(m: CrystallineMeasure, grid: int = 101, safety: float = 0.5) -> Delta0Report:
    """Both criteria for zeta + delta g_N to stay zero-free off the strip."""
    from .numerics import riemann_zeta

    n = m.n
    tail = 0.0
    for r in range(1, m.period + 1):
        c = m.coefficient(r)
        if c:
            tail += abs(c) * n ** -2 * hurwitz_zeta(2.0, Fraction(r, m.period)).real
    margin = 2.0 - riemann_zeta(2.0).real
    crit_i = margin / tail if tail > 0 else math.inf

    sig = np.linspace(0.5, 2.0, grid)
    ts = np.linspace(-1.5, 1.5, grid)
    pts = (sig[None, :] + 1j * ts[:, None]).ravel()
    m_hat = float(np.min(np.abs(_times_s_minus_1(riemann(), pts))))
    M_hat = float(np.max(np.abs(_times_s_minus_1(build_g_N(m), pts))))
    crit_ii = m_hat / (2 * M_hat) if M_hat > 0 else math.inf
    delta0 = safety * min(crit_i, crit_ii)
    return Delta0Report(delta0, crit_i, crit_ii, m_hat, M_hat, safety, "i" if crit_i <= crit_ii else "ii")


def delta0_bound(m: CrystallineMeasure) -> float:
    return delta0_details(m).delta0
