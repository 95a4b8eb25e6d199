"""Zero location for analytic functions on rectangles.

Zeros are counted by continuing the argument of f along the boundary, with
segments bisected until each argument step is below pi/2.  Rectangles are
quadrisected until each piece holds at most one zero, which Newton's method
then refines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import BoundaryProximityError, ConvergenceError, DepthExhaustedError, PoleError, SymmetryError

INITIAL_SPACING = 0.25
ARG_STEP = math.pi / 2
MAX_BISECTIONS = 30
NEWTON_ITERATIONS = 50
JITTER = 1e-3


@dataclass(frozen=True)
class Rectangle:
    sigma_min: float
    sigma_max: float
    t_min: float
    t_max: float

    def __post_init__(self):
        if not (self.sigma_min < self.sigma_max and self.t_min < self.t_max):
            raise ValueError(f"degenerate rectangle {self}")

    @property
    def width(self) -> float:
        return self.sigma_max - self.sigma_min

    @property
    def height(self) -> float:
        return self.t_max - self.t_min

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.sigma_min + self.sigma_max), 0.5 * (self.t_min + self.t_max))

    def contains(self, z: complex, margin: float = 0.0) -> bool:
        return (self.sigma_min - margin <= z.real <= self.sigma_max + margin
                and self.t_min - margin <= z.imag <= self.t_max + margin)

    def strictly_contains(self, z: complex) -> bool:
        return self.sigma_min < z.real < self.sigma_max and self.t_min < z.imag < self.t_max

    def expanded(self, d: float) -> "Rectangle":
        return Rectangle(self.sigma_min - d, self.sigma_max + d, self.t_min - d, self.t_max + d)

    def split(self, fx: float = 0.5, fy: float = 0.5) -> list["Rectangle"]:
        x = self.sigma_min + fx * self.width
        y = self.t_min + fy * self.height
        return [
            Rectangle(self.sigma_min, x, self.t_min, y),
            Rectangle(x, self.sigma_max, self.t_min, y),
            Rectangle(self.sigma_min, x, y, self.t_max),
            Rectangle(x, self.sigma_max, y, self.t_max),
        ]

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.sigma_min, self.sigma_max, self.t_min, self.t_max)


@dataclass(frozen=True)
class ZeroRecord:
    location: complex
    multiplicity: int
    residual: float
    isolation_radius: float
    scale: float = 1.0


class CachedFunction:
    """Vectorized wrapper that remembers values at exact sample points."""

    def __init__(self, f: Callable):
        self.f = f
        self.cache: dict[complex, complex] = {}
        self.evaluations = 0

    def __call__(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex).ravel()
        out = np.empty_like(z)
        missing = [i for i, p in enumerate(z) if p not in self.cache]
        if missing:
            pts = z[missing]
            vals = np.asarray(self.f(pts), dtype=complex).ravel()
            self.evaluations += len(missing)
            for p, v in zip(pts, vals):
                self.cache[p] = v
        for i, p in enumerate(z):
            out[i] = self.cache[p]
        return out

    def value_and_derivative(self, z: complex):
        if hasattr(self.f, "value_and_derivative"):
            return self.f.value_and_derivative(z)
        h = 1e-7 * max(1.0, abs(z))
        v = self(np.array([z - h, z + h, z]))
        return v[2], (v[1] - v[0]) / (2 * h)


def _wrap(d: np.ndarray) -> np.ndarray:
    return (d + np.pi) % (2 * np.pi) - np.pi


def _safe_eval(f: CachedFunction, z: np.ndarray) -> np.ndarray:
    try:
        vals = f(z)
    except PoleError as exc:
        raise BoundaryProximityError(f"pole on the contour: {exc}") from exc
    if not np.all(np.isfinite(vals)):
        raise BoundaryProximityError("non-finite value on the contour")
    return vals


def _track_argument(f: CachedFunction, path: Callable[[np.ndarray], np.ndarray], n0: int) -> float:
    """Total argument change of f along path(u), u in [0, 1]."""
    u = np.linspace(0.0, 1.0, n0 + 1)
    vals = _safe_eval(f, path(u))
    for _ in range(MAX_BISECTIONS + 1):
        if np.any(vals == 0):
            raise BoundaryProximityError("f vanishes on the contour")
        steps = _wrap(np.diff(np.angle(vals)))
        bad = np.abs(steps) >= ARG_STEP
        if not np.any(bad):
            return float(steps.sum())
        if _ == MAX_BISECTIONS:
            break
        mids = 0.5 * (u[:-1][bad] + u[1:][bad])
        mvals = _safe_eval(f, path(mids))
        u = np.concatenate([u, mids])
        vals = np.concatenate([vals, mvals])
        order = np.argsort(u, kind="stable")
        u, vals = u[order], vals[order]
    raise BoundaryProximityError("argument step not resolved; a zero or pole is near the contour")


def _rect_paths(rect: Rectangle):
    corners = [
        complex(rect.sigma_min, rect.t_min),
        complex(rect.sigma_max, rect.t_min),
        complex(rect.sigma_max, rect.t_max),
        complex(rect.sigma_min, rect.t_max),
    ]
    for a, b in zip(corners, corners[1:] + corners[:1]):
        yield (lambda u, a=a, b=b: a + (b - a) * u), abs(b - a)


def _winding(f: CachedFunction, rect: Rectangle, spacing: float) -> int:
    total = 0.0
    for path, length in _rect_paths(rect):
        total += _track_argument(f, path, max(2, int(math.ceil(length / spacing))))
    turns = total / (2 * math.pi)
    k = round(turns)
    if abs(turns - k) > 0.05:
        raise BoundaryProximityError(f"non-integer winding {turns:.4f}")
    return int(k)


def winding_count(f, rect: Rectangle, spacing: float = INITIAL_SPACING, jitter: bool = True) -> int:
    """Zeros minus poles of f inside rect, counted with multiplicity.

    If a zero or pole sits on the boundary and ``jitter`` is set, the count is
    taken on the rectangle shrunk by JITTER (the open interior).
    """
    cf = f if isinstance(f, CachedFunction) else CachedFunction(f)
    try:
        return _winding(cf, rect, spacing)
    except BoundaryProximityError:
        if not jitter:
            raise
        return _winding(cf, rect.expanded(-JITTER), spacing)


def circle_winding(f, center: complex, radius: float, n0: int = 32) -> int:
    cf = f if isinstance(f, CachedFunction) else CachedFunction(f)
    total = _track_argument(cf, lambda u: center + radius * np.exp(2j * np.pi * u), n0)
    return int(round(total / (2 * math.pi)))


def _poles_of(f) -> tuple[complex, ...]:
    inner = f.f if isinstance(f, CachedFunction) else f
    return tuple(getattr(inner, "poles", ()))


@dataclass
class _Search:
    f: CachedFunction
    tol: float
    max_depth: int
    spacing: float
    poles: tuple[complex, ...]
    jitters: list = field(default_factory=list)

    def zeros_in(self, rect: Rectangle) -> int:
        count = _winding(self.f, rect, min(self.spacing, 0.25 * min(rect.width, rect.height)))
        return count + sum(1 for p in self.poles if rect.strictly_contains(p))

    def split(self, rect: Rectangle):
        """Quadrisect, shifting the cut lines by JITTER steps if they pass too close to a zero."""
        for k in range(8):
            d = JITTER * k * (1 if k % 2 else -1) * ((k + 1) // 2) / max(1, k)
            fx, fy = 0.5 + d, 0.5 + d * 0.618
            children = rect.split(fx, fy)
            try:
                counts = [self.zeros_in(c) for c in children]
            except BoundaryProximityError:
                continue
            if k:
                self.jitters.append((rect.as_tuple(), fx, fy))
            return list(zip(children, counts))
        raise BoundaryProximityError(f"could not split {rect.as_tuple()} away from zeros")

    def newton(self, z0: complex, mult: int, rect: Rectangle):
        z = z0
        best = (math.inf, z0)
        prev = math.inf
        for _ in range(NEWTON_ITERATIONS):
            v, d = self.f.value_and_derivative(z)
            if abs(v) < best[0]:
                best = (abs(v), z)
            if v == 0:
                return z, 0.0
            if d == 0 or not np.isfinite(d):
                raise ConvergenceError("vanishing derivative")
            step = abs(mult * v / d)
            scale = max(1.0, abs(z))
            # stop at the noise floor: tiny step, or steps no longer shrinking
            if step <= 1e-13 * scale or (step >= prev and prev <= 1e-9 * scale):
                break
            z = z - mult * v / d
            prev = step
            if not rect.contains(z, margin=0.25 * max(rect.width, rect.height)):
                raise ConvergenceError("Newton left the rectangle")
        else:
            raise ConvergenceError("Newton did not converge in 50 iterations")
        return best[1], best[0]

    def refine(self, rect: Rectangle, mult: int) -> ZeroRecord:
        z, residual = self.newton(rect.center, mult, rect)
        if not rect.contains(z):
            raise ConvergenceError("Newton converged outside its rectangle")
        # a zero lying on a cut line is shared with the neighbouring cell
        # (even multiplicities do not even disturb the argument there)
        edge_gap = 1e-8 * max(1.0, abs(z))
        on_edge = min(z.real - rect.sigma_min, rect.sigma_max - z.real,
                      z.imag - rect.t_min, rect.t_max - z.imag) <= edge_gap
        radius = min(0.5, 0.5 * min(rect.width, rect.height))
        if on_edge:
            radius = min(0.5, 0.5 * max(rect.width, rect.height))
        for _ in range(20):
            try:
                w = circle_winding(self.f, z, radius)
            except BoundaryProximityError:
                w = None
            poles = sum(1 for p in self.poles if abs(p - z) < radius)
            if w is not None and (w + poles == mult or (on_edge and w + poles > mult)):
                mult = w + poles
                break
            radius *= 0.5
        else:
            raise ConvergenceError(f"isolation check failed at {z}")
        ring = self.f(z + radius * np.exp(2j * np.pi * np.arange(16) / 16))
        scale = max(1.0, float(np.max(np.abs(ring))))
        if residual > self.tol * scale:
            raise ConvergenceError(f"residual {residual:.3e} above tolerance at {z}")
        return ZeroRecord(complex(z), mult, float(residual), float(radius), scale)


def isolate_zeros(f, rect: Rectangle, tol: float = 1e-10, max_depth: int = 40,
                  spacing: float = INITIAL_SPACING) -> list[ZeroRecord]:
    """Every zero of f in rect, refined and certified.

    ``tol`` bounds |f| at the zero relative to max(1, max |f| on the isolation
    circle).  Declared poles (``f.poles``) are added back to the winding count.
    """
    cf = f if isinstance(f, CachedFunction) else CachedFunction(f)
    search = _Search(cf, tol, max_depth, spacing, _poles_of(f))
    try:
        top = search.zeros_in(rect)
    except BoundaryProximityError:
        rect = rect.expanded(-JITTER)
        search.jitters.append((rect.as_tuple(), None, None))
        top = search.zeros_in(rect)

    records: list[ZeroRecord] = []
    stack = [(rect, top, 0)]
    while stack:
        r, count, depth = stack.pop()
        if count <= 0:
            continue
        tiny = max(r.width, r.height) < 1e-9 * max(1.0, abs(r.center))
        if count == 1 or tiny:
            try:
                records.append(search.refine(r, count))
                continue
            except ConvergenceError:
                if tiny:
                    raise
        if depth >= max_depth:
            raise DepthExhaustedError(f"depth limit reached with {count} zeros unresolved", r.as_tuple())
        for child, c in search.split(r):
            stack.append((child, c, depth + 1))
    records.sort(key=lambda z: (z.location.imag, z.location.real))
    return _merge_shared(records)


def _merge_shared(records: list[ZeroRecord]) -> list[ZeroRecord]:
    """Drop repeated records of a zero that sat on the edge of two cells."""
    out: list[ZeroRecord] = []
    for rec in records:
        gap = 1e-8 * max(1.0, abs(rec.location))
        if any(abs(rec.location - o.location) <= gap for o in out):
            continue
        out.append(rec)
    return out


def zeros_to_sequence(zeros, tol: float = 1e-8):
    """alpha = gamma + i(1/2 - beta) for each zero with gamma > 0, repeated by multiplicity.

    Zeros with |gamma| below ``tol`` count as real zeros and are skipped.
    """
    from .sequence import RiemannSequenceCandidate

    alphas = []
    for z in zeros:
        s = z.location if isinstance(z, ZeroRecord) else complex(z)
        mult = z.multiplicity if isinstance(z, ZeroRecord) else 1
        if s.imag > tol * max(1.0, abs(s)):
            alphas.extend([complex(s.imag, 0.5 - s.real)] * mult)
    # pair each non-real term with its conjugate and symmetrize the pair
    real_terms = [complex(a.real, 0.0) for a in alphas if abs(a.imag) <= tol]
    upper = [a for a in alphas if a.imag > tol]
    lower = [a for a in alphas if a.imag < -tol]
    paired = []
    for a in upper:
        j = min(range(len(lower)), key=lambda k: abs(lower[k] - a.conjugate()), default=None)
        if j is None or abs(lower[j] - a.conjugate()) > tol * max(1.0, abs(a)):
            raise SymmetryError(f"term {a} lacks its conjugate partner")
        b = lower.pop(j)
        re, im = 0.5 * (a.real + b.real), 0.5 * (a.imag - b.imag)
        paired += [complex(re, im), complex(re, -im)]
    if lower:
        raise SymmetryError(f"term {lower[0]} lacks its conjugate partner")
    alphas = sorted(real_terms + paired, key=lambda a: (a.real, -a.imag))
    return RiemannSequenceCandidate(tuple(alphas))


# --------------------------------------------------------------------------
# ordinates of the Riemann zeta zeros on the critical line


def riemann_siegel_theta(t):
    """theta(t) = Im log Gamma(1/4 + i t/2) - (t/2) log pi."""
    from .numerics import log_gamma

    t = np.asarray(t, dtype=float)
    return log_gamma(0.25 + 0.5j * t).imag - 0.5 * t * math.log(math.pi)


def hardy_z(t):
    """Z(t) = exp(i theta(t)) zeta(1/2 + i t), evaluated by Euler-Maclaurin."""
    from .numerics import riemann_zeta

    t = np.asarray(t, dtype=float)
    return (np.exp(1j * riemann_siegel_theta(t)) * riemann_zeta(0.5 + 1j * t)).real


def hardy_z_rs(t):
    """Riemann-Siegel main sum with the first correction term (scan only)."""
    t = np.asarray(t, dtype=float)
    a = np.sqrt(t / (2 * np.pi))
    m = np.floor(a).astype(int)
    th = riemann_siegel_theta(t)
    out = np.zeros_like(t)
    for n in range(1, int(m.max()) + 1):
        act = m >= n
        out += np.where(act, 2 * np.cos(th - t * math.log(n)) / math.sqrt(n), 0.0)
    p = a - m
    c0 = np.cos(2 * np.pi * (p * p - p - 1 / 16)) / np.cos(2 * np.pi * p)
    out += (-1.0) ** (m - 1) * a ** -0.5 * c0
    return out


def zeta_ordinates(count: int, step: float = 0.01, chunk: float = 200.0) -> np.ndarray:
    """The first ``count`` positive ordinates of zeta zeros on the critical line.

    Sign changes of Z are located on a fine grid (Riemann-Siegel above
    t = 200, Euler-Maclaurin below) and refined by Illinois iteration on the
    Euler-Maclaurin value of Z.
    """
    lo_all, hi_all = [], []
    found = 0
    t0 = 10.0
    while found < count:
        grid = np.arange(t0, t0 + chunk, step)
        z = hardy_z(grid) if t0 < 200 else hardy_z_rs(grid)
        idx = np.nonzero(np.sign(z[:-1]) * np.sign(z[1:]) < 0)[0]
        lo_all.append(grid[idx])
        hi_all.append(grid[idx + 1])
        found += idx.size
        t0 = grid[-1]
    lo = np.concatenate(lo_all)[:count]
    hi = np.concatenate(hi_all)[:count]

    flo, fhi = hardy_z(lo), hardy_z(hi)
    # the scan sum is slightly off near grid points; re-bracket with the exact Z
    for i in np.nonzero(np.sign(flo) == np.sign(fhi))[0]:
        local = np.linspace(lo[i] - 5 * step, hi[i] + 5 * step, 241)
        zl = hardy_z(local)
        cross = np.nonzero(np.sign(zl[:-1]) * np.sign(zl[1:]) < 0)[0]
        if cross.size == 0:
            raise ConvergenceError(f"no sign change of Z near t = {lo[i]:.4f}")
        j = cross[np.argmin(np.abs(local[cross] - 0.5 * (lo[i] + hi[i])))]
        lo[i], hi[i], flo[i], fhi[i] = local[j], local[j + 1], zl[j], zl[j + 1]
    side = np.zeros(lo.size, int)
    for _ in range(60):
        x = hi - fhi * (hi - lo) / (fhi - flo)
        fx = hardy_z(x)
        left = np.sign(fx) == np.sign(flo)
        # Illinois: halve the stale end point value
        flo_new = np.where(left, fx, np.where(side == -1, flo * 0.5, flo))
        fhi_new = np.where(left, np.where(side == 1, fhi * 0.5, fhi), fx)
        lo = np.where(left, x, lo)
        hi = np.where(left, hi, x)
        side = np.where(left, 1, -1)
        flo, fhi = flo_new, fhi_new
        if np.max(hi - lo) < 1e-11 or np.all(fx == 0):
            break
    out = np.sort(0.5 * (lo + hi))
    if np.any(np.diff(out) < 1e-6):
        raise ConvergenceError("two brackets refined to the same zero")
    return out
