"""Finite Fourier transform on Z/MZ and periodic self-dual combs on (1/N)Z."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, DegeneracyError, DimensionError, RankError

KERNEL_TOL = 1e-10
SELF_DUAL_TOL = 1e-10
ANGLE_TOL = 1e-6


@dataclass(frozen=True)
class CyclicFunction:
    """A function on Z/MZ stored by residues 0..M-1."""

    modulus: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex).copy()
        if values.shape != (self.modulus,):
            raise ValueError(f"expected {self.modulus} values, got shape {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __call__(self, n: int) -> complex:
        return self.values[n % self.modulus]

    def centered(self) -> tuple[np.ndarray, np.ndarray]:
        """Indices -h..h (h = (M-1)//2) and the matching values, for odd M."""
        h = (self.modulus - 1) // 2
        idx = np.arange(-h, self.modulus - h)
        return idx, self.values[idx % self.modulus]

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))


def finite_fourier(f: CyclicFunction) -> CyclicFunction:
    """Unitary transform  f^(n) = M^{-1/2} sum_m f(m) exp(-2 pi i m n / M)."""
    return CyclicFunction(f.modulus, np.fft.fft(f.values) / math.sqrt(f.modulus))


def fourier_matrix(m: int) -> np.ndarray:
    k = np.arange(m)
    return np.exp(-2j * np.pi * np.outer(k, k) / m) / math.sqrt(m)


def eigenspace_dimensions(m: int) -> tuple[int, int, int, int]:
    """Multiplicities of the eigenvalues 1, -1, -i, i of the unitary transform."""
    if m < 1:
        raise ValueError("modulus must be positive")
    eig = np.linalg.eigvals(fourier_matrix(m))
    roots = np.array([1, -1, -1j, 1j])
    counts = [0, 0, 0, 0]
    for lam in eig:
        if abs(abs(lam) - 1) > ANGLE_TOL:
            raise DegeneracyError(f"eigenvalue {lam} is not on the unit circle")
        dist = np.abs(np.angle(lam / roots))
        k = int(np.argmin(dist))
        if dist[k] > ANGLE_TOL:
            raise DegeneracyError(f"eigenvalue {lam} is not a fourth root of unity")
        counts[k] += 1
    return tuple(counts)


def table_dimensions(m: int) -> tuple[int, int, int, int]:
    """The closed-form multiplicity table by residue of M mod 4."""
    q, r = divmod(m, 4)
    return {
        0: (q + 1, q, q, q - 1),
        1: (q + 1, q, q, q),
        2: (q + 1, q + 1, q, q),
        3: (q + 1, q + 1, q + 1, q),
    }[r]


def _window(n: int, t: float) -> int:
    return int(math.floor(n * t + 1e-12))


def _symmetric_basis(m: int, first: int) -> np.ndarray:
    """Columns (delta_k + delta_{-k}) / sqrt 2 for k = first .. (m-1)/2."""
    half = (m - 1) // 2
    ks = np.arange(first, half + 1)
    basis = np.zeros((m, ks.size))
    cols = np.arange(ks.size)
    basis[ks, cols] = 1 / math.sqrt(2)
    basis[(-ks) % m, cols] = 1 / math.sqrt(2)
    return basis


def construct_selfdual(n: int, t: float) -> CyclicFunction:
    """Real symmetric f on Z/n^2Z with F f = f and f(k) = 0 for |k| <= n t.

    The kernel of w -> (w - F w)/2 on the symmetric window-vanishing space is
    read off an SVD.  When it has dimension d > 1, the returned vector is the
    kernel element vanishing on the first d-1 coordinates beyond the window,
    so the choice depends only on the kernel, not on the SVD basis.
    The result is scaled so that its largest-magnitude entry is +1.
    """
    if n < 1 or n % 2 == 0:
        raise DimensionError("n must be an odd positive integer")
    if t <= 0:
        raise DimensionError("window t must be positive")
    m = n * n
    if m <= 4 * n * t + 1:
        raise DimensionError(f"need n^2 > 4 n t + 1, got {m} <= {4 * n * t + 1:g}")
    first = _window(n, t) + 1
    basis = _symmetric_basis(m, first)
    # F maps real symmetric vectors to real symmetric vectors (cosine sums)
    transformed = (np.fft.fft(basis, axis=0) / n).real
    op = (basis - transformed) / 2
    _, sing, vt = np.linalg.svd(op, full_matrices=True)
    sing = np.concatenate([sing, np.zeros(basis.shape[1] - sing.size)])
    kernel = vt[sing < KERNEL_TOL].T
    if kernel.shape[1] == 0:
        raise RankError(f"empty kernel (smallest singular value {sing.min():.3e})")

    d = kernel.shape[1]
    if d == 1:
        w = kernel[:, 0]
    else:
        _, _, vh = np.linalg.svd(kernel[: d - 1, :])
        w = kernel @ vh[-1]
    f = basis @ w
    f /= f[np.argmax(np.abs(f))]
    f[np.abs(f) < 1e-14] = 0.0
    # exact symmetry
    f = 0.5 * (f + f[(-np.arange(m)) % m])
    out = CyclicFunction(m, f)
    resid = np.linalg.norm(finite_fourier(out).values - out.values)
    if resid > SELF_DUAL_TOL * out.norm():
        raise RankError(f"self-duality residual {resid:.3e} above tolerance")
    return out


def kernel_dimension_lower_bound(n: int, t: float) -> int:
    """dim W - dim V_{-1} from the dimension count."""
    m = n * n
    k = (m - 1) // 4
    return (2 * k - _window(n, t)) - table_dimensions(m)[1]


@dataclass(frozen=True)
class CrystallineMeasure:
    """mu = sum_k c_k delta_{k/N}, c periodic with period N^2, real and symmetric."""

    n: int
    coefficients: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=float).copy()
        if self.n < 1 or self.n % 2 == 0:
            raise ValueError("N must be odd and positive")
        if c.shape != (self.n ** 2,):
            raise ValueError(f"expected {self.n ** 2} coefficients, got shape {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def period(self) -> int:
        return self.n ** 2

    @property
    def spacing(self) -> float:
        return 1.0 / self.n

    def coefficient(self, k: int) -> float:
        return float(self.coefficients[k % self.period])

    def symmetry_defect(self) -> float:
        c = self.coefficients
        return float(np.max(np.abs(c - c[(-np.arange(self.period)) % self.period])))

    def self_duality_residual(self) -> float:
        c = self.coefficients
        return float(np.linalg.norm(np.fft.fft(c) / self.n - c))

    def trig_polynomial(self, x) -> np.ndarray:
        """P(x) = sum_r (c_r / N) exp(-2 pi i r x / N^2); P(m) is the mass of mu^ at m/N."""
        x = np.asarray(x, dtype=float)
        r = np.arange(self.period)
        phase = np.exp(-2j * np.pi * np.multiply.outer(x, r) / self.period)
        return phase @ (self.coefficients / self.n)

    def window(self) -> int:
        """Largest k0 with c_k = 0 for all |k| <= k0 (-1 if c_0 != 0)."""
        c = self.coefficients
        k = 0
        while k <= (self.period - 1) // 2 and c[k] == 0 and c[-k % self.period] == 0:
            k += 1
        return k - 1

    def first_atom(self) -> float:
        """Smallest positive atom location."""
        nz = np.nonzero(self.coefficients[1:])[0]
        return (nz[0] + 1) / self.n


def measure_from_function(f: CyclicFunction, n: int) -> CrystallineMeasure:
    """The comb with c_k = f(k), extended with period n^2."""
    if f.modulus != n * n:
        raise ConsistencyError(f"function modulus {f.modulus} is not n^2 = {n * n}")
    if np.max(np.abs(f.values.imag)) > 1e-12 * max(1.0, f.norm()):
        raise ConsistencyError("function is not real")
    measure = CrystallineMeasure(n, f.values.real)
    if measure.symmetry_defect() != 0.0:
        raise ConsistencyError("function is not symmetric")
    if measure.self_duality_residual() > SELF_DUAL_TOL * max(1.0, np.linalg.norm(measure.coefficients)):
        raise ConsistencyError("function is not self-dual")
    return measure
