"""Acceptance suite: one test per criterion, with fixed tolerances and runtime limits.

Run with ``pytest tests/test_acceptance.py -v``; a per-criterion PASS/FAIL
table is printed at the end of the session.
"""

import math
import time
from fractions import Fraction
from math import comb

import mpmath
import numpy as np
import pytest

from crystalzeta import (
    build_g_N, coeff_a, construct_selfdual, dirichlet_head, eigenspace_dimensions,
    estimate_B, expansion_main, finite_fourier, isolate_zeros, measure_from_function, residue_at_1, riemann, sigma0,
    winding_count, zero_sum, zeros_to_sequence,
)
from crystalzeta.asymptotics import bernoulli_at_5_4, log_expansion_coeff
from crystalzeta.crystal import table_dimensions
from crystalzeta.numerics import bernoulli_polynomial
from crystalzeta.numerics.ddouble import DD
from crystalzeta.sequence import (
    check_structure, smallx_residual, z_special_value, z_special_value_from_coefficients, zeta_zero_sum_oracle,
)
from crystalzeta.zetabuild import functional_equation_residual

from conftest import R

SQRT3 = math.sqrt(3)

# beta, gamma of the zeros with positive imaginary part in R (10 decimals)
REFERENCE_ZEROS = [
    (0.5, 4.7753735547), (0.5, 53.2934095839),
    (-6.3939983623, 28.0995236414), (10.0731303207, 55.5328071355),
    (7.3939983623, 28.0995236414), (-9.0731303207, 55.5328071355),
    (-2.7891403465, 29.7107114647), (0.5, 55.6380182916),
    (3.7891403465, 29.7107114647), (0.5, 59.8440884874),
    (0.5, 32.9826068738), (0.5, 65.1982600562),
    (0.5, 38.9509449796), (0.5, 73.6917293006),
    (0.5, 43.6565105315), (0.8205883718, 77.1648164218),
    (0.5, 48.6090990060), (0.1794116281, 77.1648164218),
]

SIGMA0 = "10.564029176912431172"


def _euler_oracle(n):
    # sum_k binom(n, k) E_k = 0 over even k, E_0 = 1
    e = {0: Fraction(1)}
    for m in range(2, n + 1, 2):
        e[m] = -sum(comb(m, k) * e[k] for k in range(0, m, 2))
    return e[n]


def test_criterion_01_exact_coefficients():
    t0 = time.perf_counter()
    assert [coeff_a(n) for n in range(1, 6)] == [
        Fraction(7, 4), Fraction(1, 48), Fraction(9, 16), Fraction(-7, 1920), Fraction(3, 64)]
    tail = [Fraction(-1, 48), Fraction(-9, 32), Fraction(7, 5760), Fraction(-3, 256),
            Fraction(-31, 80640), Fraction(-23, 512)]
    assert [log_expansion_coeff(n) for n in range(1, 7)] == tail
    assert [-coeff_a(n + 1) / n for n in range(1, 7)] == tail
    assert time.perf_counter() - t0 < 1.0


def test_criterion_02_bernoulli_shift_identity():
    t0 = time.perf_counter()
    for n in range(21):
        assert bernoulli_at_5_4(n) == bernoulli_polynomial(n, Fraction(5, 4)), n
    assert time.perf_counter() - t0 < 1.0


def test_criterion_03_zeta_m_zeros(zeta_m):
    t0 = time.perf_counter()
    zeros = isolate_zeros(zeta_m, R)
    found = np.array([z.location for z in zeros])
    worst = 0.0
    for beta, gamma in REFERENCE_ZEROS:
        d = np.min(np.abs(found - complex(beta, gamma)))
        worst = max(worst, d)
    assert worst <= 1e-8, f"largest distance to a reference zero: {worst:.3e}"
    assert winding_count(zeta_m, R) == 30
    assert sum(z.multiplicity for z in zeros) == 31
    assert time.perf_counter() - t0 <= 600


def test_criterion_04_sigma0(zeta_m):
    t0 = time.perf_counter()
    val = sigma0(zeta_m)
    assert abs(val - float(SIGMA0)) <= 1e-9
    ext = sigma0(zeta_m, precision="extended")
    err = abs((ext - DD.from_fraction(Fraction(SIGMA0))).to_fraction())
    assert err <= Fraction(1, 10 ** 15), float(err)
    assert time.perf_counter() - t0 < 10.0


def test_criterion_05_residue_and_head(zeta_m):
    t0 = time.perf_counter()
    assert abs(residue_at_1(zeta_m) - (3 - SQRT3) / 6) <= 1e-10
    a = SQRT3
    expected = {
        Fraction(1): 1.0,
        Fraction(5, 4): -(3 + 2 * a),
        Fraction(4, 3): 2 + 4 / a,
        Fraction(3, 2): (9 + 5 * a) / 2,
        Fraction(5, 3): -2 * (2 + a),
        Fraction(7, 4): -(3 + 2 * a),
        Fraction(2): 3 * (2 + a),
    }
    head = dirichlet_head(zeta_m, 2)
    assert head.frequencies == sorted(expected)
    for lam, c in expected.items():
        assert abs(head.coefficient(lam) - c) <= 1e-12, lam
    assert time.perf_counter() - t0 < 5.0


def test_criterion_06_functional_equation(zeta_m):
    t0 = time.perf_counter()
    rng = np.random.default_rng(6)
    r = 60 * np.sqrt(rng.uniform(size=100))
    s = r * np.exp(2j * np.pi * rng.uniform(size=100))
    g5 = build_g_N(measure_from_function(construct_selfdual(5, 1), 5))
    worst = {}
    for name, f in (("zeta", riemann()), ("zeta_M", zeta_m), ("g_5", g5)):
        worst[name] = float(np.max(functional_equation_residual(f, s, strategy="direct")))
    assert max(worst.values()) <= 1e-10, worst
    assert time.perf_counter() - t0 < 30.0


def test_criterion_07_crystal_construction():
    t0 = time.perf_counter()
    for n, t in ((5, 1), (9, 2)):
        f = construct_selfdual(n, t)
        v = f.values
        m = f.modulus
        assert np.max(np.abs(v)) > 0
        assert np.all(v.imag == 0)
        assert np.array_equal(v, v[(-np.arange(m)) % m])
        k = np.arange(-math.floor(n * t), math.floor(n * t) + 1)
        assert np.all(v[k % m] == 0)
        assert np.linalg.norm(finite_fourier(f).values - v) <= 1e-10
        assert measure_from_function(f, n).self_duality_residual() <= 1e-10
    for m in range(4, 31):
        assert eigenspace_dimensions(m) == table_dimensions(m), m
    assert time.perf_counter() - t0 < 30.0


def test_criterion_08_asymptotic_law(zeta_zeros_seq):
    t0 = time.perf_counter()
    xs = np.array([10.0, 20.0, 40.0, 80.0])
    slopes = {}
    for n in range(5):
        err = np.array([abs(zeta_zero_sum_oracle(x) - expansion_main(x, n).real) * x ** (n + 1) for x in xs])
        slopes[n] = float(np.polyfit(np.log(xs), np.log(err), 1)[0])
    assert len(zeta_zeros_seq) >= 10 ** 4
    grid = np.linspace(5.0, 30.0, 26)
    sum_err = max(abs(zero_sum(zeta_zeros_seq, x).real - zeta_zero_sum_oracle(x)) for x in grid)
    elapsed = time.perf_counter() - t0
    assert sum_err <= 2e-3, f"zero_sum vs oracle: {sum_err:.3e}"
    assert elapsed < 120
    assert all(abs(v) <= 0.3 for v in slopes.values()), f"log-log slopes of the scaled error: {slopes}"


def test_criterion_09_theta_expansion(zeta_zeros_seq):
    t0 = time.perf_counter()
    # dyadic grid 0.02 * 2^k inside [0.02, 0.1]
    xs = np.array([0.02, 0.04, 0.08])
    slopes = {}
    for n in (1, 2, 3):
        ratio = np.array([abs(smallx_residual(zeta_zeros_seq, x, n)) / x ** (n / 2) for x in xs])
        assert np.all(np.isfinite(ratio))
        # bounded as x -> 0+: |ratio| may not grow toward the left end
        slopes[n] = float(np.polyfit(np.log(xs), np.log(ratio), 1)[0])
    assert all(v >= -0.3 for v in slopes.values()), slopes
    assert time.perf_counter() - t0 < 60


def test_criterion_10_complex_certification(zeta_m, zeta_m_zeros):
    t0 = time.perf_counter()
    seq = zeros_to_sequence(zeta_m_zeros)
    report = check_structure(seq, sigma0(zeta_m) - 0.5)
    assert all(report.verdicts[k] for k in "abcd"), report.verdicts
    assert report.kind == "complex"
    assert not seq.is_real
    assert time.perf_counter() - t0 < 1.0


def test_criterion_11_z_values():
    t0 = time.perf_counter()
    oracle = [(-1) ** n * (8 - _euler_oracle(2 * n)) / 2 ** (2 * n + 3) for n in range(3)]
    assert oracle == [Fraction(7, 8), Fraction(-9, 32), Fraction(3, 128)]
    for n in range(3):
        assert z_special_value(n) == oracle[n]
        assert z_special_value_from_coefficients(n) == oracle[n]
    assert time.perf_counter() - t0 < 1.0


def test_criterion_12_b_constant(zeta_zeros_seq):
    t0 = time.perf_counter()
    mpmath.mp.dps = 30
    xi_half = mpmath.mpf(-1) / 8 * mpmath.pi ** mpmath.mpf(-0.25) * mpmath.gamma(0.25) * mpmath.zeta(0.5)
    A = float(mpmath.log(mpmath.pi / 2) / 4 - mpmath.log(xi_half))
    est = estimate_B(zeta_zeros_seq, [5.0, 10.0, 20.0, 40.0, 80.0, 160.0])
    assert abs(est.value - A) <= 1e-2, (est.value, A)
    assert time.perf_counter() - t0 < 60
