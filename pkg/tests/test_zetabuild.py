import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from crystalzeta.crystal import construct_selfdual, measure_from_function
from crystalzeta.errors import DomainError, NoRootError, PoleError
from crystalzeta.numerics import riemann_zeta
from crystalzeta.zetabuild import (
    SQRT3, ZETA_M_DISPLAY, CombMeasure, Family, HurwitzCombination, HurwitzTerm, Surd, Xi_eval, build_g_N,
    build_zeta_N, combination_from_measure, cos_turns, delta0_details, dirichlet_head, eval, functional_equation_residual,
    majorant, residue_at_1, riemann, sigma0, xi_eval,
)

mpmath.mp.dps = 30


@pytest.fixture(scope="module")
def g5():
    return build_g_N(measure_from_function(construct_selfdual(5, 1), 5))


def test_surd_arithmetic():
    a = 1 + SQRT3
    b = 1 - SQRT3
    assert a * b == Surd(-2)
    assert (a / b) * b == a
    assert float(a) == pytest.approx(1 + math.sqrt(3))
    assert str(Surd(Fraction(1, 2), -3)) == "1/2-3*sqrt(3)"
    with pytest.raises(ZeroDivisionError):
        Surd().inverse()


@pytest.mark.parametrize("k", range(12))
def test_cos_turns(k):
    assert float(cos_turns(Fraction(k, 12))) == pytest.approx(math.cos(2 * math.pi * k / 12), abs=1e-15)
    with pytest.raises(ValueError):
        cos_turns(Fraction(1, 5))


def test_comb_merging():
    comb = CombMeasure.build([Family(1.0, Fraction(2), Fraction(0)), Family(1.0, Fraction(2), Fraction(2))])
    assert len(comb.families) == 1
    assert comb.mass(4) == 2.0
    assert comb.density() == 1.0


@pytest.mark.parametrize("s", [2.0, 0.5 + 14.134725j, -3.5 + 1j, -22.0 + 7j, 0.3 - 50j, 45 + 2j])
@pytest.mark.parametrize("strategy", ["auto", "direct"])
def test_riemann_against_mpmath(s, strategy):
    ref = complex(mpmath.zeta(s))
    assert abs(riemann()(s, strategy) - ref) <= 1e-10 * max(1.0, abs(ref))


def test_value_and_derivative():
    f = riemann()
    for s in (2.5 + 1j, -5.5 + 2j):
        v, d = f.value_and_derivative(s)
        assert abs(d - complex(mpmath.zeta(s, 1, 1))) <= 1e-10 * max(1.0, abs(d))
        assert v == pytest.approx(f(s))


def test_trivial_zeros_exact():
    f = riemann()
    assert f(-2.0) == 0
    v, d = f.value_and_derivative(-4.0)
    assert v == 0
    assert d == pytest.approx(complex(mpmath.zeta(-4.0, 1, 1)), rel=1e-12)


def test_pole():
    with pytest.raises(PoleError):
        riemann()(1.0)
    assert riemann().poles == (1 + 0j,)


def test_zeta_m_structure(zeta_m):
    assert len(zeta_m.combination.terms) == 13
    got = {(t.base, t.shift): t.exact for t in zeta_m.combination.terms}
    for w, b, a in ZETA_M_DISPLAY:
        assert got[(Fraction(b), a)] == w
    assert zeta_m.residue == pytest.approx((3 - math.sqrt(3)) / 6, abs=1e-15)
    assert zeta_m.comb.self_duality_defect() < 1e-12
    assert zeta_m.comb.is_symmetric()


def test_zeta_m_real_on_axis(zeta_m):
    x = np.array([-15.5, -3.3, 0.2, 0.7, 2.5, 9.0, 30.0])
    v = zeta_m(x)
    assert np.all(np.abs(v.imag) <= 1e-12 * np.maximum(1, np.abs(v)))


def test_head_matches_support(zeta_m):
    limit = Fraction(12)
    head = dirichlet_head(zeta_m, limit)
    spacing, _ = zeta_m.comb.lattice()
    k = 1
    seen = []
    while k * spacing <= limit:
        x = k * spacing
        mass = zeta_m.comb.mass(x)
        if abs(mass) > 1e-12:
            seen.append(x)
            assert head.coefficient(x) == pytest.approx(mass, abs=1e-12)
        k += 1
    assert head.frequencies == seen
    assert len(set(head.frequencies)) == len(head.frequencies)


@pytest.mark.parametrize("s", [15.0, 15.0 + 30j, 22.0 - 7j])
def test_head_against_combination(zeta_m, s):
    head = dirichlet_head(zeta_m, 40)
    assert abs(head(s) - zeta_m(s)) <= 1e-11


@pytest.mark.parametrize("s", [3.0, 2.5 + 4j])
def test_g_n_against_dirichlet_sum(g5, s):
    m = g5.measure
    k = np.arange(1, 200000)
    c = np.array([m.coefficient(int(j)) for j in range(m.period)])[k % m.period]
    direct = np.sum(c * (k / m.n) ** (-s))
    assert abs(g5(s) - direct) < 1e-6


def test_residues(g5):
    assert residue_at_1(riemann()) == 1.0
    assert residue_at_1(g5) == pytest.approx(g5.residue)
    d = 0.01
    zn = build_zeta_N(g5.measure, d)
    assert zn.residue == pytest.approx(1 + d * g5.residue)


@pytest.mark.parametrize("name", ["riemann", "zeta_m", "g5", "zeta_n"])
def test_functional_equation(name, zeta_m, g5):
    f = {"riemann": riemann(), "zeta_m": zeta_m, "g5": g5,
         "zeta_n": build_zeta_N(g5.measure, 0.05)}[name]
    rng = np.random.default_rng(11)
    s = complex(0.5, 0) + 25 * (rng.uniform(-1, 1, 40) + 1j * rng.uniform(-1, 1, 40))
    assert np.max(functional_equation_residual(f, s)) <= 1e-10


def test_xi_symmetric_and_real(zeta_m):
    s = np.array([0.3 + 2j, -4 + 11j, 2.0, -6.0])
    np.testing.assert_allclose(xi_eval(zeta_m, s), xi_eval(zeta_m, 1 - s), rtol=1e-10)
    t = np.array([0.0, 4.7753735547, 13.0])
    xi = Xi_eval(zeta_m, t)
    assert np.all(np.abs(xi.imag) <= 1e-10 * np.maximum(1, np.abs(xi)))
    assert abs(xi[1]) < 1e-8 * abs(xi[0])
    assert xi_eval(zeta_m, 1.0) == pytest.approx(zeta_m.residue / 2)


def test_sigma0_balances_majorant(zeta_m):
    s0 = sigma0(zeta_m)
    assert majorant(zeta_m, s0) == pytest.approx(1.0, abs=1e-10)
    assert majorant(zeta_m, s0 - 0.01) > 1 > majorant(zeta_m, s0 + 0.01)


def test_sigma0_needs_constant():
    f = build_g_N(measure_from_function(construct_selfdual(5, 1), 5))
    with pytest.raises(NoRootError):
        sigma0(f)


def test_delta0():
    m = measure_from_function(construct_selfdual(5, 1), 5)
    rep = delta0_details(m)
    assert 2 - riemann_zeta(2.0).real > 0
    assert 0 < rep.delta0 < math.inf
    assert rep.delta0 == pytest.approx(0.5 * min(rep.criterion_i, rep.criterion_ii))
    assert rep.binding in ("i", "ii")
    assert rep.m_hat > 0 and rep.M_hat > 0


def test_combination_domain():
    with pytest.raises(DomainError):
        HurwitzCombination((HurwitzTerm(1.0, Fraction(1), Fraction(3, 2)),))
    assert eval(riemann(), 2.0) == pytest.approx(math.pi ** 2 / 6)


def test_measure_combination_period(g5):
    combo = combination_from_measure(g5.measure)
    assert all(t.base == 5 for t in combo.terms)
    assert max(t.shift for t in combo.terms) <= 1
