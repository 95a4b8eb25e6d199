from fractions import Fraction

import mpmath
import numpy as np
import pytest

from crystalzeta.errors import SymmetryError
from crystalzeta.zerofind import (
    Rectangle, ZeroRecord, circle_winding, hardy_z, isolate_zeros, winding_count, zeros_to_sequence,
    zeta_ordinates,
)
from crystalzeta.zetabuild import ZETA_M_DISPLAY, riemann

from conftest import R


def identity(z):
    return np.asarray(z, dtype=complex)


def test_winding_identity():
    assert winding_count(identity, Rectangle(-1, 1, -1, 1)) == 1
    assert winding_count(identity, Rectangle(1, 2, -1, 1)) == 0


def test_winding_zeta_first_zero():
    # the pole at s = 1 sits on a corner; the rectangle is pulled inward
    assert winding_count(riemann(), Rectangle(0, 1, 0, 20)) == 1


def test_winding_additive():
    f = riemann()
    parent = Rectangle(-1.3, 2.2, 10.1, 40.3)
    children = parent.split(0.43, 0.57)
    assert winding_count(f, parent) == sum(winding_count(f, c) for c in children) == 6


def test_rectangle_validation():
    with pytest.raises(ValueError):
        Rectangle(1, 0, 0, 1)


def test_first_zero(zeta_m):
    zeros = isolate_zeros(zeta_m, Rectangle(0, 1, 1, 10))
    assert len(zeros) == 1
    assert abs(zeros[0].location - complex(0.5, 4.7753735547)) <= 1e-8


def test_four_off_line_zeros(zeta_m):
    zeros = isolate_zeros(zeta_m, Rectangle(-10, 11, 27, 31))
    expected = [complex(-6.3939983623, 28.0995236414), complex(7.3939983623, 28.0995236414),
                complex(-2.7891403465, 29.7107114647), complex(3.7891403465, 29.7107114647)]
    assert len(zeros) == 4
    for e in expected:
        assert min(abs(z.location - e) for z in zeros) <= 1e-8


def test_empty_rectangle(zeta_m):
    r = Rectangle(12, 14, 1, 5)
    assert winding_count(zeta_m, r) == 0
    assert isolate_zeros(zeta_m, r) == []


def test_records_are_certified(zeta_m, zeta_m_zeros):
    for z in zeta_m_zeros:
        assert z.residual <= 1e-10 * z.scale
        assert circle_winding(zeta_m, z.location, z.isolation_radius) == z.multiplicity
        assert R.contains(z.location)
    keys = [(z.location.imag, z.location.real) for z in zeta_m_zeros]
    assert keys == sorted(keys)


def test_zero_set_symmetries(zeta_m_zeros):
    locs = [z.location for z in zeta_m_zeros]
    nontrivial = [s for s in locs if abs(s.imag) > 1e-6]
    for s in nontrivial:
        if -10 < -s.imag < 80:
            assert min(abs(t - s.conjugate()) for t in locs) <= 1e-8
        assert min(abs(t - (1 - s.conjugate())) for t in locs) <= 1e-8
    trivial = sorted(s.real for s in locs if abs(s.imag) <= 1e-6)
    assert trivial == pytest.approx([-2.0 * k for k in range(10, 0, -1)], abs=1e-9)


def test_zero_inventory(zeta_m, zeta_m_zeros):
    # 18 reference zeros, one further off-line pair near height 68.43,
    # the conjugate of the first zero, and the trivial zeros -2 .. -20
    assert sum(z.multiplicity for z in zeta_m_zeros) == 31
    upper = [z.location for z in zeta_m_zeros if z.location.imag > 1e-6]
    assert len(upper) == 20
    extra = sorted((s for s in upper if abs(s.imag - 68.4319338928) < 1e-6), key=lambda s: s.real)
    assert len(extra) == 2
    assert extra[0].real == pytest.approx(-1.0964797659, abs=1e-8)
    assert extra[1].real == pytest.approx(2.0964797659, abs=1e-8)
    # covering strips agree with the total
    strips = [Rectangle(-21, 22, a, b) for a, b in ((-10, 20.3), (20.3, 50.1), (50.1, 80))]
    assert sum(winding_count(zeta_m, r) for r in strips) == winding_count(zeta_m, R) == 30


def _zeta_m_mp(s):
    s = mpmath.mpc(s)
    total = mpmath.mpc(0)
    for w, b, a in ZETA_M_DISPLAY:
        total += float(w) * mpmath.mpf(b) ** (-s) * mpmath.zeta(s, mpmath.mpf(a.numerator) / a.denominator)
    return total


def test_extra_pair_with_independent_evaluation(zeta_m_zeros):
    mpmath.mp.dps = 30
    for z in zeta_m_zeros:
        if abs(z.location.imag - 68.4319338928) < 1e-6:
            s = z.location
            val = abs(_zeta_m_mp(s))
            near = abs(_zeta_m_mp(s + 1e-3))
            assert val < 1e-8 * near


def test_zeros_to_sequence_mapping():
    recs = [ZeroRecord(complex(0.5, 4.7753735547), 1, 0.0, 0.1),
            ZeroRecord(complex(7.3939983623, 28.0995236414), 1, 0.0, 0.1),
            ZeroRecord(complex(-6.3939983623, 28.0995236414), 1, 0.0, 0.1),
            ZeroRecord(complex(-2.0, 0.0), 1, 0.0, 0.1)]
    seq = zeros_to_sequence(recs)
    assert seq.terms[0] == complex(4.7753735547, 0)
    assert seq.terms[1] == pytest.approx(complex(28.0995236414, 6.8939983623))
    assert seq.terms[2] == pytest.approx(complex(28.0995236414, -6.8939983623))
    assert len(seq) == 3


def test_zeros_to_sequence_needs_partner():
    with pytest.raises(SymmetryError):
        zeros_to_sequence([ZeroRecord(complex(7.3939983623, 28.0995236414), 1, 0.0, 0.1)])


def test_multiplicity_repeats():
    seq = zeros_to_sequence([ZeroRecord(complex(0.5, 3.0), 2, 0.0, 0.1)])
    assert seq.terms == (3 + 0j, 3 + 0j)


def test_double_zero():
    def f(z):
        z = np.asarray(z, dtype=complex)
        return (z - 0.3j) ** 2 * (z + 1)

    zeros = isolate_zeros(f, Rectangle(-0.5, 0.5, -0.5, 0.5))
    assert len(zeros) == 1 and zeros[0].multiplicity == 2
    assert abs(zeros[0].location - 0.3j) < 1e-6


def test_ordinates_against_mpmath():
    mpmath.mp.dps = 20
    t = zeta_ordinates(30)
    ref = [float(mpmath.zetazero(k).imag) for k in (1, 2, 3, 10, 30)]
    assert t[[0, 1, 2, 9, 29]] == pytest.approx(ref, abs=1e-9)
    assert np.all(np.abs(hardy_z(t)) < 1e-8)
