import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from crystalzeta.crystal import (
    CrystallineMeasure, CyclicFunction, construct_selfdual, eigenspace_dimensions, finite_fourier,
    kernel_dimension_lower_bound, measure_from_function, table_dimensions,
)
from crystalzeta.errors import ConsistencyError, DimensionError

vectors = st.integers(2, 40).flatmap(
    lambda m: arrays(np.float64, (2, m), elements=st.floats(-10, 10, allow_nan=False)))


@settings(max_examples=50, deadline=None)
@given(vectors)
def test_unitary_and_parity(parts):
    m = parts.shape[1]
    f = CyclicFunction(m, parts[0] + 1j * parts[1])
    g = finite_fourier(f)
    assert abs(g.norm() - f.norm()) <= 1e-12 * max(1.0, f.norm())
    gg = finite_fourier(g)
    np.testing.assert_allclose(gg.values, f.values[(-np.arange(m)) % m], atol=1e-12 * max(1.0, f.norm()))


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, st.integers(2, 40), elements=st.floats(-10, 10, allow_nan=False)))
def test_real_symmetric_closure(v):
    m = v.size
    sym = v + v[(-np.arange(m)) % m]
    g = finite_fourier(CyclicFunction(m, sym)).values
    assert np.max(np.abs(g.imag)) <= 1e-12 * max(1.0, np.abs(sym).max())
    np.testing.assert_allclose(g, g[(-np.arange(m)) % m], atol=1e-12 * max(1.0, np.abs(sym).max()))


@pytest.mark.parametrize("m", range(1, 41))
def test_eigenspace_dimensions(m):
    dims = eigenspace_dimensions(m)
    assert sum(dims) == m
    if m >= 4:
        assert dims == table_dimensions(m)


@pytest.mark.parametrize("n,t", [(5, 1), (7, 1), (9, 2), (11, 2), (13, 3)])
def test_construction_outputs(n, t):
    f = construct_selfdual(n, t)
    m = f.modulus
    v = f.values
    window = np.arange(-math.floor(n * t), math.floor(n * t) + 1) % m
    assert np.all(v[window] == 0)
    assert np.max(v.real) == 1.0
    g = finite_fourier(f).values
    # the transform also vanishes on the window
    assert np.linalg.norm(g[window]) <= 1e-10 * f.norm()
    measure = measure_from_function(f, n)
    assert measure.window() >= math.floor(n * t)
    assert measure.self_duality_residual() <= 1e-10


def test_construction_is_deterministic():
    a, b = construct_selfdual(9, 2), construct_selfdual(9, 2)
    assert np.array_equal(a.values, b.values)


@pytest.mark.parametrize("n,t", [(4, 1), (5, 0), (3, 1), (5, 2)])
def test_construction_rejects(n, t):
    with pytest.raises(DimensionError):
        construct_selfdual(n, t)


def test_kernel_bound_positive():
    assert kernel_dimension_lower_bound(5, 1) >= 1
    assert kernel_dimension_lower_bound(9, 2) >= 1


def test_measure_checks():
    f = construct_selfdual(5, 1)
    with pytest.raises(ConsistencyError):
        measure_from_function(f, 7)
    bad = CyclicFunction(25, np.arange(25.0))
    with pytest.raises(ConsistencyError):
        measure_from_function(bad, 5)
    m = measure_from_function(f, 5)
    assert m.coefficient(27) == m.coefficient(2)
    assert m.first_atom() == pytest.approx((m.window() + 1) / 5)
    # P(m) is the mass of the transform at m/N, which equals the mass of mu there
    for k in range(-6, 7):
        assert m.trig_polynomial(k).real == pytest.approx(m.coefficient(k), abs=1e-12)
    with pytest.raises(ValueError):
        CrystallineMeasure(4, np.zeros(16))
