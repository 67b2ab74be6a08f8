import math

import numpy as np
import pytest

import cpheat


def test_version():
    assert cpheat.__version__


def test_density_1d_integrates_to_one():
    u = np.linspace(0.0, 1.0, 2001)
    f = cpheat.density_1d(0.3, 0.2, u, 4)
    assert f.shape == u.shape
    assert np.trapezoid(f, u) == pytest.approx(1.0, abs=1e-5)


def test_density_1d_stationary_limit():
    u = np.array([0.0, 0.5, 0.9])
    np.testing.assert_allclose(cpheat.density_1d(40.0, 0.7, u, 3), 2.0 * (1.0 - u), rtol=1e-12)


def test_density_2d_stationary_limit():
    f = cpheat.density_2d(40.0, (0.2, 0.1), (0.3, 0.3), 4)
    assert f == pytest.approx(6.0 * 0.4, rel=1e-12)


def test_coefficients():
    a = cpheat.solve_coefficients(0.25, 4, 20)
    assert len(a) == 21
    for n, an in enumerate(a):
        assert an == pytest.approx(cpheat.closed_form_coefficient(0.25, 4, n), abs=1e-12)


def test_laplace():
    s = cpheat.laplace_series(0.4, 2.0, 0.3, 5)
    q = cpheat.laplace_by_quadrature(0.4, 2.0, 0.3, 5)
    assert s == pytest.approx(q, abs=1e-10)


def test_truncation():
    tr = cpheat.auto_truncation(1.0, 3, 1e-12)
    assert 1 <= tr.n_max <= 8
    assert tr.achieved_bound <= 1e-12
    with pytest.raises(cpheat.TruncationError):
        cpheat.auto_truncation(1e-9, 3, 1e-12)


def test_simulate_shape_and_mean():
    pts = cpheat.simulate(4, [0.8], 0.3, dt=1e-3, paths=4000, seed=2)
    assert pts.shape == (4000, 1)
    assert np.all((pts >= 0.0) & (pts <= 1.0))
    exact = 0.25 + 0.55 * math.exp(-1.2)
    assert abs(pts.mean() - exact) < 5 * pts.std() / math.sqrt(len(pts)) + 1e-3
    again = cpheat.simulate(4, [0.8], 0.3, dt=1e-3, paths=4000, seed=2)
    assert np.array_equal(pts, again)


def test_bad_input():
    with pytest.raises(ValueError):
        cpheat.density_1d(0.3, 1.5, np.array([0.5]), 3)
