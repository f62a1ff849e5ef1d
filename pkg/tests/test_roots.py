import numpy as np
import pytest
from numpy.polynomial import Polynomial

from lgmirror.errors import InvalidInputError
from lgmirror.roots import aberth, initial_guesses, min_separation, solve_polynomial


def _sorted(z):
    return sorted(z, key=lambda c: (round(c.real, 9), round(c.imag, 9)))


def test_cubic():
    roots = solve_polynomial([-6, 11, -6, 1])
    assert np.allclose(_sorted(roots), [1, 2, 3], atol=1e-10)


def test_complex_roots():
    roots = solve_polynomial([1, 0, 1])
    assert np.allclose(_sorted(roots), [-1j, 1j], atol=1e-10)


def test_warm_start_keeps_order():
    poly = Polynomial([-6, 11, -6, 1])
    roots = solve_polynomial(poly, initial=np.array([3.1, 0.9, 2.05]))
    assert np.allclose(roots, [3, 1, 2], atol=1e-10)


def test_wrong_length_warm_start_ignored():
    roots = solve_polynomial([-1, 0, 1], initial=np.array([5.0]))
    assert np.allclose(_sorted(roots), [-1, 1], atol=1e-10)


def test_constant_rejected():
    with pytest.raises(InvalidInputError):
        solve_polynomial([3.0])
    with pytest.raises(InvalidInputError):
        solve_polynomial([2.0, 0.0, 0.0])


def test_initial_guesses_cover_roots():
    poly = Polynomial([-6, 11, -6, 1])
    z0 = initial_guesses(poly)
    assert len(z0) == 3
    assert np.all(np.abs(z0) >= 3)


def test_aberth_reports_iterations():
    poly = Polynomial([-1, 0, 0, 0, 1])
    z, iterations, step = aberth(poly, initial_guesses(poly))
    assert 1 <= iterations < 100
    assert np.allclose(np.abs(z), 1, atol=1e-10)


def test_high_degree_residuals():
    rng = np.random.default_rng(0)
    coeffs = rng.normal(size=15) + 1j * rng.normal(size=15)
    roots = solve_polynomial(coeffs)
    poly = Polynomial(coeffs)
    assert len(roots) == 14
    assert np.max(np.abs(poly(roots)) / np.abs(poly.deriv()(roots))) < 1e-8


def test_min_separation():
    assert min_separation(np.array([0.0, 1.0, 3.0])) == 1
    assert min_separation(np.array([2.0])) == np.inf
