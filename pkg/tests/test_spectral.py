import numpy as np
import numpy.testing as npt

from convexlab import spectral


def smooth_samples(M, rng):
    t = spectral.grid(M)
    vals = np.full(M, rng.standard_normal())
    for k in range(1, 9):
        vals += rng.standard_normal() / (1 + k * k) * np.cos(k * t)
        vals += rng.standard_normal() / (1 + k * k) * np.sin(k * t)
    return t, vals


def test_interpolant_reproduces_grid_values(rng):
    t, vals = smooth_samples(128, rng)
    c = spectral.coefficients(vals)
    npt.assert_allclose(spectral.evaluate(c, 128, t), vals, atol=1e-13)


def test_evaluate_between_nodes_matches_series(rng):
    # band-limited input: the interpolant is the function itself
    t = spectral.grid(64)
    vals = 1.0 + 0.3 * np.cos(2 * t) - 0.1 * np.sin(5 * t)
    c = spectral.coefficients(vals)
    theta = np.array([0.1234, 1.9, 4.5])
    expected = 1.0 + 0.3 * np.cos(2 * theta) - 0.1 * np.sin(5 * theta)
    npt.assert_allclose(spectral.evaluate(c, 64, theta), expected, atol=1e-13)


def test_grid_derivative_matches_analytic():
    t = spectral.grid(128)
    vals = np.cos(3 * t) + 0.5 * np.sin(t)
    d1 = spectral.grid_derivative(vals, 1)
    d2 = spectral.grid_derivative(vals, 2)
    npt.assert_allclose(d1, -3 * np.sin(3 * t) + 0.5 * np.cos(t), atol=1e-12)
    npt.assert_allclose(d2, -9 * np.cos(3 * t) - 0.5 * np.sin(t), atol=1e-11)


def test_derivative_matches_finite_differences(rng):
    _, vals = smooth_samples(256, rng)
    c = spectral.coefficients(vals)
    theta = rng.uniform(0, 2 * np.pi, size=12)
    h = 1e-5
    fd = (spectral.evaluate(c, 256, theta + h) - spectral.evaluate(c, 256, theta - h)) / (2 * h)
    npt.assert_allclose(spectral.evaluate(c, 256, theta, order=1), fd, atol=1e-8)


def test_basis_matrix_values_and_derivatives():
    theta = spectral.grid(64)
    E = spectral.basis_matrix(3, theta)
    D = spectral.basis_matrix(3, theta, order=1)
    npt.assert_allclose(E[0], 1.0)
    npt.assert_allclose(E[3], np.cos(2 * theta))
    npt.assert_allclose(E[4], np.sin(2 * theta))
    npt.assert_allclose(D[3], -2 * np.sin(2 * theta))
    npt.assert_allclose(D[0], 0.0)


def test_basis_coefficients_round_trip(rng):
    t = spectral.grid(64)
    vals = 0.7 - 0.2 * np.cos(t) + 0.05 * np.sin(4 * t)
    c = spectral.basis_coefficients(vals)
    E = spectral.basis_matrix((64 - 1) // 2 if 64 % 2 else 64 // 2, t)
    npt.assert_allclose(E.T @ c, vals, atol=1e-12)
