"""Trigonometric interpolation on a uniform periodic grid.

Everything in the library that lives on a boundary is a smooth 2*pi-periodic
function sampled at theta_j = 2*pi*j/M.  This module supplies the spectral
plumbing: real FFT coefficients, differentiation on the grid, evaluation of
the interpolant (and its derivatives) at arbitrary angles, and the
{1, cos k*theta, sin k*theta} basis used by the Galerkin solver.
"""

import numpy as np

__all__ = [
    "grid",
    "coefficients",
    "grid_derivative",
    "evaluate",
    "basis_matrix",
    "basis_coefficients",
]


def grid(M):
    """Uniform angles theta_j = 2*pi*j/M, j = 0..M-1."""
    return 2.0 * np.pi * np.arange(M) / M


def coefficients(values):
    """Real-FFT coefficients of grid samples (length M//2 + 1)."""
    return np.fft.rfft(np.asarray(values, dtype=float))


def _derivative_factor(M, order):
    k = np.arange(M // 2 + 1, dtype=float)
    fac = (1j * k) ** order
    if order % 2 == 1 and M % 2 == 0:
        # odd derivative of the Nyquist mode is not representable on the grid
        fac[-1] = 0.0
    return fac


def grid_derivative(values, order=1):
    """Spectral derivative of grid samples, returned on the same grid."""
    values = np.asarray(values, dtype=float)
    M = values.shape[-1]
    if order == 0:
        return values.copy()
    c = np.fft.rfft(values)
    return np.fft.irfft(c * _derivative_factor(M, order), n=M)


def evaluate(coeffs, M, theta, order=0):
    """Evaluate the trigonometric interpolant (or a derivative) anywhere.

    ``coeffs`` are unnormalized rfft coefficients of M samples.  At grid
    nodes and order 0 this reproduces the samples to machine precision.
    """
    theta = np.asarray(theta, dtype=float)
    c = coeffs * _derivative_factor(M, order) if order else coeffs
    k = np.arange(len(coeffs))
    # weights: DC and (even-M) Nyquist count once, interior modes twice
    w = np.full(len(coeffs), 2.0)
    w[0] = 1.0
    if M % 2 == 0:
        w[-1] = 1.0
    phase = np.exp(1j * np.multiply.outer(theta, k))
    out = (phase * (w * c)).real.sum(axis=-1) / M
    return out


def basis_matrix(N, theta, order=0):
    """Rows e_0 = 1, e_{2k-1} = cos k*theta, e_{2k} = sin k*theta, k <= N.

    Returns the (2N+1, len(theta)) matrix of basis values, spectrally
    differentiated ``order`` times.
    """
    theta = np.asarray(theta, dtype=float)
    d = 2 * N + 1
    out = np.empty((d, theta.size))
    out[0] = 0.0 if order else 1.0
    for k in range(1, N + 1):
        kt = k * theta
        c, s = np.cos(kt), np.sin(kt)
        # d/dtheta rotates the pair: (cos, sin) -> k*(-sin, cos)
        rem = order % 4
        scale = float(k) ** order
        if rem == 0:
            dc, ds = c, s
        elif rem == 1:
            dc, ds = -s, c
        elif rem == 2:
            dc, ds = -c, -s
        else:
            dc, ds = s, -c
        out[2 * k - 1] = scale * dc
        out[2 * k] = scale * ds
    return out


def basis_coefficients(values):
    """Expand M grid samples in the {1, cos, sin} basis (all M//2 modes)."""
    values = np.asarray(values, dtype=float)
    M = values.shape[-1]
    c = np.fft.rfft(values) / M
    N = (M - 1) // 2 if M % 2 else M // 2
    out = np.zeros(2 * N + 1)
    out[0] = c[0].real
    for k in range(1, N + 1):
        w = 1.0 if (M % 2 == 0 and k == M // 2) else 2.0
        out[2 * k - 1] = w * c[k].real
        out[2 * k] = -w * c[k].imag
    return out
