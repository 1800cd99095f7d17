"""Spectral Galerkin solver for the boundary Euler-Lagrange equation.

The boundary form <.,.>_P restricted to the trigonometric basis
e_0 = 1, e_{2k-1} = cos k*theta, e_{2k} = sin k*theta (k <= N) has Gram matrix

    G = A - B + m m^T / mu(K),

with stiffness A_jk = int e_j' e_k' e^{-u(x(theta))} dtheta, weighted mass
B_jk = int H_mu e_j e_k dmu, and moments m_j = int_dK e_j dmu.  G is positive
definite (coercivity); its Cholesky failure is treated as a falsification
event.  Solving G c = m gives the minimizer rho_bar of the Rayleigh quotient

    J(rho) = mu(K) <rho,rho>_P / (int_dK rho dmu)^2,

whose minimum is the concavity power p(mu, K) = mu(K) / int_dK rho_bar dmu.

The strong form of the operator (planar reduction, derived from the weak form
by integration by parts on the circle) is

    L(rho) = -rho''/r + <grad u(x(theta)), tau(theta)> rho'
             - H_mu rho + (1/mu(K)) int_dK rho dmu,

and rho_bar satisfies L(rho_bar) = 1.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import spectral
from .errors import CoercivityFailure, ZeroMean
from .forms import BoundaryField, _as_boundary_field
from .measure import verify_pinching, weighted_mean_curvature
from .quad import DEFAULT_Q, boundary_integral, interior_integral, interior_nodes

__all__ = [
    "PoincareSystem",
    "assemble",
    "solve_rho_bar",
    "concavity_power",
    "apply_L",
    "support_identity_check",
    "radial_moment_field",
    "rayleigh",
    "solve_report",
]

DEFAULT_N = 16


def _even_mask(N):
    """Basis indices of {1, cos 2k, sin 2k}: functions even under x -> -x."""
    idx = [0]
    for k in range(2, N + 1, 2):
        idx.extend([2 * k - 1, 2 * k])
    return np.array(idx)


@dataclass(frozen=True)
class PoincareSystem:
    """Assembled Galerkin matrices of <.,.>_P on the trigonometric basis."""

    body: object
    potential: object
    N: int
    even_only: bool
    A: np.ndarray
    B: np.ndarray
    m: np.ndarray
    muK: float
    G: np.ndarray
    chol: tuple

    @property
    def dim(self):
        return self.G.shape[0]

    def basis_on_grid(self, order=0):
        E = spectral.basis_matrix(self.N, self.body.theta_grid, order)
        return E[_even_mask(self.N)] if self.even_only else E

    def condition_estimate(self):
        return float(np.linalg.cond(self.G))


def assemble(body, u, N=DEFAULT_N, Q=DEFAULT_Q, even_only=False):
    """Assemble the Galerkin system; Cholesky of G must succeed.

    ``even_only`` restricts the basis to {1, cos 2k, sin 2k} (the admissible
    perturbations of an origin-symmetric problem).  Declared Hessian pinching
    is verified eagerly on all quadrature nodes.

    In Lebesgue mode (u == 0) the matrices are still assembled (they satisfy
    the elementary trig identities), but G is genuinely singular there: the
    first harmonics <v, nu> are null directions of the form, matching the
    translation equality cases of the unweighted inequality.  No factorization
    is attempted and the solve is refused.
    """
    if N < 4:
        raise ValueError("basis order N must be >= 4")
    if u.pinching is not None:
        pts, _ = interior_nodes(body, Q)
        verify_pinching(u, body.boundary_grid)
        verify_pinching(u, pts)

    theta = body.theta_grid
    w_theta = 2.0 * np.pi / body.M
    wu = u.weight(body.boundary_grid)
    r = body.radius_grid
    hmu = weighted_mean_curvature(body, u)

    E = spectral.basis_matrix(N, theta, 0)
    D = spectral.basis_matrix(N, theta, 1)
    if even_only:
        mask = _even_mask(N)
        E, D = E[mask], D[mask]

    A = (D * wu) @ D.T * w_theta
    B = (E * (hmu * wu * r)) @ E.T * w_theta
    m = E @ (wu * r) * w_theta
    A = 0.5 * (A + A.T)
    B = 0.5 * (B + B.T)
    muK = interior_integral(body, u, 1.0, Q=Q)
    G = A - B + np.outer(m, m) / muK
    G = 0.5 * (G + G.T)
    if u.is_zero:
        chol = None
    else:
        try:
            chol = scipy.linalg.cho_factor(G, lower=True)
        except scipy.linalg.LinAlgError as exc:
            raise CoercivityFailure(
                f"Cholesky of the P-form Gram matrix failed at N={N}: {exc}"
            ) from exc
    return PoincareSystem(body=body, potential=u, N=N, even_only=even_only,
                          A=A, B=B, m=m, muK=muK, G=G, chol=chol)


def solve_rho_bar(system):
    """Weak solution of <rho_bar, rho>_P = int rho dmu for all basis rho.

    Returns a BoundaryField on the body grid with the coefficient vector
    attached as ``.coeffs``; uniqueness follows from G > 0.
    """
    if system.chol is None:
        from .errors import LebesgueModeRestriction

        raise LebesgueModeRestriction(
            "the Euler-Lagrange solve needs a strictly convex potential; "
            "for u == 0 the form has translation null directions")
    c = scipy.linalg.cho_solve(system.chol, system.m)
    values = system.basis_on_grid(0).T @ c
    field = BoundaryField(values)
    field.coeffs = c
    return field


def concavity_power(body, u, N=DEFAULT_N, Q=DEFAULT_Q, even_only=False):
    """p(mu, K) = mu(K) / int_dK rho_bar dmu  (= mu(K) / <rho_bar, rho_bar>_P)."""
    system = assemble(body, u, N=N, Q=Q, even_only=even_only)
    c = solve_rho_bar(system).coeffs
    return float(system.muK / (system.m @ c))


def apply_L(body, u, rho, Q=DEFAULT_Q):
    """Strong form of the boundary elliptic operator applied to rho.

    Valid in Lebesgue mode (u == 0) as well, where the drift term vanishes
    and L(h(nu)) == 1 identically.
    """
    rho = _as_boundary_field(rho, body.M)
    r = body.radius_grid
    drift = np.einsum("ij,ij->i", u.grad(body.boundary_grid), body.tangents_grid)
    hmu = weighted_mean_curvature(body, u)
    muK = interior_integral(body, u, 1.0, Q=Q)
    mean = boundary_integral(body, u, rho.values) / muK
    vals = (-rho.deriv(2) / r + drift * rho.deriv(1) - hmu * rho.values + mean)
    return BoundaryField(vals)


def support_identity_check(body, u, Q=DEFAULT_Q):
    """Residuals of the two support-function identities (n = 2).

    pointwise:  L(h(nu)) = 1 + <grad u, x> - (1/mu(K)) int_K <grad u, x> dmu
    integral:   int_dK h dmu = 2 mu(K) - int_K <grad u, x> dmu
    """
    xb = body.boundary_grid
    moment = radial_moment_field(u)
    int_moment = interior_integral(body, u, moment, Q=Q)
    muK = interior_integral(body, u, 1.0, Q=Q)
    lhs = apply_L(body, u, BoundaryField(body.values), Q=Q).values
    rhs = 1.0 + np.einsum("ij,ij->i", u.grad(xb), xb) - int_moment / muK
    scale_pw = max(1.0, float(np.abs(rhs).max()))
    resid_pointwise = float(np.abs(lhs - rhs).max())

    lhs_int = boundary_integral(body, u, body.values)
    rhs_int = 2.0 * muK - int_moment
    scale_int = max(1.0, abs(rhs_int))
    resid_integral = abs(lhs_int - rhs_int)
    return {
        "pointwise_residual": resid_pointwise,
        "pointwise_scale": scale_pw,
        "integral_residual": resid_integral,
        "integral_scale": scale_int,
        "passed": bool(resid_pointwise <= 1e-8 * scale_pw
                       and resid_integral <= 1e-8 * scale_int),
    }


def radial_moment_field(u):
    """<grad u(x), x> as an interior field with analytic gradient."""
    from .forms import InteriorField

    def value(pts):
        return np.einsum("...i,...i->...", u.grad(pts), pts)

    def grad(pts):
        return np.einsum("...ij,...j->...i", u.hess(pts), pts) + u.grad(pts)

    return InteriorField(value, grad, descriptor={"kind": "radial-moment"})


def rayleigh(body, u, rho, Q=DEFAULT_Q):
    """J(rho) = mu(K) <rho,rho>_P / (int_dK rho dmu)^2; J >= p(mu, K)."""
    from .forms import form_P

    rho = _as_boundary_field(rho, body.M)
    mean = boundary_integral(body, u, rho.values)
    scale = boundary_integral(body, u, np.abs(rho.values)) + 1e-300
    if abs(mean) <= 1e-12 * scale:
        raise ZeroMean("Rayleigh quotient undefined: int rho dmu vanishes")
    muK = interior_integral(body, u, 1.0, Q=Q)
    return float(muK * form_P(body, u, rho, rho, Q=Q) / mean**2)


def solve_report(body, u, N=DEFAULT_N, Q=DEFAULT_Q, even_only=False):
    """Full solve: rho_bar, p, strong residual, and conditioning data."""
    system = assemble(body, u, N=N, Q=Q, even_only=even_only)
    rho_bar = solve_rho_bar(system)
    mc = system.m @ rho_bar.coeffs
    p = float(system.muK / mc)
    strong = apply_L(body, u, rho_bar, Q=Q)
    residual = float(np.abs(strong.values - 1.0).max())
    return {
        "p": p,
        "rho_bar": rho_bar,
        "system": system,
        "p_form_identity": float(mc),  # equals <rho_bar, rho_bar>_P
        "strong_residual": residual,
        "condition_estimate": system.condition_estimate(),
        "muK": system.muK,
        "mu_boundary": boundary_integral(body, u, 1.0),
    }
