"""The joint Wulff/Legendre flow and its shape derivatives.

For a direction f on normal angles and a dual perturbation psi, the flow moves
the body to K_t = [h + t*f] and the potential to u_t = (u* + t*psi)*.  The
log-marginal

    S(t) = log I(t),   I(t) = int_{K_t} e^{-u_t} dx,

is concave in t on the admissible window.  Its explicit derivatives at 0 are

    I'(0)  = int_K psi(grad u) dmu + int_dK f dmu
    I''(0) = int_K psi(grad u)^2 dmu
             - int_K <del^2 u grad psi(grad u), grad psi(grad u)> dmu
             + 2 int_dK f psi(grad u) dmu + int_dK H_mu f^2 dmu
             - int_dK <II^{-1} grad_dK (f o nu), grad_dK (f o nu)> dmu,

the last term carrying an overall minus sign (the resolution is pinned by the
finite-difference oracle and by the cross-module identity

    S''(0) I(0) = -( <rho,rho>_P + <phi,phi>_BL - 2 <rho,phi>_I )

with rho = f(nu), phi = psi(grad u)).
"""

from dataclasses import dataclass, replace

import numpy as np

from .errors import FlowNotConvex, OriginOutside, PerturbationTooLarge
from .forms import InteriorField, form_BL, form_I, form_P, _as_boundary_field
from .geometry import gauge_angle, wulff_perturb
from .measure import flow_potential, weighted_mean_curvature
from .quad import DEFAULT_Q, boundary_integral, interior_integral

__all__ = [
    "FlowConfig",
    "select_epsilon",
    "flow_setup",
    "vector_field_X",
    "marginal_value",
    "marginal_S",
    "shape_derivatives",
    "mean_form_from_flow",
    "psi_composed_field",
]


@dataclass(frozen=True)
class FlowConfig:
    """Wulff direction f, dual perturbation psi, and the symmetric t-grid."""

    f: object
    psi: object = None
    eps: float = 0.1
    n_t: int = 21

    def t_grid(self):
        return np.linspace(-self.eps, self.eps, self.n_t)


def flow_setup(body, u, f, psi, t, method="auto"):
    """(K_t, u_t) for one admissible t."""
    body_t = wulff_perturb(body, f, t) if t != 0.0 else body
    if psi is None or t == 0.0:
        u_t = u
    else:
        u_t = flow_potential(u, psi, t, method=method)
    return body_t, u_t


def marginal_value(body, u, f, psi, t, Q=DEFAULT_Q, method="auto"):
    """I(t) = mu_t(K_t) for one admissible t (the flow's marginal)."""
    body_t, u_t = flow_setup(body, u, f, psi, t, method=method)
    body_t.require_interior_origin()
    return interior_integral(body_t, u_t, 1.0, Q=Q)


def select_epsilon(body, u, cfg, Q=DEFAULT_Q, max_halvings=12):
    """Shrink eps until both flow legs are admissible at the grid endpoints.

    Admissibility is an interval around t = 0 for both checks (convexity of
    h + t*f is linear in t; convexity of u* + t*psi holds on an interval), so
    testing the endpoints suffices.
    """
    cfg = cfg if isinstance(cfg, FlowConfig) else FlowConfig(*cfg)
    eps = float(cfg.eps)
    for _ in range(max_halvings):
        try:
            marginal_value(body, u, cfg.f, cfg.psi, +eps, Q)
            marginal_value(body, u, cfg.f, cfg.psi, -eps, Q)
            return replace(cfg, eps=eps)
        except (PerturbationTooLarge, FlowNotConvex, OriginOutside):
            eps *= 0.5
    raise PerturbationTooLarge(
        f"no admissible window found after {max_halvings} halvings of eps")


def vector_field_X(body, f, t, x):
    """X_t(x) = x + t ||x||_K grad f(nu_K(x / ||x||_K)).

    grad f is the gradient of the 1-homogeneous extension; on the circle it
    reduces to f'(theta) tau(theta) + f(theta) nu(theta).  X_t maps each
    scaled boundary d(s K) onto d(s K_t) and fixes the origin.
    """
    f = _as_boundary_field(f, body.M)
    pts = np.asarray(x, dtype=float)
    lead = pts.shape[:-1]
    flat = pts.reshape(-1, 2)
    out = flat.copy()
    for i, xi in enumerate(flat):
        s, theta = gauge_angle(body, xi)
        if s == 0.0:
            continue
        nu = np.array([np.cos(theta), np.sin(theta)])
        tau = np.array([-np.sin(theta), np.cos(theta)])
        grad_f = float(f.eval(theta, 1)) * tau + float(f.eval(theta)) * nu
        out[i] = xi + t * s * grad_f
    return out.reshape(lead + (2,))


def marginal_S(body, u, cfg, Q=DEFAULT_Q, method="auto"):
    """Tabulate (t, I(t), S(t)) over the config's grid with concavity data.

    Returns a dict with the grid, the marginal, S = log I, the centered
    second differences of S, and the resolved eps.
    """
    cfg = select_epsilon(body, u, cfg, Q=Q)
    t_grid = cfg.t_grid()
    I_vals = np.array([marginal_value(body, u, cfg.f, cfg.psi, t, Q, method=method)
                       for t in t_grid])
    S_vals = np.log(I_vals)
    dt = t_grid[1] - t_grid[0]
    d2 = (S_vals[2:] - 2.0 * S_vals[1:-1] + S_vals[:-2]) / dt**2
    return {"t": t_grid, "I": I_vals, "S": S_vals,
            "second_differences": d2, "eps": cfg.eps,
            "max_second_difference": float(d2.max())}


def psi_composed_field(u, psi):
    """phi = psi(grad u) as an interior field with analytic gradient.

    grad (psi o grad u)(x) = del^2 u(x) grad psi(grad u(x)).
    """
    def value(pts):
        return psi.value(u.grad(pts))

    def grad(pts):
        return np.einsum("...ij,...j->...i", u.hess(pts), psi.grad(u.grad(pts)))

    return InteriorField(value, grad, descriptor={"kind": "psi-composed",
                                                  "psi": psi.descriptor})


def shape_derivatives(body, u, f, psi=None, Q=DEFAULT_Q):
    """I(0), I'(0), I''(0), S''(0) from the explicit formulas."""
    f = _as_boundary_field(f, body.M)
    I0 = interior_integral(body, u, 1.0, Q=Q)
    hmu = weighted_mean_curvature(body, u)
    wu = u.weight(body.boundary_grid)
    w_theta = 2.0 * np.pi / body.M

    if psi is None:
        psi_int = 0.0
        psi_sq = 0.0
        psi_grad = 0.0
        psi_bd = np.zeros(body.M)
    else:
        phi = psi_composed_field(u, psi)
        psi_int = interior_integral(body, u, phi, Q=Q)
        psi_sq = interior_integral(
            body, u, InteriorField(lambda p: phi.value(p) ** 2), Q=Q)

        def carre(pts):
            g = psi.grad(u.grad(pts))
            return np.einsum("...ij,...j,...i->...", u.hess(pts), g, g)

        psi_grad = interior_integral(body, u, InteriorField(carre), Q=Q)
        psi_bd = phi.value(body.boundary_grid)

    f_bd = boundary_integral(body, u, f.values)
    I1 = psi_int + f_bd
    I2 = (psi_sq - psi_grad
          + 2.0 * boundary_integral(body, u, f.values * psi_bd)
          + boundary_integral(body, u, hmu * f.values**2)
          - float(np.sum(f.deriv() ** 2 * wu) * w_theta))
    S2 = I2 / I0 - (I1 / I0) ** 2
    return {"I0": I0, "I1": I1, "I2": I2, "S2": S2}


def mean_form_from_flow(body, u, f, psi, Q=DEFAULT_Q):
    """Cross-module oracle: S''(0) I(0) must equal -(P + BL - 2I).

    The left side comes from the flow's explicit derivatives with rho = f(nu)
    and phi = psi(grad u); the right side from the bilinear-form module.
    """
    f = _as_boundary_field(f, body.M)
    d = shape_derivatives(body, u, f, psi, Q=Q)
    lhs = d["I2"] - d["I1"] ** 2 / d["I0"]  # = S''(0) * I(0)
    phi = psi_composed_field(u, psi) if psi is not None else InteriorField.constant(0.0)
    P = form_P(body, u, f, f, Q=Q)
    BL = form_BL(body, u, phi, phi, Q=Q)
    I = form_I(body, u, f, phi, Q=Q)
    rhs = -(P + BL - 2.0 * I)
    scale = max(abs(P), abs(BL), 1.0)
    return {"flow_side": lhs, "forms_side": rhs, "P": P, "BL": BL, "I": I,
            "mismatch": abs(lhs - rhs), "scale": scale,
            "passed": bool(abs(lhs - rhs) <= 1e-7 * scale)}
