import numpy as np
import numpy.testing as npt
import pytest

from convexlab import flow, forms, geometry, measure, pde
from convexlab.errors import PerturbationTooLarge
from convexlab.flow import FlowConfig


def field(fn, M=256):
    return forms.BoundaryField.from_function(fn, M)


def test_vector_field_identity_at_zero(ellipse21, rng):
    f = field(lambda t: np.cos(2 * t))
    x = rng.normal(size=(6, 2)) * 0.5
    npt.assert_allclose(flow.vector_field_X(ellipse21, f, 0.0, x), x, atol=1e-12)
    npt.assert_allclose(flow.vector_field_X(ellipse21, f, 0.3, np.zeros(2)),
                        np.zeros(2), atol=1e-15)


def test_vector_field_maps_boundary_to_perturbed_boundary(ellipse21):
    f = field(lambda t: np.cos(2 * t))
    t = 0.05
    body_t = geometry.wulff_perturb(ellipse21, f, t)
    for j in range(0, ellipse21.M, 31):
        x = ellipse21.boundary_grid[j]
        y = flow.vector_field_X(ellipse21, f, t, x)
        assert abs(geometry.gauge(body_t, y) - 1.0) < 1e-8


def test_vector_field_dilation_case(disk1):
    # f == 1 gives K_t = (1+t)K and X_t(x) = (1+t)x on the boundary
    f = forms.BoundaryField.constant(1.0, disk1.M)
    x = disk1.boundary_grid[13]
    y = flow.vector_field_X(disk1, f, 0.2, x)
    npt.assert_allclose(y, 1.2 * x, atol=1e-10)


def test_vector_field_respects_scaled_boundaries(blob):
    f = field(lambda t: np.cos(2 * t) + 0.1 * np.sin(3 * t))
    t = 0.04
    body_t = geometry.wulff_perturb(blob, f, t)
    for s in (0.25, 0.5, 1.0):
        for j in (3, 77, 141):
            x = s * blob.boundary_grid[j]
            y = flow.vector_field_X(blob, f, t, x)
            assert abs(geometry.gauge(body_t, y) - s) < 1e-7


def test_marginal_constant_without_perturbation(disk1, gaussian):
    f = forms.BoundaryField.constant(0.0, disk1.M)
    tab = flow.marginal_S(disk1, gaussian, FlowConfig(f=f, psi=None, eps=0.1, n_t=9))
    npt.assert_allclose(tab["S"], tab["S"][0], atol=1e-13)
    npt.assert_allclose(tab["second_differences"], 0.0, atol=1e-9)


def test_marginal_pure_wulff_concavity(disk1, gaussian):
    # strict concavity for the cos(2t) direction on the gaussian disk
    f = field(lambda t: np.cos(2 * t))
    tab = flow.marginal_S(disk1, gaussian, FlowConfig(f=f, psi=None, eps=0.1, n_t=21))
    assert tab["eps"] == 0.1
    assert np.all(tab["second_differences"] < 0)


def test_marginal_concavity_with_legendre_leg(blob, quartic):
    f = field(lambda t: np.cos(2 * t) + 0.1 * np.sin(3 * t))
    psi = measure.QuadraticPerturbation(B=[[0.3, 0.1], [0.1, 0.2]], b=[0.1, -0.05])
    tab = flow.marginal_S(blob, quartic, FlowConfig(f=f, psi=psi, eps=0.08, n_t=15))
    assert tab["max_second_difference"] <= 1e-7


def test_translation_flow_is_linear(ellipse21, quad14):
    x0 = np.array([0.3, -0.2])
    f = forms.BoundaryField(ellipse21.normals_grid @ x0)
    psi = measure.QuadraticPerturbation(b=x0, c=0.7)
    tab = flow.marginal_S(ellipse21, quad14, FlowConfig(f=f, psi=psi, eps=0.1, n_t=15))
    npt.assert_allclose(tab["second_differences"], 0.0, atol=1e-8)
    d = flow.shape_derivatives(ellipse21, quad14, f, psi)
    assert abs(d["S2"]) <= 1e-8


def test_homothety_flow_marginal_matches_radial_oracle(disk1, gaussian):
    # f = h, psi = u*: closed form I(t) = 2 pi (1+t)(1 - e^{-(1+t)/2})
    f = forms.BoundaryField(disk1.values.copy())
    psi = measure.ConjugatePerturbation(gaussian, 1.0)
    tab = flow.marginal_S(disk1, gaussian, FlowConfig(f=f, psi=psi, eps=0.1, n_t=9))
    s = 1.0 + tab["t"]
    oracle = 2 * np.pi * s * (1 - np.exp(-s / 2))
    npt.assert_allclose(tab["I"], oracle, rtol=1e-12)
    # concave but NOT linear: S''(0) = Var_{mu|K}(u) - 2 here
    d = flow.shape_derivatives(disk1, gaussian, f, psi)
    assert d["S2"] == pytest.approx(-1.979424524, abs=1e-8)


def test_shape_derivatives_trivial(disk1, gaussian):
    f = forms.BoundaryField.constant(0.0, disk1.M)
    d = flow.shape_derivatives(disk1, gaussian, f, None)
    assert d["I1"] == 0.0 and d["I2"] == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("case", ["disk_gauss_quad", "ellipse_quad_conj",
                                  "blob_quartic_quad"])
def test_shape_derivatives_match_fd(case, disk1, ellipse21, blob, gaussian,
                                    quad14, quartic):
    body, u = {"disk_gauss_quad": (disk1, gaussian),
               "ellipse_quad_conj": (ellipse21, quad14),
               "blob_quartic_quad": (blob, quartic)}[case]
    f = field(lambda t: np.cos(2 * t) + 0.1 * np.sin(3 * t))
    if case == "ellipse_quad_conj":
        psi = measure.ConjugatePerturbation(u, 0.4)
    else:
        psi = measure.QuadraticPerturbation(B=[[0.3, 0.1], [0.1, 0.2]], b=[0.1, -0.05])
    d = flow.shape_derivatives(body, u, f, psi)
    h1, h2 = 1e-4, 1e-3
    I = lambda t: flow.marginal_value(body, u, f, psi, t, 32)
    fd1 = (I(h1) - I(-h1)) / (2 * h1)
    fd2 = (I(h2) - 2 * d["I0"] + I(-h2)) / h2**2
    assert fd1 == pytest.approx(d["I1"], rel=1e-6)
    assert fd2 == pytest.approx(d["I2"], rel=1e-4)
    assert d["S2"] <= 1e-8  # concavity of the marginal at t = 0


def test_cross_module_identity(blob, quartic):
    f = field(lambda t: np.cos(2 * t) + 0.1 * np.sin(3 * t))
    psi = measure.QuadraticPerturbation(B=[[0.3, 0.1], [0.1, 0.2]], b=[0.1, -0.05])
    rep = flow.mean_form_from_flow(blob, quartic, f, psi)
    assert rep["passed"]
    assert rep["mismatch"] <= 1e-7 * rep["scale"]


def test_cross_module_identity_trivial_and_equality(disk1, gaussian):
    z = forms.BoundaryField.constant(0.0, disk1.M)
    rep = flow.mean_form_from_flow(disk1, gaussian, z, None)
    assert abs(rep["flow_side"]) < 1e-12 and abs(rep["forms_side"]) < 1e-12
    # translation witness: both sides vanish (exact equality case)
    x0 = np.array([0.5, 0.1])
    f = forms.BoundaryField(disk1.normals_grid @ x0)
    psi = measure.QuadraticPerturbation(b=x0)
    rep = flow.mean_form_from_flow(disk1, gaussian, f, psi)
    assert abs(rep["flow_side"]) <= 1e-8
    assert abs(rep["forms_side"]) <= 1e-8


def test_epsilon_halving(disk1, gaussian):
    f = field(lambda t: np.cos(2 * t))   # inadmissible at t = 0.5, fine at 0.25
    cfg = flow.select_epsilon(disk1, gaussian, FlowConfig(f=f, psi=None, eps=0.5, n_t=5))
    assert cfg.eps == 0.25
    bad = forms.BoundaryField.from_function(lambda t: 10 * np.cos(2 * t), disk1.M)
    with pytest.raises(PerturbationTooLarge):
        flow.select_epsilon(disk1, gaussian,
                            FlowConfig(f=bad, psi=None, eps=1.0, n_t=5),
                            max_halvings=3)


def test_rho_bar_direction_criticality(disk05, gaussian):
    # at p = p(mu, K), perturbing in the minimizer direction is second-order flat
    from convexlab.analysis import local_concavity_fd

    rep = pde.solve_report(disk05, gaussian)
    f = rep["rho_bar"]
    val = local_concavity_fd(disk05, gaussian, f, rep["p"])
    assert abs(val) < 1e-5
