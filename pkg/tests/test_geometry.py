import numpy as np
import numpy.testing as npt
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convexlab import geometry, spectral
from convexlab.errors import NotStrictlyConvex, OriginOutside, PerturbationTooLarge
from convexlab.forms import BoundaryField


def test_disk_support_and_curvature(disk1):
    npt.assert_allclose(disk1.values, 1.0)
    npt.assert_allclose(disk1.radius_grid, 1.0, atol=1e-12)
    assert disk1.is_even


def test_ellipse_support_function(ellipse21):
    t = ellipse21.theta_grid
    npt.assert_allclose(ellipse21.values,
                        np.sqrt(4 * np.cos(t) ** 2 + np.sin(t) ** 2), atol=1e-12)


def test_curvature_extremes(ellipse21):
    # curvature of the 2x1 ellipse ranges over [b/a^2, a/b^2] = [1/4, 2]
    assert ellipse21.m1 == pytest.approx(0.25, abs=1e-9)
    assert ellipse21.m2 == pytest.approx(2.0, abs=1e-9)
    assert ellipse21.modes == ellipse21.M // 2


def test_ellipse_curvature_radius_at_zero(ellipse21):
    # oracle: dense central differences of the analytic h, independent of FFT
    h = lambda t: np.sqrt(4 * np.cos(t) ** 2 + np.sin(t) ** 2)
    d = 1e-4
    r_fd = h(0.0) + (h(d) - 2 * h(0.0) + h(-d)) / d**2
    assert abs(r_fd - 0.5) < 1e-6  # b^2/a
    assert abs(ellipse21.radius(0.0) - 0.5) < 1e-9


def test_fourier_convexity_acceptance_threshold():
    # h = 1 + c2*cos(2t): r = 1 - 3*c2*cos(2t), min = 1 - 3*c2
    body = geometry.fourier_body(1.0, cos={2: 0.3})
    assert float(body.radius_grid.min()) == pytest.approx(0.1, abs=1e-12)
    with pytest.raises(NotStrictlyConvex):
        geometry.fourier_body(1.0, cos={2: 0.4})


def test_boundary_point_disk(disk1):
    bp = geometry.boundary_point(disk1, 0.0)
    npt.assert_allclose(bp.x, [1.0, 0.0], atol=1e-12)
    npt.assert_allclose(bp.nu, [1.0, 0.0])
    assert bp.r == pytest.approx(1.0, abs=1e-12)


def test_boundary_point_norm_homogeneity():
    body = geometry.disk(2.5)
    for theta in np.linspace(0, 2 * np.pi, 17):
        bp = geometry.boundary_point(body, theta)
        assert np.hypot(*bp.x) == pytest.approx(2.5, abs=1e-12)


def test_boundary_point_ellipse_is_support_maximizer(ellipse21):
    # oracle: argmax of <x, e1> over a dense parametric sampling of the ellipse
    phi = np.linspace(0, 2 * np.pi, 20001)
    pts = np.stack([2 * np.cos(phi), np.sin(phi)], axis=1)
    best = pts[np.argmax(pts @ np.array([1.0, 0.0]))]
    bp = geometry.boundary_point(ellipse21, 0.0)
    npt.assert_allclose(bp.x, best, atol=1e-6)
    npt.assert_allclose(bp.x, [2.0, 0.0], atol=1e-10)


def test_support_identity_on_grid(disk1, ellipse21, blob):
    for body in (disk1, ellipse21, blob):
        lhs = np.einsum("ij,ij->i", body.boundary_grid, body.normals_grid)
        npt.assert_allclose(lhs, body.values, atol=1e-10)


def test_cauchy_perimeter_identity(disk1, ellipse21, blob, peanut):
    for body in (disk1, ellipse21, blob, peanut):
        w = 2 * np.pi / body.M
        assert abs(body.radius_grid.sum() * w - body.values.sum() * w) < 1e-10


def test_wulff_dilation(disk1):
    f = BoundaryField.constant(1.0, disk1.M)
    out = geometry.wulff_perturb(disk1, f, 0.3)
    npt.assert_allclose(out.values, 1.3)


def test_wulff_admissible_window(disk1):
    f = BoundaryField.from_function(lambda t: np.cos(2 * t), disk1.M)
    out = geometry.wulff_perturb(disk1, f, 0.2)
    t = disk1.theta_grid
    npt.assert_allclose(out.radius_grid, 1 - 0.6 * np.cos(2 * t), atol=1e-10)
    with pytest.raises(PerturbationTooLarge):
        geometry.wulff_perturb(disk1, f, 0.5)


def test_minkowski_combination(disk1, ellipse21):
    npt.assert_allclose(
        geometry.minkowski_combine(ellipse21, disk1, 0.0).values, ellipse21.values)
    d3 = geometry.disk(3.0)
    npt.assert_allclose(geometry.minkowski_combine(disk1, d3, 0.5).values, 2.0)
    mid = geometry.minkowski_combine(ellipse21, disk1, 0.5)
    assert mid.h(0.0) == pytest.approx(1.5, abs=1e-12)


def test_wulff_equals_minkowski_path(disk1, ellipse21):
    f = BoundaryField(ellipse21.values - disk1.values)
    for t in (0.25, 0.7):
        w = geometry.wulff_perturb(disk1, f, t)
        m = geometry.minkowski_combine(disk1, ellipse21, t)
        npt.assert_array_equal(w.values, m.values)


def test_center_removes_translation(disk1):
    t = spectral.grid(256)
    moved = geometry.SupportFunction2D(1.0 + 5.0 * np.cos(t))
    centered = geometry.center(moved)
    npt.assert_allclose(centered.values, 1.0, atol=1e-12)


def test_center_fixed_point_and_idempotence(ellipse21, blob):
    for body in (ellipse21, blob):
        once = geometry.center(body)
        npt.assert_allclose(once.values, geometry.center(once).values, atol=1e-13)
    npt.assert_allclose(geometry.center(ellipse21).values, ellipse21.values, atol=1e-12)


def test_center_round_trip(blob, rng):
    shift = np.array([0.37, -0.21])
    t = blob.theta_grid
    moved = geometry.SupportFunction2D(
        blob.values + shift[0] * np.cos(t) + shift[1] * np.sin(t))
    back = geometry.center(moved)
    npt.assert_allclose(back.values, blob.values, atol=1e-12)
    npt.assert_allclose(geometry.steiner_point(moved), shift, atol=1e-12)


def test_gauge_disk_and_ellipse(disk1, ellipse21):
    d2 = geometry.disk(2.0)
    x = np.array([0.3, -0.4])
    assert geometry.gauge(d2, x) == pytest.approx(0.25, abs=1e-12)
    assert geometry.gauge(ellipse21, np.array([1.0, 1.0])) == pytest.approx(
        np.sqrt(0.25 + 1.0), abs=1e-10)
    assert geometry.gauge(disk1, np.zeros(2)) == 0.0


def test_gauge_is_one_on_boundary(ellipse21, blob):
    for body in (ellipse21, blob):
        for j in range(0, body.M, 37):
            x = body.boundary_grid[j]
            assert abs(geometry.gauge(body, x) - 1.0) < 1e-10


@settings(max_examples=40, deadline=None)
@given(s=st.floats(min_value=0.0, max_value=1.0),
       j=st.integers(min_value=0, max_value=255))
def test_gauge_homogeneity_on_rays(s, j):
    body = geometry.ellipse(2.0, 1.0)
    x = s * body.boundary_grid[j]
    assert abs(geometry.gauge(body, x) - s) < 1e-8


def test_make_body_dispatch_and_errors():
    d = geometry.make_body({"kind": "disk", "radius": 2.0})
    npt.assert_allclose(d.values, 2.0)
    e = geometry.make_body({"kind": "ellipse", "a": 2.0, "b": 1.0})
    assert e.descriptor["kind"] == "ellipse"
    with pytest.raises(ValueError):
        geometry.make_body({"kind": "pentagon"})
    with pytest.raises(ValueError):
        geometry.disk(-1.0)


def test_hull_body_is_valid_and_contains_centroid(rng):
    pts = rng.normal(size=(40, 2))
    body = geometry.hull_body(pts, smoothing=0.2)
    assert body.radius_grid.min() > 0
    assert body.values.min() > 0  # centered, origin interior


def test_origin_outside_guard():
    t = spectral.grid(256)
    # valid support function whose origin is exterior after no centering
    vals = 1.0 + 1.5 * np.cos(t)
    body = geometry.SupportFunction2D(vals)
    with pytest.raises(OriginOutside):
        body.require_interior_origin()


def test_evenness_flag(disk1, ellipse21, blob, peanut):
    assert disk1.is_even and ellipse21.is_even and peanut.is_even
    assert not blob.is_even


def test_area_of_ellipse(ellipse21):
    assert geometry.area(ellipse21) == pytest.approx(2 * np.pi, abs=1e-10)
