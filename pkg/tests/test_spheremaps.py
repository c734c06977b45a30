"""Quadrature of pulled-back volume forms on the 3-sphere."""

import math

import numpy as np
import pytest

from stufflekit.spheremaps import (
    VOL_S3,
    CollarMismatchError,
    DegenerateCapError,
    QuadratureGrid,
    SphereMap,
    antipodal_map,
    cap_extension,
    constant_ball_map,
    degree,
    identity_map,
    mercator,
    nambu_goto_alpha,
    quaternion_multiply,
    quaternion_square,
    sphere_volume,
    suspension_map,
    suspension_point,
)

GRID = QuadratureGrid(20)


def mod_gap(a: float, b: float) -> float:
    d = abs((a - b) % 1.0)
    return min(d, 1.0 - d)


def test_grid_weights_sum_to_sphere_area():
    for order in (8, 16, 24):
        grid = QuadratureGrid(order)
        assert abs(grid.s2_weights.sum() - 4 * math.pi) < 1e-12
        nodes, weights = grid.lambda_rule(-1.0, 2.5)
        assert abs(weights.sum() - 3.5) < 1e-12
        assert len(nodes) == order


def test_grid_refinement_doubles():
    grid = QuadratureGrid(8)
    fine = grid.refined()
    assert fine.order == 16
    assert len(fine.s2_nodes) == 4 * len(grid.s2_nodes)


def test_sphere_volume():
    assert abs(sphere_volume(GRID) - VOL_S3) < 1e-8


def test_degree_identity_and_antipodal():
    assert abs(degree(identity_map(), GRID) - 1.0) < 1e-6
    assert abs(degree(antipodal_map(), GRID) - 1.0) < 1e-6


def test_degree_quaternion_square():
    assert abs(degree(quaternion_square(), GRID) - 2.0) < 1e-4


def test_quaternion_square_preimage_count():
    # regular-value oracle: q^2 = v has the two solutions +/- sqrt(v), and the
    # pullback determinant is positive at both, so the degree is 2
    rng = np.random.default_rng(5)
    v = rng.normal(size=4)
    v /= np.linalg.norm(v)
    sqrt_v = (v + np.array([1.0, 0, 0, 0])) / np.linalg.norm(v + np.array([1.0, 0, 0, 0]))
    preimages = np.stack([sqrt_v, -sqrt_v])
    squared = quaternion_multiply(preimages, preimages)
    assert np.allclose(squared, np.stack([v, v]), atol=1e-12)
    from stufflekit.spheremaps import _oriented_frames, _qsquare_jacobian

    frames = _oriented_frames(preimages)
    jac = _qsquare_jacobian(preimages)
    image_frames = _oriented_frames(squared)
    signs = []
    for i in range(2):
        rows = jac[i] @ frames[i].T  # images of the domain frame vectors
        mat = rows.T @ image_frames[i].T
        signs.append(np.sign(np.linalg.det(mat)))
    assert sum(signs) == 2.0


def test_degree_finite_difference_matches_analytic():
    fd = SphereMap("qsquare-fd", quaternion_square().fn)
    assert abs(degree(fd, QuadratureGrid(16)) - 2.0) < 1e-4


def test_degree_quadrature_order():
    coarse = abs(degree(quaternion_square(), QuadratureGrid(4)) - 2.0)
    fine = abs(degree(quaternion_square(), QuadratureGrid(8)) - 2.0)
    assert fine < 1e-10 or fine * 4 <= coarse


def test_degree_rejects_wrong_domain():
    with pytest.raises(ValueError):
        degree(suspension_map(), GRID)


def test_non_finite_maps_raise():
    bad = SphereMap("bad", lambda p: np.asarray(p) * np.nan)
    with pytest.raises(ArithmeticError):
        degree(bad, QuadratureGrid(4))


def test_mercator_examples():
    value, boundary = mercator(0.0, GRID)
    assert abs(value - 1.0) < 1e-8
    pts = boundary(GRID.s2_nodes[:8])
    assert np.allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-12)
    assert np.allclose(pts[:, 0], 0.0, atol=1e-12)  # the equator two-sphere

    near_empty, _ = mercator(-math.pi + 1e-3, GRID)
    assert near_empty < 1e-5


def test_mercator_closed_form():
    for lam in np.linspace(-2.8, 2.8, 11):
        value, _ = mercator(float(lam), GRID)
        closed = 1.0 + (lam + math.sin(lam)) / math.pi
        assert abs(value - closed) < 1e-8, lam


def test_mercator_monotone_on_grid():
    lams = np.linspace(-math.pi + 0.02, math.pi - 0.02, 101)
    values = [mercator(float(lam), QuadratureGrid(8))[0] for lam in lams]
    assert all(a < b for a, b in zip(values, values[1:]))


def test_mercator_endpoint_rejected():
    with pytest.raises(DegenerateCapError):
        mercator(math.pi, GRID)


def test_alpha_constant_extension_is_zero():
    a = nambu_goto_alpha(constant_ball_map(side="plus"),
                         constant_ball_map(side="minus"), GRID)
    assert mod_gap(a, 0.0) < 1e-10


def test_alpha_matches_cap_volume():
    for lam in (-2.0, -0.5, 1.0):
        plus = cap_extension(lam, "plus")
        minus = cap_extension(lam, "minus")
        a = nambu_goto_alpha(plus, minus, GRID)
        closed = 1.0 + (lam + math.sin(lam)) / math.pi
        assert mod_gap(a, closed) < 1e-5, lam


def test_alpha_invariant_under_twisting_either_side():
    lam = 0.8
    plus = cap_extension(lam, "plus")
    minus = cap_extension(lam, "minus")
    base = nambu_goto_alpha(plus, minus, GRID)

    def rotated(lambdas, u):
        # latitude-dependent rotation about the z-axis; trivial at the overlap
        angle = lambdas  # vanishes at lam = 0
        cos_a, sin_a = np.cos(angle), np.sin(angle)
        ru = np.empty_like(u)
        ru[:, 0] = cos_a * u[:, 0] - sin_a * u[:, 1]
        ru[:, 1] = sin_a * u[:, 0] + cos_a * u[:, 1]
        ru[:, 2] = u[:, 2]
        return ru

    twisted_minus = SphereMap(
        "twisted-minus", lambda lam_, u: minus.fn(lam_, rotated(lam_, u)),
        domain="ball", lam_range=(0.0, math.pi),
    )
    assert abs(nambu_goto_alpha(plus, twisted_minus, GRID) - base) < 1e-5

    twisted_plus = SphereMap(
        "twisted-plus", lambda lam_, u: plus.fn(lam_, rotated(lam_, u)),
        domain="ball", lam_range=(-math.pi, 0.0),
    )
    assert abs(nambu_goto_alpha(twisted_plus, minus, GRID) - base) < 1e-5


def test_alpha_collar_mismatch_detected():
    plus = cap_extension(0.4, "plus")
    minus = cap_extension(-0.4, "minus")  # boundary spheres differ
    with pytest.raises(CollarMismatchError):
        nambu_goto_alpha(plus, minus, GRID)


def test_suspension_point_shape():
    lam = np.array([0.0, math.pi / 2])
    u = np.array([[0.0, 0.0, 1.0], [0.0, 1.0, 0.0]])
    pts = suspension_point(lam, u)
    assert np.allclose(np.linalg.norm(pts, axis=1), 1.0)
    assert np.allclose(pts[0], [0.0, 0.0, 0.0, 1.0])
