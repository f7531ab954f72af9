import json
import math

import numpy as np
import pytest
from scipy.spatial.distance import directed_hausdorff

from trisect.bodies import (H_EPS_A_MAX, SECTOR, SymmetricBody, h_eps_side_b,
                            load_body, make_h_eps, make_h_tilde,
                            make_regular_polygon, make_reuleaux,
                            normalize_unit_area, random_body, validate)
from trisect.trisection import (h_eps_dpx, inscribed_ball_radius,
                                nearest_boundary_point, solve_a0)

REULEAUX_WIDTH = (2.0 / (math.pi - math.sqrt(3.0))) ** 0.5


def hausdorff(a, b):
    return max(directed_hausdorff(a, b)[0], directed_hausdorff(b, a)[0])


def profiles_match_up_to_rotation(b1, b2, tol=1e-6):
    """Compare radius functions after aligning the min-radius directions."""
    thetas = np.linspace(0, 2 * math.pi, 720, endpoint=False)
    m1, _ = nearest_boundary_point(b1)
    m2, _ = nearest_boundary_point(b2)
    shift = math.atan2(m1[1], m1[0]) - math.atan2(m2[1], m2[0])
    r1 = b1.radius_at(thetas)
    r2 = b2.radius_at(thetas - shift)
    return np.max(np.abs(r1 - r2)) < tol


@pytest.mark.parametrize("n", [1, 2, 3, 4, 7])
def test_regular_polygon_unit_area(n):
    assert make_regular_polygon(n).area == pytest.approx(1.0, abs=1e-6)


def test_regular_polygon_apothem_values(triangle, hexagon):
    assert inscribed_ball_radius(triangle) == pytest.approx(3 ** -0.75, abs=1e-9)
    expected_hex = 6 ** -0.5 * (1 / math.tan(math.pi / 6)) ** 0.5
    assert inscribed_ball_radius(hexagon) == pytest.approx(expected_hex, abs=1e-9)


def test_regular_polygon_rejects_zero():
    with pytest.raises(ValueError):
        make_regular_polygon(0)


def test_reuleaux_unit_area(reuleaux):
    assert reuleaux.area == pytest.approx(1.0, abs=1e-6)


def test_reuleaux_constant_width(reuleaux):
    pts = reuleaux.boundary
    for k in range(360):
        u = np.array([math.cos(k * math.pi / 360), math.sin(k * math.pi / 360)])
        width = np.max(pts @ u) - np.min(pts @ u)
        assert width == pytest.approx(REULEAUX_WIDTH, abs=1e-6)


def test_reuleaux_vertex_distance(reuleaux):
    assert reuleaux.max_radius() == pytest.approx(
        REULEAUX_WIDTH / math.sqrt(3.0), abs=1e-9)


def test_h_eps_side_b_endpoints():
    assert h_eps_side_b(0.0) == pytest.approx(2 * 3 ** -0.25, abs=1e-12)
    assert h_eps_side_b(H_EPS_A_MAX) == pytest.approx(H_EPS_A_MAX, abs=1e-12)


def test_h_eps_side_b_area_identity():
    for a in np.linspace(0, H_EPS_A_MAX, 57):
        b = h_eps_side_b(a)
        area = math.sqrt(3) / 4 * ((b + 2 * a) ** 2 - 3 * a * a)
        assert area == pytest.approx(1.0, abs=1e-12)


def test_h_eps_side_b_rejects_out_of_range():
    with pytest.raises(ValueError):
        h_eps_side_b(-0.1)
    with pytest.raises(ValueError):
        h_eps_side_b(H_EPS_A_MAX + 0.01)


def test_h_eps_family_endpoints_match_regular_polygons(triangle, hexagon):
    assert profiles_match_up_to_rotation(make_h_eps(0.0), triangle)
    assert profiles_match_up_to_rotation(make_h_eps(H_EPS_A_MAX), hexagon)


@pytest.mark.parametrize("a", [0.0, 0.1, 0.3, 0.55, H_EPS_A_MAX])
def test_h_eps_passes_validation(a):
    assert validate(make_h_eps(a)).clean


def test_h_eps_interpolates_continuously():
    for a in (0.05, 0.2, 0.45):
        b1 = make_h_eps(a).boundary
        b2 = make_h_eps(a + 1e-4).boundary
        assert hausdorff(b1, b2) <= 1e-3


def test_h_tilde_unit_area(h_tilde):
    assert h_tilde.area == pytest.approx(1.0, abs=1e-6)


def test_h_tilde_max_radius_value(h_tilde):
    assert h_tilde.max_radius() == pytest.approx(0.769262, abs=1e-4)


def test_h_tilde_was_shrunk(h_tilde):
    # rounding corners adds area, so the unit-area rescale must shrink
    assert h_tilde.max_radius() < h_eps_dpx(solve_a0())


def test_h_tilde_is_triangle_circle_intersection(h_tilde):
    # every boundary point lies on either the circle of radius R or on an
    # edge of the enclosing equilateral triangle (apothem rho)
    rho = inscribed_ball_radius(h_tilde)
    big_r = h_tilde.max_radius()
    pts = h_tilde.boundary
    r = np.hypot(pts[:, 0], pts[:, 1])
    on_circle = np.abs(r - big_r) < 1e-6
    dirs = np.array([[math.cos(-math.pi / 2 + k * SECTOR),
                      math.sin(-math.pi / 2 + k * SECTOR)] for k in range(3)])
    on_edges = np.any(np.abs(pts @ dirs.T - rho) < 1e-6, axis=1)
    assert np.all(on_circle | on_edges)


@pytest.mark.parametrize("maker", [
    lambda: make_regular_polygon(1),
    lambda: make_regular_polygon(2),
    make_reuleaux,
    lambda: make_h_eps(0.3),
    make_h_tilde,
])
def test_constructors_validate_clean(maker):
    assert validate(maker()).clean


@pytest.mark.parametrize("maker", [
    lambda: make_regular_polygon(1),
    lambda: make_regular_polygon(3),
    make_reuleaux,
    lambda: make_h_eps(0.4),
    make_h_tilde,
])
def test_min_radius_equals_triangle_apothem(maker):
    body = maker()
    assert float(np.min(body.sector_r)) == pytest.approx(
        inscribed_ball_radius(body), abs=1e-6)


def test_normalize_idempotent(hexagon):
    again = normalize_unit_area(hexagon)
    assert np.allclose(again.sector_r, hexagon.sector_r, atol=1e-12)


def test_normalize_inverts_scaling(hexagon):
    scaled = hexagon.scaled(2.0)
    back = normalize_unit_area(scaled)
    assert np.allclose(back.sector_r, hexagon.sector_r, atol=1e-9)


def test_validate_flags_convexity_violation(hexagon):
    r = hexagon.sector_r.copy()
    r[len(r) // 2] *= 2.0
    bad = SymmetricBody(sector_theta=hexagon.sector_theta, sector_r=r,
                        label="bad")
    report = validate(bad)
    assert not report.convex_ok and not report.clean


def test_validate_flags_truncated_coverage(hexagon):
    keep = hexagon.sector_theta < math.pi / 2
    bad = SymmetricBody(sector_theta=hexagon.sector_theta[keep],
                        sector_r=hexagon.sector_r[keep], label="bad")
    report = validate(bad)
    assert not report.coverage_ok and not report.clean


def test_load_body_roundtrip(tmp_path, hexagon):
    path = tmp_path / "hex.json"
    path.write_text(json.dumps(hexagon.to_dict()))
    loaded = load_body(str(path))
    assert loaded.label == hexagon.label
    assert np.allclose(loaded.sector_r, hexagon.sector_r)
    assert validate(loaded).clean


def test_random_bodies_are_clean():
    rng = np.random.default_rng(42)
    for _ in range(10):
        assert validate(random_body(rng)).clean
