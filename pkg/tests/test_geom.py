import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from trisect.geom import (DegenerateGeometryError, convex_hull, is_ccw_convex,
                          points_diameter, polygon_area, polygon_diameter,
                          region_diameter, resample_boundary, rotate)


def naive_hull_vertices(points, tol=1e-12):
    """O(n^3) hull oracle: directed edges with every point on their left."""
    pts = np.asarray(points, dtype=float)
    n = len(pts)
    keep = set()
    for i in range(n):
        d = pts - pts[i]
        for j in range(n):
            if i == j:
                continue
            cr = d[j, 0] * d[:, 1] - d[j, 1] * d[:, 0]
            if np.all(cr >= -tol):
                keep.add(i)
                keep.add(j)
    return pts[sorted(keep)]


def all_pairs_diameter(points):
    p = np.asarray(points, dtype=float)
    dx = p[:, None, 0] - p[None, :, 0]
    dy = p[:, None, 1] - p[None, :, 1]
    return math.sqrt(np.max(dx * dx + dy * dy))


def test_hull_drops_interior_point():
    pts = [(0, 0), (1, 0), (0, 1), (0.25, 0.25)]
    hull = convex_hull(pts)
    assert len(hull) == 3
    assert {tuple(p) for p in hull} == {(0, 0), (1, 0), (0, 1)}


def test_hull_square():
    pts = [(0, 0), (1, 0), (1, 1), (0, 1)]
    hull = convex_hull(pts)
    assert {tuple(p) for p in hull} == set(map(tuple, pts))
    assert is_ccw_convex(hull)


def test_hull_matches_naive_oracle_on_disk_points():
    rng = np.random.default_rng(7)
    r = np.sqrt(rng.uniform(0, 1, 200))
    phi = rng.uniform(0, 2 * math.pi, 200)
    pts = np.column_stack((r * np.cos(phi), r * np.sin(phi)))
    hull = convex_hull(pts)
    expected = naive_hull_vertices(pts)
    got = hull[np.lexsort((hull[:, 1], hull[:, 0]))]
    expected = expected[np.lexsort((expected[:, 1], expected[:, 0]))]
    assert np.allclose(got, expected, atol=1e-12)


def test_hull_rejects_collinear():
    with pytest.raises(DegenerateGeometryError):
        convex_hull([(0, 0), (1, 1), (2, 2), (3, 3)])


def test_diameter_unit_square():
    assert polygon_diameter([(0, 0), (1, 0), (1, 1), (0, 1)]) == pytest.approx(
        math.sqrt(2), abs=1e-12)


def test_diameter_equilateral_triangle():
    h = math.sqrt(3) / 2
    assert polygon_diameter([(0, 0), (1, 0), (0.5, h)]) == pytest.approx(1, abs=1e-12)


def test_diameter_matches_all_pairs_on_random_hulls():
    rng = np.random.default_rng(3)
    for _ in range(50):
        pts = rng.normal(size=(64, 2))
        hull = convex_hull(pts)
        assert polygon_diameter(hull) == pytest.approx(
            all_pairs_diameter(hull), abs=1e-12)


def test_area_unit_square():
    assert polygon_area([(0, 0), (1, 0), (1, 1), (0, 1)]) == pytest.approx(1.0)


def test_area_equilateral_triangle_side_2():
    h = math.sqrt(3)
    assert polygon_area([(0, 0), (2, 0), (1, h)]) == pytest.approx(
        math.sqrt(3), abs=1e-12)


def test_area_polygon_inscribed_in_circle():
    th = np.linspace(0, 2 * math.pi, 4096, endpoint=False)
    poly = np.column_stack((np.cos(th), np.sin(th)))
    assert polygon_area(poly) == pytest.approx(math.pi, abs=1e-5)


def test_rotate_basics():
    assert np.allclose(rotate((1, 0), 2 * math.pi / 3), (-0.5, math.sqrt(3) / 2))
    assert np.allclose(rotate((0, 0), 1.234), (0, 0))


def test_rotate_three_times_identity():
    rng = np.random.default_rng(0)
    p = rng.normal(size=2)
    q = p
    for _ in range(3):
        q = rotate(q, 2 * math.pi / 3)
    assert np.allclose(q, p, atol=1e-12)


def test_region_diameter_disk():
    th = np.linspace(0, 2 * math.pi, 256, endpoint=False)
    disk = np.column_stack((np.cos(th), np.sin(th)))
    assert region_diameter(disk, 4096) == pytest.approx(2.0, abs=1e-5)


def test_region_diameter_square():
    sq = np.array([(0, 0), (1, 0), (1, 1), (0, 1)], dtype=float)
    assert region_diameter(sq, 256) == pytest.approx(math.sqrt(2), abs=1e-12)


def test_region_diameter_hexagon_trisection_subset(hexagon):
    from trisect import standard_trisection
    tri = standard_trisection(hexagon)
    expected = 2 ** -0.5 * (1 / math.tan(math.pi / 6)) ** 0.5
    assert region_diameter(tri.regions[0], 4096) == pytest.approx(expected, abs=1e-4)


def test_region_diameter_monotone_in_samples():
    rng = np.random.default_rng(5)
    for _ in range(10):
        hull = convex_hull(rng.normal(size=(20, 2)))
        for k in (64, 128, 256):
            assert (region_diameter(hull, 2 * k)
                    >= region_diameter(hull, k) - 1e-12)


def test_region_diameter_rejects_degenerate():
    with pytest.raises(DegenerateGeometryError):
        region_diameter(np.array([(0, 0), (1, 0), (2, 0)], dtype=float), 64)


def test_resample_keeps_vertices():
    sq = np.array([(0, 0), (1, 0), (1, 1), (0, 1)], dtype=float)
    dense = resample_boundary(sq, 64)
    for v in sq:
        assert np.min(np.hypot(*(dense - v).T)) < 1e-12


# integer coordinates keep the cases well-scaled: predicate robustness is
# epsilon-based and only promised for O(1) geometry
@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-100, 100), st.integers(-100, 100)),
                min_size=4, max_size=60, unique=True))
def test_hull_convex_and_contains_inputs(coords):
    pts = np.asarray(coords, dtype=float)
    try:
        hull = convex_hull(pts)
    except DegenerateGeometryError:
        return
    assert is_ccw_convex(hull, tol=1e-7)
    # every point on or inside: left of (or on) every directed hull edge
    nxt = np.roll(hull, -1, axis=0)
    for p in pts:
        cr = ((nxt[:, 0] - hull[:, 0]) * (p[1] - hull[:, 1])
              - (nxt[:, 1] - hull[:, 1]) * (p[0] - hull[:, 0]))
        assert np.all(cr >= -1e-7 * max(1.0, np.abs(pts).max()))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-50, 50), st.integers(-50, 50)),
                min_size=4, max_size=40, unique=True))
def test_calipers_equals_all_pairs(coords):
    pts = np.asarray(coords, dtype=float)
    try:
        hull = convex_hull(pts)
    except DegenerateGeometryError:
        return
    assert polygon_diameter(hull) == pytest.approx(
        all_pairs_diameter(hull), rel=0, abs=1e-9)
    assert points_diameter(hull) == pytest.approx(
        all_pairs_diameter(hull), rel=0, abs=1e-9)


def test_triangle_area_cross_formula():
    rng = np.random.default_rng(11)
    for _ in range(100):
        a, b, c = rng.normal(size=(3, 2))
        expected = 0.5 * abs((b[0] - a[0]) * (c[1] - a[1])
                             - (b[1] - a[1]) * (c[0] - a[0]))
        assert polygon_area([a, b, c]) == pytest.approx(expected, abs=1e-12)
