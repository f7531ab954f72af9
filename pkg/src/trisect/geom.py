"""Planar geometry primitives: hulls, diameters, areas, rotations.

Conventions used throughout the package:
  * a point is a length-2 float array (or anything array-like),
  * a polygon / region boundary is an (n, 2) array of vertices in
    counterclockwise order, closed implicitly (last vertex connects
    back to the first),
  * all lengths are O(1) since bodies are normalized to unit area.
"""

import math

import numpy as np

EPS = 1e-9


class DegenerateGeometryError(ValueError):
    """Input geometry is degenerate (collinear points, zero area, ...)."""


def rotate(pt, angle):
    """Rotate a point (or an (n, 2) array of points) about the origin."""
    c, s = math.cos(angle), math.sin(angle)
    pt = np.asarray(pt, dtype=float)
    rot = np.array([[c, -s], [s, c]])
    return pt @ rot.T


def cross2(o, a, b):
    """z-component of (a - o) x (b - o)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points):
    """Counterclockwise convex hull of a point set (monotone chain).

    Collinear points on the hull boundary are dropped.  Raises
    DegenerateGeometryError if the input is all collinear.
    """
    pts = np.unique(np.asarray(points, dtype=float), axis=0)
    if len(pts) < 3:
        raise DegenerateGeometryError("need at least 3 distinct points")
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]

    def half_hull(seq):
        chain = []
        for p in seq:
            while len(chain) > 1 and cross2(chain[-2], chain[-1], p) <= 1e-12:
                chain.pop()
            chain.append(p)
        return chain

    lower = half_hull(pts)
    upper = half_hull(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateGeometryError("points are collinear")
    return np.array(hull)


def polygon_area(boundary):
    """Absolute shoelace area of a closed (implicitly) boundary."""
    b = np.asarray(boundary, dtype=float)
    x, y = b[:, 0], b[:, 1]
    return 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def polygon_diameter(poly):
    """Diameter of a convex CCW polygon by rotating calipers, O(n)."""
    p = np.asarray(poly, dtype=float)
    n = len(p)
    if n == 2:
        return float(np.hypot(*(p[1] - p[0])))
    best = 0.0
    j = 1
    for i in range(n):
        ni = (i + 1) % n
        ex, ey = p[ni, 0] - p[i, 0], p[ni, 1] - p[i, 1]
        # advance the opposite vertex while the supporting distance grows
        while True:
            nj = (j + 1) % n
            if ex * (p[nj, 1] - p[j, 1]) - ey * (p[nj, 0] - p[j, 0]) > 0.0:
                j = nj
            else:
                break
        for q in (j, (j + 1) % n):
            for k in (i, ni):
                d = math.hypot(p[q, 0] - p[k, 0], p[q, 1] - p[k, 1])
                if d > best:
                    best = d
    return best


def points_diameter(points):
    """Max pairwise distance of a point set, vectorized all-pairs."""
    p = np.asarray(points, dtype=float)
    d2 = 0.0
    # chunk rows so the distance matrix never exceeds a few MB
    step = max(1, 2_000_000 // max(len(p), 1))
    for i in range(0, len(p), step):
        block = p[i:i + step]
        dx = block[:, None, 0] - p[None, :, 0]
        dy = block[:, None, 1] - p[None, :, 1]
        d2 = max(d2, float(np.max(dx * dx + dy * dy)))
    return math.sqrt(d2)


def resample_boundary(boundary, sample_count):
    """Densify a closed polyline to >= sample_count points, keeping vertices."""
    b = np.asarray(boundary, dtype=float)
    nxt = np.roll(b, -1, axis=0)
    seg_len = np.hypot(*(nxt - b).T)
    perim = seg_len.sum()
    if perim <= EPS:
        raise DegenerateGeometryError("zero-length boundary")
    out = []
    for i in range(len(b)):
        pieces = max(1, int(math.ceil(sample_count * seg_len[i] / perim)))
        t = np.arange(pieces) / pieces
        out.append(b[i] + t[:, None] * (nxt[i] - b[i]))
    return np.concatenate(out)


def region_diameter(region, sample_count=4096):
    """Diameter of a region given by its closed boundary polyline.

    Samples the boundary (all stored vertices kept), takes the convex
    hull and measures it with rotating calipers; valid for non-convex
    regions because the diameter is hull-invariant.
    """
    b = np.asarray(region, dtype=float)
    if polygon_area(b) <= EPS:
        raise DegenerateGeometryError("region has zero area")
    samples = resample_boundary(b, sample_count)
    return polygon_diameter(convex_hull(samples))


def is_ccw_convex(boundary, tol=EPS):
    """True if every turn of the closed boundary is a left turn (>= -tol)."""
    b = np.asarray(boundary, dtype=float)
    prv = np.roll(b, 1, axis=0)
    nxt = np.roll(b, -1, axis=0)
    cr = ((b[:, 0] - prv[:, 0]) * (nxt[:, 1] - b[:, 1])
          - (b[:, 1] - prv[:, 1]) * (nxt[:, 0] - b[:, 0]))
    return bool(np.all(cr >= -tol))
