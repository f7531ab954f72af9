"""Constructors for 3-rotationally symmetric planar convex bodies.

A body is stored as a radial boundary profile r(theta) over one
fundamental sector [0, 2*pi/3); the full boundary is the profile
replicated at +2*pi/3 and +4*pi/3.  All constructors return unit-area
bodies centered at the origin.
"""

import json
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .geom import DegenerateGeometryError, is_ccw_convex, polygon_area, rotate

SECTOR = 2.0 * math.pi / 3.0
DEFAULT_SECTOR_SAMPLES = 1024
MAX_PROFILE_SPACING = SECTOR / 256.0

# largest short-edge length for the H_eps family (the regular hexagon)
H_EPS_A_MAX = 2.0 ** 0.5 * 3.0 ** -0.75


@dataclass(frozen=True, eq=False)
class SymmetricBody:
    """Unit-area convex body with threefold rotational symmetry.

    sector_theta/sector_r: sampled radial profile over [0, 2*pi/3).
    vertices_hint: exact corner points inside the fundamental sector.
    outline_hint: optional exact drawing path for the full boundary,
        a tuple of ("M", x, y) / ("L", x, y) / ("A", radius, x, y)
        segments (arc segments sweep CCW about the origin).
    """

    sector_theta: np.ndarray
    sector_r: np.ndarray
    label: str
    vertices_hint: tuple = ()
    outline_hint: tuple = ()

    @cached_property
    def boundary(self):
        """Full boundary polygon, CCW, one point per profile sample."""
        sector = np.column_stack((
            self.sector_r * np.cos(self.sector_theta),
            self.sector_r * np.sin(self.sector_theta),
        ))
        return np.concatenate([rotate(sector, k * SECTOR) for k in range(3)])

    @cached_property
    def boundary_angles(self):
        return np.concatenate([self.sector_theta + k * SECTOR for k in range(3)])

    @cached_property
    def area(self):
        return polygon_area(self.boundary)

    def radius_at(self, theta):
        """Boundary distance from the origin along direction(s) theta.

        The boundary between profile samples is the straight chord, so
        this is exact for polygonal bodies whose corners are samples.
        """
        theta = np.mod(np.asarray(theta, dtype=float), 2.0 * math.pi)
        scalar = theta.ndim == 0
        theta = np.atleast_1d(theta)
        ang = self.boundary_angles
        pts = self.boundary
        n = len(pts)
        idx = np.searchsorted(ang, theta)
        i1 = (idx - 1) % n
        i2 = idx % n
        p1, p2 = pts[i1], pts[i2]
        d = np.column_stack((np.cos(theta), np.sin(theta)))
        num = p1[:, 0] * p2[:, 1] - p1[:, 1] * p2[:, 0]
        den = (d[:, 0] * (p2[:, 1] - p1[:, 1]) - d[:, 1] * (p2[:, 0] - p1[:, 0]))
        exact = np.abs(den) < 1e-14
        r = np.where(exact, np.hypot(*p1.T), num / np.where(exact, 1.0, den))
        return float(r[0]) if scalar else r

    def max_radius(self):
        """Max distance from the center to the boundary (attained at a sample)."""
        return float(np.max(self.sector_r))

    def min_radius(self):
        """Min distance from the center to the boundary, exact over chords."""
        pts = self.boundary
        nxt = np.roll(pts, -1, axis=0)
        e = nxt - pts
        t = np.clip(-np.einsum("ij,ij->i", pts, e)
                    / np.maximum(np.einsum("ij,ij->i", e, e), 1e-30), 0.0, 1.0)
        feet = pts + t[:, None] * e
        return float(np.min(np.hypot(feet[:, 0], feet[:, 1])))

    def scaled(self, factor, label=None):
        """Uniform dilation about the center."""
        return SymmetricBody(
            sector_theta=self.sector_theta,
            sector_r=self.sector_r * factor,
            label=self.label if label is None else label,
            vertices_hint=tuple((x * factor, y * factor) for x, y in self.vertices_hint),
            outline_hint=tuple(
                (seg[0],) + tuple(v * factor for v in seg[1:]) for seg in self.outline_hint
            ),
        )

    def to_dict(self):
        return {
            "label": self.label,
            "sector_profile": [[float(t), float(r)]
                               for t, r in zip(self.sector_theta, self.sector_r)],
        }


@dataclass(frozen=True)
class ValidationReport:
    convex_ok: bool
    symmetry_ok: bool
    coverage_ok: bool
    positive_ok: bool
    area_ok: bool
    area: float
    messages: tuple = field(default=())

    @property
    def clean(self):
        return (self.convex_ok and self.symmetry_ok and self.coverage_ok
                and self.positive_ok and self.area_ok)


def _make_body(thetas, radii, label, vertices_hint=(), outline_hint=()):
    thetas = np.asarray(thetas, dtype=float)
    radii = np.asarray(radii, dtype=float)
    order = np.argsort(thetas)
    thetas, radii = thetas[order], radii[order]
    keep = np.concatenate(([True], np.diff(thetas) > 1e-12))
    return SymmetricBody(sector_theta=thetas[keep], sector_r=radii[keep],
                         label=label, vertices_hint=tuple(vertices_hint),
                         outline_hint=tuple(outline_hint))


def _sector_angles(corner_thetas=(), samples=DEFAULT_SECTOR_SAMPLES):
    grid = np.arange(samples) * SECTOR / samples
    corners = np.mod(np.asarray(corner_thetas, dtype=float), SECTOR)
    return np.union1d(grid, corners)


def _radius_on_polygon(vertices):
    """Radius function of a convex polygon (CCW, origin interior)."""
    pts = np.asarray(vertices, dtype=float)
    ang = np.mod(np.arctan2(pts[:, 1], pts[:, 0]), 2.0 * math.pi)
    order = np.argsort(ang)
    pts, ang = pts[order], ang[order]
    n = len(pts)

    def r_fn(theta):
        theta = np.mod(np.atleast_1d(np.asarray(theta, dtype=float)), 2.0 * math.pi)
        idx = np.searchsorted(ang, theta)
        p1, p2 = pts[(idx - 1) % n], pts[idx % n]
        d = np.column_stack((np.cos(theta), np.sin(theta)))
        num = p1[:, 0] * p2[:, 1] - p1[:, 1] * p2[:, 0]
        den = d[:, 0] * (p2[:, 1] - p1[:, 1]) - d[:, 1] * (p2[:, 0] - p1[:, 0])
        exact = np.abs(den) < 1e-14
        return np.where(exact, np.hypot(*p1.T), num / np.where(exact, 1.0, den))

    return r_fn


def _polygon_outline_hint(vertices):
    pts = np.asarray(vertices, dtype=float)
    hint = [("M", float(pts[0, 0]), float(pts[0, 1]))]
    hint += [("L", float(x), float(y)) for x, y in pts[1:]]
    return tuple(hint)


def regular_polygon_apothem(m):
    """Apothem of the unit-area regular m-gon: m^(-1/2) cot^(1/2)(pi/m)."""
    return m ** -0.5 * (1.0 / math.tan(math.pi / m)) ** 0.5


def make_regular_polygon(n, samples=DEFAULT_SECTOR_SAMPLES):
    """Unit-area regular 3n-gon, one vertex on the positive x-axis."""
    if n < 1:
        raise ValueError("edge count must be a positive multiple of 3")
    m = 3 * n
    apo = regular_polygon_apothem(m)
    r_vert = apo / math.cos(math.pi / m)
    vert_angles = 2.0 * math.pi * np.arange(m) / m
    verts = r_vert * np.column_stack((np.cos(vert_angles), np.sin(vert_angles)))

    def r_fn(theta):
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        delta = np.mod(theta, 2.0 * math.pi / m) - math.pi / m
        return apo / np.cos(delta)

    thetas = _sector_angles(vert_angles, samples)
    hint = [(float(r_vert * math.cos(a)), float(r_vert * math.sin(a)))
            for a in vert_angles if 0.0 <= a % (2 * math.pi) < SECTOR - 1e-12]
    return _make_body(thetas, r_fn(thetas), f"regular:{m}",
                      vertices_hint=hint, outline_hint=_polygon_outline_hint(verts))


def make_reuleaux(samples=4 * DEFAULT_SECTOR_SAMPLES):
    """Unit-area Reuleaux triangle; one flat-side vertex on the +y axis."""
    a = (2.0 / (math.pi - math.sqrt(3.0))) ** 0.5  # width = inner-triangle side
    r0 = a / math.sqrt(3.0)  # center-to-vertex distance
    vert_angles = np.array([math.pi / 2.0 + k * SECTOR for k in range(3)])
    verts = r0 * np.column_stack((np.cos(vert_angles), np.sin(vert_angles)))

    def r_fn(theta):
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        # each arc of radius a is centered at the opposite vertex; arc
        # midpoints lie at the antipodes of the vertex directions
        offset = np.mod(theta + math.pi / 2.0 + SECTOR / 2.0, SECTOR) - SECTOR / 2.0
        center = np.column_stack((np.cos(theta - offset + math.pi),
                                  np.sin(theta - offset + math.pi))) * r0
        d = np.column_stack((np.cos(theta), np.sin(theta)))
        b = np.einsum("ij,ij->i", d, center)
        return b + np.sqrt(b * b - r0 * r0 + a * a)

    thetas = _sector_angles(vert_angles, samples)
    hint = [("M", float(verts[0, 0]), float(verts[0, 1]))]
    for k in (1, 2, 0):
        hint.append(("A", a, float(verts[k, 0]), float(verts[k, 1])))
    hints_in_sector = [tuple(v) for v, ang in zip(verts, vert_angles)
                       if 0.0 <= ang % (2 * math.pi) < SECTOR - 1e-12]
    return _make_body(thetas, r_fn(thetas), "reuleaux",
                      vertices_hint=hints_in_sector, outline_hint=tuple(hint))


def h_eps_side_b(a):
    """Long-side length making the alternating-side hexagon unit area."""
    if not -1e-12 <= a <= H_EPS_A_MAX + 1e-12:
        raise ValueError(f"a must lie in [0, {H_EPS_A_MAX:.6f}]")
    return -2.0 * a + math.sqrt(4.0 / math.sqrt(3.0) + 3.0 * a * a)


def _h_eps_vertices(a):
    """Vertices of the unit-area hexagon with alternating sides a, b.

    The hexagon sits inside an equilateral triangle of side b + 2a with
    three corner triangles of side a removed; one long edge's midpoint
    lies on the negative y-axis.
    """
    b = h_eps_side_b(a)
    side = b + 2.0 * a
    r_corner = side / math.sqrt(3.0)
    corner_angles = [math.pi / 2.0 + k * SECTOR for k in range(3)]
    corners = [np.array([r_corner * math.cos(t), r_corner * math.sin(t)])
               for t in corner_angles]
    verts = []
    for k in range(3):
        c0, c1 = corners[k], corners[(k + 1) % 3]
        u = (c1 - c0) / side
        verts.append(c0 + a * u)
        verts.append(c1 - a * u)
    return np.array(verts)


def make_h_eps(a, samples=DEFAULT_SECTOR_SAMPLES):
    """Unit-area 3-symmetric hexagon with alternating side lengths a, b."""
    verts = _h_eps_vertices(a)
    # drop duplicated vertices at the triangle endpoint a = 0
    keep = [v for i, v in enumerate(verts)
            if np.hypot(*(v - verts[(i + 1) % len(verts)])) > 1e-12]
    verts = np.array(keep)
    r_fn = _radius_on_polygon(verts)
    vert_angles = np.mod(np.arctan2(verts[:, 1], verts[:, 0]), 2 * math.pi)
    thetas = _sector_angles(vert_angles, samples)
    hints = [tuple(v) for v, ang in zip(verts, vert_angles)
             if 0.0 <= ang % (2 * math.pi) < SECTOR - 1e-12]
    order = np.argsort(vert_angles)
    return _make_body(thetas, r_fn(thetas), f"h_eps:{a:.6f}",
                      vertices_hint=hints,
                      outline_hint=_polygon_outline_hint(verts[order]))


def make_h_tilde(samples=4 * DEFAULT_SECTOR_SAMPLES):
    """Optimal body: H_eps at the crossing parameter with its short edges
    replaced by circular arcs about the center, rescaled to unit area."""
    from .trisection import h_eps_dpx, solve_a0

    a0 = solve_a0()
    verts = _h_eps_vertices(a0)
    r0 = h_eps_dpx(a0)
    vert_angles = np.mod(np.arctan2(verts[:, 1], verts[:, 0]), 2 * math.pi)
    order = np.argsort(vert_angles)
    verts, vert_angles = verts[order], vert_angles[order]
    edge_fn = _radius_on_polygon(verts)

    # the short edges straddle the corner directions of the enclosing triangle
    corner_dirs = np.array([math.pi / 2.0 + k * SECTOR for k in range(3)])
    half_span = math.asin(0.5 * a0 / r0)

    def r_fn(theta):
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        offset = np.abs(np.mod(theta - math.pi / 2.0 + SECTOR / 2.0, SECTOR)
                        - SECTOR / 2.0)
        return np.where(offset <= half_span, r0, edge_fn(theta))

    thetas = _sector_angles(vert_angles, samples)
    raw = _make_body(thetas, r_fn(thetas), "h_tilde",
                     vertices_hint=[tuple(v) for v, ang in zip(verts, vert_angles)
                                    if ang < SECTOR - 1e-12])
    body = normalize_unit_area(raw)
    # exact outline: alternating long edges and corner arcs, post-scaling
    s = 1.0 / math.sqrt(raw.area)
    sv = verts * s
    hint = [("M", float(sv[0, 0]), float(sv[0, 1]))]
    for i in range(1, len(sv) + 1):
        v = sv[i % len(sv)]
        prev_ang, ang = vert_angles[i - 1], vert_angles[i % len(sv)]
        gap = (ang - prev_ang) % (2 * math.pi)
        kind = ("A", s * r0) if gap < 2.2 * half_span else ("L",)
        hint.append(kind + (float(v[0]), float(v[1])))
    return SymmetricBody(sector_theta=body.sector_theta, sector_r=body.sector_r,
                         label="h_tilde", vertices_hint=body.vertices_hint,
                         outline_hint=tuple(hint))


def normalize_unit_area(body):
    """Uniformly dilate so the reconstructed boundary has unit area."""
    area = body.area
    if area <= 1e-12:
        raise DegenerateGeometryError("body has zero area")
    return body.scaled(1.0 / math.sqrt(area))


def validate(body):
    """Check convexity, symmetry/coverage of the profile, and unit area."""
    msgs = []
    thetas = np.asarray(body.sector_theta, dtype=float)
    radii = np.asarray(body.sector_r, dtype=float)

    positive_ok = bool(np.all(radii > 0.0) and np.all(np.isfinite(radii)))
    if not positive_ok:
        msgs.append("profile has non-positive or non-finite radii")

    symmetry_ok = bool(np.all(thetas >= 0.0) and np.all(thetas < SECTOR)
                       and np.all(np.diff(thetas) > 0.0))
    if not symmetry_ok:
        msgs.append("profile angles leave the fundamental sector [0, 2pi/3)")

    gaps = np.diff(np.append(thetas, thetas[0] + SECTOR))
    coverage_ok = symmetry_ok and bool(np.max(gaps) <= MAX_PROFILE_SPACING + 1e-12)
    if symmetry_ok and not coverage_ok:
        msgs.append(f"profile spacing exceeds {MAX_PROFILE_SPACING:.6f}")

    convex_ok = positive_ok and is_ccw_convex(body.boundary, tol=1e-9)
    if positive_ok and not convex_ok:
        msgs.append("reconstructed boundary is not convex")

    area = float(body.area) if positive_ok else 0.0
    area_ok = abs(area - 1.0) <= 1e-6
    if not area_ok:
        msgs.append(f"area {area:.8f} deviates from 1 by more than 1e-6")

    return ValidationReport(convex_ok=convex_ok, symmetry_ok=symmetry_ok,
                            coverage_ok=coverage_ok, positive_ok=positive_ok,
                            area_ok=area_ok, area=area, messages=tuple(msgs))


def load_body(source):
    """Load a custom body from a JSON file path, JSON text, or dict."""
    if isinstance(source, dict):
        doc = source
    else:
        text = str(source)
        if text.lstrip().startswith("{"):
            doc = json.loads(text)
        else:
            with open(text) as fh:
                doc = json.load(fh)
    profile = np.asarray(doc["sector_profile"], dtype=float)
    return SymmetricBody(sector_theta=profile[:, 0], sector_r=profile[:, 1],
                         label=str(doc.get("label", "custom")))


def random_body(rng, base_points=6, samples=DEFAULT_SECTOR_SAMPLES):
    """Random unit-area convex 3-symmetric body (hull of a symmetrized set)."""
    from .geom import convex_hull

    angles = np.sort(rng.uniform(0.0, SECTOR, base_points))
    radii = rng.uniform(0.8, 1.2, base_points)
    sector = np.column_stack((radii * np.cos(angles), radii * np.sin(angles)))
    cloud = np.concatenate([rotate(sector, k * SECTOR) for k in range(3)])
    hull = convex_hull(cloud)
    r_fn = _radius_on_polygon(hull)
    hull_angles = np.mod(np.arctan2(hull[:, 1], hull[:, 0]), 2 * math.pi)
    thetas = _sector_angles(hull_angles, samples)
    body = _make_body(thetas, r_fn(thetas), "random")
    return normalize_unit_area(body)
