"""Deterministic SVG rendering of bodies, triangles, and trisections."""

import numpy as np

from .trisection import smallest_enclosing_triangle


def _fmt(x):
    return f"{x:.4f}"


class _View:
    """World -> viewport transform (y flipped, fixed scale)."""

    def __init__(self, size=420, world_radius=1.05):
        self.size = size
        self.scale = size / (2.0 * world_radius)

    def xy(self, p):
        x = self.size / 2.0 + self.scale * p[0]
        y = self.size / 2.0 - self.scale * p[1]
        return _fmt(x), _fmt(y)


def _body_path(body, view):
    segs = body.outline_hint
    if not segs:
        pts = _outline_points(body)
        x0, y0 = view.xy(pts[0])
        d = [f"M {x0} {y0}"]
        d += ["L {} {}".format(*view.xy(p)) for p in pts[1:]]
    else:
        d = []
        for seg in segs:
            kind = seg[0]
            if kind == "M":
                d.append("M {} {}".format(*view.xy(seg[1:])))
            elif kind == "L":
                d.append("L {} {}".format(*view.xy(seg[1:])))
            elif kind == "A":
                r = _fmt(seg[1] * view.scale)
                x, y = view.xy(seg[2:])
                # CCW in world coordinates; the y-flip makes sweep-flag 1
                d.append(f"A {r} {r} 0 0 1 {x} {y}")
    d.append("Z")
    return " ".join(d)


def _outline_points(body, max_points=512):
    pts = body.boundary
    stride = max(1, len(pts) // max_points)
    return pts[::stride]


def render_svg(body, what="body", trisection=None, size=420):
    """Render a body (optionally with its enclosing triangle, inscribed
    ball, or a trisection) as a standalone SVG document."""
    view = _View(size=size, world_radius=1.15 * body.max_radius())
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<path class="body" d="{_body_path(body, view)}" '
        'fill="#dce9f5" stroke="#23486d" stroke-width="1.5"/>',
    ]
    tri = smallest_enclosing_triangle(body)

    if what == "triangle":
        corners = tri.corners()
        for k in range(3):
            x1, y1 = view.xy(corners[k])
            x2, y2 = view.xy(corners[(k + 1) % 3])
            parts.append(f'<line class="triangle-edge" x1="{x1}" y1="{y1}" '
                         f'x2="{x2}" y2="{y2}" stroke="#c0392b" stroke-width="1"/>')

    if what in ("standard", "sweep_argmin"):
        cx, cy = view.xy(np.zeros(2))
        parts.append(f'<circle class="inscribed-ball" cx="{cx}" cy="{cy}" '
                     f'r="{_fmt(tri.apothem * view.scale)}" fill="none" '
                     'stroke="#999999" stroke-dasharray="4 3" stroke-width="0.8"/>')
        if trisection is not None:
            for curve in trisection.curves:
                pts = " ".join(",".join(view.xy(p)) for p in curve)
                parts.append(f'<polyline class="curve" points="{pts}" '
                             'fill="none" stroke="#1b7837" stroke-width="1.5"/>')
            for i, w in enumerate(trisection.endpoints, start=1):
                x, y = view.xy(w)
                parts.append(f'<text class="endpoint-label" x="{x}" y="{y}" '
                             f'font-size="12">v{i}</text>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
