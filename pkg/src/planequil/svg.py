"""Deterministic SVG scene renderer.

Draws the boundary, the evolute with cusps, the chosen center and the
equilibrium contact points.  Output bytes depend only on the inputs (fixed
float formatting, fixed element order), so repeated runs are identical.
"""

from __future__ import annotations

import math

import numpy as np

from .body import ConvexBody, PlanePoint, boundary_points
from .equilibria import find_horizontal_equilibria
from .errors import DegenerateCircle
from .evolute import CuspKind, find_cusps, sample_evolute

_SIZE = 640
_PAD = 0.06

_CUSP_COLOR = {
    CuspKind.MIN_OF_RHO: "#c026d3",
    CuspKind.MAX_OF_RHO: "#2563eb",
    CuspKind.SADDLE: "#6b7280",
}
_EQ_COLOR = {"stable": "#16a34a", "unstable": "#ea580c", "degenerate": "#6b7280"}


def _fmt(v: float) -> str:
    return f"{v:.4f}"


class _Frame:
    """World-to-viewport transform (y flipped for screen coordinates)."""

    def __init__(self, xs: np.ndarray, ys: np.ndarray):
        span = max(float(xs.max() - xs.min()), float(ys.max() - ys.min()), 1e-9)
        pad = _PAD * span
        self.x0 = float(xs.min()) - pad
        self.y1 = float(ys.max()) + pad
        self.scale = _SIZE / (span + 2 * pad)

    def map(self, x: float, y: float) -> tuple:
        return (x - self.x0) * self.scale, (self.y1 - y) * self.scale


def _path(frame: _Frame, pts: np.ndarray, close: bool) -> str:
    cmds = []
    for i, (x, y) in enumerate(pts):
        px, py = frame.map(float(x), float(y))
        cmds.append(f"{'M' if i == 0 else 'L'}{_fmt(px)} {_fmt(py)}")
    if close:
        cmds.append("Z")
    return "".join(cmds)


def render_scene(b: ConvexBody, center: PlanePoint, *,
                 boundary_samples: int = 512,
                 evolute_samples: int = 512) -> bytes:
    """Scene with boundary, evolute, cusps, the center and equilibria."""
    phis = np.arange(boundary_samples) * (2 * math.pi / boundary_samples)
    boundary = boundary_points(b, phis)
    poly = sample_evolute(b, evolute_samples)
    try:
        cusps = find_cusps(b)
    except DegenerateCircle:
        cusps = []
    try:
        equilibria = find_horizontal_equilibria(b, center)
    except DegenerateCircle:
        equilibria = []

    all_x = np.concatenate([boundary[:, 0], poly.points[:, 0], [center.x]])
    all_y = np.concatenate([boundary[:, 1], poly.points[:, 1], [center.y]])
    frame = _Frame(all_x, all_y)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" '
        f'height="{_SIZE}" viewBox="0 0 {_SIZE} {_SIZE}">',
        f'<rect width="{_SIZE}" height="{_SIZE}" fill="white"/>',
        f'<path id="boundary" d="{_path(frame, boundary, True)}" '
        f'fill="#f5e9d8" stroke="#8a5a20" stroke-width="2"/>',
    ]

    spread = float(poly.points.max(axis=0).max() - poly.points.min(axis=0).min())
    if spread > 1e-9 * max(1.0, b.scale):
        parts.append(
            f'<path id="evolute" d="{_path(frame, poly.points, True)}" '
            f'fill="none" stroke="#dc2626" stroke-width="1.5"/>'
        )
    else:
        ex, ey = frame.map(float(poly.points[0, 0]), float(poly.points[0, 1]))
        parts.append(
            f'<circle id="evolute" cx="{_fmt(ex)}" cy="{_fmt(ey)}" r="3" '
            f'fill="#dc2626"/>'
        )

    for c in cusps:
        px, py = frame.map(c.location.x, c.location.y)
        parts.append(
            f'<circle class="cusp cusp-{c.kind.value}" cx="{_fmt(px)}" '
            f'cy="{_fmt(py)}" r="4" fill="{_CUSP_COLOR[c.kind]}"/>'
        )

    for eq in equilibria:
        px, py = frame.map(eq.point.x, eq.point.y)
        parts.append(
            f'<circle class="equilibrium {eq.stability.value}" cx="{_fmt(px)}" '
            f'cy="{_fmt(py)}" r="5" fill="none" '
            f'stroke="{_EQ_COLOR[eq.stability.value]}" stroke-width="2"/>'
        )

    cx, cy = frame.map(center.x, center.y)
    parts.append(
        f'<circle id="center" cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="3.5" fill="black"/>'
    )
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")
