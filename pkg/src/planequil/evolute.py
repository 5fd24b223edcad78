"""Evolute of the boundary: evaluation, cusps, arc-length sums, distances.

The evolute e = p'u' - p''u is the locus of curvature centers.  Its
velocity is e' = -rho' u, so cusps sit exactly at stationary points of the
radius of curvature rho and alternate between minima and maxima.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .body import (ConvexBody, PlanePoint, TrigPolySupport, deriv_bound,
                   is_negligible, rho_series, unit, unit_prime, _golden_min)
from .errors import DegenerateCircle
from .roots import trig_poly_roots

TWO_PI = 2.0 * math.pi

_CUSP_GRID_MIN = 2048
_CUSP_GRID_PER_K = 128
_SADDLE_TOUCH_REL = 1e-10
_DIST_SAMPLES = 4096
_ARC_GL_NODES = 64

_GL_X, _GL_W = np.polynomial.legendre.leggauss(_ARC_GL_NODES)


class CuspKind(enum.Enum):
    MIN_OF_RHO = "min"
    MAX_OF_RHO = "max"
    SADDLE = "saddle"


@dataclass(frozen=True)
class Cusp:
    """A stationary point of rho with its location on the evolute."""

    phi0: float
    kind: CuspKind
    location: PlanePoint
    rho: float


@dataclass(frozen=True)
class EvolutePolyline:
    """Sampled traversal of the evolute; angles strictly increase in [0, 2 pi)."""

    angles: np.ndarray
    points: np.ndarray
    cusp_indices: tuple = ()

    def __post_init__(self):
        if len(self.angles) != len(self.points):
            raise ValueError("angles and points must have equal length")
        if len(self.angles) > 1 and not np.all(np.diff(self.angles) > 0):
            raise ValueError("angles must be strictly increasing")


def evolute_point(b: ConvexBody, phi: float) -> PlanePoint:
    """e(phi) = p'(phi) u'(phi) - p''(phi) u(phi)."""
    p1 = b.support.eval(phi, 1)
    p2 = b.support.eval(phi, 2)
    return p1 * unit_prime(phi) - p2 * unit(phi)


def evolute_points(support: TrigPolySupport, phis: np.ndarray) -> np.ndarray:
    """Vectorized evolute samples, one row per angle."""
    phis = np.asarray(phis, dtype=np.float64)
    _, p1, p2 = support.eval_trio(phis)
    c, s = np.cos(phis), np.sin(phis)
    return np.column_stack((-p1 * s - p2 * c, p1 * c - p2 * s))


def _require_not_circle(s: TrigPolySupport) -> TrigPolySupport:
    """rho' series of the support, or DegenerateCircle when rho is constant."""
    rp = rho_series(s).derivative()
    if is_negligible(rp, s.a0):
        raise DegenerateCircle("radius of curvature is constant: the body is a disk")
    return rp


def find_cusps(b: ConvexBody) -> list[Cusp]:
    """All stationary points of rho in [0, 2 pi), classified.

    Minima and maxima alternate around the circle and number at least four
    for any non-circular body; saddles (no sign change of rho') are kept
    separate.
    """
    s = b.support
    rp = _require_not_circle(s)
    grid = max(_CUSP_GRID_MIN, _CUSP_GRID_PER_K * max(1, s.degree))
    roots = trig_poly_roots(rp, grid, touch_rel=_SADDLE_TOUCH_REL)

    rho = rho_series(s)
    rpp = rp.derivative()
    rpp_scale = max(1.0, deriv_bound(rpp, 0))
    h = math.pi / grid
    cusps = []
    for r in roots:
        curv = float(rpp.eval(r.phi))
        if not r.sign_change:
            kind = CuspKind.SADDLE
        elif abs(curv) > 1e-7 * rpp_scale:
            kind = CuspKind.MIN_OF_RHO if curv > 0 else CuspKind.MAX_OF_RHO
        else:
            before = float(rp.eval(r.phi - h))
            kind = CuspKind.MIN_OF_RHO if before < 0 else CuspKind.MAX_OF_RHO
        cusps.append(Cusp(r.phi, kind, evolute_point(b, r.phi), float(rho.eval(r.phi))))
    return cusps


def alternating_arc_sum(b: ConvexBody) -> float:
    """Signed sum of evolute arc lengths between consecutive sign-changing cusps.

    Each arc length is int |rho'| over the inter-cusp interval (|e'| = |rho'|)
    and the signs alternate, so the sum equals int rho' d phi = 0 up to
    quadrature error.
    """
    cusps = [c for c in find_cusps(b) if c.kind is not CuspKind.SADDLE]
    rp = rho_series(b.support).derivative()
    total = 0.0
    for i, c in enumerate(cusps):
        lo = c.phi0
        hi = cusps[(i + 1) % len(cusps)].phi0
        if hi <= lo:
            hi += TWO_PI
        mid = 0.5 * (lo + hi)
        sign = 1.0 if float(rp.eval(mid)) >= 0 else -1.0
        nodes = 0.5 * (hi - lo) * (_GL_X + 1.0) + lo
        arc = 0.5 * (hi - lo) * float(np.dot(_GL_W, np.abs(rp.eval(nodes))))
        total += sign * arc
    return total


def sample_evolute(b: ConvexBody, n: int) -> EvolutePolyline:
    """n midpoint-uniform samples of the evolute with all cusp angles inserted.

    Midpoint sampling ((j + 0.5) * 2 pi / n) keeps the merged angle list
    strictly increasing even when cusps land on round angles.
    """
    if n < 16:
        raise ValueError("sample count must be at least 16")
    base = (np.arange(n) + 0.5) * (TWO_PI / n)
    try:
        cusp_angles = [c.phi0 for c in find_cusps(b)]
    except DegenerateCircle:
        cusp_angles = []

    angles = list(base)
    flags = [False] * n
    for a in cusp_angles:
        a %= TWO_PI
        matches = [i for i, t in enumerate(angles) if abs(t - a) < 1e-12]
        if matches:
            flags[matches[0]] = True
        else:
            angles.append(a)
            flags.append(True)
    order = np.argsort(angles)
    angles_arr = np.asarray(angles)[order]
    flags_arr = np.asarray(flags)[order]
    points = evolute_points(b.support, angles_arr)
    return EvolutePolyline(angles_arr, points,
                           tuple(int(i) for i in np.where(flags_arr)[0]))


def distance_to_evolute(b: ConvexBody, o: PlanePoint) -> float:
    """min_phi ||e(phi) - o||, by dense sampling plus golden-section polish."""
    phis = np.arange(_DIST_SAMPLES) * (TWO_PI / _DIST_SAMPLES)
    pts = evolute_points(b.support, phis)
    d2 = (pts[:, 0] - o.x) ** 2 + (pts[:, 1] - o.y) ** 2

    def dist2(t: float) -> float:
        e = evolute_point(b, t)
        return (e.x - o.x) ** 2 + (e.y - o.y) ** 2

    best = float(d2.min())
    h = TWO_PI / _DIST_SAMPLES
    local = np.where((d2 <= np.roll(d2, 1)) & (d2 <= np.roll(d2, -1)))[0]
    for i in local:
        _, fx = _golden_min(dist2, float(phis[i]) - h, float(phis[i]) + h)
        best = min(best, fx)
    return math.sqrt(max(best, 0.0))


def distances_to_evolute(b: ConvexBody, centers: np.ndarray,
                         samples: int = _DIST_SAMPLES) -> np.ndarray:
    """Sample-level distances from many centers to the evolute (no polish).

    Used by region maps where the distance only gates a guard band; the
    sampling error is O(h^2 |e''|), far below any useful band width.
    """
    phis = np.arange(samples) * (TWO_PI / samples)
    pts = evolute_points(b.support, phis)
    out = np.empty(len(centers))
    chunk = max(1, (1 << 22) // max(1, samples))
    for i in range(0, len(centers), chunk):
        block = centers[i:i + chunk]
        diff = block[:, None, :] - pts[None, :, :]
        out[i:i + chunk] = np.sqrt((diff ** 2).sum(axis=2).min(axis=1))
    return out
