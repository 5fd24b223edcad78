"""Horizontal equilibria: direct root counting, formula cross-check, region maps.

A horizontal equilibrium about a center O is a boundary point z(phi0) with
p_O'(phi0) = 0; it is stable where p_O has a strict local minimum.  The
direct count must match 2 - 2m with m the evolute winding number, which
region maps exploit cell by cell.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .body import ConvexBody, PlanePoint, boundary_point, deriv_bound, recenter
from .errors import DegenerateCircle, Mismatch, NotConverged
from .evolute import distances_to_evolute, evolute_point, rho_series
from .roots import trig_poly_roots, zero_multiplicity
from .winding import (HalfInteger, N_RESIDUAL_TOL, counting_integrals,
                      evolute_winding)

TWO_PI = 2.0 * math.pi

_ROOT_GRID_MIN = 4096
_ROOT_GRID_PER_K = 256
_TOUCH_REL = 1e-9
_DEGENERATE_REL = 1e-8

REGION_SENTINEL = -1
_REGION_DELTA_REL = 1e-2
_NEIGHBOUR_EPS_REL = 1e-3


class Stability(enum.Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class Equilibrium:
    """A distinct zero of p_O' with classification.

    point is the contact point on the boundary in the coordinates the body
    was passed in (not shifted by the center).
    """

    phi0: float
    point: PlanePoint
    stability: Stability
    multiplicity: int


@dataclass(frozen=True)
class RegionMap:
    """Raster of equilibrium counts n(O) over a bounding box.

    counts holds REGION_SENTINEL where the quadrature failed to settle;
    near_evolute flags cell centers within delta of the evolute (their
    counts are still recorded).
    """

    bbox: tuple
    resolution: tuple
    delta: float
    xs: np.ndarray
    ys: np.ndarray
    counts: np.ndarray
    near_evolute: np.ndarray

    def to_csv(self) -> str:
        lines = ["x,y,n,near_evolute"]
        for iy in range(self.resolution[1]):
            for ix in range(self.resolution[0]):
                lines.append(
                    f"{self.xs[ix]:.12g},{self.ys[iy]:.12g},"
                    f"{int(self.counts[iy, ix])},"
                    f"{int(self.near_evolute[iy, ix])}"
                )
        return "\n".join(lines) + "\n"


def find_horizontal_equilibria(b: ConvexBody, o: PlanePoint) -> list:
    """All distinct equilibria of b with respect to center o, sorted by angle.

    Sign-change roots of p_O' come from a dense grid polished by bisection;
    touching (even-order) roots are caught as near-zero local minima.  Each
    root is classified by p_O'' and its zero multiplicity is recorded.
    """
    s = b.support.shifted_origin(o)
    g = s.derivative()
    if deriv_bound(g, 0) <= 1e-13 * max(1.0, abs(s.a0)):
        raise DegenerateCircle("p' vanishes identically: every contact is an equilibrium")
    grid = max(_ROOT_GRID_MIN, _ROOT_GRID_PER_K * max(1, s.degree))
    roots = trig_poly_roots(g, grid, touch_rel=_TOUCH_REL)

    thr = _DEGENERATE_REL * max(abs(s.a0), deriv_bound(s, 2))
    out = []
    for r in roots:
        p2 = float(s.eval(r.phi, 2))
        if p2 > thr:
            stab = Stability.STABLE
        elif p2 < -thr:
            stab = Stability.UNSTABLE
        else:
            stab = Stability.DEGENERATE
        out.append(Equilibrium(
            phi0=r.phi,
            point=boundary_point(b, r.phi),
            stability=stab,
            multiplicity=zero_multiplicity(g, r.phi),
        ))
    return out


def count_consistency(b: ConvexBody, o: PlanePoint) -> tuple:
    """(n_direct, n_formula, m): both counting routes, verified to agree.

    Raises Mismatch when the direct root count and 2 - 2m disagree, which
    signals either a numerical failure or a center too close to the evolute
    for the root detector's tolerances.
    """
    n_direct = len(find_horizontal_equilibria(b, o))
    m, _ = evolute_winding(recenter(b, o))
    n_formula = 2 - m.twice
    if n_direct != n_formula:
        raise Mismatch(n_direct, n_formula)
    return n_direct, n_formula, m


def _formula_count(b: ConvexBody, o: PlanePoint) -> int:
    """n = 2 - 2m by quadrature alone (no root finding)."""
    g = b.support.shifted_origin(o).derivative()
    vn, _, samples = counting_integrals(g)
    residual = abs(vn - round(vn))
    if residual > N_RESIDUAL_TOL:
        raise NotConverged(vn, samples, residual)
    return int(round(vn))


_BATCH_LEVELS = (512, 1024, 2048)
_BATCH_CHUNK = 256
_BATCH_CONV = 1e-9
_BATCH_DEFER_REL = 1e-6  # same window the engine treats with guard/refinement


def _batch_counts(b: ConvexBody, centers: np.ndarray) -> np.ndarray:
    """Vectorized n = 2 - 2m over many centers sharing the node grids.

    Shifting the center only perturbs p', p'', p''' by first harmonics, so
    each doubling level reuses one trio evaluation for every cell.  Cells
    whose denominator dips into guarded territory, or that do not converge
    within the batch levels, are left at REGION_SENTINEL for the per-cell
    engine to finish.
    """
    g = b.support.derivative()
    shared = {}
    for n in _BATCH_LEVELS:
        phi = np.arange(n) * (TWO_PI / n)
        shared[n] = (*g.eval_trio(phi), np.sin(phi), np.cos(phi))

    counts = np.full(len(centers), REGION_SENTINEL, dtype=np.int64)
    for i0 in range(0, len(centers), _BATCH_CHUNK):
        sl = slice(i0, i0 + len(centers[i0:i0 + _BATCH_CHUNK]))
        ox = centers[sl, 0][:, None]
        oy = centers[sl, 1][:, None]
        m = sl.stop - sl.start
        value = np.full(m, np.nan)
        defer = np.zeros(m, dtype=bool)
        prev_n = prev_m = None
        for n in _BATCH_LEVELS:
            p1, p2, p3, sn, cs = shared[n]
            g0 = p1 + ox * sn - oy * cs
            g1 = p2 + ox * cs + oy * sn
            g2 = p3 - ox * sn + oy * cs
            den = g0 * g0 + g1 * g1
            scale = np.abs(g0).max(axis=1) + np.abs(g1).max(axis=1)
            defer |= den.min(axis=1) < _BATCH_DEFER_REL * scale * scale
            with np.errstate(divide="ignore", invalid="ignore"):
                vn = 2.0 * ((g1 * g1 - g0 * g2) / den).mean(axis=1)
                vm = (g0 * (g0 + g2) / den).mean(axis=1)
            if prev_n is not None:
                conv = ((np.abs(vn - prev_n) < _BATCH_CONV * np.maximum(1, np.abs(vn)))
                        & (np.abs(vm - prev_m) < _BATCH_CONV * np.maximum(1, np.abs(vm)))
                        & np.isnan(value))
                value[conv] = vn[conv]
            prev_n, prev_m = vn, vm
        good = ~defer & ~np.isnan(value)
        rounded = np.where(good, np.round(np.nan_to_num(value)), REGION_SENTINEL)
        good &= np.abs(value - rounded) <= N_RESIDUAL_TOL
        counts[sl] = np.where(good, rounded, REGION_SENTINEL).astype(np.int64)
    return counts


def region_map(b: ConvexBody, bbox: tuple, resolution: tuple,
               delta: float | None = None, *, workers: int | None = None) -> RegionMap:
    """Equilibrium count n(O) for every cell center of a raster over bbox.

    Cells are independent: the bulk is evaluated by the vectorized batch
    path and the remainder (near-evolute or slow-converging cells) in
    parallel threads.  The result is deterministic regardless of schedule.
    Cell centers within delta of the evolute are flagged but still counted;
    cells whose quadrature does not settle hold REGION_SENTINEL.
    """
    lo, hi = bbox
    nx, ny = resolution
    if nx < 2 or ny < 2:
        raise ValueError("resolution must be at least 2x2")
    if delta is None:
        delta = _REGION_DELTA_REL * b.scale

    xs = lo.x + (np.arange(nx) + 0.5) * (hi.x - lo.x) / nx
    ys = lo.y + (np.arange(ny) + 0.5) * (hi.y - lo.y) / ny
    gx, gy = np.meshgrid(xs, ys)
    centers = np.column_stack((gx.ravel(), gy.ravel()))

    dists = distances_to_evolute(b, centers)
    flags = dists < delta

    counts = _batch_counts(b, centers)
    pending = np.where(counts == REGION_SENTINEL)[0]

    def run(idx: int) -> None:
        o = PlanePoint(float(centers[idx, 0]), float(centers[idx, 1]))
        try:
            counts[idx] = _formula_count(b, o)
        except (NotConverged, DegenerateCircle):
            counts[idx] = REGION_SENTINEL

    with ThreadPoolExecutor(max_workers=workers) as pool:
        list(pool.map(run, pending, chunksize=8))

    return RegionMap(
        bbox=bbox,
        resolution=(nx, ny),
        delta=delta,
        xs=xs,
        ys=ys,
        counts=counts.reshape(ny, nx),
        near_evolute=flags.reshape(ny, nx),
    )


def neighbour_average_check(b: ConvexBody, phi_star: float,
                            eps: float | None = None) -> tuple:
    """(n_on, n_side_a, n_side_b) for a center on a regular evolute point.

    n at O = e(phi_star) must be the plain average of the counts at
    O +- eps u'(phi_star).  The evolute's tangent at a regular point is
    parallel to u (e' = -rho' u), so the transversal step directions are
    +-u'(phi_star).
    """
    rp = rho_series(b.support).derivative()
    if deriv_bound(rp, 0) <= 1e-13 * max(1.0, b.scale):
        raise DegenerateCircle("point evolute has no regular points")
    if abs(float(rp.eval(phi_star))) <= 1e-9 * deriv_bound(rp, 0):
        raise ValueError(f"phi* = {phi_star!r} is a stationary point of rho")
    if eps is None:
        eps = _NEIGHBOUR_EPS_REL * b.scale

    o = evolute_point(b, phi_star)
    step = PlanePoint(-math.sin(phi_star), math.cos(phi_star)) * eps
    n_on = _formula_count(b, o)
    n_a = _formula_count(b, o + step)
    n_b = _formula_count(b, o - step)
    return n_on, n_a, n_b
