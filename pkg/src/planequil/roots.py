"""Root isolation for trigonometric polynomials on the circle.

A trig polynomial of degree K has at most 2K zeros, so a uniform grid a few
times denser cannot alias a sign change.  Sign-change roots are polished by
bisection; touching (even-order) roots are detected as near-zero local
minima of |f| and polished by bisecting f'.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .body import TrigPolySupport, deriv_bound

TWO_PI = 2.0 * math.pi

PHI_TOL = 1e-12
_MERGE_TOL = 1e-8
# A touching root can sit anywhere in a grid cell, where |f| ~ f'' h^2 / 8
# (~1e-7 * scale at the default grids), so candidates are prefiltered
# loosely and the tight touch_rel threshold is applied after refinement.
_TOUCH_PREFILTER = 1e-4


@dataclass(frozen=True)
class RootInfo:
    """A refined distinct zero of the series."""

    phi: float
    sign_change: bool


def bisect(f, lo: float, hi: float, flo: float, tol: float = PHI_TOL) -> float:
    """Bisection on a bracketing interval; flo is f(lo)."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (flo < 0.0) != (fm < 0.0):
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def trig_poly_roots(g: TrigPolySupport, grid: int,
                    touch_rel: float = 1e-9) -> list[RootInfo]:
    """All distinct zeros of g on [0, 2 pi).

    grid must exceed ~4x the degree; callers pass the per-operation sizes.
    touch_rel scales (by max |g| on the grid) the acceptance threshold for
    touching roots.
    """
    phis = np.arange(grid) * (TWO_PI / grid)
    vals = g.eval(phis)
    scale = float(np.abs(vals).max())
    if scale == 0.0:
        raise ValueError("series is identically zero on the grid")

    f = lambda t: float(g.eval(t))
    gp = g.derivative()
    fp = lambda t: float(gp.eval(t))

    found: list[RootInfo] = []

    # Grid nodes that are exact zeros (symmetric fixtures hit these).
    zero_nodes = np.where(vals == 0.0)[0]
    for i in zero_nodes:
        left = vals[(i - 1) % grid]
        right = vals[(i + 1) % grid]
        found.append(RootInfo(float(phis[i]), sign_change=(left * right < 0.0)))

    # Sign changes between adjacent nodes.
    nxt = np.roll(vals, -1)
    flips = np.where(vals * nxt < 0.0)[0]
    h = TWO_PI / grid
    for i in flips:
        root = bisect(f, float(phis[i]), float(phis[i]) + h, float(vals[i]))
        found.append(RootInfo(root % TWO_PI, sign_change=True))

    # Touching roots: local minima of |f| without a sign change; f' brackets
    # a sign change across them and the refined value must clear touch_rel.
    absv = np.abs(vals)
    prev_abs = np.roll(absv, 1)
    next_abs = np.roll(absv, -1)
    prev_v = np.roll(vals, 1)
    next_v = np.roll(vals, -1)
    touch = np.where(
        (absv < max(_TOUCH_PREFILTER, touch_rel) * scale)
        & (absv <= prev_abs)
        & (absv <= next_abs)
        & (vals * prev_v > 0.0)
        & (vals * next_v > 0.0)
    )[0]
    for i in touch:
        lo = float(phis[i]) - h
        hi = float(phis[i]) + h
        dlo = fp(lo)
        if dlo == 0.0 or (dlo < 0.0) == (fp(hi) < 0.0):
            continue
        root = bisect(fp, lo, hi, dlo)
        if abs(f(root)) <= touch_rel * scale:
            found.append(RootInfo(root % TWO_PI, sign_change=False))

    return _merge_circular(found)


def _merge_circular(roots: list[RootInfo]) -> list[RootInfo]:
    """Sort by angle and merge clusters closer than the merge tolerance."""
    if not roots:
        return []
    roots = sorted(roots, key=lambda r: r.phi)
    merged: list[RootInfo] = []
    for r in roots:
        if merged and r.phi - merged[-1].phi < _MERGE_TOL:
            if r.sign_change and not merged[-1].sign_change:
                merged[-1] = r
            continue
        merged.append(r)
    # wraparound cluster
    if len(merged) > 1 and (merged[0].phi + TWO_PI) - merged[-1].phi < _MERGE_TOL:
        last = merged.pop()
        if last.sign_change and not merged[0].sign_change:
            merged[0] = RootInfo(merged[0].phi, True)
    return merged


def zero_multiplicity(g: TrigPolySupport, phi: float,
                      rel_tol: float = 1e-8, max_order: int = 8) -> int:
    """Order of the zero of g at phi: smallest r with g^(r)(phi) significant."""
    for r in range(1, max_order + 1):
        bound = deriv_bound(g, r)
        if abs(g.eval(phi, r)) > rel_tol * max(1.0, bound):
            return r
    return max_order
