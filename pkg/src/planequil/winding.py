"""Counting integrals: zeros of p' and the winding number of the evolute.

Both quantities are periodic-trapezoid integrals of rational expressions in
a trig polynomial g and its derivatives (g = p' for the horizontal case):

    zero count  n(g) = (1/pi)    int (g'^2 - g g'') / (g^2 + g'^2)
    winding     m(g) = (1/2 pi)  int g (g + g'')   / (g^2 + g'^2)

The denominator can vanish where g has a zero of order >= 2; the integrands
extend continuously there with limits 1/r and (r-1)/r for a zero of order
r, which the guarded kernel substitutes.  Results quantize to half-integers
once the quadrature stabilizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .body import ConvexBody, PlanePoint, TrigPolySupport, deriv_bound, is_negligible
from .errors import (DegenerateCircle, DegeneratePointEvolute, Mismatch,
                     NotConverged, VertexAtCenter)

TWO_PI = 2.0 * math.pi

QUAD_START = 512
QUAD_CAP = 1 << 20
_CONV_TOL = 1e-9

# Guarded kernel: below GUARD_REL * scale^2 the analytic limit replaces the
# ratio (cancellation noise dominates there); cells dipping below
# REFINE_REL * scale^2 get local trapezoid refinement to tame the kink left
# by higher-order zeros.
_GUARD_REL = 1e-16
_REFINE_REL = 1e-6
_REFINE_SUB = 64
_REFINE_MAX_CELLS = 64

N_RESIDUAL_TOL = 0.05
M_RESIDUAL_TOL = 0.1

_ORDER_INFER_REL = 1e-6


@dataclass(frozen=True)
class HalfInteger:
    """An element of (1/2) Z stored exactly as twice its value."""

    twice: int

    @property
    def value(self) -> float:
        return self.twice / 2.0

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.twice // 2)
        return f"{self.twice}/2"


@dataclass(frozen=True)
class QuadratureReport:
    """Converged integral value with its sample count and rounding residual."""

    value: float
    samples: int
    residual: float


def _limit_values(g: TrigPolySupport, phi: float, g2_val: float,
                  bounds: tuple) -> tuple:
    """Continuity limits (n-integrand, m-integrand) at a near-degenerate node.

    The zero order r is inferred from which derivatives of g are still
    significant: r = 2 when g'' is, r = 3 when only g''' is, else 4.
    """
    b2, b3 = bounds
    if abs(g2_val) > _ORDER_INFER_REL * max(1.0, b2):
        r = 2
    elif abs(float(g.eval(phi, 3))) > _ORDER_INFER_REL * max(1.0, b3):
        r = 3
    else:
        r = 4
    return 1.0 / r, (r - 1.0) / r


def _integrands(g: TrigPolySupport, phi: np.ndarray, guard2: float,
                bounds: tuple):
    """Guarded integrand arrays and the shared denominator."""
    f0, f1, f2 = g.eval_trio(phi)
    den = f0 * f0 + f1 * f1
    with np.errstate(divide="ignore", invalid="ignore"):
        fn = (f1 * f1 - f0 * f2) / den
        fm = f0 * (f0 + f2) / den
    small = den < guard2
    if small.any():
        for j in np.where(small)[0]:
            fn[j], fm[j] = _limit_values(g, float(phi[j]), float(f2[j]), bounds)
    return fn, fm, den


def _means_at(g: TrigPolySupport, n: int, guard2: float, refine2: float,
              bounds: tuple) -> tuple:
    """Trapezoid means of both integrands at n nodes, refining hot cells."""
    phi = np.arange(n) * (TWO_PI / n)
    fn, fm, den = _integrands(g, phi, guard2, bounds)
    mean_n = float(fn.mean())
    mean_m = float(fm.mean())

    flag = den < refine2
    cells = np.where(flag | np.roll(flag, -1))[0]
    if 0 < len(cells) <= _REFINE_MAX_CELLS:
        h = TWO_PI / n
        sub_rel = np.linspace(0.0, h, _REFINE_SUB + 1)
        for i in cells:
            sub = phi[i] + sub_rel
            sn, sm, _ = _integrands(g, sub, guard2, bounds)
            j = (i + 1) % n
            coarse_n = (fn[i] + fn[j]) / (2.0 * n)
            coarse_m = (fm[i] + fm[j]) / (2.0 * n)
            fine_n = (0.5 * (sn[0] + sn[-1]) + sn[1:-1].sum()) / (_REFINE_SUB * n)
            fine_m = (0.5 * (sm[0] + sm[-1]) + sm[1:-1].sum()) / (_REFINE_SUB * n)
            mean_n += fine_n - coarse_n
            mean_m += fine_m - coarse_m
    return mean_n, mean_m


def counting_integrals(g: TrigPolySupport, *, start: int = QUAD_START,
                       cap: int = QUAD_CAP, conv_tol: float = _CONV_TOL) -> tuple:
    """(zero-count value, winding value, samples) for the series g.

    Periodic trapezoid with doubling; converges spectrally when the
    denominator stays away from zero and quadratically (helped by cell
    refinement) otherwise.  Rounding is left to the callers.
    """
    phi0 = np.arange(start) * (TWO_PI / start)
    f0, f1, _ = g.eval_trio(phi0)
    scale = float(np.abs(f0).max() + np.abs(f1).max())
    if scale == 0.0:
        raise DegenerateCircle("series vanishes identically")
    guard2 = _GUARD_REL * scale * scale
    refine2 = _REFINE_REL * scale * scale
    bounds = (deriv_bound(g, 2), deriv_bound(g, 3))

    prev = None
    n = start
    while True:
        mean_n, mean_m = _means_at(g, n, guard2, refine2, bounds)
        vn, vm = 2.0 * mean_n, mean_m
        if prev is not None:
            delta = max(abs(vn - prev[0]), abs(vm - prev[1]))
            if delta < conv_tol * max(1.0, abs(vn)):
                return vn, vm, n
        if n >= cap:
            return vn, vm, n
        prev = (vn, vm)
        n *= 2


def zero_count_integral(b: ConvexBody) -> tuple:
    """Number of horizontal equilibria of b about its current origin.

    Evaluates the zero-counting integral for p' and rounds; the center is
    whatever origin b is described from (recenter first for other centers).
    """
    g = b.support.derivative()
    if is_negligible(g, b.support.a0):
        raise DegenerateCircle("p' vanishes identically: centered disk")
    vn, _, samples = counting_integrals(g)
    residual = abs(vn - round(vn))
    if residual > N_RESIDUAL_TOL:
        raise NotConverged(vn, samples, residual)
    n = int(round(vn))
    if n < 1:
        raise NotConverged(vn, samples, residual)
    return n, QuadratureReport(vn, samples, residual)


def evolute_winding(b: ConvexBody) -> tuple:
    """Generalized winding number of the evolute about b's current origin.

    Returns a HalfInteger m <= 0; half-integers occur exactly when the
    origin lies on the evolute.  Cross-checks 2 - 2m against the rounded
    zero-counting value computed over the same nodes.
    """
    g = b.support.derivative()
    if is_negligible(g, b.support.a0):
        raise DegeneratePointEvolute("evolute is a single point at the center")
    vn, vm, samples = counting_integrals(g)
    residual = abs(2.0 * vm - round(2.0 * vm))
    if residual > M_RESIDUAL_TOL:
        raise NotConverged(vm, samples, residual)
    twice = int(round(2.0 * vm))
    if twice > 0:
        raise AssertionError(
            f"evolute winding {twice}/2 > 0 contradicts the orientation invariant"
        )
    if abs(vn - round(vn)) <= N_RESIDUAL_TOL and int(round(vn)) != 2 - twice:
        raise Mismatch(int(round(vn)), 2 - twice)
    return HalfInteger(twice), QuadratureReport(vm, samples, residual)


def polygonal_winding(poly, o: PlanePoint) -> float:
    """Winding number of a closed polyline about o by turn-angle summation.

    Accepts an EvolutePolyline or a plain (n, 2) vertex array.  This is the
    independent cross-check for evolute_winding: for dense samples and o
    off the curve it converges to the integer winding number.
    """
    pts = np.asarray(getattr(poly, "points", poly), dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("polyline must be an (n, 2) array of vertices")
    xs = np.ascontiguousarray(pts[:, 0])
    ys = np.ascontiguousarray(pts[:, 1])
    total, min_r = _backend.turn_angle_sum(xs, ys, o.x, o.y)
    if min_r < 1e-12:
        raise VertexAtCenter(f"a vertex coincides with the center within 1e-12")
    return total / TWO_PI
