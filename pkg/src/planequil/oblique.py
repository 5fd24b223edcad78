"""Equilibria on an inclined supporting line.

On a line of inclination alpha the equilibrium condition becomes
p'(phi) = tan(alpha) p(phi), and the counting identity survives with the
perturbed evolute e_alpha = e - tan(alpha) J z, whose support-style data is
p_alpha' = p' - tan(alpha) p.  Unlike the horizontal case the count may be
zero (the winding m_alpha then equals +1).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .body import (ConvexBody, PlanePoint, PlaneVector, TrigPolySupport,
                   combine, deriv_bound, rho_series, unit, unit_prime,
                   _arc_length_values, _golden_min)
from .errors import DegenerateCircle, Mismatch, NonPeriodic, NotConverged
from .evolute import evolute_point
from .roots import trig_poly_roots
from .winding import HalfInteger, M_RESIDUAL_TOL, counting_integrals

TWO_PI = 2.0 * math.pi

_ROOT_GRID_MIN = 4096
_ROOT_GRID_PER_K = 256
_TOUCH_REL = 1e-9
_DEGENERATE_REL = 1e-8
_PERIODICITY_TOL = 1e-10


class ObliqueStability(enum.Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class Incline:
    """An inclined supporting line with its downhill frame."""

    alpha: float

    def __post_init__(self):
        if not -math.pi / 2 < self.alpha < math.pi / 2:
            raise ValueError("inclination must lie in (-pi/2, pi/2)")

    @property
    def v(self) -> PlaneVector:
        """Downhill unit vector along the line."""
        return PlanePoint(math.cos(self.alpha), -math.sin(self.alpha))

    @property
    def v_perp(self) -> PlaneVector:
        return PlanePoint(math.sin(self.alpha), math.cos(self.alpha))


@dataclass(frozen=True)
class ObliqueEquilibrium:
    phi0: float
    stability: ObliqueStability


@dataclass(frozen=True)
class ObliqueBody:
    """Primitive p_alpha of p' - tan(alpha) p, linear term tracked separately.

    p_alpha(phi) = periodic(phi) + linear_coeff * phi; the body is usable as
    a support function only when linear_coeff vanishes (see
    build_oblique_body).
    """

    periodic: TrigPolySupport
    linear_coeff: float
    constant: float
    rho_alpha_min: float

    def support_value(self, phi: float, order: int = 0) -> float:
        val = self.periodic.eval(phi, order)
        if order == 0:
            val += self.linear_coeff * phi
        elif order == 1:
            val += self.linear_coeff
        return val

    def evolute_point(self, phi: float) -> PlanePoint:
        p1 = self.support_value(phi, 1)
        p2 = self.support_value(phi, 2)
        return p1 * unit_prime(phi) - p2 * unit(phi)


def _oblique_series(b: ConvexBody, o: PlanePoint, alpha: float) -> tuple:
    """(shifted support, p' - tan(alpha) p as a series, tan(alpha))."""
    if not -math.pi / 2 < alpha < math.pi / 2:
        raise ValueError("inclination must lie in (-pi/2, pi/2)")
    s = b.support.shifted_origin(o)
    t = math.tan(alpha)
    return s, combine(s.derivative(), 1.0, s, -t), t


def find_oblique_equilibria(b: ConvexBody, o: PlanePoint,
                            alpha: float) -> list:
    """All distinct roots of p'(phi) - tan(alpha) p(phi) about center o.

    An empty list is a valid outcome for alpha != 0 (the line can be too
    steep for any equilibrium).  Stability follows the sign of
    p'' - p tan^2(alpha), equivalent to the vertical acceleration of the
    center at the root.
    """
    s, f, t = _oblique_series(b, o, alpha)
    if deriv_bound(f, 0) <= 1e-13 * max(1.0, abs(s.a0)):
        raise DegenerateCircle("equilibrium condition vanishes identically")
    grid = max(_ROOT_GRID_MIN, _ROOT_GRID_PER_K * max(1, s.degree))
    roots = trig_poly_roots(f, grid, touch_rel=_TOUCH_REL)

    thr = _DEGENERATE_REL * max(abs(s.a0),
                                deriv_bound(s, 2) + t * t * deriv_bound(s, 0))
    out = []
    for r in roots:
        crit = float(s.eval(r.phi, 2)) - float(s.eval(r.phi, 0)) * t * t
        if crit > thr:
            stab = ObliqueStability.STABLE
        elif crit < -thr:
            stab = ObliqueStability.UNSTABLE
        else:
            stab = ObliqueStability.DEGENERATE
        out.append(ObliqueEquilibrium(r.phi, stab))
    return out


def perturbed_evolute_point(b: ConvexBody, alpha: float, phi: float) -> PlanePoint:
    """e_alpha(phi) = e(phi) - tan(alpha) J z(phi).

    Algebraically identical to (p' - t p) u' - (p'' - t p') u; the second
    form is what the counting integrals use.
    """
    if not -math.pi / 2 < alpha < math.pi / 2:
        raise ValueError("inclination must lie in (-pi/2, pi/2)")
    t = math.tan(alpha)
    e = evolute_point(b, phi)
    p0 = b.support.eval(phi, 0)
    p1 = b.support.eval(phi, 1)
    zx = p0 * math.cos(phi) - p1 * math.sin(phi)
    zy = p0 * math.sin(phi) + p1 * math.cos(phi)
    return PlanePoint(e.x + t * zy, e.y - t * zx)


def oblique_count_via_formula(b: ConvexBody, o: PlanePoint,
                              alpha: float) -> tuple:
    """(n_alpha, m_alpha): winding count of e_alpha, verified against roots.

    m_alpha comes from the same counting quadrature with p' replaced by
    p' - tan(alpha) p; it may be positive (it tends to +1 as the incline
    steepens past every equilibrium).
    """
    _, f, _ = _oblique_series(b, o, alpha)
    if deriv_bound(f, 0) <= 1e-13 * max(1.0, b.scale):
        raise DegenerateCircle("equilibrium condition vanishes identically")
    _, vm, samples = counting_integrals(f)
    residual = abs(2.0 * vm - round(2.0 * vm))
    if residual > M_RESIDUAL_TOL:
        raise NotConverged(vm, samples, residual)
    m = HalfInteger(int(round(2.0 * vm)))
    n_alpha = 2 - m.twice
    n_direct = len(find_oblique_equilibria(b, o, alpha))
    if n_direct != n_alpha:
        raise Mismatch(n_direct, n_alpha)
    return n_alpha, m


def build_oblique_body(b: ConvexBody, alpha: float) -> ObliqueBody:
    """Primitive p_alpha of p' - tan(alpha) p with a periodic curvature radius.

    The primitive picks up the linear term -tan(alpha) a0 phi, which makes
    rho_alpha aperiodic for every valid body unless alpha = 0; such cases
    are rejected with NonPeriodic.  The integration constant is chosen so
    min rho_alpha >= 0.1 * rho_min of the input body.
    """
    if not -math.pi / 2 < alpha < math.pi / 2:
        raise ValueError("inclination must lie in (-pi/2, pi/2)")
    t = math.tan(alpha)
    s = b.support
    # primitive of the harmonic part of p
    K = s.degree
    anti_cc = tuple(-s.sin_coeffs[k - 1] / k for k in range(1, K + 1))
    anti_ss = tuple(s.cos_coeffs[k - 1] / k for k in range(1, K + 1))
    harmonic_primitive = TrigPolySupport(0.0, anti_cc, anti_ss)
    periodic = combine(s, 1.0, harmonic_primitive, -t)
    linear = -t * s.a0

    if abs(linear) * TWO_PI > _PERIODICITY_TOL:
        raise NonPeriodic(
            f"rho_alpha gains {linear * TWO_PI:.3g} per turn "
            f"(mean of p' - tan(alpha) p is nonzero)"
        )

    rho_a = rho_series(periodic)
    grid = max(1024, 64 * max(1, periodic.degree))
    phis = np.arange(grid) * (TWO_PI / grid)
    vals = rho_a.eval(phis)
    i = int(np.argmin(vals))
    h = TWO_PI / grid
    _, raw_min = _golden_min(lambda u: float(rho_a.eval(u)),
                             float(phis[i]) - h, float(phis[i]) + h)
    constant = max(0.0, 0.1 * b.rho_min - raw_min)
    return ObliqueBody(
        periodic=TrigPolySupport(periodic.a0 + constant,
                                 periodic.cos_coeffs, periodic.sin_coeffs),
        linear_coeff=linear,
        constant=constant,
        rho_alpha_min=raw_min + constant,
    )


def center_trace(b: ConvexBody, o: PlanePoint, alpha: float,
                 samples: int) -> list:
    """Positions of the center while the body rolls once along the incline.

    Returns O(phi_i) at uniform phi_i in [0, 2 pi] (endpoint included); the
    second coordinate is the potential height, whose stationary points are
    the oblique equilibria.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples")
    inc = Incline(alpha)
    s = b.support.shifted_origin(o)
    phis = np.linspace(0.0, TWO_PI, samples)
    arcs = _arc_length_values(s, phis)
    p0 = s.eval(phis, 0)
    p1 = s.eval(phis, 1)
    along = arcs - p1
    v, vp = inc.v, inc.v_perp
    return [
        PlanePoint(float(a * v.x + h * vp.x), float(a * v.y + h * vp.y))
        for a, h in zip(along, p0)
    ]
