"""Support-function representation of planar strongly convex bodies.

A body is described by a finite Fourier series p(phi) (its support
function); the boundary is z(phi) = p u + p' u' with u = (cos, sin).
Keeping the representation a trigonometric polynomial makes derivatives,
perimeter, recentering and the constant-width test exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import _backend
from .errors import NotConvex, OutOfRange, QuadratureDiverged

TWO_PI = 2.0 * math.pi

# Strong-convexity certification (see validate()).
RHO_MIN_TOL = 1e-9
_VALIDATE_GRID_MIN = 1024
_VALIDATE_GRID_PER_K = 64

# Doubling vector quadrature (centroid, boundary centroid).
_VQ_START = 64
_VQ_CAP = 1 << 16
_VQ_REL_TOL = 1e-10

_CONSTANT_WIDTH_TOL = 1e-12


@dataclass(frozen=True)
class PlanePoint:
    """A point (or vector) in the plane."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("plane point components must be finite")

    def __add__(self, other: "PlanePoint") -> "PlanePoint":
        return PlanePoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "PlanePoint") -> "PlanePoint":
        return PlanePoint(self.x - other.x, self.y - other.y)

    def __mul__(self, t: float) -> "PlanePoint":
        return PlanePoint(self.x * t, self.y * t)

    __rmul__ = __mul__

    def __neg__(self) -> "PlanePoint":
        return PlanePoint(-self.x, -self.y)

    def dot(self, other: "PlanePoint") -> float:
        return self.x * other.x + self.y * other.y

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


PlaneVector = PlanePoint


def unit(phi: float) -> PlaneVector:
    """Outward unit direction u(phi)."""
    return PlanePoint(math.cos(phi), math.sin(phi))


def unit_prime(phi: float) -> PlaneVector:
    """Tangential unit direction u'(phi) (the quarter turn of u)."""
    return PlanePoint(-math.sin(phi), math.cos(phi))


@dataclass(frozen=True)
class TrigPolySupport:
    """Finite Fourier series a0 + sum_k (cos_coeffs[k-1] cos(k phi) + sin_coeffs[k-1] sin(k phi)).

    Used both for support functions and for series derived from them
    (derivatives, radius of curvature, inclined combinations).  Exact
    derivatives of any order are available term-wise.
    """

    a0: float
    cos_coeffs: tuple = ()
    sin_coeffs: tuple = ()

    def __post_init__(self):
        cc = tuple(float(v) for v in self.cos_coeffs)
        ss = tuple(float(v) for v in self.sin_coeffs)
        if len(cc) != len(ss):
            raise ValueError("cos and sin coefficient lists must have equal length")
        vals = (float(self.a0),) + cc + ss
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "cos_coeffs", cc)
        object.__setattr__(self, "sin_coeffs", ss)

    @property
    def degree(self) -> int:
        return len(self.cos_coeffs)

    @cached_property
    def _carr(self) -> np.ndarray:
        return np.ascontiguousarray(self.cos_coeffs, dtype=np.float64)

    @cached_property
    def _sarr(self) -> np.ndarray:
        return np.ascontiguousarray(self.sin_coeffs, dtype=np.float64)

    def eval(self, phi, order: int = 0):
        """Value of the order-th derivative at phi (scalar or array)."""
        if order < 0:
            raise ValueError("derivative order must be >= 0")
        arr = np.asarray(phi, dtype=np.float64)
        scalar = arr.ndim == 0
        flat = np.ascontiguousarray(arr.reshape(-1))
        out = _backend.eval_series(self.a0, self._carr, self._sarr, flat, order)
        if scalar:
            return float(out[0])
        return out.reshape(arr.shape)

    def eval_trio(self, phi: np.ndarray):
        """Orders 0, 1, 2 at an array of angles, fused."""
        flat = np.ascontiguousarray(np.asarray(phi, dtype=np.float64).reshape(-1))
        return _backend.eval_series_trio(self.a0, self._carr, self._sarr, flat)

    def derivative(self) -> "TrigPolySupport":
        """Term-wise derivative as a new series."""
        K = self.degree
        cc = tuple(k * self.sin_coeffs[k - 1] for k in range(1, K + 1))
        ss = tuple(-k * self.cos_coeffs[k - 1] for k in range(1, K + 1))
        return TrigPolySupport(0.0, cc, ss)

    def shifted_origin(self, o: PlanePoint) -> "TrigPolySupport":
        """Support series of the same body with the origin moved to o.

        Only the first-harmonic coefficients change:
        p_o(phi) = p(phi) - o.x cos(phi) - o.y sin(phi).
        """
        K = max(1, self.degree)
        cc = list(self.cos_coeffs) + [0.0] * (K - self.degree)
        ss = list(self.sin_coeffs) + [0.0] * (K - self.degree)
        cc[0] -= o.x
        ss[0] -= o.y
        return TrigPolySupport(self.a0, tuple(cc), tuple(ss))

    def rotated(self, theta: float) -> "TrigPolySupport":
        """Support series of the body rotated by theta about the origin."""
        cc, ss = [], []
        for k in range(1, self.degree + 1):
            c, s = self.cos_coeffs[k - 1], self.sin_coeffs[k - 1]
            ck, sk = math.cos(k * theta), math.sin(k * theta)
            cc.append(c * ck - s * sk)
            ss.append(c * sk + s * ck)
        return TrigPolySupport(self.a0, tuple(cc), tuple(ss))


def combine(s1: TrigPolySupport, t1: float,
            s2: TrigPolySupport, t2: float) -> TrigPolySupport:
    """The series t1*s1 + t2*s2, padded to the larger degree."""
    K = max(s1.degree, s2.degree)

    def coeffs(s: TrigPolySupport, which: str) -> list:
        vals = list(getattr(s, which))
        return vals + [0.0] * (K - len(vals))

    cc = [t1 * a + t2 * b for a, b in zip(coeffs(s1, "cos_coeffs"), coeffs(s2, "cos_coeffs"))]
    ss = [t1 * a + t2 * b for a, b in zip(coeffs(s1, "sin_coeffs"), coeffs(s2, "sin_coeffs"))]
    return TrigPolySupport(t1 * s1.a0 + t2 * s2.a0, tuple(cc), tuple(ss))


def rho_series(s: TrigPolySupport) -> TrigPolySupport:
    """Radius of curvature rho = p + p'' as a series; harmonic k scales by (1 - k^2)."""
    cc = tuple((1 - k * k) * s.cos_coeffs[k - 1] for k in range(1, s.degree + 1))
    ss = tuple((1 - k * k) * s.sin_coeffs[k - 1] for k in range(1, s.degree + 1))
    return TrigPolySupport(s.a0, cc, ss)


def deriv_bound(s: TrigPolySupport, order: int) -> float:
    """Upper bound for max |d^order p / dphi^order| from the coefficients."""
    total = abs(s.a0) if order == 0 else 0.0
    for k in range(1, s.degree + 1):
        total += k ** order * math.hypot(s.cos_coeffs[k - 1], s.sin_coeffs[k - 1])
    return total


def is_negligible(s: TrigPolySupport, rel_to: float, tol: float = 1e-13) -> bool:
    """True when the whole series is zero within tol relative to rel_to."""
    return deriv_bound(s, 0) <= tol * max(1.0, abs(rel_to))


@dataclass(frozen=True)
class ConvexBody:
    """A validated strongly convex body with cached geometric scalars."""

    support: TrigPolySupport
    rho_min: float
    perimeter: float
    area: float
    centroid: PlanePoint

    def eval(self, phi, order: int = 0):
        return self.support.eval(phi, order)

    def rho(self, phi):
        return rho_series(self.support).eval(phi)

    @property
    def scale(self) -> float:
        """Characteristic length of the body (mean support distance)."""
        return self.support.a0


def eval_support(s: TrigPolySupport, phi: float, order: int = 0) -> float:
    """p(phi), p'(phi), p''(phi) or p'''(phi) by exact term-wise differentiation."""
    if order not in (0, 1, 2, 3):
        raise ValueError("order must be one of 0, 1, 2, 3")
    return s.eval(phi, order)


def _golden_min(f, lo: float, hi: float, tol: float = 1e-12):
    """Golden-section minimum of a unimodal scalar function on [lo, hi]."""
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv * (b - a)
    d = a + inv * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _closed_form_area(s: TrigPolySupport) -> float:
    # A = 1/2 int (p^2 - p'^2); Parseval leaves pi a0^2 + pi/2 sum (1-k^2)(c^2+s^2).
    acc = math.pi * s.a0 * s.a0
    for k in range(1, s.degree + 1):
        c, sk = s.cos_coeffs[k - 1], s.sin_coeffs[k - 1]
        acc += 0.5 * math.pi * (1 - k * k) * (c * c + sk * sk)
    return acc


def _boundary_points_array(s: TrigPolySupport, phi: np.ndarray) -> np.ndarray:
    p0, p1, _ = s.eval_trio(phi)
    c, sn = np.cos(phi), np.sin(phi)
    return np.column_stack((p0 * c - p1 * sn, p0 * sn + p1 * c))


def _vector_quadrature(fn, rel_tol: float = _VQ_REL_TOL,
                       start: int = _VQ_START, cap: int = _VQ_CAP) -> PlanePoint:
    """Periodic-trapezoid mean of a vector-valued integrand, doubled to agreement.

    fn(phis) must return an (n, 2) array; the result is its integral over
    [0, 2 pi).  Spectrally exact for trigonometric-polynomial integrands.
    """
    prev = None
    n = start
    while n <= cap:
        phis = np.arange(n) * (TWO_PI / n)
        vals = fn(phis)
        cur = vals.mean(axis=0) * TWO_PI
        if prev is not None:
            if float(np.hypot(*(cur - prev))) <= rel_tol * max(1.0, float(np.hypot(*cur))):
                return PlanePoint(float(cur[0]), float(cur[1]))
        prev = cur
        n *= 2
    raise QuadratureDiverged(f"no agreement within {rel_tol:g} by {cap} samples")


def _centroid(s: TrigPolySupport, area: float) -> PlanePoint:
    def fn(phis: np.ndarray) -> np.ndarray:
        p0, p1, p2 = s.eval_trio(phis)
        w = p0 * (p0 + p2)
        return _boundary_points_array(s, phis) * w[:, None]

    g = _vector_quadrature(fn)
    return PlanePoint(g.x / (3.0 * area), g.y / (3.0 * area))


def validate(s: TrigPolySupport) -> ConvexBody:
    """Certify strong convexity and build a ConvexBody with cached scalars.

    rho = p + p'' is sampled densely (the grid grows with the maximal
    harmonic, so a trig polynomial cannot alias through it), every local
    minimum is polished by golden section, and the certified minimum must
    exceed RHO_MIN_TOL.

    Raises NotConvex with the offending angle otherwise.
    """
    rho = rho_series(s)
    grid = max(_VALIDATE_GRID_MIN, _VALIDATE_GRID_PER_K * max(1, s.degree))
    phis = np.arange(grid) * (TWO_PI / grid)
    vals = rho.eval(phis)
    h = TWO_PI / grid

    prev = np.roll(vals, 1)
    nxt = np.roll(vals, -1)
    candidates = np.where((vals <= prev) & (vals <= nxt))[0]

    best_phi = float(phis[int(np.argmin(vals))])
    best_val = float(vals.min())
    for i in candidates:
        lo = phis[i] - h
        hi = phis[i] + h
        x, fx = _golden_min(lambda t: float(rho.eval(t)), lo, hi)
        if fx < best_val:
            best_val, best_phi = fx, x % TWO_PI

    if best_val <= RHO_MIN_TOL:
        raise NotConvex(best_phi, best_val)

    area_val = _closed_form_area(s)
    return ConvexBody(
        support=s,
        rho_min=best_val,
        perimeter=TWO_PI * s.a0,
        area=area_val,
        centroid=_centroid(s, area_val),
    )


def recenter(b: ConvexBody, o: PlanePoint) -> ConvexBody:
    """The same body described from origin o.

    Only first-harmonic coefficients change, so rho (and with it the
    convexity certificate), perimeter and area are inherited; the cached
    centroid just translates.
    """
    return ConvexBody(
        support=b.support.shifted_origin(o),
        rho_min=b.rho_min,
        perimeter=b.perimeter,
        area=b.area,
        centroid=b.centroid - o,
    )


def boundary_point(b: ConvexBody, phi: float) -> PlanePoint:
    """Boundary point z(phi) = p u + p' u'; satisfies <z, u> = p."""
    p0 = b.support.eval(phi, 0)
    p1 = b.support.eval(phi, 1)
    c, s = math.cos(phi), math.sin(phi)
    return PlanePoint(p0 * c - p1 * s, p0 * s + p1 * c)


def boundary_points(b: ConvexBody, phis: Sequence[float]) -> np.ndarray:
    """Vectorized boundary points, one row per angle."""
    return _boundary_points_array(b.support, np.asarray(phis, dtype=np.float64))


def _arc_length_values(s: TrigPolySupport, phis: np.ndarray) -> np.ndarray:
    # s(phi) = int_0^phi p + p'(phi) - p'(0), with the integral in closed form.
    acc = s.a0 * phis
    for k in range(1, s.degree + 1):
        c, sk = s.cos_coeffs[k - 1], s.sin_coeffs[k - 1]
        acc += (c * np.sin(k * phis) + sk * (1.0 - np.cos(k * phis))) / k
    return acc + s.eval(phis, 1) - s.eval(0.0, 1)


def arc_length(b: ConvexBody, phi: float) -> float:
    """Boundary arc length between angles 0 and phi; equals the perimeter at 2 pi."""
    if not 0.0 <= phi <= TWO_PI:
        raise OutOfRange(f"arc length angle {phi!r} outside [0, 2 pi]")
    return float(_arc_length_values(b.support, np.asarray([phi]))[0])


def area(b: ConvexBody) -> float:
    """Enclosed area, exact from the Fourier coefficients."""
    return b.area


def centroid(b: ConvexBody) -> PlanePoint:
    """Centroid of the homogeneous body (cached at validation time)."""
    return b.centroid


def boundary_centroid(b: ConvexBody) -> PlanePoint:
    """Center of mass of the boundary curve (arc-length weighted)."""
    s = b.support

    def fn(phis: np.ndarray) -> np.ndarray:
        p0, p1, _ = s.eval_trio(phis)
        w = p0 * p0 - 0.5 * p1 * p1
        return np.column_stack((w * np.cos(phis), w * np.sin(phis)))

    g = _vector_quadrature(fn)
    return PlanePoint(g.x / b.perimeter, g.y / b.perimeter)


def constant_width(b: ConvexBody) -> Optional[float]:
    """Width d when p(phi) + p(phi + pi) is constant, else None.

    Exact Fourier criterion: every harmonic of even order k >= 2 vanishes.
    """
    for k in range(2, b.support.degree + 1, 2):
        if (abs(b.support.cos_coeffs[k - 1]) > _CONSTANT_WIDTH_TOL
                or abs(b.support.sin_coeffs[k - 1]) > _CONSTANT_WIDTH_TOL):
            return None
    return 2.0 * b.support.a0
