"""Pure-numpy implementations of the numerical kernels.

Fallback backend used when the compiled extension is unavailable; the
compiled module in ``_kernels.pyx`` implements the same three functions
with identical semantics.  All inputs are 1-d contiguous float64 arrays.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def eval_series(a0: float, cc: np.ndarray, ss: np.ndarray,
                phi: np.ndarray, order: int) -> np.ndarray:
    """Evaluate the order-th derivative of a real Fourier series.

    The series is a0 + sum_k cc[k-1] cos(k phi) + ss[k-1] sin(k phi);
    differentiation is term-wise and exact.
    """
    out = np.full(phi.shape, a0 if order == 0 else 0.0)
    m = order % 4
    for k in range(1, len(cc) + 1):
        c, s = cc[k - 1], ss[k - 1]
        if c == 0.0 and s == 0.0:
            continue
        f = float(k) ** order
        ck = np.cos(k * phi)
        sk = np.sin(k * phi)
        if m == 0:
            out += f * c * ck + f * s * sk
        elif m == 1:
            out += f * s * ck - f * c * sk
        elif m == 2:
            out -= f * c * ck + f * s * sk
        else:
            out += f * c * sk - f * s * ck
    return out


def eval_series_trio(a0: float, cc: np.ndarray, ss: np.ndarray,
                     phi: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Orders 0, 1 and 2 of the series in one pass (shared cos/sin tables)."""
    f0 = np.full(phi.shape, a0)
    f1 = np.zeros(phi.shape)
    f2 = np.zeros(phi.shape)
    for k in range(1, len(cc) + 1):
        c, s = cc[k - 1], ss[k - 1]
        if c == 0.0 and s == 0.0:
            continue
        ck = np.cos(k * phi)
        sk = np.sin(k * phi)
        f0 += c * ck + s * sk
        f1 += k * (s * ck - c * sk)
        f2 -= k * k * (c * ck + s * sk)
    return f0, f1, f2


def turn_angle_sum(xs: np.ndarray, ys: np.ndarray,
                   ox: float, oy: float) -> tuple[float, float]:
    """Total signed turn angle of a closed polyline about (ox, oy).

    Returns (total_angle, min_vertex_distance).  The loop closes from the
    last vertex back to the first.
    """
    vx = xs - ox
    vy = ys - oy
    wx = np.roll(vx, -1)
    wy = np.roll(vy, -1)
    cross = vx * wy - vy * wx
    dot = vx * wx + vy * wy
    total = float(np.arctan2(cross, dot).sum())
    min_r = float(np.sqrt(vx * vx + vy * vy).min()) if len(xs) else np.inf
    return total, min_r
