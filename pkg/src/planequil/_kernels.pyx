# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled numerical kernels.

Same contract as ``_kernels_py``: term-wise Fourier evaluation and the
turn-angle sum for polygonal winding numbers.  Harmonics are generated per
node by the angle-addition recurrence, so each node costs O(K) flops and
no trig tables are allocated.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport atan2, cos, sin, sqrt

cnp.import_array()

BACKEND_NAME = "cython"


def eval_series(double a0, double[::1] cc, double[::1] ss,
                double[::1] phi, int order):
    cdef Py_ssize_t n = phi.shape[0]
    cdef Py_ssize_t K = cc.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    kfac_arr = (np.arange(1, K + 1, dtype=np.float64) ** order
                if K else np.empty(0))
    cdef double[::1] kfac = kfac_arr
    cdef int m = order % 4
    cdef double base = a0 if order == 0 else 0.0
    cdef Py_ssize_t i, k
    cdef double c1, s1, ck, sk, tmp, acc, f
    with nogil:
        for i in range(n):
            c1 = cos(phi[i])
            s1 = sin(phi[i])
            ck = 1.0
            sk = 0.0
            acc = base
            for k in range(K):
                tmp = ck * c1 - sk * s1
                sk = sk * c1 + ck * s1
                ck = tmp
                f = kfac[k]
                if m == 0:
                    acc += f * (cc[k] * ck + ss[k] * sk)
                elif m == 1:
                    acc += f * (ss[k] * ck - cc[k] * sk)
                elif m == 2:
                    acc -= f * (cc[k] * ck + ss[k] * sk)
                else:
                    acc += f * (cc[k] * sk - ss[k] * ck)
            out[i] = acc
    return out_arr


def eval_series_trio(double a0, double[::1] cc, double[::1] ss,
                     double[::1] phi):
    cdef Py_ssize_t n = phi.shape[0]
    cdef Py_ssize_t K = cc.shape[0]
    f0_arr = np.empty(n, dtype=np.float64)
    f1_arr = np.empty(n, dtype=np.float64)
    f2_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] f0 = f0_arr
    cdef double[::1] f1 = f1_arr
    cdef double[::1] f2 = f2_arr
    cdef Py_ssize_t i, k
    cdef double c1, s1, ck, sk, tmp, a, b, kk, t0, t1, t2
    with nogil:
        for i in range(n):
            c1 = cos(phi[i])
            s1 = sin(phi[i])
            ck = 1.0
            sk = 0.0
            t0 = a0
            t1 = 0.0
            t2 = 0.0
            for k in range(K):
                tmp = ck * c1 - sk * s1
                sk = sk * c1 + ck * s1
                ck = tmp
                a = cc[k] * ck + ss[k] * sk
                b = ss[k] * ck - cc[k] * sk
                kk = k + 1.0
                t0 += a
                t1 += kk * b
                t2 -= kk * kk * a
            f0[i] = t0
            f1[i] = t1
            f2[i] = t2
    return f0_arr, f1_arr, f2_arr


def turn_angle_sum(double[::1] xs, double[::1] ys, double ox, double oy):
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t i, j
    cdef double vx, vy, wx, wy, total = 0.0, r2
    cdef double min_r2 = float("inf")
    with nogil:
        for i in range(n):
            j = i + 1
            if j == n:
                j = 0
            vx = xs[i] - ox
            vy = ys[i] - oy
            wx = xs[j] - ox
            wy = ys[j] - oy
            total += atan2(vx * wy - vy * wx, vx * wx + vy * wy)
            r2 = vx * vx + vy * vy
            if r2 < min_r2:
                min_r2 = r2
    return total, sqrt(min_r2) if n else float("inf")
