# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled specular-tracing kernels for the wedge (twin of _scan_py)."""

from libc.math cimport sin, cos, tan

import numpy as np

BACKEND = "cython"


cdef inline int _step(double *ax, double *ay, double *dx, double *dy,
                      double tg, double sg, double cg, int last,
                      double *hx, double *hy, double *seg) nogil:
    """Advance one bounce; returns plane index hit or -1 on escape."""
    cdef double tbest = -1.0
    cdef int which = -1
    cdef double t, x, den, d
    cdef double bx = 0.0, by = 0.0
    if last != 0 and dy[0] < 0.0:
        t = -ay[0] / dy[0]
        if t > 0.0:
            x = ax[0] + t * dx[0]
            if x >= 0.0:
                tbest = t; which = 0; bx = x; by = 0.0
    if last != 1:
        den = dy[0] - dx[0] * tg
        if den != 0.0:
            t = (ax[0] * tg - ay[0]) / den
            if t > 0.0:
                x = ax[0] + t * dx[0]
                if x >= 0.0 and (tbest < 0.0 or t < tbest):
                    tbest = t; which = 1; bx = x; by = x * tg
    if which < 0:
        return -1
    ax[0] = bx; ay[0] = by
    hx[0] = bx; hy[0] = by; seg[0] = tbest
    if which == 0:
        dy[0] = -dy[0]
    else:
        d = dx[0] * sg - dy[0] * cg
        dx[0] -= 2.0 * d * sg
        dy[0] += 2.0 * d * cg
    return which


cdef inline int _closure(double ax, double ay, double theta, double gamma,
                         int n, double *miss, double *fwd) nogil:
    cdef double sx = ax, sy = ay
    cdef double dx = cos(theta), dy = sin(theta)
    cdef double tg = tan(gamma), sg = sin(gamma), cg = cos(gamma)
    cdef double hx = 0.0, hy = 0.0, seg = 0.0
    cdef int last = -1, k, which
    for k in range(n):
        which = _step(&ax, &ay, &dx, &dy, tg, sg, cg, last, &hx, &hy, &seg)
        if which < 0:
            return 0
        last = which
    miss[0] = dx * (sy - hy) - dy * (sx - hx)
    fwd[0] = dx * (sx - hx) + dy * (sy - hy)
    return 1


def trace_path(double ax, double ay, double dx, double dy, double gamma,
               int max_bounces):
    """Specular trace; returns (points, lengths, exited, final_dx, final_dy)."""
    cdef double tg = tan(gamma), sg = sin(gamma), cg = cos(gamma)
    cdef double hx = 0.0, hy = 0.0, seg = 0.0
    cdef int last = -1, k, which
    pts = []
    lens = []
    for k in range(max_bounces):
        which = _step(&ax, &ay, &dx, &dy, tg, sg, cg, last, &hx, &hy, &seg)
        if which < 0:
            return pts, lens, True, dx, dy
        pts.append((hx, hy))
        lens.append(seg)
        last = which
    return pts, lens, False, dx, dy


def closure_eval(double ax, double ay, double theta, double gamma, int n):
    cdef double miss = 0.0, fwd = 0.0
    cdef int ok = _closure(ax, ay, theta, gamma, n, &miss, &fwd)
    if not ok:
        return 0.0, 0.0, False
    return miss, fwd, True


def closure_scan(double ax, double ay, double gamma, int n, thetas):
    """Vectorised closure_eval over an array of launch angles."""
    cdef double[::1] th = np.ascontiguousarray(thetas, dtype=np.float64)
    cdef Py_ssize_t size = th.shape[0], i
    miss_arr = np.empty(size)
    fwd_arr = np.empty(size)
    valid_arr = np.empty(size, dtype=np.uint8)
    cdef double[::1] mv = miss_arr
    cdef double[::1] fv = fwd_arr
    cdef unsigned char[::1] vv = valid_arr
    cdef double miss, fwd
    cdef int ok
    with nogil:
        for i in range(size):
            miss = 0.0; fwd = 0.0
            ok = _closure(ax, ay, th[i], gamma, n, &miss, &fwd)
            mv[i] = miss; fv[i] = fwd; vv[i] = ok
    return miss_arr, fwd_arr, valid_arr.astype(bool)
