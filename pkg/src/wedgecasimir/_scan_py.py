"""Pure-Python specular-tracing kernels for the wedge.

Same contract as the compiled twin ``_scan_cy``: textbook mirror-law tracing
inside the region 0 < theta < gamma, bounded by the horizontal half-line and
the top half-line.  Consecutive bounces alternate between the two planes
(the region is convex), so each step only tests the plane not just hit.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"


def trace_path(ax, ay, dx, dy, gamma, max_bounces):
    """Specular trace; returns (points, lengths, exited, final_dx, final_dy).

    points/lengths are Python lists; ``exited`` is True when the ray leaves
    the wedge before reaching max_bounces bounces.
    """
    tg = math.tan(gamma)
    sg, cg = math.sin(gamma), math.cos(gamma)
    pts = []
    lens = []
    last = -1
    for _ in range(max_bounces):
        tbest = -1.0
        which = -1
        hx = hy = 0.0
        if last != 0 and dy < 0.0:
            t = -ay / dy
            if t > 0.0:
                x = ax + t * dx
                if x >= 0.0:
                    tbest, which, hx, hy = t, 0, x, 0.0
        if last != 1:
            den = dy - dx * tg
            if den != 0.0:
                t = (ax * tg - ay) / den
                if t > 0.0:
                    x = ax + t * dx
                    if x >= 0.0 and (tbest < 0.0 or t < tbest):
                        tbest, which, hx, hy = t, 1, x, x * tg
        if which < 0:
            return pts, lens, True, dx, dy
        pts.append((hx, hy))
        lens.append(tbest)
        ax, ay = hx, hy
        if which == 0:
            dy = -dy
        else:
            d = dx * sg - dy * cg
            dx -= 2.0 * d * sg
            dy += 2.0 * d * cg
        last = which
    return pts, lens, False, dx, dy


def closure_eval(ax, ay, theta, gamma, n):
    """Signed perpendicular miss of the post-n-bounce ray from the start.

    Returns (miss, forward, valid); forward > 0 means the start point lies
    ahead of the final bounce along the outgoing ray.
    """
    dx, dy = math.cos(theta), math.sin(theta)
    pts, lens, exited, fdx, fdy = trace_path(ax, ay, dx, dy, gamma, n)
    if exited or len(pts) < n:
        return 0.0, 0.0, False
    bx, by = pts[-1]
    miss = fdx * (ay - by) - fdy * (ax - bx)
    fwd = fdx * (ax - bx) + fdy * (ay - by)
    return miss, fwd, True


def closure_scan(ax, ay, gamma, n, thetas):
    """Vectorised closure_eval over an array of launch angles."""
    thetas = np.asarray(thetas, dtype=float)
    miss = np.empty(thetas.shape)
    fwd = np.empty(thetas.shape)
    valid = np.empty(thetas.shape, dtype=bool)
    for i, th in enumerate(thetas.ravel()):
        m, f, v = closure_eval(ax, ay, float(th), gamma, n)
        miss.flat[i] = m
        fwd.flat[i] = f
        valid.flat[i] = v
    return miss, fwd, valid
