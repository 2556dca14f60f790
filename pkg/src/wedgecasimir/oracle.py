"""Independent ground-truth engines for the wedge problem.

Everything here is first-principles numerics sharing no code with the
closed-form modules: a 2D mirror-law ray tracer, a method-of-images chord
calculator, a shooting orbit finder that scans the full launch circle, and an
adaptive quadrature driver.  Tests and the ``validate`` command compare the
closed forms against these.

The tracing kernels come from the compiled extension when it built, else from
the pure-Python twin; :func:`backend_name` reports which one is active.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import scipy.integrate

from .wedge import FirstPlate, PolarPoint, WedgeGeometry

try:
    from . import _scan_cy as _kern
except ImportError:                       # extension not built
    from . import _scan_py as _kern


def backend_name() -> str:
    """Name of the active tracing kernel backend ('cython' or 'python')."""
    return _kern.BACKEND


def kernel_module():
    return _kern


@dataclass(frozen=True)
class Ray2D:
    """Ray in the cross-section plane: origin and unit direction."""

    origin: tuple[float, float]
    direction: tuple[float, float]

    def __post_init__(self):
        norm = math.hypot(*self.direction)
        if abs(norm - 1.0) > 1e-14:
            raise ValueError(f"direction must be unit length, |d|={norm}")


@dataclass(frozen=True)
class TraceResult:
    points: tuple[tuple[float, float], ...]
    segment_lengths: tuple[float, ...]
    exited: bool
    final_direction: tuple[float, float]
    grazing: bool

    @property
    def bounces(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class FoundOrbit:
    initial_angle: float
    closure_distance: float
    total_length: float
    bounce_points: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class OrbitSearchResult:
    found: tuple[FoundOrbit, ...]
    grazing: tuple[FoundOrbit, ...]
    resolution: int
    refinement_tolerance: float

    @property
    def count(self) -> int:
        return len(self.found)


class QuadratureConvergenceError(RuntimeError):
    """Requested tolerance not reached; carries the best estimate."""

    def __init__(self, message, estimate, error_estimate):
        super().__init__(message)
        self.estimate = estimate
        self.error_estimate = error_estimate


GRAZING_FRACTION = 1e-9


def trace(ray: Ray2D, geom: WedgeGeometry, max_bounces: int) -> TraceResult:
    """Specular trace of a ray from a point strictly inside the wedge."""
    ax, ay = ray.origin
    if not geom.contains(ax, ay):
        raise ValueError(f"ray origin {ray.origin} not strictly inside the wedge")
    pts, lens, exited, fdx, fdy = _kern.trace_path(
        ax, ay, ray.direction[0], ray.direction[1], geom.gamma, max_bounces)
    scale = math.hypot(ax, ay)
    grazing = any(math.hypot(px, py) < GRAZING_FRACTION * scale for px, py in pts)
    return TraceResult(tuple(pts), tuple(lens), exited, (fdx, fdy), grazing)


def _reflect_point(a: float, b: float, plate: FirstPlate, gamma: float):
    if plate is FirstPlate.HORIZONTAL:
        return a, -b
    c2, s2 = math.cos(2.0 * gamma), math.sin(2.0 * gamma)
    return c2 * a + s2 * b, s2 * a - c2 * b


def images_chord(point: PolarPoint, geom: WedgeGeometry, n: int,
                 first_plate: FirstPlate = FirstPlate.HORIZONTAL) -> float:
    """Length of a closed n-bounce path by unfolding reflections.

    Reflects the start point through the bounce-plane sequence (first-hit
    plane applied last); the distance to the final image equals the closed
    path length.  Raises if the corresponding closed path does not exist.
    """
    if n < 1:
        raise ValueError("need at least one bounce")
    if n % 2 == 0:
        m = n // 2
        if not geom.gamma < math.pi / (2 * m):
            raise ValueError(f"no closed {n}-bounce path at gamma={geom.gamma}")
    else:
        m = (n - 1) // 2
        if m >= 1 and not geom.gamma < math.pi / (2 * m):
            raise ValueError(f"no closed {n}-bounce path at gamma={geom.gamma}")
        if first_plate is FirstPlate.HORIZONTAL and not point.psi > m * geom.gamma:
            raise ValueError("no horizontal-first closed path from this point")
        if first_plate is FirstPlate.TOP and not point.psi < math.pi - (m + 1) * geom.gamma:
            raise ValueError("no top-first closed path from this point")
    other = (FirstPlate.TOP if first_plate is FirstPlate.HORIZONTAL
             else FirstPlate.HORIZONTAL)
    seq = [first_plate if k % 2 == 0 else other for k in range(n)]
    a, b = point.cartesian()
    ia, ib = a, b
    for plate in reversed(seq):
        ia, ib = _reflect_point(ia, ib, plate, geom.gamma)
    return math.hypot(a - ia, b - ib)


def closure_function(point: PolarPoint, geom: WedgeGeometry, n: int
                     ) -> Callable[[float], tuple[float, float, bool]]:
    """(miss, forward, valid) of the post-n-bounce ray as a function of launch angle."""
    a, b = point.cartesian()

    def f(theta: float):
        return _kern.closure_eval(a, b, theta, geom.gamma, n)

    return f


def find_closed_orbits(point: PolarPoint, geom: WedgeGeometry, n: int,
                       angular_resolution: int = 4096,
                       refine_tol: float = 1e-12) -> OrbitSearchResult:
    """All distinct closed n-bounce paths from the point, by shooting.

    Scans launch angles over the full circle, bisects every sign change of
    the closure miss within angle intervals where the trace stays valid, and
    keeps roots whose outgoing ray passes forward through the start point.
    Orbits with a bounce at the wedge vertex are reported separately as
    grazing and excluded from the count.
    """
    a, b = point.cartesian()
    if not geom.contains(a, b):
        raise ValueError("base point not strictly inside the wedge")
    scale = math.hypot(a, b)
    thetas = np.linspace(0.0, 2.0 * math.pi, angular_resolution, endpoint=False)
    miss, fwd, valid = _kern.closure_scan(a, b, geom.gamma, n, thetas)
    step = 2.0 * math.pi / angular_resolution

    found: list[FoundOrbit] = []
    grazing: list[FoundOrbit] = []
    for i in range(angular_resolution):
        j = (i + 1) % angular_resolution
        if not (valid[i] and valid[j]):
            continue
        if miss[i] == 0.0 or miss[i] * miss[j] >= 0.0:
            continue
        lo, hi = thetas[i], thetas[i] + step
        flo = miss[i]
        for _ in range(200):
            if hi - lo <= refine_tol:
                break
            mid = 0.5 * (lo + hi)
            m_mid, _, v_mid = _kern.closure_eval(a, b, mid, geom.gamma, n)
            if not v_mid:
                break
            if flo * m_mid <= 0.0:
                hi = mid
            else:
                lo, flo = mid, m_mid
        theta = 0.5 * (lo + hi)
        m_fin, f_fin, v_fin = _kern.closure_eval(a, b, theta, geom.gamma, n)
        if not v_fin or abs(m_fin) > 1e-9 * scale or f_fin <= 0.0:
            continue
        pts, lens, _, _, _ = _kern.trace_path(
            a, b, math.cos(theta), math.sin(theta), geom.gamma, n)
        total = sum(lens) + f_fin
        orbit = FoundOrbit(theta, abs(m_fin), total, tuple(pts))
        if any(math.hypot(px, py) < GRAZING_FRACTION * scale for px, py in pts):
            grazing.append(orbit)
        else:
            found.append(orbit)
    return OrbitSearchResult(tuple(found), tuple(grazing),
                             angular_resolution, refine_tol)


def adaptive_psi_quadrature(f: Callable[[float], float], a: float, b: float,
                            rel_tol: float = 1e-8) -> tuple[float, float]:
    """Adaptive quadrature of a smooth integrand with an error estimate.

    Thin wrapper over adaptive Gauss-Kronrod subdivision; raises
    :class:`QuadratureConvergenceError` (carrying the best estimate) when the
    subdivision limit is hit before the tolerance.
    """
    if a > b:
        raise ValueError(f"need a <= b, got [{a}, {b}]")
    if a == b:
        return 0.0, 0.0
    with np.errstate(over="ignore", invalid="ignore"):
        value, err, info, *tail = scipy.integrate.quad(
            f, a, b, epsabs=0.0, epsrel=rel_tol, limit=200, full_output=True)
    if tail:   # a warning message was returned: tolerance not reached
        raise QuadratureConvergenceError(tail[0], value, err)
    return value, err


def integrate_radial_shell(density_of_psi: Callable[[float], float],
                           a: float, b: float, rel_tol: float = 1e-8
                           ) -> tuple[float, float]:
    """Convenience: psi-integral of an already radially-integrated density."""
    return adaptive_psi_quadrature(density_of_psi, a, b, rel_tol)


def mirror_law_residuals(result: TraceResult, geom: WedgeGeometry,
                         origin: tuple[float, float]) -> list[float]:
    """Deviation of each bounce from the specular law d' = d - 2(d.n)n."""
    res = []
    prev = origin
    pts = list(result.points)
    for k, cur in enumerate(pts):
        if k + 1 < len(pts):
            nxt = pts[k + 1]
        elif not result.exited:
            nxt = (cur[0] + result.final_direction[0],
                   cur[1] + result.final_direction[1])
        else:
            break
        din = _unit(cur[0] - prev[0], cur[1] - prev[1])
        dout = _unit(nxt[0] - cur[0], nxt[1] - cur[1])
        if cur[1] == 0.0 or abs(cur[1]) <= abs(cur[0]) * 1e-12:
            nx, ny = 0.0, 1.0
        else:
            nx, ny = math.sin(geom.gamma), -math.cos(geom.gamma)
        dot = din[0] * nx + din[1] * ny
        ex, ey = din[0] - 2.0 * dot * nx, din[1] - 2.0 * dot * ny
        res.append(math.hypot(dout[0] - ex, dout[1] - ey))
        prev = cur
    return res


def _unit(x: float, y: float) -> tuple[float, float]:
    h = math.hypot(x, y)
    return (x / h, y / h)
