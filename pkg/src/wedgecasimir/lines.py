"""Oriented affine lines in R^3 as stereographic fibre coordinates.

An oriented line is charted by a pair (xi, eta) of complex numbers: xi is the
stereographic image (projection from the south pole) of the unit direction
vector, and eta encodes the perpendicular displacement of the line from the
origin.  With z = x^1 + i x^2 and t = x^3, the point (z, t) lies on the line
(xi, eta) iff

    eta = (z - 2 t xi - conj(z) xi^2) / 2.

Reflection off a mirror with oriented normal line (nu, chi) acts on these
coordinates by a fractional-linear map in xi and an associated fibre map in
eta.  The direction xi = infinity (straight down the -t axis) falls outside
the chart and is represented by the explicit :data:`INFINITE_DIRECTION`
sentinel, never by a large float.

Planar problems (everything in the x^1 x^3-plane) keep xi, eta, nu real; the
``planar_*`` functions are the real-arithmetic fast path used by the wedge
modules and must agree with the complex path to rounding.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence, Union


class InfiniteDirection:
    """Sentinel for the south-pole direction xi = infinity."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE_DIRECTION"


INFINITE_DIRECTION = InfiniteDirection()

Direction = Union[complex, InfiniteDirection]

#: Base absolute tolerance for geometric coincidence checks; callers scale it
#: by the magnitude of the lengths involved.
GEOMETRIC_TOLERANCE = 1e-10


class NoIntersectionError(ValueError):
    """The incoming ray does not meet the mirror in a solvable configuration."""


class DegenerateDirectionWarning(UserWarning):
    """A direction formula degenerated; one root escaped to infinity."""


@dataclass(frozen=True)
class SpacePoint:
    """Point of R^3 split as (z, t) with z = x^1 + i x^2 and t = x^3."""

    z: complex
    t: float


@dataclass(frozen=True)
class OrientedLine:
    """Oriented line (xi, eta); for planar data both coordinates are real."""

    xi: complex
    eta: complex


@dataclass(frozen=True)
class BounceFrame:
    """Incoming ray, mirror normal and the two oriented distances at a bounce.

    ``s`` is the oriented distance of the bounce point from the closest point
    to the origin on the normal line; ``r_in`` the same along the incoming ray.
    """

    line_in: OrientedLine
    normal: OrientedLine
    s: float
    r_in: float

    def bounce_point(self) -> SpacePoint:
        return point_on_line(self.line_in, self.r_in)

    def validate(self, tol: float = GEOMETRIC_TOLERANCE) -> None:
        """Check the two parameterisations agree on the bounce point."""
        p = self.bounce_point()
        q = point_on_line(self.normal, self.s)
        scale = 1.0 + abs(p.z) + abs(p.t)
        if abs(p.z - q.z) + abs(p.t - q.t) > tol * scale:
            raise ValueError("bounce point mismatch between ray and normal frames")


def direction_vector(xi: Direction) -> tuple[float, float, float]:
    """Unit direction in R^3 for the chart coordinate xi."""
    if isinstance(xi, InfiniteDirection):
        return (0.0, 0.0, -1.0)
    d = 1.0 + (xi * xi.conjugate()).real
    return (2.0 * xi.real / d, 2.0 * xi.imag / d, (2.0 - d) / d)


def incidence(p: SpacePoint, xi: complex) -> complex:
    """Fibre coordinate eta of the line through ``p`` with direction ``xi``."""
    if isinstance(xi, InfiniteDirection):
        raise ValueError("incidence is undefined for the point-at-infinity direction")
    z = complex(p.z)
    return 0.5 * (z - 2.0 * p.t * xi - z.conjugate() * xi * xi)


def point_on_line(line: OrientedLine, r: float) -> SpacePoint:
    """Point at oriented distance ``r`` from the line's closest point to the origin."""
    xi, eta = line.xi, line.eta
    rho = (xi * xi.conjugate()).real
    den = (1.0 + rho) ** 2
    z = (2.0 * (eta - eta.conjugate() * xi * xi) + 2.0 * xi * (1.0 + rho) * r) / den
    t = (-2.0 * (eta * xi.conjugate() + eta.conjugate() * xi).real
         + (1.0 - rho) * (1.0 + rho) * r) / den
    return SpacePoint(z, t)


def line_point_distance(line: OrientedLine, p: SpacePoint) -> float:
    """Euclidean distance from ``p`` to the line (vector algebra, chart-free)."""
    foot = point_on_line(line, 0.0)
    d = direction_vector(line.xi)
    v = (p.z.real - foot.z.real, p.z.imag - foot.z.imag, p.t - foot.t)
    proj = v[0] * d[0] + v[1] * d[1] + v[2] * d[2]
    w = (v[0] - proj * d[0], v[1] - proj * d[1], v[2] - proj * d[2])
    return math.sqrt(w[0] ** 2 + w[1] ** 2 + w[2] ** 2)


def reflect_direction(xi: Direction, nu: complex) -> Direction:
    """Direction of the ray reflected off a mirror with normal direction ``nu``.

    Returns :data:`INFINITE_DIRECTION` when the reflected ray points straight
    down the south pole (vanishing denominator).  Applying the map twice with
    the same ``nu`` restores the input.
    """
    nn = (nu * nu.conjugate()).real
    if isinstance(xi, InfiniteDirection):
        if 1.0 - nn == 0.0:
            return INFINITE_DIRECTION
        return 2.0 * nu / (1.0 - nn)
    xb = xi.conjugate()
    den = (1.0 - nn) * xb - 2.0 * nu.conjugate()
    if den == 0:
        return INFINITE_DIRECTION
    return (2.0 * nu * xb + 1.0 - nn) / den


def reflect_eta(eta: complex, xi: complex, nu: complex, s: float) -> complex:
    """Fibre coordinate of the reflected ray for a bounce with offset ``s``.

    ``s`` is the oriented distance of the bounce point from the normal line's
    closest point to the origin; it vanishes for mirror planes through the
    origin.  The s-term carries a factor 2 (a mirror at distance s displaces
    the reflected line by 2s), which makes this map share one geometric s
    with :func:`reflect_r` and :func:`solve_bounce_parameter`; the Euclidean
    bounce oracle pins the factor down.
    """
    if isinstance(xi, InfiniteDirection):
        raise ValueError("reflect_eta is undefined for the point-at-infinity direction")
    nn = (nu * nu.conjugate()).real
    xb = xi.conjugate()
    den = (1.0 - nn) * xb - 2.0 * nu.conjugate()
    if den == 0:
        raise NoIntersectionError("reflected direction at infinity; eta chart breaks down")
    num = -(1.0 + nn) ** 2 * eta.conjugate() \
        + 2.0 * (nu.conjugate() - xb) * (1.0 + nu * xb) * (1.0 + nn) * s
    return num / (den * den)


def reflect_r(r: float, xi: complex, nu: complex, s: float) -> float:
    """Oriented distance of the bounce point along the reflected ray.

    Increments ``r`` by a purely geometric factor; at normal incidence
    (xi == nu) it collapses to r - 2 s.
    """
    dn = abs(nu - xi) ** 2
    dp = abs(1.0 + nu * xi.conjugate()) ** 2
    nn = (nu * nu.conjugate()).real
    xx = (xi * xi.conjugate()).real
    return r + 2.0 * (dn - dp) * s / ((1.0 + nn) * (1.0 + xx))


def solve_bounce_parameter(eta: complex, xi: complex, nu: complex, chi: complex) -> float:
    """Oriented normal-line parameter s of the bounce of ray (xi, eta).

    Solves the incidence of the incoming ray with the mirror's normal line
    (nu, chi).  The coefficient of s vanishes when the ray runs along the
    normal line itself (xi == nu or xi == -1/conj(nu)); those configurations
    leave s undetermined and raise :class:`NoIntersectionError`.
    """
    nn = (nu * nu.conjugate()).real
    a = 1.0 + nu.conjugate() * xi
    b = nu - xi
    coef = b * a * (1.0 + nn)
    scale = (1.0 + abs(nu)) ** 2 * (1.0 + abs(xi)) ** 2
    if abs(coef) <= 1e-300 * scale or abs(coef) == 0.0:
        raise NoIntersectionError("ray runs along the mirror normal; s undetermined")
    num = eta * (1.0 + nn) ** 2 - a * a * chi + b * b * chi.conjugate()
    return (num / coef).real


def van_vleck_plane_chain(segment_lengths: Sequence[float]) -> float:
    """Wavefront expansion factor of a chain of plane-mirror bounces.

    For plane boundaries the spherical wavefront stays spherical, so the
    expansion factor is the reciprocal of the squared total path length.
    """
    if len(segment_lengths) == 0:
        raise ValueError("empty segment chain")
    total = 0.0
    for ell in segment_lengths:
        if not ell > 0.0:
            raise ValueError(f"nonpositive segment length {ell!r}")
        total += ell
    return total ** -2


def psi_chain(l0: float, segment_lengths: Sequence[float]) -> float:
    """Expansion factor via the wavefront-radius recursion.

    Starting from radius ``l0`` at the first reflection, each plane bounce
    adds its segment length to the wavefront radius; the result is the
    reciprocal of the final squared radius and must equal
    :func:`van_vleck_plane_chain` with ``l0`` prepended.
    """
    if not l0 > 0.0:
        raise ValueError(f"nonpositive initial length {l0!r}")
    root = l0
    for ell in segment_lengths:
        if not ell > 0.0:
            raise ValueError(f"nonpositive segment length {ell!r}")
        root += ell
    return root ** -2


# ---------------------------------------------------------------------------
# Planar (real-coordinate) fast path.
#
# For a problem confined to the x^1 x^3-plane all chart coordinates are real:
# xi = tan(phi/2) with phi the direction angle measured from the vertical +t
# axis toward +x^1.  These mirror the complex functions term by term.
# ---------------------------------------------------------------------------

def xi_from_angle(phi: float) -> Union[float, InfiniteDirection]:
    """Chart coordinate of the planar direction at angle ``phi`` from vertical."""
    c = math.cos(0.5 * phi)
    if c == 0.0:
        return INFINITE_DIRECTION
    return math.tan(0.5 * phi)


def angle_from_xi(xi: Union[float, InfiniteDirection]) -> float:
    if isinstance(xi, InfiniteDirection):
        return math.pi
    return 2.0 * math.atan(xi)


def planar_direction(xi: Union[float, InfiniteDirection]) -> tuple[float, float]:
    """Unit (horizontal, vertical) components (sin phi, cos phi), trig-free."""
    if isinstance(xi, InfiniteDirection):
        return (0.0, -1.0)
    d = 1.0 + xi * xi
    return (2.0 * xi / d, (1.0 - xi * xi) / d)


def planar_incidence(a: float, b: float, xi: float) -> float:
    """eta of the planar line through (a, b) with direction xi."""
    return 0.5 * (a - 2.0 * b * xi - a * xi * xi)


def planar_reflect_direction(xi: float, nu: float):
    den = (1.0 - nu * nu) * xi - 2.0 * nu
    if den == 0.0:
        return INFINITE_DIRECTION
    return (2.0 * nu * xi + 1.0 - nu * nu) / den


def planar_reflect_eta(eta: float, xi: float, nu: float, s: float) -> float:
    den = (1.0 - nu * nu) * xi - 2.0 * nu
    if den == 0.0:
        raise NoIntersectionError("reflected direction at infinity; eta chart breaks down")
    num = -(1.0 + nu * nu) ** 2 * eta \
        + 2.0 * (nu - xi) * (1.0 + nu * xi) * (1.0 + nu * nu) * s
    return num / (den * den)


def planar_reflect_r(r: float, xi: float, nu: float, s: float) -> float:
    dn = (nu - xi) ** 2
    dp = (1.0 + nu * xi) ** 2
    return r + 2.0 * (dn - dp) * s / ((1.0 + nu * nu) * (1.0 + xi * xi))


def planar_point_on_line(xi: float, eta: float, r: float) -> tuple[float, float]:
    """Planar point (a, b) at oriented distance r along the line (xi, eta)."""
    den = (1.0 + xi * xi) ** 2
    a = (2.0 * eta * (1.0 - xi * xi) + 2.0 * xi * (1.0 + xi * xi) * r) / den
    b = (-4.0 * eta * xi + (1.0 - xi * xi) * (1.0 + xi * xi) * r) / den
    return (a, b)


def warn_degenerate(context: str) -> None:
    warnings.warn(f"{context}: quadratic degenerated, one root at infinity",
                  DegenerateDirectionWarning, stacklevel=3)
