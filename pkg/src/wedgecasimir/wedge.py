"""Closed bounce paths in a planar wedge.

The wedge is bounded by the horizontal half-plane (polar angle 0 from the
horizontal axis) and a top half-plane at opening angle gamma, both containing
the origin and extended along a translation axis.  All closed specular paths
live in the cross-section plane, with points written (a, b) = (R sin psi,
R cos psi): R is the distance from the wedge vertex and psi the angle from
the vertical, so the interior is beta - pi/2 < psi < pi/2 with beta = pi -
gamma the supplement used throughout the iteration formulas.

A closed n-bounce path starts and returns to a base point (a kink at the base
point is allowed).  Even paths come in two traversal directions; odd paths
retrace themselves and come in a horizontal-first and a top-first variety,
each existing only on one side of a psi threshold.  The top-first data is the
image of horizontal-first data under reflection through the wedge bisector.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .lines import (
    INFINITE_DIRECTION,
    OrientedLine,
    SpacePoint,
    planar_direction,
    planar_incidence,
    warn_degenerate,
)

_TINY = 1e-300


class FirstPlate(enum.Enum):
    HORIZONTAL = "horizontal"
    TOP = "top"


class Branch(enum.Enum):
    """Sign choice in the closed-path initial-direction formulas."""

    PLUS = 1
    MINUS = -1


@dataclass(frozen=True)
class WedgeGeometry:
    """Wedge opening angle and finite top-plate extent.

    gamma: opening angle in radians, 0 < gamma < pi/2.
    r0, r1: inner and outer radial limits of the top plate, 0 < r0 < r1.
    width: plate width along the translation axis.
    """

    gamma: float
    r0: float = 1.0
    r1: float = 2.0
    width: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.gamma < 0.5 * math.pi:
            raise ValueError(f"opening angle must be in (0, pi/2), got {self.gamma}")
        if not 0.0 < self.r0 < self.r1:
            raise ValueError(f"need 0 < r0 < r1, got r0={self.r0}, r1={self.r1}")
        if not self.width > 0.0:
            raise ValueError(f"plate width must be positive, got {self.width}")

    @property
    def beta(self) -> float:
        return math.pi - self.gamma

    @property
    def top_normal_xi(self) -> float:
        """Chart coordinate of the inward normal direction of the top plane."""
        return math.tan(0.5 * self.beta)

    def psi_interval(self) -> tuple[float, float]:
        """Open interval of psi values strictly inside the wedge."""
        return (self.beta - 0.5 * math.pi, 0.5 * math.pi)

    def contains(self, a: float, b: float) -> bool:
        """Strict interior test for a cross-section point."""
        return a > 0.0 and b > 0.0 and b < a * math.tan(self.gamma)


@dataclass(frozen=True)
class PolarPoint:
    """Base point (R sin psi, R cos psi); psi measured from the vertical."""

    r: float
    psi: float

    def __post_init__(self):
        if not self.r > 0.0:
            raise ValueError(f"radius must be positive, got {self.r}")

    def cartesian(self) -> tuple[float, float]:
        return (self.r * math.sin(self.psi), self.r * math.cos(self.psi))

    def require_interior(self, geom: WedgeGeometry) -> None:
        lo, hi = geom.psi_interval()
        if not lo < self.psi < hi:
            raise ValueError(
                f"point psi={self.psi} not strictly inside wedge interval ({lo}, {hi})")


@dataclass(frozen=True)
class ClosedPathSpec:
    """Which closed path: bounce count, first plate struck, formula sign."""

    bounces: int
    first_plate: FirstPlate = FirstPlate.HORIZONTAL
    branch: Branch = Branch.PLUS

    def __post_init__(self):
        if self.bounces < 2:
            raise ValueError("closed path specs start at 2 bounces")


@dataclass(frozen=True)
class BouncePath:
    """Realised closed path: bounce points, segment lengths, launch data."""

    start: PolarPoint
    points: tuple[SpacePoint, ...]
    segment_lengths: tuple[float, ...]
    total_length: float
    bounces: int
    first_plate: FirstPlate
    initial_xi: float
    branch_sign: int = field(default=0)


def _mirror_point(a: float, b: float, beta: float) -> tuple[float, float]:
    # reflection through the wedge bisector: psi -> beta - psi in polar form
    cb, sb = math.cos(beta), math.sin(beta)
    return (sb * b - cb * a, cb * b + sb * a)


def _mirror_xi(xi: float, beta: float):
    nu = math.tan(0.5 * beta)
    den = 1.0 + nu * xi
    if den == 0.0:
        return INFINITE_DIRECTION
    return (nu - xi) / den


# ---------------------------------------------------------------------------
# Existence and total lengths
# ---------------------------------------------------------------------------

def even_exists(geom: WedgeGeometry, m: int) -> bool:
    """A closed 2m-bounce path exists iff gamma < pi/(2m); boundaries excluded."""
    if m < 1:
        raise ValueError("even paths need m >= 1")
    return geom.gamma < math.pi / (2 * m)


def even_length(point: PolarPoint, geom: WedgeGeometry, m: int) -> float:
    """Total length 2R|sin(m gamma)| of the closed 2m-bounce path."""
    if not even_exists(geom, m):
        raise ValueError(f"no closed {2*m}-bounce path at gamma={geom.gamma}")
    return 2.0 * point.r * abs(math.sin(m * geom.gamma))


def odd_exists(point: PolarPoint, geom: WedgeGeometry, m: int) -> set[FirstPlate]:
    """First plates admitting a closed (2m+1)-bounce path from the point.

    Horizontal-first requires psi > m*gamma, top-first psi < pi - (m+1)*gamma,
    and both require gamma < pi/(2m); all inequalities are strict.
    """
    if m < 0:
        raise ValueError("odd paths need m >= 0")
    allowed: set[FirstPlate] = set()
    if m >= 1 and not geom.gamma < math.pi / (2 * m):
        return allowed
    if point.psi > m * geom.gamma:
        allowed.add(FirstPlate.HORIZONTAL)
    if point.psi < math.pi - (m + 1) * geom.gamma:
        allowed.add(FirstPlate.TOP)
    return allowed


def odd_length(point: PolarPoint, geom: WedgeGeometry, m: int,
               first_plate: FirstPlate) -> float:
    """Total length of the closed (2m+1)-bounce path with the given first plate."""
    if first_plate not in odd_exists(point, geom, m):
        raise ValueError(
            f"no closed {2*m+1}-bounce {first_plate.value}-first path at psi={point.psi}")
    if first_plate is FirstPlate.HORIZONTAL:
        return 2.0 * point.r * abs(math.cos(point.psi - m * geom.gamma))
    return 2.0 * point.r * abs(math.cos(point.psi + (m + 1) * geom.gamma))


# ---------------------------------------------------------------------------
# Initial directions
# ---------------------------------------------------------------------------

def closed_even_initial_direction(point: PolarPoint, geom: WedgeGeometry, m: int,
                                  branch: Branch) -> float:
    """Root of the closed 2m-bounce direction quadratic for the given sign.

    The two signs give antipodal directions (product -1): one launch whose
    horizontal-first bounce iteration closes with positive oriented lengths,
    and its formal reversal.  When cos(psi - m*beta) vanishes the quadratic
    degenerates; the single finite root is returned for either sign and a
    :class:`~wedgecasimir.lines.DegenerateDirectionWarning` is emitted.
    """
    if not even_exists(geom, m):
        raise ValueError(f"no closed {2*m}-bounce path at gamma={geom.gamma}")
    arg = point.psi - m * geom.beta
    s, c = math.sin(arg), math.cos(arg)
    if abs(c) < 1e-13:
        # strictly interior points never get here; boundary inputs do
        warn_degenerate("closed_even_initial_direction")
        return -c / (s + math.copysign(1.0, s))
    return (s + branch.value) / c


def closed_odd_initial_direction(geom: WedgeGeometry, m: int, branch: Branch) -> float:
    """Root of the closed (2m+1)-bounce horizontal-first direction formula.

    Independent of the base point: an odd path retraces itself, so its
    direction is fixed by the wedge angle alone.  The two signs are antipodal.
    """
    arg = m * geom.beta
    s, c = math.sin(arg), math.cos(arg)
    if abs(s) < 1e-13:
        warn_degenerate("closed_odd_initial_direction")
        return -s / (c + math.copysign(1.0, c))
    return (c + branch.value) / s


def _physical_h_first_xi(point: PolarPoint, geom: WedgeGeometry, m: int,
                         n_bounces: int) -> tuple[float, int]:
    """Launch direction (and its formula sign) that realises the
    horizontal-first path with positive segment lengths: the root with
    cos(phi) < 0, i.e. |xi| > 1."""
    for branch in (Branch.PLUS, Branch.MINUS):
        if n_bounces % 2 == 0:
            xi = closed_even_initial_direction(point, geom, m, branch)
        else:
            xi = closed_odd_initial_direction(geom, m, branch)
        if abs(xi) > 1.0:
            return xi, branch.value
    raise ValueError("no physical horizontal-first launch direction found")


def launch_direction(point: PolarPoint, geom: WedgeGeometry, m: int,
                     n_bounces: int, first_plate: FirstPlate) -> tuple[float, int]:
    """Chart coordinate of the launch that closes after ``n_bounces`` bounces.

    Top-first launches are the bisector mirror of the horizontal-first launch
    computed at the mirrored base point.  Returns (xi, formula sign used).
    """
    if first_plate is FirstPlate.HORIZONTAL:
        return _physical_h_first_xi(point, geom, m, n_bounces)
    mirrored = PolarPoint(point.r, geom.beta - point.psi)
    xi, sign = _physical_h_first_xi(mirrored, geom, m, n_bounces)
    return _mirror_xi(xi, geom.beta), sign


# ---------------------------------------------------------------------------
# Reflected-ray sequences for an arbitrary initial ray
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RaySequence:
    """Oriented rays of an iterated reflection, truncated if the ray escapes."""

    rays: tuple[OrientedLine, ...]
    bounce_points: tuple[tuple[float, float], ...]
    exited: bool


def reflected_ray_sequence(start: SpacePoint, xi1: float, geom: WedgeGeometry,
                           k_max: int) -> RaySequence:
    """Rays (xi_k, eta_k) of the alternating reflection off the two planes.

    The initial ray must strike the horizontal plane first; bounces then
    alternate horizontal, top, horizontal, ...  Ray k is the ray after k-1
    bounces, evaluated from the closed-form angle-addition expressions.  The
    sequence is truncated with ``exited=True`` if the ray leaves the wedge
    before k_max - 1 bounces.
    """
    a0, b0 = start.z.real, start.t
    beta = geom.beta
    nu2 = geom.top_normal_xi
    eta1 = planar_incidence(a0, b0, xi1)
    q = a0 - 2.0 * b0 * xi1 - a0 * xi1 * xi1   # = 2 eta_1, the conserved fibre seed

    def ray_k(k: int) -> OrientedLine:
        if k % 2 == 1:   # after an even number of bounces
            j = (k - 1) // 2
            cj, sj = math.cos(j * beta), math.sin(j * beta)
            den = -sj * xi1 + cj
            return OrientedLine((cj * xi1 + sj) / den, 0.5 * q / den ** 2)
        j = k // 2
        cj, sj = math.cos((j - 1) * beta), math.sin((j - 1) * beta)
        den = cj * xi1 + sj
        return OrientedLine((-sj * xi1 + cj) / den, -0.5 * q / den ** 2)

    # walk the bounce points to know how far the ray physically goes
    rays: list[OrientedLine] = [OrientedLine(xi1, eta1)]
    pts: list[tuple[float, float]] = []
    a, b = a0, b0
    exited = False
    for k in range(1, k_max):
        xi_k = rays[-1].xi.real
        nu = 0.0 if k % 2 == 1 else nu2
        den = (1.0 + nu * xi_k) ** 2 - (nu - xi_k) ** 2
        if abs(den) < _TINY:
            exited = True
            break
        ell = -(1.0 + xi_k * xi_k) * (2.0 * a * nu + (1.0 - nu * nu) * b) / den
        if k == 1 and ell <= 0.0:
            raise ValueError("initial ray does not strike the horizontal plane first")
        sphi, cphi = planar_direction(xi_k)
        a_next, b_next = a + sphi * ell, b + cphi * ell
        if ell <= 0.0 or a_next < 0.0:
            exited = True
            break
        a, b = a_next, b_next
        pts.append((a, b))
        rays.append(ray_k(k + 1))
    return RaySequence(tuple(rays), tuple(pts), exited)


# ---------------------------------------------------------------------------
# Closed-path bounce sequences
# ---------------------------------------------------------------------------

def _positive_length(value: float, what: str) -> float:
    # the sign ambiguity of the closed forms is fixed by positivity; exactly
    # one sign works unless the segment collapses
    if value == 0.0:
        raise ValueError(f"degenerate zero-length segment in {what}")
    return abs(value)


def even_sequence(point: PolarPoint, geom: WedgeGeometry, m: int,
                  first_plate: FirstPlate = FirstPlate.HORIZONTAL) -> BouncePath:
    """Bounce points and segment lengths of the closed 2m-bounce path.

    ``first_plate`` selects the traversal direction; the two traversals visit
    the same points in opposite order.
    """
    point.require_interior(geom)
    if not even_exists(geom, m):
        raise ValueError(f"no closed {2*m}-bounce path at gamma={geom.gamma}")
    if first_plate is FirstPlate.TOP:
        mirrored = PolarPoint(point.r, geom.beta - point.psi)
        h = even_sequence(mirrored, geom, m, FirstPlate.HORIZONTAL)
        return _mirror_path(h, point, geom, FirstPlate.TOP)

    r, psi, beta = point.r, point.psi, geom.beta
    tanb = math.tan(beta)
    cmb = math.cos(m * beta)
    pts: list[SpacePoint] = []
    for idx in range(1, 2 * m + 1):
        if idx % 2 == 1:
            k = (idx + 1) // 2
            a = r * cmb / math.sin(psi - (m - 2 * k + 2) * beta)
            pts.append(SpacePoint(complex(a, 0.0), 0.0))
        else:
            k = idx // 2
            a = r * cmb * math.cos(beta) / math.sin(psi - (m - 2 * k + 1) * beta)
            pts.append(SpacePoint(complex(a, 0.0), -a * tanb))
    lens = [_positive_length(r * math.cos(psi) / math.sin(psi - m * beta), "launch segment")]
    for k in range(1, 2 * m):
        lens.append(_positive_length(
            r * cmb * math.sin(beta)
            / (math.sin(psi - (m - k) * beta) * math.sin(psi - (m - k + 1) * beta)),
            f"segment {k}"))
    lens.append(_positive_length(
        r * math.cos(psi - beta) / math.sin(psi + (m - 1) * beta), "closing segment"))
    xi, sign = _physical_h_first_xi(point, geom, m, 2 * m)
    return BouncePath(point, tuple(pts), tuple(lens), sum(lens), 2 * m,
                      FirstPlate.HORIZONTAL, xi, sign)


def odd_sequence(point: PolarPoint, geom: WedgeGeometry, m: int,
                 first_plate: FirstPlate = FirstPlate.HORIZONTAL) -> BouncePath:
    """Bounce points and segment lengths of the closed (2m+1)-bounce path.

    The sequence is palindromic: the path runs out to a perpendicular hit and
    retraces itself.
    """
    point.require_interior(geom)
    if first_plate not in odd_exists(point, geom, m):
        raise ValueError(
            f"no closed {2*m+1}-bounce {first_plate.value}-first path at psi={point.psi}")
    if first_plate is FirstPlate.TOP:
        mirrored = PolarPoint(point.r, geom.beta - point.psi)
        h = odd_sequence(mirrored, geom, m, FirstPlate.HORIZONTAL)
        return _mirror_path(h, point, geom, FirstPlate.TOP)

    r, psi, beta = point.r, point.psi, geom.beta
    mp = m + 1
    tanb = math.tan(beta)
    smb = math.sin(psi + (mp - 1) * beta)
    pts: list[SpacePoint] = []
    for idx in range(1, 2 * mp):
        if idx % 2 == 1:
            k = (idx + 1) // 2
            a = r * smb / math.cos((mp - 2 * k + 1) * beta)
            pts.append(SpacePoint(complex(a, 0.0), 0.0))
        else:
            k = idx // 2
            a = r * smb * math.cos(beta) / math.cos((mp - 2 * k) * beta)
            pts.append(SpacePoint(complex(a, 0.0), -a * tanb))
    l01 = _positive_length(r * math.cos(psi) / math.cos((mp - 1) * beta), "launch segment")
    lens = [l01]
    for k in range(1, 2 * mp - 1):
        lens.append(_positive_length(
            r * smb * math.sin(beta)
            / (math.cos((mp - k) * beta) * math.cos((mp - k - 1) * beta)),
            f"segment {k}"))
    lens.append(l01)   # a closed odd path retraces itself
    xi, sign = _physical_h_first_xi(point, geom, m, 2 * m + 1)
    return BouncePath(point, tuple(pts), tuple(lens), sum(lens), 2 * m + 1,
                      FirstPlate.HORIZONTAL, xi, sign)


def _mirror_path(h: BouncePath, point: PolarPoint, geom: WedgeGeometry,
                 first_plate: FirstPlate) -> BouncePath:
    beta = geom.beta
    tanb = math.tan(beta)
    pts = []
    for p in h.points:
        a, b = p.z.real, p.t
        if b == 0.0:
            # horizontal point maps onto the top plane
            a2 = -a * math.cos(beta)
            pts.append(SpacePoint(complex(a2, 0.0), -a2 * tanb))
        else:
            pts.append(SpacePoint(complex(-a / math.cos(beta), 0.0), 0.0))
    xi = _mirror_xi(h.initial_xi, beta)
    return BouncePath(point, tuple(pts), h.segment_lengths, h.total_length,
                      h.bounces, first_plate, xi, h.branch_sign)


def closed_paths_from(point: PolarPoint, geom: WedgeGeometry,
                      max_bounces: int) -> list[BouncePath]:
    """Every closed path from the point with 2 <= bounces <= max_bounces."""
    point.require_interior(geom)
    paths: list[BouncePath] = []
    for n in range(2, max_bounces + 1):
        if n % 2 == 0:
            m = n // 2
            if even_exists(geom, m):
                paths.append(even_sequence(point, geom, m, FirstPlate.HORIZONTAL))
                paths.append(even_sequence(point, geom, m, FirstPlate.TOP))
        else:
            m = (n - 1) // 2
            if m >= 1:
                for plate in sorted(odd_exists(point, geom, m), key=lambda p: p.value):
                    paths.append(odd_sequence(point, geom, m, plate))
    return paths


# ---------------------------------------------------------------------------
# Trigonometric identities behind the length formulas
# ---------------------------------------------------------------------------

def _identity_denominator_factors(psi: float, beta: float, m: int) -> list[float]:
    facs = [math.sin(psi + (m - 1) * beta), math.sin(psi - m * beta)]
    for k in range(1, 2 * m):
        facs += [math.sin(psi - (m - k) * beta), math.sin(psi - (m - k + 1) * beta)]
    facs.append(math.cos((m - 1) * beta))
    for k in range(1, m):
        facs += [math.cos((m - k) * beta), math.cos((m - k - 1) * beta)]
    return facs


def identity_condition_floor(psi: float, beta: float, m: int) -> float:
    """Smallest |denominator factor| of the two identities at this point.

    The identities hold exactly, but individual terms diverge where a factor
    vanishes and their floating-point cancellation degrades like
    eps / floor^2; keep the floor above ~0.1 for residuals below 1e-12.
    """
    if m < 1:
        raise ValueError("identities need m >= 1")
    return min(abs(f) for f in _identity_denominator_factors(psi, beta, m))


def trig_identity_check(psi: float, beta: float, m: int,
                        singular_tol: float = 1e-12) -> tuple[float, float]:
    """Residuals of the two identities that resum the segment lengths.

    The first resums an even path's segments to 2 sin(m beta); the second
    resums half an odd path to cos[psi + (m-1) beta].  Both residuals vanish
    identically; denominator factors below ``singular_tol`` raise ValueError.
    """
    if m < 1:
        raise ValueError("identities need m >= 1")
    if identity_condition_floor(psi, beta, m) < singular_tol:
        raise ValueError("singular denominator in length-resummation identity")
    lhs1 = (math.cos(psi - beta) / math.sin(psi + (m - 1) * beta)
            - math.cos(psi) / math.sin(psi - m * beta))
    lhs1 += sum(math.cos(m * beta) * math.sin(beta)
                / (math.sin(psi - (m - k) * beta) * math.sin(psi - (m - k + 1) * beta))
                for k in range(1, 2 * m))
    res1 = lhs1 - 2.0 * math.sin(m * beta)

    lhs2 = math.cos(psi) / math.cos((m - 1) * beta)
    lhs2 -= sum(math.sin(psi + (m - 1) * beta) * math.sin(beta)
                / (math.cos((m - k) * beta) * math.cos((m - k - 1) * beta))
                for k in range(1, m))
    res2 = lhs2 - math.cos(psi + (m - 1) * beta)
    return (res1, res2)
