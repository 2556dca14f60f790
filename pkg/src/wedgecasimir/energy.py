"""Optical-approximation Casimir energy of a finite plate over a plane.

The energy is a finite sum over closed bounce orders.  Even orders carry a
negative density proportional to (path length)^-4 integrated over the region
of base points whose orbit fits on the finite plate; that region is bounded
in psi and by two circular arcs through the vertex in R.  For each even order
the plate either admits the full psi-interval, a clipped interval, or nothing,
according to where r0/r1 falls in a chain of contiguous windows; the window
index is m1.  Odd orders integrate with only a lower radial bound (a
semi-infinite plate): their total is independent of r1, positive, and is
excluded from the reported total by default because it cannot contribute to
the force on the plate.

All energies are per unit of hbar*c (natural units).  Closed forms are
validated against adaptive quadrature of the defining densities; where two
printed variants of a closed form disagree in sign, the sign adopted here is
the one the quadrature fixes (each even term is negative).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

from .oracle import adaptive_psi_quadrature
from .wedge import FirstPlate, WedgeGeometry

PI = math.pi


@dataclass(frozen=True)
class IntegrationDomain:
    """Base-point region of one bounce order: psi interval and radial bounds.

    ``r_upper`` is None for semi-infinite (odd-order) domains.  Radial bounds
    are functions of psi; for even orders both are circular arcs through the
    wedge vertex.
    """

    psi_lower: float
    psi_upper: float
    r_lower: Callable[[float], float]
    r_upper: Optional[Callable[[float], float]]
    m: int
    branch: str
    empty: bool = False


@dataclass(frozen=True)
class EnergyBreakdown:
    """Per-order even terms and totals, in units of hbar*c."""

    gamma: float
    r0: float
    r1: float
    width: float
    m0: int
    m1: Optional[int]
    even_terms: dict[int, float]
    even_total: float
    odd_total: float
    grand_total: float
    units: float = 1.0
    include_odd: bool = field(default=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "r0": self.r0,
            "r1": self.r1,
            "width": self.width,
            "m0": self.m0,
            "m1": self.m1,
            "even_terms": {str(m): v for m, v in sorted(self.even_terms.items())},
            "even_total": self.even_total,
            "odd_total": self.odd_total,
            "grand_total": self.grand_total,
            "units": self.units,
        }


def m0_of(geom: WedgeGeometry) -> int:
    """Largest even bounce order present: pi/(2m0+2) <= gamma < pi/(2m0)."""
    m0 = math.ceil(PI / (2.0 * geom.gamma)) - 1
    if m0 >= 1 and not geom.gamma < PI / (2 * m0):
        m0 -= 1
    if not (PI / (2 * m0 + 2) <= geom.gamma < PI / (2 * m0)):
        raise AssertionError(f"m0 bracketing failed for gamma={geom.gamma}")
    return m0


def plate_window_full(geom: WedgeGeometry, m: int) -> float:
    """r0/r1 at or below this admits the full psi-interval for order m."""
    g = geom.gamma
    return math.cos(m * g) if m % 2 == 0 else math.cos(m * g) / math.cos(g)


def plate_window_empty(geom: WedgeGeometry, m: int) -> float:
    """r0/r1 above this admits no order-m orbit on the plate."""
    g = geom.gamma
    return (math.cos((m - 1) * g) / math.cos(g) if m % 2 == 0
            else math.cos((m - 1) * g))


def m1_of(geom: WedgeGeometry) -> Optional[int]:
    """Window index of r0/r1: the order whose domain is clipped.

    Windows are contiguous: order m-1 unclips exactly where order m empties,
    so the index is the smallest m whose full-domain threshold falls at or
    below r0/r1.  Orders below m1 integrate over the full interval, order m1
    (when it exists, i.e. m1 <= m0) over a clipped one, orders above over
    nothing.  Returns None only if no window is found (and warns): the
    assembly then treats every existing order as full.
    """
    rho = geom.r0 / geom.r1
    for m in range(1, 2 * m0_of(geom) + 16):
        if plate_window_full(geom, m) <= rho <= plate_window_empty(geom, m):
            return m
    warnings.warn(f"no plate window contains r0/r1={rho}; treating all orders as full")
    return None


def _psi0(geom: WedgeGeometry, m: int) -> float:
    """Lower psi cutoff imposed by the plate on even order m, in [0, pi)."""
    b, r0, r1 = geom.beta, geom.r0, geom.r1
    if m % 2 == 0:
        num = r0 * math.sin(b) + r1 * math.sin((m - 1) * b)
        den = r0 * math.cos(b) - r1 * math.cos((m - 1) * b)
    else:
        num = r1 * math.sin((m - 1) * b)
        den = r0 - r1 * math.cos((m - 1) * b)
    if num == 0.0 and den == 0.0:
        return 0.0
    return math.atan2(num, den) % PI


def domain_even(geom: WedgeGeometry, m: int) -> IntegrationDomain:
    """Integration domain of the even order 2m on the finite plate.

    psi runs from max(psi0, beta - pi/2) to pi/2; the radial bounds are the
    two arcs R = -r0 * s_lo(psi)/cos(m beta) and R = -r1 * sin[psi+(m-1)beta]
    / cos(m beta), with s_lo = sin(psi - beta) for m even and sin(psi) for m
    odd.  An empty domain is returned with ``empty=True``.
    """
    if m < 1:
        raise ValueError("even orders need m >= 1")
    b = geom.beta
    base_lo = b - 0.5 * PI
    if not geom.gamma < PI / (2 * m):
        return IntegrationDomain(base_lo, 0.5 * PI, lambda p: 0.0, lambda p: 0.0,
                                 m, "even", empty=True)
    cmb = math.cos(m * b)
    r0, r1 = geom.r0, geom.r1

    if m % 2 == 0:
        def r_lower(p, _c=cmb, _r0=r0, _b=b):
            return -_r0 * math.sin(p - _b) / _c
    else:
        def r_lower(p, _c=cmb, _r0=r0):
            return -_r0 * math.sin(p) / _c

    def r_upper(p, _c=cmb, _r1=r1, _b=b, _m=m):
        return -_r1 * math.sin(p + (_m - 1) * _b) / _c

    psi1 = max(_psi0(geom, m), base_lo)
    empty = psi1 >= 0.5 * PI
    return IntegrationDomain(psi1, 0.5 * PI, r_lower, r_upper, m, "even", empty)


def domain_odd(geom: WedgeGeometry, m: int, first_plate: FirstPlate) -> IntegrationDomain:
    """Semi-infinite integration domain of the odd order 2m+1."""
    if m < 1:
        raise ValueError("odd orders need m >= 1")
    g, b, r0 = geom.gamma, geom.beta, geom.r0
    base_lo = b - 0.5 * PI
    if not g < PI / (2 * m):
        return IntegrationDomain(base_lo, 0.5 * PI, lambda p: 0.0, None,
                                 m, f"odd-{first_plate.value}", empty=True)
    if first_plate is FirstPlate.HORIZONTAL:
        lo, hi = max(m * g, base_lo), 0.5 * PI
        scale = r0 * math.cos(g) if m % 2 == 0 else r0

        def r_lower(p, _s=scale, _m=m, _g=g):
            return _s / math.sin(p - _m * _g)
    else:
        lo, hi = base_lo, min(0.5 * PI, PI - (m + 1) * g)
        scale = r0 if m % 2 == 0 else r0 * math.cos(g)

        def r_lower(p, _s=scale, _m=m, _g=g):
            return _s / math.sin(p + (_m + 1) * _g)

    return IntegrationDomain(lo, hi, r_lower, None, m,
                             f"odd-{first_plate.value}", empty=lo >= hi)


# ---------------------------------------------------------------------------
# Even-order closed forms.  Two printed variants exist for each; they agree
# in magnitude under beta = pi - gamma.  The adopted sign is fixed by the
# quadrature of the (negative) even density.
# ---------------------------------------------------------------------------

def even_full_term_opening_form(geom: WedgeGeometry, m: int) -> float:
    """Full-interval term of order 2m, opening-angle (gamma) variant."""
    g, w = geom.gamma, geom.width
    pref = -w * math.cos(m * g) ** 2 * math.sin(g) / (64.0 * PI ** 2 * math.sin(m * g) ** 4)
    paren = (1.0 / (geom.r0 ** 2 * math.cos(g))
             - 1.0 / (geom.r1 ** 2 * math.cos((m - 1) * g) * math.cos(m * g)))
    return pref * paren


def even_full_term_supplement_form(geom: WedgeGeometry, m: int) -> float:
    """Full-interval term of order 2m, supplement-angle (beta) variant."""
    b, w = geom.beta, geom.width
    pref = w * math.cos(m * b) ** 2 * math.sin(b) / (64.0 * PI ** 2 * math.sin(m * b) ** 4)
    paren = (1.0 / (geom.r0 ** 2 * math.cos(b))
             - 1.0 / (geom.r1 ** 2 * math.cos((m - 1) * b) * math.cos(m * b)))
    return pref * paren


def even_clipped_term_printed_forms(geom: WedgeGeometry, m: int) -> tuple[float, float]:
    """Clipped terminal term of order 2m as printed, (gamma, beta) variants.

    Both printed variants evaluate positive; the quadrature of the negative
    even density fixes the adopted term to minus their common magnitude.
    """
    w, r0, r1 = geom.width, geom.r0, geom.r1
    g = geom.gamma
    if m % 2 == 0:
        num_g = math.cos(m * g) ** 2 * (r0 * math.cos(g) - r1 * math.cos((m - 1) * g)) ** 2
        den_g = (64.0 * PI ** 2 * math.sin(m * g) ** 4 * math.cos(g)
                 * math.cos((m - 1) * g) * math.sin(m * g) * r0 ** 2 * r1 ** 2)
        gamma_form = w * num_g / den_g
    else:
        num_g = math.cos(m * g) ** 2 * (r0 - r1 * math.cos((m - 1) * g)) ** 2
        den_g = (64.0 * PI ** 2 * math.sin(m * g) ** 4 * math.sin((m - 1) * g)
                 * math.cos((m - 1) * g) * r0 ** 2 * r1 ** 2)
        gamma_form = w * num_g / den_g
    b = geom.beta
    if m % 2 == 0:
        num_b = math.cos(m * b) ** 2 * (r0 * math.cos(b) - r1 * math.cos((m - 1) * b)) ** 2
        den_b = (64.0 * PI ** 2 * math.sin(m * b) ** 4 * math.cos(b)
                 * math.cos((m - 1) * b) * math.sin(m * b) * r0 ** 2 * r1 ** 2)
        beta_form = -w * num_b / den_b
    else:
        num_b = math.cos(m * b) ** 2 * (r0 - r1 * math.cos((m - 1) * b)) ** 2
        den_b = (64.0 * PI ** 2 * math.sin(m * b) ** 4 * math.sin((m - 1) * b)
                 * math.cos((m - 1) * b) * r0 ** 2 * r1 ** 2)
        beta_form = -w * num_b / den_b
    return gamma_form, beta_form


def even_term_kind(geom: WedgeGeometry, m: int) -> str:
    """'full', 'clipped', 'empty' or 'nonexistent' for the order 2m."""
    if m < 1:
        raise ValueError("even orders need m >= 1")
    if not geom.gamma < PI / (2 * m):
        return "nonexistent"
    rho = geom.r0 / geom.r1
    if rho <= plate_window_full(geom, m):
        return "full"
    if rho <= plate_window_empty(geom, m):
        return "clipped"
    return "empty"


def energy_even_term(geom: WedgeGeometry, m: int) -> float:
    """Single-direction energy of the even order 2m (<= 0).

    Orders strictly inside the plate window use the full-interval form;
    the window order m1 uses the clipped form (continuous with the full form
    at the window edge, vanishing at the empty edge); anything beyond
    contributes zero.
    """
    kind = even_term_kind(geom, m)
    if kind in ("nonexistent", "empty"):
        return 0.0
    if kind == "full":
        return even_full_term_opening_form(geom, m)
    gamma_form, _ = even_clipped_term_printed_forms(geom, m)
    return -abs(gamma_form)


def energy_quadrature(geom: WedgeGeometry, m: int, branch: str = "even",
                      rel_tol: float = 1e-8) -> float:
    """Single-direction energy of one order by quadrature of its density.

    The radial integral of the R^-3 density is done analytically, the psi
    integral by adaptive quadrature.  ``branch`` is 'even', 'odd-horizontal'
    or 'odd-top'.
    """
    w = geom.width
    if branch == "even":
        dom = domain_even(geom, m)
        if dom.empty:
            return 0.0
        s4 = math.sin(m * geom.gamma) ** 4

        def density(p):
            lo, hi = dom.r_lower(p), dom.r_upper(p)
            if hi <= lo:
                return 0.0
            return 0.5 * (lo ** -2 - hi ** -2) / s4

        value, _ = adaptive_psi_quadrature(density, dom.psi_lower, dom.psi_upper, rel_tol)
        return -(w / (32.0 * PI ** 2)) * value

    if branch == "odd-horizontal":
        plate, sgn = FirstPlate.HORIZONTAL, -1.0
    elif branch == "odd-top":
        plate, sgn = FirstPlate.TOP, +1.0
    else:
        raise ValueError(f"unknown branch {branch!r}")
    dom = domain_odd(geom, m, plate)
    if dom.empty:
        return 0.0
    g = geom.gamma
    shift = -m * g if plate is FirstPlate.HORIZONTAL else (m + 1) * g

    def density(p):
        return 0.5 * dom.r_lower(p) ** -2 / math.cos(p + shift) ** 4

    value, _ = adaptive_psi_quadrature(density, dom.psi_lower, dom.psi_upper, rel_tol)
    return (w / (32.0 * PI ** 2)) * value


# ---------------------------------------------------------------------------
# Odd orders
# ---------------------------------------------------------------------------

def _cot(x: float) -> float:
    return math.cos(x) / math.sin(x)


def odd_piece(geom: WedgeGeometry, m: int, first_plate: FirstPlate) -> float:
    """Semi-infinite-plate energy of the odd order 2m+1 for one first plate.

    The psi interval of the order is clipped by the existence threshold when
    (m+1)*gamma exceeds pi/2, which switches off the second cot^3 term.
    """
    if m < 1:
        raise ValueError("odd orders need m >= 1")
    if not geom.gamma < PI / (2 * m):
        return 0.0
    b, w, r0 = geom.beta, geom.width, geom.r0
    eps = 1.0 if (m + 1) * geom.gamma <= 0.5 * PI else 0.0
    core = _cot(m * b) ** 3 - eps * _cot((m + 1) * b) ** 3
    horizontal_weighted = (m % 2 == 0)
    if first_plate is FirstPlate.TOP:
        horizontal_weighted = not horizontal_weighted
    c = 1.0 / math.cos(b) ** 2 if horizontal_weighted else 1.0
    return -(w / (192.0 * PI ** 2 * r0 ** 2)) * c * core


def odd_total_by_pieces(geom: WedgeGeometry) -> float:
    """Sum of all odd-order pieces; telescopes to the closed total."""
    return sum(odd_piece(geom, m, plate)
               for m in range(1, m0_of(geom) + 1)
               for plate in (FirstPlate.HORIZONTAL, FirstPlate.TOP))


def energy_odd_total(geom: WedgeGeometry) -> float:
    """Closed-form total of all odd orders.

    Positive, independent of r1 (the pieces excluded by the plate edge
    reappear as reflected regions of neighbouring orders and cancel), and
    excluded from the grand total by default: an r1-independent term exerts
    no force on the plate.
    """
    b, w, r0 = geom.beta, geom.width, geom.r0
    return -w * (1.0 + math.cos(b) ** 2) * math.cos(b) / (
        192.0 * PI ** 2 * r0 ** 2 * math.sin(b) ** 3)


# ---------------------------------------------------------------------------
# Assembly and the parallel-plate limit
# ---------------------------------------------------------------------------

def energy_total(geom: WedgeGeometry, include_odd: bool = False,
                 units: float = 1.0) -> EnergyBreakdown:
    """Full energy breakdown; the factor 2 counts the two traversal directions."""
    m0 = m0_of(geom)
    m1 = m1_of(geom)
    terms = {m: energy_even_term(geom, m) for m in range(1, m0 + 1)}
    even_total = 2.0 * sum(terms.values())
    odd_total = energy_odd_total(geom)
    grand = even_total + (odd_total if include_odd else 0.0)
    return EnergyBreakdown(geom.gamma, geom.r0, geom.r1, geom.width,
                           m0, m1, terms, even_total, odd_total, grand,
                           units=units, include_odd=include_odd)


def parallel_plate_energy(L: float, b: float, W: float) -> float:
    """Dirichlet energy -pi^2 (b W) / (1440 L^3) of parallel plates."""
    if not (L > 0.0 and b > 0.0 and W > 0.0):
        raise ValueError("separation, plate length and width must be positive")
    return -PI ** 2 * b * W / (1440.0 * L ** 3)


@dataclass(frozen=True)
class LimitRow:
    gamma: float
    energy: float
    parallel_plate: float
    ratio: float
    m0: int


def geometry_at_fixed_separation(L: float, b: float, W: float,
                                 gamma: float) -> WedgeGeometry:
    """Wedge whose plate keeps minimum separation L and length b as gamma varies."""
    r0 = L / math.sin(gamma)
    return WedgeGeometry(gamma, r0, r0 + b, W)


def limit_sweep(L: float, b: float, W: float,
                gamma_list: list[float]) -> list[LimitRow]:
    """Energy against the parallel-plate value along gamma -> 0.

    Holds the minimum separation L and plate length b fixed while closing the
    wedge; the ratio column converges to 1.
    """
    pp = parallel_plate_energy(L, b, W)
    rows = []
    for g in gamma_list:
        geom = geometry_at_fixed_separation(L, b, W, g)
        bd = energy_total(geom)
        rows.append(LimitRow(g, bd.grand_total, pp, bd.grand_total / pp, bd.m0))
    return rows
