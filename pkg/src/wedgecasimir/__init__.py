"""Geometric-optics Casimir energy for a finite plate over an infinite plane.

The package has four layers: oriented-line reflection calculus (:mod:`lines`),
closed bounce paths in a wedge (:mod:`wedge`), the energy sums and the
parallel-plate limit (:mod:`energy`), and independent brute-force oracles
(:mod:`oracle`) that everything else is validated against.
"""

from .energy import (
    EnergyBreakdown,
    IntegrationDomain,
    energy_even_term,
    energy_odd_total,
    energy_quadrature,
    energy_total,
    limit_sweep,
    m0_of,
    m1_of,
    parallel_plate_energy,
)
from .lines import (
    INFINITE_DIRECTION,
    BounceFrame,
    OrientedLine,
    SpacePoint,
    incidence,
    psi_chain,
    reflect_direction,
    reflect_eta,
    reflect_r,
    solve_bounce_parameter,
    van_vleck_plane_chain,
)
from .oracle import (
    OrbitSearchResult,
    Ray2D,
    adaptive_psi_quadrature,
    backend_name,
    find_closed_orbits,
    images_chord,
    trace,
)
from .wedge import (
    BouncePath,
    Branch,
    ClosedPathSpec,
    FirstPlate,
    PolarPoint,
    WedgeGeometry,
    closed_even_initial_direction,
    closed_odd_initial_direction,
    closed_paths_from,
    even_exists,
    even_length,
    even_sequence,
    launch_direction,
    odd_exists,
    odd_length,
    odd_sequence,
    reflected_ray_sequence,
    trig_identity_check,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
