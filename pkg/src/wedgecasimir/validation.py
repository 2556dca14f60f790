"""Seeded oracle-vs-closed-form validation suite.

Each check compares a closed-form quantity against an independent numerical
route (ray tracing, image chords, shooting searches, adaptive quadrature).
The suite is deterministic for a fixed seed.  ``fault`` injects a relative
perturbation into the closed-form side of the comparisons; any nonzero value
of order 1e-3 must make the suite fail (a self-test of the checks' teeth).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import energy as en
from . import oracle as orc
from . import wedge as wg
from .lines import planar_direction, psi_chain

PI = math.pi


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    results: tuple[CheckResult, ...]
    seed: int
    samples: int

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def lines(self) -> list[str]:
        out = [f"validation suite: seed={self.seed} samples={self.samples}"]
        for r in self.results:
            out.append(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}")
        out.append("RESULT: " + ("all checks passed" if self.passed else "FAILURES present"))
        return out


def _random_case(rng, m_max=6):
    gamma = rng.uniform(0.05, PI / 2 - 0.05)
    m0 = en.m0_of(wg.WedgeGeometry(gamma))
    m = int(rng.integers(1, min(m0, m_max) + 1))
    geom = wg.WedgeGeometry(gamma)
    lo, hi = geom.psi_interval()
    span = hi - lo
    psi = rng.uniform(lo + 1e-3 * span, hi - 1e-3 * span)
    r = rng.uniform(0.3, 5.0)
    return geom, wg.PolarPoint(r, psi), m


def _enumerate_specs(point, geom, m):
    specs = [(2 * m, wg.FirstPlate.HORIZONTAL), (2 * m, wg.FirstPlate.TOP)]
    for plate in wg.odd_exists(point, geom, m):
        specs.append((2 * m + 1, plate))
    return specs


def check_orbit_closure(rng, samples: int, fault: float = 0.0) -> list[CheckResult]:
    """Closed-form launches close under tracing; three length routes agree."""
    worst_miss = 0.0
    worst_len = 0.0
    n_cases = 0
    while n_cases < samples:
        geom, point, m = _random_case(rng)
        if not wg.even_exists(geom, m):
            continue
        a, b = point.cartesian()
        for n, plate in _enumerate_specs(point, geom, m):
            xi, _ = wg.launch_direction(point, geom, m, n, plate)
            dx, dy = planar_direction(xi)
            res = orc.trace(orc.Ray2D((a, b), (dx, dy)), geom, n)
            if res.exited or res.bounces < n:
                return [CheckResult("orbit-closure", False,
                                    f"trace exited for n={n} plate={plate.value}")]
            bx, by = res.points[-1]
            fdx, fdy = res.final_direction
            miss = abs(fdx * (b - by) - fdy * (a - bx))
            close_seg = fdx * (a - bx) + fdy * (b - by)
            traced_len = sum(res.segment_lengths) + close_seg
            if n % 2 == 0:
                closed_len = wg.even_length(point, geom, m)
            else:
                closed_len = wg.odd_length(point, geom, m, plate)
            closed_len *= 1.0 + fault
            chord = orc.images_chord(point, geom, n, plate)
            worst_miss = max(worst_miss, miss / point.r)
            worst_len = max(worst_len,
                            abs(closed_len - traced_len) / traced_len,
                            abs(chord - traced_len) / traced_len)
            n_cases += 1
    ok_miss = worst_miss < 1e-9
    ok_len = worst_len < 1e-9
    return [
        CheckResult("orbit-closure", ok_miss,
                    f"{n_cases} launches, worst miss {worst_miss:.2e} (tol 1e-9 of R)"),
        CheckResult("length-agreement", ok_len,
                    f"{n_cases} paths, worst relative spread {worst_len:.2e} (tol 1e-9)"),
    ]


def check_orbit_counts(rng, samples: int, resolution: int = 4096) -> CheckResult:
    """Shooting search reproduces the 0/1/2 closed-path classification."""
    margin = 0.02
    tested = 0
    wrong = 0
    while tested < samples:
        gamma = rng.uniform(0.08, PI / 2 - 0.08)
        m = int(rng.integers(1, 7))
        if abs(gamma - PI / (2 * m)) < margin:
            continue
        geom = wg.WedgeGeometry(gamma)
        lo, hi = geom.psi_interval()
        psi = rng.uniform(lo + 1e-3, hi - 1e-3)
        point = wg.PolarPoint(1.0, psi)
        even_expected = 2 if gamma < PI / (2 * m) else 0
        got = orc.find_closed_orbits(point, geom, 2 * m, resolution).count
        if got != even_expected:
            wrong += 1
        tested += 1
        if tested >= samples:
            break
        if (abs(psi - m * gamma) < margin
                or abs(psi - (PI - (m + 1) * gamma)) < margin):
            continue
        odd_expected = 0
        if gamma < PI / (2 * m):
            odd_expected = int(psi > m * gamma) + int(psi < PI - (m + 1) * gamma)
        got = orc.find_closed_orbits(point, geom, 2 * m + 1, resolution).count
        if got != odd_expected:
            wrong += 1
        tested += 1
    return CheckResult("orbit-counts", wrong == 0,
                       f"{tested} classifications, {wrong} mismatches")


def check_trig_identities(rng, grid: int = 1000, m_max: int = 6) -> CheckResult:
    """Length-resummation identities hold to 1e-12 on a parameter grid.

    Grid points are drawn over the identities' well-conditioned domain
    (denominator factors at least 0.1): individual terms diverge at factor
    zeros and their floating cancellation would mask a formula error.
    """
    worst = 0.0
    count = 0
    while count < grid:
        m = int(rng.integers(1, m_max + 1))
        beta = rng.uniform(PI / 2 + 0.01, PI - 0.01)
        psi = rng.uniform(beta - PI / 2 + 0.005, PI / 2 - 0.005)
        if wg.identity_condition_floor(psi, beta, m) < 0.1:
            continue
        r1, r2 = wg.trig_identity_check(psi, beta, m)
        worst = max(worst, abs(r1), abs(r2))
        count += 1
    return CheckResult("trig-identities", worst < 1e-12,
                       f"{count} grid points, worst residual {worst:.2e} (tol 1e-12)")


def quadrature_geometries(rng, count: int = 50) -> list[wg.WedgeGeometry]:
    """Geometries spanning m0 in 1..5, at least 5 with a clipped terminal order."""
    geoms = []
    for i in range(count - 5):
        m0 = 1 + i % 5
        g_lo, g_hi = PI / (2 * m0 + 2), PI / (2 * m0)
        gamma = rng.uniform(g_lo * 1.02, g_hi * 0.98)
        rho = rng.uniform(0.2, 0.95)
        r1 = rng.uniform(0.5, 3.0)
        geoms.append(wg.WedgeGeometry(gamma, rho * r1, r1))
    # clipped-terminal regime: window order below the largest existing order
    for m0 in (3, 3, 4, 4, 5):
        gamma = rng.uniform(PI / (2 * m0 + 2) * 1.02, PI / (2 * m0) * 0.98)
        geom0 = wg.WedgeGeometry(gamma)
        m1 = int(rng.integers(2, m0))
        lo = en.plate_window_full(geom0, m1)
        hi = en.plate_window_empty(geom0, m1)
        rho = rng.uniform(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo))
        r1 = rng.uniform(0.5, 3.0)
        geoms.append(wg.WedgeGeometry(gamma, rho * r1, r1))
    return geoms


def check_even_terms(rng, count: int = 50, fault: float = 0.0) -> list[CheckResult]:
    """Even closed forms match quadrature; printed variants match in magnitude."""
    geoms = quadrature_geometries(rng, count)
    worst_quad = 0.0
    worst_form = 0.0
    clipped_regime = 0
    signs_ok = True
    n_terms = 0
    for geom in geoms:
        m0 = en.m0_of(geom)
        m1 = en.m1_of(geom)
        if m1 is not None and m0 > m1:
            clipped_regime += 1
        for m in range(1, m0 + 1):
            closed = en.energy_even_term(geom, m) * (1.0 + fault)
            quad = en.energy_quadrature(geom, m, "even", rel_tol=1e-10)
            if closed == 0.0 and quad == 0.0:
                continue
            n_terms += 1
            worst_quad = max(worst_quad, abs(closed - quad) / abs(quad))
            if closed >= 0.0:
                signs_ok = False
            kind = en.even_term_kind(geom, m)
            if kind == "full":
                f_g = en.even_full_term_opening_form(geom, m)
                f_b = en.even_full_term_supplement_form(geom, m)
            else:
                f_g, f_b = en.even_clipped_term_printed_forms(geom, m)
            worst_form = max(worst_form, abs(abs(f_g) - abs(f_b)) / abs(f_g))
    return [
        CheckResult("even-terms-vs-quadrature", worst_quad < 1e-6,
                    f"{n_terms} terms over {len(geoms)} geometries "
                    f"({clipped_regime} with clipped terminal order), "
                    f"worst rel {worst_quad:.2e} (tol 1e-6)"),
        CheckResult("even-form-equivalence", worst_form < 1e-12 and signs_ok,
                    f"angle-variant magnitude spread {worst_form:.2e} (tol 1e-12), "
                    f"all adopted terms negative: {signs_ok}"),
    ]


def check_odd_total(rng, count: int = 12) -> CheckResult:
    """Odd closed total: telescoping, quadrature, positivity, r1-independence."""
    worst = 0.0
    ok = True
    for _ in range(count):
        gamma = rng.uniform(0.12, PI / 2 - 0.05)
        r0 = rng.uniform(0.4, 3.0)
        geom = wg.WedgeGeometry(gamma, r0, r0 + rng.uniform(0.2, 3.0))
        closed = en.energy_odd_total(geom)
        pieces = en.odd_total_by_pieces(geom)
        quad = sum(en.energy_quadrature(geom, m, br, rel_tol=1e-10)
                   for m in range(1, en.m0_of(geom) + 1)
                   for br in ("odd-horizontal", "odd-top"))
        worst = max(worst, abs(pieces - closed) / closed, abs(quad - closed) / closed)
        other = wg.WedgeGeometry(gamma, r0, geom.r1 + 1.0)
        ok = ok and closed > 0.0 and en.energy_odd_total(other) == closed
    return CheckResult("odd-total", ok and worst < 1e-6,
                       f"{count} geometries, worst rel {worst:.2e} (tol 1e-6), "
                       f"positive and r1-independent: {ok}")


def check_van_vleck(rng, count: int = 200) -> CheckResult:
    """Wavefront-radius recursion equals the reciprocal squared total length."""
    worst = 0.0
    for _ in range(count):
        k = int(rng.integers(0, 10))
        lengths = list(np.exp(rng.uniform(-3, 3, size=k + 1)))
        direct = sum(lengths) ** -2
        chained = psi_chain(lengths[0], lengths[1:])
        worst = max(worst, abs(chained - direct) / direct)
    return CheckResult("van-vleck-chain", worst < 1e-14,
                       f"{count} chains, worst rel {worst:.2e} (tol 1e-14)")


def check_limit_monotone() -> CheckResult:
    """Sweep ratios increase toward 1 as the wedge closes."""
    rows = en.limit_sweep(1.0, 1.0, 1.0, [0.2, 0.1, 0.05, 0.025])
    ratios = [r.ratio for r in rows]
    ok = all(b > a for a, b in zip(ratios, ratios[1:])) and all(0 < r < 1 for r in ratios)
    return CheckResult("limit-monotone", ok,
                       "ratios " + ", ".join(f"{r:.6f}" for r in ratios))


def check_negativity(rng, count: int = 1000) -> CheckResult:
    """Grand total is negative over a randomized geometry grid."""
    n_bad = 0
    for _ in range(count):
        gamma = rng.uniform(0.02, PI / 2 - 0.02)
        r0 = rng.uniform(0.2, 5.0)
        geom = wg.WedgeGeometry(gamma, r0, r0 + rng.uniform(0.05, 5.0))
        if not en.energy_total(geom).grand_total < 0.0:
            n_bad += 1
    return CheckResult("attractiveness", n_bad == 0,
                       f"{count} geometries, {n_bad} non-negative totals")


def run_validation(samples: int = 300, seed: int = 20240424,
                   fault: float = 0.0) -> ValidationReport:
    """Run the whole suite; deterministic for fixed (samples, seed, fault)."""
    rng = np.random.default_rng(seed)
    results: list[CheckResult] = []
    results += check_orbit_closure(rng, samples, fault=fault)
    results.append(check_orbit_counts(rng, max(samples // 3, 20)))
    results.append(check_trig_identities(rng, grid=max(samples, 100)))
    results += check_even_terms(rng, count=max(12, min(samples // 6, 50)), fault=fault)
    results.append(check_odd_total(rng))
    results.append(check_van_vleck(rng))
    results.append(check_limit_monotone())
    results.append(check_negativity(rng, count=max(samples, 100)))
    return ValidationReport(tuple(results), seed, samples)
