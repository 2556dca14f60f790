"""Ground-truth engines: tracer, image chords, orbit search, quadrature."""

import math

import numpy as np
import pytest

from wedgecasimir.lines import planar_direction
from wedgecasimir.oracle import (
    QuadratureConvergenceError,
    Ray2D,
    adaptive_psi_quadrature,
    backend_name,
    find_closed_orbits,
    images_chord,
    mirror_law_residuals,
    trace,
)
from wedgecasimir.wedge import (
    FirstPlate,
    PolarPoint,
    WedgeGeometry,
    even_sequence,
    launch_direction,
    odd_exists,
)

RNG = np.random.default_rng(20240424)
PI = math.pi
H, T = FirstPlate.HORIZONTAL, FirstPlate.TOP


class TestTrace:
    def test_vertical_drop_retraces(self):
        geom = WedgeGeometry(0.5)
        res = trace(Ray2D((1.0, 0.3), (0.0, -1.0)), geom, 3)
        assert res.points[0] == (1.0, 0.0)
        assert res.segment_lengths[0] == pytest.approx(0.3)
        # after the bounce the ray climbs back through the start
        assert res.points[1][1] > 0.0 or res.exited or len(res.points) >= 2

    def test_parallel_ray_never_hits(self):
        geom = WedgeGeometry(0.5)
        res = trace(Ray2D((1.0, 0.2), (1.0, 0.0)), geom, 5)
        assert res.exited and res.bounces == 0

    def test_origin_outside_rejected(self):
        geom = WedgeGeometry(0.3)
        with pytest.raises(ValueError):
            trace(Ray2D((1.0, 1.0), (0.0, -1.0)), geom, 3)
        with pytest.raises(ValueError):
            Ray2D((1.0, 0.1), (1.0, 1.0))   # not unit length

    def test_matches_closed_form_sequence(self):
        for _ in range(100):
            gamma = RNG.uniform(0.08, PI / 2 - 0.05)
            geom = WedgeGeometry(gamma)
            m = int(RNG.integers(1, 6))
            if not gamma < PI / (2 * m):
                continue
            lo, hi = geom.psi_interval()
            p = PolarPoint(RNG.uniform(0.4, 3.0), RNG.uniform(lo + 1e-3, hi - 1e-3))
            path = even_sequence(p, geom, m)
            xi, _ = launch_direction(p, geom, m, 2 * m, H)
            res = trace(Ray2D(p.cartesian(), planar_direction(xi)), geom, 2 * m)
            assert res.bounces == 2 * m
            for (qx, qy), q in zip(res.points, path.points):
                assert abs(qx - q.z.real) < 1e-10 * (1 + abs(qx))
                assert abs(qy - q.t) < 1e-10 * (1 + abs(qy))

    def test_mirror_law_at_every_bounce(self):
        for _ in range(200):
            gamma = RNG.uniform(0.1, PI / 2 - 0.05)
            geom = WedgeGeometry(gamma)
            lo, hi = geom.psi_interval()
            p = PolarPoint(1.0, RNG.uniform(lo + 1e-3, hi - 1e-3))
            phi = RNG.uniform(PI / 2 + 0.1, 3 * PI / 2 - 0.1)
            origin = p.cartesian()
            res = trace(Ray2D(origin, (math.sin(phi), math.cos(phi))), geom, 10)
            for resid in mirror_law_residuals(res, geom, origin):
                assert resid < 1e-12

    def test_grazing_flag_on_vertex_hit(self):
        geom = WedgeGeometry(0.5)
        start = (1.0, 0.2)
        d = (-start[0], -start[1])
        n = math.hypot(*d)
        res = trace(Ray2D(start, (d[0] / n, d[1] / n)), geom, 2)
        assert res.grazing


class TestImagesChord:
    def test_even_chord_formula(self):
        for _ in range(200):
            gamma = RNG.uniform(0.05, PI / 2 - 0.05)
            geom = WedgeGeometry(gamma)
            m = int(RNG.integers(1, 7))
            if not gamma < PI / (2 * m):
                continue
            lo, hi = geom.psi_interval()
            p = PolarPoint(RNG.uniform(0.3, 4.0), RNG.uniform(lo + 1e-3, hi - 1e-3))
            chord = images_chord(p, geom, 2 * m)
            assert chord == pytest.approx(2 * p.r * abs(math.sin(m * gamma)), rel=1e-12)
            # the unfold direction does not change an even chord
            assert images_chord(p, geom, 2 * m, T) == pytest.approx(chord, rel=1e-12)

    def test_odd_chord_formulas(self):
        for _ in range(200):
            gamma = RNG.uniform(0.05, PI / 2 - 0.05)
            geom = WedgeGeometry(gamma)
            m = int(RNG.integers(1, 7))
            lo, hi = geom.psi_interval()
            p = PolarPoint(RNG.uniform(0.3, 4.0), RNG.uniform(lo + 1e-3, hi - 1e-3))
            allowed = odd_exists(p, geom, m)
            if H in allowed:
                assert images_chord(p, geom, 2 * m + 1, H) == pytest.approx(
                    2 * p.r * abs(math.cos(p.psi - m * gamma)), rel=1e-12)
            if T in allowed:
                assert images_chord(p, geom, 2 * m + 1, T) == pytest.approx(
                    2 * p.r * abs(math.cos(p.psi + (m + 1) * gamma)), rel=1e-12)

    def test_chord_equals_traced_total(self):
        count = 0
        while count < 100:
            gamma = RNG.uniform(0.08, PI / 2 - 0.05)
            geom = WedgeGeometry(gamma)
            m = int(RNG.integers(1, 6))
            if not gamma < PI / (2 * m):
                continue
            lo, hi = geom.psi_interval()
            p = PolarPoint(RNG.uniform(0.4, 3.0), RNG.uniform(lo + 1e-3, hi - 1e-3))
            for n, plate in [(2 * m, H)] + [(2 * m + 1, pl)
                                            for pl in odd_exists(p, geom, m)]:
                xi, _ = launch_direction(p, geom, m, n, plate)
                a, b = p.cartesian()
                res = trace(Ray2D((a, b), planar_direction(xi)), geom, n)
                fdx, fdy = res.final_direction
                bx, by = res.points[-1]
                total = sum(res.segment_lengths) + fdx * (a - bx) + fdy * (b - by)
                chord = images_chord(p, geom, n, plate)
                assert chord == pytest.approx(total, rel=1e-10)
            count += 1

    def test_nonexistence_rejected(self):
        geom = WedgeGeometry(0.5)
        p = PolarPoint(1.0, 1.2)
        with pytest.raises(ValueError):
            images_chord(p, geom, 8)   # gamma=0.5 > pi/8


class TestFindClosedOrbits:
    def test_even_counts(self):
        geom = WedgeGeometry(PI / 6)
        p = PolarPoint(1.0, math.radians(80))
        res = find_closed_orbits(p, geom, 2)
        assert res.count == 2
        for orbit in res.found:
            assert orbit.closure_distance < 1e-9
            assert orbit.total_length == pytest.approx(1.0, rel=1e-9)
        assert find_closed_orbits(p, geom, 6).count == 0   # gamma at the 6-bounce edge

    def test_odd_counts(self):
        geom = WedgeGeometry(PI / 6)
        assert find_closed_orbits(PolarPoint(1.0, math.radians(80)), geom, 3).count == 2
        # gamma=0.3, 11 bounces: the two psi windows split the interior into
        # top-only / neither / horizontal-only bands
        geom11 = WedgeGeometry(0.3)
        assert find_closed_orbits(PolarPoint(1.0, math.radians(74)), geom11, 11).count == 1
        assert find_closed_orbits(PolarPoint(1.0, math.radians(80)), geom11, 11).count == 0
        assert find_closed_orbits(PolarPoint(1.0, math.radians(88)), geom11, 11).count == 1

    def test_random_classification(self):
        margin = 0.02
        tested = 0
        while tested < 60:
            gamma = RNG.uniform(0.08, PI / 2 - 0.08)
            m = int(RNG.integers(1, 7))
            if abs(gamma - PI / (2 * m)) < margin:
                continue
            geom = WedgeGeometry(gamma)
            lo, hi = geom.psi_interval()
            psi = RNG.uniform(lo + 1e-3, hi - 1e-3)
            if (abs(psi - m * gamma) < margin
                    or abs(psi - (PI - (m + 1) * gamma)) < margin):
                continue
            p = PolarPoint(1.0, psi)
            expect_even = 2 if gamma < PI / (2 * m) else 0
            assert find_closed_orbits(p, geom, 2 * m).count == expect_even
            expect_odd = 0
            if gamma < PI / (2 * m):
                expect_odd = int(psi > m * gamma) + int(psi < PI - (m + 1) * gamma)
            assert find_closed_orbits(p, geom, 2 * m + 1).count == expect_odd
            tested += 1

    def test_lengths_match_closed_forms(self):
        geom = WedgeGeometry(0.35)
        p = PolarPoint(1.3, 1.45)
        res = find_closed_orbits(p, geom, 4)
        assert res.count == 2
        for orbit in res.found:
            assert orbit.total_length == pytest.approx(
                2 * 1.3 * math.sin(2 * 0.35), rel=1e-9)


class TestAdaptiveQuadrature:
    def test_known_integral(self):
        value, err = adaptive_psi_quadrature(math.sin, 0.0, PI / 2, rel_tol=1e-10)
        assert value == pytest.approx(1.0, rel=1e-10)
        assert abs(value - 1.0) <= max(err, 1e-15)

    def test_even_density_antiderivative(self):
        # the radially-integrated even density has a cot antiderivative
        geom = WedgeGeometry(0.3, 1.0, 2.0)
        m, b = 2, geom.beta

        def integrand(p):
            return (1 / (geom.r0 ** 2 * math.sin(p - b) ** 2)
                    - 1 / (geom.r1 ** 2 * math.sin(p + (m - 1) * b) ** 2))

        def F(p):
            return (math.cos(p + (m - 1) * b) / math.sin(p + (m - 1) * b) / geom.r1 ** 2
                    - math.cos(p - b) / math.sin(p - b) / geom.r0 ** 2)

        a, c = b - PI / 2 + 0.1, PI / 2
        value, err = adaptive_psi_quadrature(integrand, a, c, rel_tol=1e-10)
        exact = F(c) - F(a)
        assert value == pytest.approx(exact, rel=1e-9)
        assert abs(value - exact) <= max(err, 1e-13 * abs(exact))

    def test_interval_validation(self):
        assert adaptive_psi_quadrature(math.sin, 1.0, 1.0) == (0.0, 0.0)
        with pytest.raises(ValueError):
            adaptive_psi_quadrature(math.sin, 1.0, 0.0)

    def test_convergence_failure_carries_estimate(self):
        def wild(x):
            return math.cos(5e4 * x * x)

        with pytest.raises(QuadratureConvergenceError) as exc:
            adaptive_psi_quadrature(wild, 0.0, 10.0, rel_tol=1e-13)
        assert math.isfinite(exc.value.estimate)
        assert exc.value.error_estimate > 0.0


class TestOracleIndependence:
    def test_no_closed_form_symbols_in_oracle_sources(self):
        """The ground-truth engines must not call the closed-form paths."""
        import inspect
        import wedgecasimir.oracle as om
        import wedgecasimir._scan_py as kp
        sources = inspect.getsource(om) + inspect.getsource(kp)
        forbidden = ("even_sequence", "odd_sequence", "even_length", "odd_length",
                     "closed_even_initial_direction", "closed_odd_initial_direction",
                     "launch_direction", "reflected_ray_sequence", "energy_even_term",
                     "energy_total", "planar_reflect_direction", "reflect_direction")
        for name in forbidden:
            assert name not in sources, name


class TestBackends:
    def test_backend_reported(self):
        assert backend_name() in ("cython", "python")

    def test_backends_agree(self):
        try:
            from wedgecasimir import _scan_cy
        except ImportError:
            pytest.skip("compiled kernel not built")
        from wedgecasimir import _scan_py
        thetas = np.linspace(0.0, 2 * PI, 721)
        for gamma, n in ((0.4, 4), (0.25, 7), (1.1, 2)):
            m_c, f_c, v_c = _scan_cy.closure_scan(1.0, 0.2, gamma, n, thetas)
            m_p, f_p, v_p = _scan_py.closure_scan(1.0, 0.2, gamma, n, thetas)
            assert np.array_equal(v_c, v_p)
            assert np.allclose(m_c[v_c], m_p[v_p], rtol=1e-12, atol=1e-12)
            assert np.allclose(f_c[v_c], f_p[v_p], rtol=1e-12, atol=1e-12)
        pts_c = _scan_cy.trace_path(1.0, 0.2, -0.6, -0.8, 0.5, 6)
        pts_p = _scan_py.trace_path(1.0, 0.2, -0.6, -0.8, 0.5, 6)
        assert pts_c[2] == pts_p[2]
        assert np.allclose(pts_c[0], pts_p[0])
