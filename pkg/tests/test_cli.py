"""CLI surface: subcommands, formats, determinism, exit codes."""

import json
import math

import pytest

from wedgecasimir.cli import main
from wedgecasimir.lines import planar_direction
from wedgecasimir.oracle import Ray2D, images_chord, trace
from wedgecasimir.wedge import FirstPlate, PolarPoint, WedgeGeometry

PI = math.pi


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPaths:
    def test_lists_two_bounce_of_unit_length(self, capsys):
        code, out, err = run_cli(capsys, "paths", "--gamma-deg", "30",
                                 "--r", "1", "--psi-deg", "75")
        assert code == 0, err
        payload = json.loads(out)
        two = [o for o in payload["orbits"] if o["bounces"] == 2]
        assert len(two) == 2
        for orbit in two:
            assert orbit["length"] == pytest.approx(1.0, rel=1e-9)

    def test_point_on_plate_errors(self, capsys):
        code, out, err = run_cli(capsys, "paths", "--gamma-deg", "30",
                                 "--r", "1", "--psi-deg", "60")
        assert code == 1
        assert "error:" in err

    def test_roundtrip_revalidates(self, capsys):
        code, out, _ = run_cli(capsys, "paths", "--gamma-deg", "25",
                               "--r", "1.5", "--psi-deg", "80")
        assert code == 0
        payload = json.loads(out)
        geom = WedgeGeometry(payload["gamma"])
        point = PolarPoint(payload["r"], payload["psi"])
        a, b = point.cartesian()
        assert payload["orbits"]
        for orbit in payload["orbits"]:
            plate = FirstPlate(orbit["first_plate"])
            chord = images_chord(point, geom, orbit["bounces"], plate)
            assert orbit["length"] == pytest.approx(chord, rel=1e-9)
            res = trace(Ray2D((a, b), planar_direction(orbit["initial_xi"])),
                        geom, orbit["bounces"])
            assert res.bounces == orbit["bounces"]
            for (px, py), (qx, qy) in zip(res.points, orbit["points"]):
                assert px == pytest.approx(qx, rel=1e-9, abs=1e-12)
                assert py == pytest.approx(qy, rel=1e-9, abs=1e-12)


class TestEnergy:
    def test_reference_breakdown(self, capsys):
        code, out, _ = run_cli(capsys, "energy", "--gamma-deg", "45",
                               "--r0", "1", "--r1", "2", "--width", "1")
        assert code == 0
        payload = json.loads(out)
        assert payload["m0"] == 1 and payload["m1"] == 2
        assert payload["grand_total"] == pytest.approx(-4.7494e-3, rel=1e-4)
        assert payload["units"] == 1.0
        assert list(payload) == ["gamma", "r0", "r1", "width", "m0", "m1",
                                 "even_terms", "even_total", "odd_total",
                                 "grand_total", "units"]

    def test_include_odd_flag(self, capsys):
        _, out_plain, _ = run_cli(capsys, "energy", "--gamma", "0.5")
        _, out_odd, _ = run_cli(capsys, "energy", "--gamma", "0.5", "--include-odd")
        plain = json.loads(out_plain)
        withodd = json.loads(out_odd)
        assert withodd["grand_total"] == pytest.approx(
            plain["grand_total"] + plain["odd_total"], rel=1e-9)

    def test_byte_identical_output(self, tmp_path, capsys):
        f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
        for f in (f1, f2):
            code, _, _ = run_cli(capsys, "energy", "--gamma", "0.37",
                                 "--r0", "0.9", "--r1", "2.3", "--output", str(f))
            assert code == 0
        assert f1.read_bytes() == f2.read_bytes()

    def test_units_scale(self, capsys):
        _, out1, _ = run_cli(capsys, "energy", "--gamma", "0.5")
        _, out2, _ = run_cli(capsys, "energy", "--gamma", "0.5", "--units", "2.0")
        a, b = json.loads(out1), json.loads(out2)
        assert b["grand_total"] == pytest.approx(2 * a["grand_total"], rel=1e-12)
        assert b["units"] == 2.0

    def test_missing_angle_errors(self, capsys):
        code, _, err = run_cli(capsys, "energy", "--r0", "1")
        assert code == 1 and "opening angle" in err


class TestSweep:
    def test_m0_increments_at_thresholds(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--param", "gamma",
                               "--start", "0.2", "--stop", "1.5", "--count", "40")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "gamma,m0,m1,even_total,odd_total,grand_total"
        for row in lines[1:]:
            cells = row.split(",")
            gamma, m0 = float(cells[0]), int(cells[1])
            assert PI / (2 * m0 + 2) <= gamma < PI / (2 * m0)

    def test_r1_sweep_leaves_odd_total_constant(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--param", "r1", "--gamma", "0.6",
                               "--r0", "1.0", "--start", "1.5", "--stop", "4.0",
                               "--count", "6")
        assert code == 0
        odd = {row.split(",")[4] for row in out.strip().split("\n")[1:]}
        assert len(odd) == 1

    def test_log_scale_spacing(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--param", "r1", "--gamma", "0.6",
                               "--start", "2", "--stop", "8", "--count", "3",
                               "--scale", "log")
        assert code == 0
        values = [float(r.split(",")[0]) for r in out.strip().split("\n")[1:]]
        assert values == pytest.approx([2.0, 4.0, 8.0], rel=1e-9)

    def test_json_format(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--param", "gamma", "--start", "0.4",
                               "--stop", "0.8", "--count", "3", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["param"] == "gamma"
        assert len(payload["rows"]) == 3


class TestLimit:
    def test_default_gamma_list(self, capsys):
        code, out, _ = run_cli(capsys, "limit")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "gamma,energy,parallel_plate,ratio"
        rows = [r.split(",") for r in lines[1:]]
        assert [float(r[0]) for r in rows] == [0.2, 0.1, 0.05, 0.025]
        ratios = [float(r[3]) for r in rows]
        assert all(b > a for a, b in zip(ratios, ratios[1:]))
        assert all(0 < r < 1 for r in ratios)
        pp = {r[2] for r in rows}
        assert len(pp) == 1
        assert float(pp.pop()) == pytest.approx(-PI ** 2 / 1440, rel=1e-11)

    def test_rejects_bad_gamma(self, capsys):
        code, _, err = run_cli(capsys, "limit", "--gammas", "0.2,1.6")
        assert code == 1 and "outside" in err


class TestValidate:
    def test_small_run_passes(self, capsys):
        code, out, _ = run_cli(capsys, "validate", "--samples", "40", "--seed", "7")
        assert code == 0
        assert "all checks passed" in out

    def test_injected_fault_fails(self, capsys):
        code, out, _ = run_cli(capsys, "validate", "--samples", "40", "--seed", "7",
                               "--inject-fault", "1e-3")
        assert code == 1
        assert "FAIL" in out

    def test_seeded_determinism(self, tmp_path, capsys):
        f1, f2 = tmp_path / "r1.txt", tmp_path / "r2.txt"
        for f in (f1, f2):
            run_cli(capsys, "validate", "--samples", "30", "--seed", "11",
                    "--output", str(f))
        assert f1.read_bytes() == f2.read_bytes()


class TestConfigFile:
    def test_config_supplies_defaults_and_flags_override(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("gamma=0.5\nr0=1.0\nr1=2.0\nwidth=1.0\n")
        code, out, _ = run_cli(capsys, "energy", "--config", str(cfg))
        assert code == 0
        assert json.loads(out)["gamma"] == 0.5
        code, out, _ = run_cli(capsys, "energy", "--config", str(cfg), "--gamma", "0.7")
        assert code == 0
        assert json.loads(out)["gamma"] == 0.7

    def test_bad_config_line(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("gamma 0.5\n")
        code, _, err = run_cli(capsys, "energy", "--config", str(cfg))
        assert code == 1 and "config" in err
