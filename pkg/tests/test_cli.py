import math
import re
import subprocess
import sys
from pathlib import Path

import pytest

from implicurve import intersect_lines, parse_scene, build_scene_field
from implicurve.cli import main

SCENES = Path(__file__).resolve().parent.parent / "scenes"
CIRCLE = str(SCENES / "circle.scene")
LIMING = str(SCENES / "liming.scene")


def crossing_scene_text():
    """Four-tangent scene on the unit circle whose secants intersect."""
    angles = (0.0, 2.0 * math.pi / 3.0, math.pi / 3.0, math.pi)
    out = []
    for k, t in enumerate(angles, start=1):
        out.append(f"line l{k} {math.cos(t)!r} {math.sin(t)!r} -1")
        out.append(f"point p{k} {math.cos(t)!r} {math.sin(t)!r}")
    for k in range(1, 5):
        out.append(f"tangent l{k} p{k}")
    out.append("weights 1 1 1")
    out.append("form normalized")
    return "\n".join(out) + "\n"


class TestRender:
    def test_circle_scene(self, tmp_path, capsys):
        out = tmp_path / "circle.svg"
        assert main(["render", CIRCLE, "--grid", "128", "--out", str(out)]) == 0
        stdout = capsys.readouterr().out
        assert stdout.startswith("mode=four-tangent weights=2,2,-2 ")
        svg = out.read_text()
        assert len(re.findall(r'<line [^>]*stroke="#0000FF"', svg)) == 4
        assert len(re.findall(r'<line [^>]*stroke="#FF0000"', svg)) == 2
        assert len(re.findall(r'<polyline [^>]*stroke="#800080"', svg)) == 1

    def test_byte_deterministic(self, tmp_path):
        a = tmp_path / "a.svg"
        b = tmp_path / "b.svg"
        for out in (a, b):
            assert main(["render", CIRCLE, "--grid", "96", "--out", str(out)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_liming_scene(self, tmp_path, capsys):
        out = tmp_path / "liming.svg"
        assert main(["render", LIMING, "--grid", "96", "--out", str(out)]) == 0
        assert "mode=liming lambda=0.333333333333" in capsys.readouterr().out

    def test_missing_scene_exits_2(self, tmp_path, capsys):
        assert main(["render", str(tmp_path / "nope.scene")]) == 2
        assert capsys.readouterr().err.startswith("error[IO]:")

    def test_unwritable_output_exits_2(self, tmp_path, capsys):
        target = tmp_path / "no" / "such" / "dir" / "x.svg"
        assert main(["render", CIRCLE, "--grid", "8", "--out", str(target)]) == 2

    def test_parse_error_exits_1(self, tmp_path, capsys):
        bad = tmp_path / "bad.scene"
        bad.write_text("frobnicate\n")
        assert main(["render", str(bad)]) == 1
        err = capsys.readouterr().err
        assert err.startswith("error[SyntaxError]:")

    def test_explicit_bounds(self, tmp_path):
        out = tmp_path / "b.svg"
        code = main(["render", CIRCLE, "--grid", "64",
                     "--bounds=-2,-2,2,2", "--out", str(out)])
        assert code == 0
        assert 'viewBox="-2 -2 4 4"' in out.read_text()


class TestEval:
    def test_circle_center(self, capsys):
        assert main(["eval", CIRCLE, "--at", "0,0"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "value 1"
        assert out[1].startswith("gradient ")

    def test_liming_tangency_point(self, capsys):
        assert main(["eval", LIMING, "--at", "1,0"]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "value 0"

    def test_pole_reports_zero_denominator(self, tmp_path, capsys):
        scene_path = tmp_path / "crossing.scene"
        scene_path.write_text(crossing_scene_text())
        scene = build_scene_field(parse_scene(crossing_scene_text()))
        pole = intersect_lines(scene.secant_lines[0], scene.secant_lines[1])
        code = main(["eval", str(scene_path), "--at", f"{pole.x!r},{pole.y!r}"])
        assert code == 1
        err = capsys.readouterr().err
        assert err.startswith("error[ZeroDenominator]:")
        assert "denominator zero" in err


class TestVerify:
    def test_circle_all_pass(self, capsys):
        assert main(["verify", CIRCLE]) == 0
        assert "4/4 tangencies pass" in capsys.readouterr().out

    def test_circle_residuals_exact(self, capsys):
        # the axis-aligned scene is float-exact, so even zero tolerance holds
        assert main(["verify", CIRCLE, "--tol-value", "0", "--tol-angle", "0"]) == 0
        assert "4/4 tangencies pass" in capsys.readouterr().out

    def test_zero_tolerances_fail_with_rounding(self, tmp_path, capsys):
        # trigonometric coordinates leave residuals of a few ulps, so a zero
        # tolerance must report failures
        scene_path = tmp_path / "crossing.scene"
        scene_path.write_text(crossing_scene_text())
        code = main(["verify", str(scene_path),
                     "--tol-value", "0", "--tol-angle", "0"])
        assert code == 1
        out = capsys.readouterr().out
        assert not out.splitlines()[-1].startswith("4/4")

    def test_perturbed_point_is_validation_error(self, tmp_path, capsys):
        text = Path(CIRCLE).read_text().replace("point p2 0 1", "point p2 0 0.99")
        bad = tmp_path / "bad.scene"
        bad.write_text(text)
        assert main(["verify", str(bad)]) == 1
        assert capsys.readouterr().err.startswith("error[TangencyViolation]:")

    def test_large_mixed_weight_stays_tangent(self, tmp_path, capsys):
        # pushing w0 up shrinks the curve toward the secant crossing but
        # cannot break the tangencies
        text = crossing_scene_text().replace("weights 1 1 1", "weights 0.5 0.5 5")
        scene_path = tmp_path / "heavy.scene"
        scene_path.write_text(text)
        assert main(["verify", str(scene_path)]) == 0
        assert "4/4 tangencies pass" in capsys.readouterr().out
        out = tmp_path / "heavy.svg"
        assert main(["render", str(scene_path), "--grid", "96",
                     "--out", str(out)]) == 0
        assert out.exists()


class TestReproduce:
    def test_circle(self, capsys):
        assert main(["reproduce", CIRCLE, "--conic=-1,0,-1,0,0,1"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "weights 2 2 -2"
        assert "convention" in out[1]

    def test_negated_conic_flips_weights(self, capsys):
        assert main(["reproduce", CIRCLE, "--conic=1,0,1,0,0,-1"]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "weights -2 -2 2"

    def test_not_tangent_exits_1(self, capsys):
        assert main(["reproduce", CIRCLE, "--conic=1,0,1,0.5,0,-1"]) == 1
        assert capsys.readouterr().err.startswith("error[NotTangent]:")

    def test_liming_scene_rejected(self, capsys):
        assert main(["reproduce", LIMING, "--conic=1,0,1,0,0,-1"]) == 1


class TestFit:
    def test_circle_constraints(self, capsys):
        code = main(["fit", "--tangent=1,0,1,0", "--tangent=0,1,0,1",
                     "--point=-1,0"])
        assert code == 0
        values = [float(v) for v in capsys.readouterr().out.split()[1:]]
        unit = 1.0 / math.sqrt(3.0)
        assert values == pytest.approx([unit, 0, unit, 0, 0, -unit], abs=1e-10)

    def test_coincident_points_exit_1(self, capsys):
        code = main(["fit", "--tangent=1,0,1,0", "--tangent=1,0,1,0",
                     "--point=-1,0"])
        assert code == 1
        assert capsys.readouterr().err.startswith("error[DegenerateInput]:")

    def test_rank_deficient_exit_1(self, capsys):
        code = main(["fit", "--tangent=0,0,0,1", "--tangent=1,0,0,1",
                     "--point=2,0"])
        assert code == 1
        assert capsys.readouterr().err.startswith("error[RankDeficient]:")


class TestConsoleScript:
    def test_module_invocation(self, tmp_path):
        out = tmp_path / "cli.svg"
        proc = subprocess.run(
            [sys.executable, "-m", "implicurve.cli", "render", CIRCLE,
             "--grid", "32", "--out", str(out)],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert out.exists()
