import json
import subprocess

import pytest
from click.testing import CliRunner

from hhskit import bundled_json
from hhskit.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture(scope="module")
def toy2_file(tmp_path_factory):
    p = tmp_path_factory.mktemp("cli") / "toy2.json"
    p.write_text(bundled_json("toy2"))
    return str(p)


class TestBuild:
    def test_tree_of_flats_matches_bundled(self, runner, tmp_path):
        out = tmp_path / "t.json"
        res = runner.invoke(main, ["build", "--example", "tree-of-flats",
                                   "--N", "1", "--D", "1", "--out", str(out)])
        assert res.exit_code == 0
        assert out.read_text() == bundled_json("toy1_small")

    def test_interval_complex_matches_bundled(self, runner, tmp_path):
        out = tmp_path / "t.json"
        res = runner.invoke(main, ["build", "--example", "interval-complex",
                                   "--out", str(out)])
        assert res.exit_code == 0
        assert out.read_text() == bundled_json("toy2")

    def test_flat_grid_space(self, runner, tmp_path):
        out = tmp_path / "g.json"
        res = runner.invoke(main, ["build", "--example", "flat-grid",
                                   "--N", "2", "--out", str(out)])
        assert res.exit_code == 0
        data = json.loads(out.read_text())
        assert data["n"] == 9

    def test_env_vertex_cap(self, runner, monkeypatch):
        monkeypatch.setenv("HHS_MAX_VERTICES", "10")
        res = runner.invoke(main, ["build", "--example", "tree-of-flats",
                                   "--N", "1", "--D", "1"])
        assert res.exit_code != 0


class TestCheck:
    def test_passes_on_toy2(self, runner, toy2_file, tmp_path):
        rep = tmp_path / "report.json"
        res = runner.invoke(main, ["check", toy2_file, "--report", str(rep)])
        assert res.exit_code == 0
        data = json.loads(rep.read_text())
        assert data["consistency"]["constant"] == 0
        assert data["partial_realization"]["constant"] == 2
        assert data["rho_coherence"]["constant"] == 3

    def test_relation_failure_exits_1(self, runner, tmp_path):
        data = json.loads(bundled_json("toy2"))
        data["nesting"] = [p for p in data["nesting"] if p != ["G", "R"]]
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(data))
        res = runner.invoke(main, ["check", str(bad)])
        assert res.exit_code == 1


class TestDistfit:
    def test_fit_and_csv(self, runner, toy2_file, tmp_path):
        csv_out = tmp_path / "pairs.csv"
        fit_out = tmp_path / "fit.json"
        res = runner.invoke(main, ["distfit", toy2_file, "--csv", str(csv_out),
                                   "--fit-out", str(fit_out)])
        assert res.exit_code == 0
        fit = json.loads(fit_out.read_text())
        assert fit["K"] == "1" and fit["C"] == "0"
        lines = csv_out.read_text().strip().splitlines()
        assert lines[0] == "x,y,d_X,sum,thresholded_sum"
        assert len(lines) == 1 + 35 * 34 // 2
        for line in lines[1:]:
            _, _, dx, sm, tsm = line.split(",")
            assert dx == sm == tsm  # threshold 0: the formula is exact

    def test_degenerate_threshold_flagged(self, runner, toy2_file, tmp_path):
        fit_out = tmp_path / "fit.json"
        res = runner.invoke(main, ["distfit", toy2_file, "--threshold", "999",
                                   "--fit-out", str(fit_out)])
        assert res.exit_code == 0
        assert "degenerate" in json.loads(fit_out.read_text())["flags"]


class TestDelta:
    def test_matches_library(self, runner, tmp_path):
        from hhskit import flat_grid

        g = flat_grid(2)
        sf = tmp_path / "grid.json"
        sf.write_text(g.to_json())
        out = tmp_path / "delta.json"
        res = runner.invoke(main, ["delta", str(sf), "--out", str(out)])
        assert res.exit_code == 0
        data = json.loads(out.read_text())
        assert data["four_point_delta"] == str(g.four_point_delta().value)
        assert data["thin_triangle_delta_canonical"] == str(
            g.thin_triangle_delta_canonical().value
        )


class TestClassify:
    def test_table(self, runner, toy2_file):
        res = runner.invoke(main, ["classify", toy2_file])
        assert res.exit_code == 0
        lines = res.output.strip().splitlines()
        assert len(lines) == 7 * 6 // 2
        assert "G\tB\torthogonal\trho:no/no" in lines
        assert "Y\tN\ttransverse\trho:yes/yes" in lines
        assert "B\tO\tnested(O in B)\trho:no/yes" in lines


class TestHull:
    def test_with_dot(self, runner, toy2_file, tmp_path):
        dot = tmp_path / "hull.dot"
        res = runner.invoke(main, ["hull", toy2_file, "--x", "0", "--y", "5",
                                   "--dot", str(dot)])
        assert res.exit_code == 0
        data = json.loads(res.output)
        assert {0, 5} <= set(data["vertices"])
        assert "fillcolor" in dot.read_text()


class TestExport:
    def test_json_is_canonical(self, runner, toy2_file, tmp_path):
        out = tmp_path / "again.json"
        res = runner.invoke(main, ["export", toy2_file, "--out", str(out)])
        assert res.exit_code == 0
        assert out.read_text() == bundled_json("toy2")

    def test_dot(self, runner, toy2_file):
        res = runner.invoke(main, ["export", toy2_file, "--format", "dot"])
        assert res.exit_code == 0
        assert " -- " in res.output

    def test_svg_plot(self, runner, toy2_file, tmp_path):
        pytest.importorskip("matplotlib")
        out = tmp_path / "pair.svg"
        res = runner.invoke(main, ["export", toy2_file, "--format", "svg-plot",
                                   "--domains", "G,B", "--out", str(out)])
        assert res.exit_code == 0
        assert out.read_text().lstrip().startswith("<?xml")


class TestExitCodes:
    """The installed `hhs` script, end to end."""

    def run(self, *args):
        return subprocess.run(["hhs", *args], capture_output=True, text=True)

    def test_pass_is_0(self, toy2_file, tmp_path):
        rep = tmp_path / "r.json"
        assert self.run("check", toy2_file, "--report", str(rep)).returncode == 0

    def test_validation_failure_is_1(self, tmp_path):
        data = json.loads(bundled_json("toy2"))
        data["orthogonal"] = [["G", "B"]]  # symmetry broken
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(data))
        proc = self.run("check", str(bad))
        assert proc.returncode == 1
        assert "orthogonality" in proc.stderr

    def test_parse_error_is_2(self, tmp_path):
        bad = tmp_path / "garbage.json"
        bad.write_text("{not json")
        assert self.run("check", str(bad)).returncode == 2

    def test_missing_file_is_2(self):
        assert self.run("check", "/nonexistent.json").returncode == 2
