import csv
import json
import numpy as np
import pytest

from catweak import cli
from catweak.errors import GridResolutionWarning, QuadratureError
from catweak.figures import RECIPES, RunConfig, sweep_rows

from .conftest import PHI


def run_cli(*argv):
    return cli.main([str(a) for a in argv])


def read_columns(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    return header, {h: np.array([float(r[i]) if r[i] else np.nan for r in body]) for i, h in enumerate(header)}


def write_config(tmp_path, doc, name="run.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return path


class TestRecipes:
    def test_constants(self):
        for name in ("fig1", "fig2", "fig3"):
            r = RECIPES[name]
            assert (r.x0, r.p0, r.eta, r.phi) == (6.0, 0.01, 1.0, PHI)
        for name in ("fig4", "fig5", "fig6"):
            r = RECIPES[name]
            assert (r.x0, r.p0, r.eta, r.phi) == (1e-4, 1e-3, 1.0, PHI)

    def test_fig1_profile(self, tmp_path, capsys):
        assert run_cli("fig1", "--out", tmp_path) == 0
        header, cols = read_columns(tmp_path / "fig1.csv")
        assert header == ["delta", "overlap"]
        assert cols["overlap"][0] == pytest.approx(1.0, abs=1e-12)
        assert "first zero" in capsys.readouterr().out

    def test_fig6_peak(self, tmp_path):
        assert run_cli("fig6", "--out", tmp_path) == 0
        header, cols = read_columns(tmp_path / "fig6.csv")
        assert header == ["x", "density"]
        assert cols["x"][np.argmax(cols["density"])] == pytest.approx(-0.129, abs=0.005)

    def test_wigner_summary(self, tmp_path):
        with pytest.warns(GridResolutionWarning):
            assert run_cli("fig5", "--out", tmp_path, "--grid", 64, 64) == 0
        header, cols = read_columns(tmp_path / "fig5.csv")
        assert header == ["x", "p", "w"] and cols["w"].size == 64 * 64
        summary = json.loads((tmp_path / "fig5_summary.json").read_text())
        assert set(summary) >= {"min_value", "total_mass", "grid"}
        assert summary["grid"]["nx"] == 64

    def test_json_format(self, tmp_path):
        assert run_cli("fig4", "--out", tmp_path, "--format", "json") == 0
        doc = json.loads((tmp_path / "fig4.json").read_text())
        assert doc["summary"]["zeros"] == [] and doc["summary"]["sub_fourier"] is False
        assert doc["columns"]["overlap"][0] == pytest.approx(1.0)

    def test_hbar_flag(self, tmp_path):
        assert run_cli("validate", "fig1", "--hbar", 2.0) == 0
        cfg = cli._config_from_args(cli.build_parser().parse_args(["fig1", "--hbar", "2"]))
        assert cfg.resolved_state().hbar == 2.0


class TestSweep:
    def test_complementarity(self, tmp_path, capsys):
        assert run_cli("sweep", "--out", tmp_path) == 0
        with open(tmp_path / "sweep.csv") as fh:
            header = next(csv.reader(fh))
        assert header == ["p0", "x0", "I", "first_zero", "sub_fourier", "wigner_min", "weak_regime", "weak_peak"]
        with open(tmp_path / "sweep.csv") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 10
        assert not any(r["sub_fourier"] == "true" and r["weak_regime"] == "true" for r in rows)
        assert "AND weak pointer: 0" in capsys.readouterr().out

    def test_rows(self):
        rows = sweep_rows()
        weak = [r for r in rows if r["weak_regime"]]
        assert [(r["p0"], r["x0"]) for r in weak] == [(1e-3, 1e-4)]
        assert weak[0]["weak_peak"] == pytest.approx(-0.1286, abs=1e-4)
        assert all(r["sub_fourier"] == (r["x0"] == 6.0) for r in rows)


class TestValidate:
    def test_strong(self, capsys):
        assert run_cli("validate", "fig1") == 0
        report = json.loads(capsys.readouterr().out)
        assert report["I"] == pytest.approx(1.52e-8, rel=1e-2) and report["regime"] == "strong"
        assert report["dx_ok"] and report["dp_ok"]

    def test_weak(self, capsys):
        assert run_cli("validate", "fig4") == 0
        report = json.loads(capsys.readouterr().out)
        assert report["I"] == pytest.approx(0.999998, abs=1e-6) and report["regime"] == "weak"
        assert report["N"] == pytest.approx(45.37, abs=0.01)

    def test_malformed_json(self, tmp_path, capsys):
        path = write_config(tmp_path, '{\n  "schema_version": 1,\n  "scenario": "fig1",,\n}')
        assert run_cli("validate", "--config", path) == cli.EXIT_CONFIG
        err = capsys.readouterr().err
        assert "line 3" in err and "column" in err

    def test_needs_scenario(self, capsys):
        assert run_cli("validate") == cli.EXIT_CONFIG


class TestConfig:
    def test_unknown_field_named(self, tmp_path, capsys):
        doc = {"schema_version": 1, "scenario": "custom", "state": {"x0": 1, "p0": 0, "phi": 0.3, "etta": 1}}
        assert run_cli("custom", "--config", write_config(tmp_path, doc)) == cli.EXIT_CONFIG
        assert "state: unknown field(s) etta" in capsys.readouterr().err

    def test_schema_version_required(self, tmp_path):
        doc = {"scenario": "fig1"}
        assert run_cli("fig1", "--config", write_config(tmp_path, doc)) == cli.EXIT_CONFIG

    def test_both_state_and_sg_rejected(self, tmp_path):
        doc = {
            "schema_version": 1,
            "scenario": "custom",
            "state": {"x0": 1, "p0": 0, "phi": 0.3},
            "sg": {"B": 1, "tau": 1},
            "selection": {"phi": 0.3},
        }
        assert run_cli("custom", "--config", write_config(tmp_path, doc)) == cli.EXIT_CONFIG

    def test_recipe_rejects_state(self, tmp_path):
        doc = {"schema_version": 1, "scenario": "fig1", "state": {"x0": 1, "p0": 0, "phi": 0.3}}
        assert run_cli("fig1", "--config", write_config(tmp_path, doc)) == cli.EXIT_CONFIG

    def test_scenario_conflict(self, tmp_path):
        doc = {"schema_version": 1, "scenario": "fig4"}
        assert run_cli("fig1", "--config", write_config(tmp_path, doc)) == cli.EXIT_CONFIG

    def test_bad_physics_value(self, tmp_path, capsys):
        doc = {"schema_version": 1, "scenario": "custom", "state": {"x0": 1, "p0": 0, "a": 1, "b": 1}}
        assert run_cli("custom", "--config", write_config(tmp_path, doc)) == cli.EXIT_CONFIG
        assert "expected 1" in capsys.readouterr().err

    def test_custom_requires_config(self):
        assert run_cli("custom") == cli.EXIT_CONFIG

    def test_unwritable_output(self, tmp_path, capsys):
        blocker = tmp_path / "file"
        blocker.write_text("")
        assert run_cli("fig1", "--out", blocker / "sub") == cli.EXIT_CONFIG
        assert "not writable" in capsys.readouterr().err

    def test_custom_state(self, tmp_path):
        doc = {
            "schema_version": 1,
            "scenario": "custom",
            "state": {"x0": 3.0, "p0": 0.2, "eta": 1.0, "a": [0.6, 0.0], "b": [0.0, 0.8]},
            "grid": {"nx": 96, "np": 96},
            "products": ["overlap", "position"],
            "output": str(tmp_path / "o"),
        }
        assert run_cli("custom", "--config", write_config(tmp_path, doc)) == 0
        assert (tmp_path / "o" / "custom_overlap.csv").exists()
        assert (tmp_path / "o" / "custom_position.csv").exists()
        assert not (tmp_path / "o" / "custom_wigner.csv").exists()

    def test_custom_sg(self, tmp_path, capsys):
        doc = {
            "schema_version": 1,
            "scenario": "custom",
            "sg": {"B": 0.01 / 0.2, "tau": 0.2, "mu": 1, "m": 1},
            "selection": {"phi": PHI},
            "products": ["position"],
        }
        assert run_cli("custom", "--config", write_config(tmp_path, doc), "--out", tmp_path / "sg") == 0
        header, cols = read_columns(tmp_path / "sg" / "custom_position.csv")
        # x0 = 1e-3, p0 = 1e-2: weak regime but boost too large for the first-order pointer
        assert "n/a" in capsys.readouterr().out
        assert np.trapezoid(cols["density"], cols["x"]) == pytest.approx(1.0, abs=1e-6)

    def test_config_round_trip(self):
        doc = {
            "schema_version": 1,
            "scenario": "sweep",
            "sweep": {"x0": [0.5, 2.0], "p0": [1e-3], "phi": 0.7},
            "grid": {"nx": 64, "np": 64},
            "format": "json",
        }
        cfg = cli.config_from_dict(doc)
        assert isinstance(cfg, RunConfig)
        assert cfg.sweep_x0 == (0.5, 2.0) and cfg.sweep_phi == 0.7 and cfg.fmt == "json"


class TestNumericalFailure:
    def test_exit_code_names_module(self, tmp_path, monkeypatch, capsys):
        def broken(*args, **kwargs):
            raise QuadratureError("tolerance not met")

        monkeypatch.setattr("catweak.figures.wigner_field", broken)
        assert run_cli("fig2", "--out", tmp_path) == cli.EXIT_NUMERICAL
        assert "numerical failure in wigner-phase-space" in capsys.readouterr().err


@pytest.mark.parametrize("name", sorted(RECIPES))
def test_byte_identical(name, tmp_path):
    for sub in ("a", "b"):
        assert run_cli(name, "--out", tmp_path / sub) == 0
    files = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert files == sorted(p.name for p in (tmp_path / "b").iterdir())
    for f in files:
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()
