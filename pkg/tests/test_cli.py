"""End-to-end CLI contract: report shape, determinism, exit codes, config plumbing."""
import json
import math
import subprocess
import sys

import pytest

from hyperlab.cli import run, to_canonical_json, to_markdown


def _capture(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, out


def _report(capsys, argv):
    code, out = _capture(capsys, argv)
    return code, json.loads(out)


def test_verify_type_a_report(capsys):
    code, rep = _report(capsys, ["verify", "--ambient", "CP", "--n", "3",
                                 "--family", "A2", "--radius", "0.8", "--k", "1",
                                 "--deterministic"])
    assert code == 0
    assert rep["schema"] == "hyperlab/1"
    assert rep["command"] == "verify"
    assert rep["summary"]["all_ok"] is True
    assert rep["summary"]["unexpected"] == 0
    assert "timestamp" not in rep
    keys = [(r["check"], r.get("subspace", "")) for r in rep["checks"]]
    assert keys == sorted(keys)
    assert rep["theorem"]["verdict"] == "type-A-compatible"
    assert rep["classification"]["labels"] == ["A", "B", "C", "D"]
    assert all(r["pass"] for r in rep["checks"])


def test_verify_negative_control_expects_failures(capsys):
    code, rep = _report(capsys, ["verify", "--ambient", "CH", "--n", "3",
                                 "--family", "B", "--radius", "0.7",
                                 "--deterministic"])
    assert code == 0  # failures are expected for the negative control
    failing = {(r["check"], r["subspace"]) for r in rep["checks"] if not r["pass"]}
    assert failing == {("shape-phi-commute", "all"), ("phi-l-commute", "ker-eta")}
    assert all(r["expected"] is False for r in rep["checks"]
               if (r["check"], r["subspace"]) in failing)
    assert rep["theorem"]["verdict"] == "phi-l-hypothesis-fails"
    assert rep["classification"]["labels"] == []
    assert any("omitted" in note for note in rep["notes"])


def test_verify_alpha_zero_radius_indeterminate(capsys):
    code, rep = _report(capsys, ["verify", "--ambient", "CP", "--n", "2",
                                 "--family", "A1", "--radius", repr(math.pi / 4.0),
                                 "--deterministic"])
    assert code == 0
    assert rep["theorem"]["verdict"] == "indeterminate-eta-A-xi-zero"
    assert rep["theorem"]["expected_verdict"] == "indeterminate-eta-A-xi-zero"
    assert rep["spectral"]["alpha_is_zero"] is True


def test_verify_check_subset_and_structure_emission(capsys):
    code, rep = _report(capsys, ["verify", "--ambient", "CP", "--n", "2",
                                 "--family", "A1", "--radius", "0.5",
                                 "--checks", "structure-axioms,phi-l-commute",
                                 "--emit-structure", "--deterministic"])
    assert code == 0
    names = {r["check"] for r in rep["checks"]}
    assert names == {"structure-axioms", "phi-l-commute"}
    assert "structure" in rep
    assert len(rep["structure"]["phi"]) == 9


def test_verify_unknown_check_is_usage_error(capsys):
    code, out = _capture(capsys, ["verify", "--ambient", "CP", "--n", "2",
                                  "--family", "A1", "--radius", "0.5",
                                  "--checks", "no-such-check"])
    assert code == 2
    assert out == ""


def test_verify_bad_radius_is_usage_error(capsys):
    code, _ = _capture(capsys, ["verify", "--ambient", "CP", "--n", "2",
                                "--family", "A1", "--radius", "2.0"])
    assert code == 2


def test_catalog_lists_models(capsys):
    code, rep = _report(capsys, ["catalog", "--deterministic"])
    assert code == 0
    assert {row["family"] for row in rep["catalog"]} == {"A0", "A1", "A2", "B"}


def test_random_properties(capsys):
    code, rep = _report(capsys, ["random", "--dim", "3", "--samples", "20",
                                 "--seed", "5", "--deterministic"])
    assert code == 0
    assert [r["check"] for r in rep["checks"]] == sorted(
        ["acs-axioms", "gauss-symmetry", "hopf-commutator",
         "jacobi-cross-check", "phi-skew"])
    assert all(r["pass"] for r in rep["checks"])


def test_random_single_property(capsys):
    code, rep = _report(capsys, ["random", "--dim", "5", "--samples", "10",
                                 "--property", "phi-skew", "--deterministic"])
    assert code == 0
    assert [r["check"] for r in rep["checks"]] == ["phi-skew"]


def test_random_rejects_even_dim(capsys):
    code, _ = _capture(capsys, ["random", "--dim", "4"])
    assert code == 2


def test_oracle_riccati_value(capsys):
    code, rep = _report(capsys, ["oracle", "riccati", "--kappa", "1.0",
                                 "--r", "1.0", "--r0", "0.01",
                                 "--lambda0", repr(1.0 / math.tan(0.01)),
                                 "--deterministic"])
    assert code == 0
    assert abs(rep["oracle"]["value"] - 1.0 / math.tan(1.0)) <= 1e-9


def test_oracle_riccati_default_anchor(capsys):
    # the small-radius asymptote seeds the run when no anchor is given
    code, rep = _report(capsys, ["oracle", "riccati", "--kappa", "1.0",
                                 "--r", "0.8", "--deterministic"])
    assert code == 0
    assert abs(rep["oracle"]["value"] - 1.0 / math.tan(0.8)) <= 1e-6


def test_oracle_riccati_focal_exit(capsys):
    code, rep = _report(capsys, ["oracle", "riccati", "--kappa", "1.0",
                                 "--r", "3.2", "--deterministic"])
    assert code == 1
    assert "error" in rep["oracle"]
    assert rep["summary"]["all_ok"] is False


def test_jet_report(capsys):
    code, rep = _report(capsys, ["jet", "--alpha", "2.0", "--beta", "0.5",
                                 "--c", "4.0", "--deterministic"])
    assert code == 0
    assert rep["jet"]["kappa1"] == -8.0
    assert rep["certificate"]["verdict"] == "contradiction-witnessed"
    assert all(r["pass"] for r in rep["checks"])
    assert all(r["subspace"] == "scalar" for r in rep["checks"])


def test_jet_alpha_zero_is_usage_error(capsys):
    code, _ = _capture(capsys, ["jet", "--alpha", "0.0", "--beta", "1.0",
                                "--c", "4.0"])
    assert code == 2


def test_jet_config_mapping_path(capsys, tmp_path):
    cfg = tmp_path / "jet.cfg"
    cfg.write_text("dalpha_U = 0.25\n# comment line\ndbeta_xi = 0.125\n")
    code, rep = _report(capsys, ["jet", "--alpha", "1.0", "--beta", "1.0",
                                 "--c", "4.0", "--config", str(cfg),
                                 "--deterministic"])
    assert code == 1  # inconsistent first derivatives fail their rows
    rows = {r["check"]: r for r in rep["checks"]}
    assert not rows["dalpha-U-equals-dbeta-xi"]["pass"]
    assert rep["jet"]["d_alpha"]["U"] == 0.25


def test_deterministic_runs_are_byte_identical(capsys):
    argv = ["verify", "--ambient", "CH", "--n", "3", "--family", "A2",
            "--radius", "1.3", "--k", "1", "--deterministic"]
    _, first = _capture(capsys, argv)
    _, second = _capture(capsys, argv)
    assert first == second
    assert first.endswith("\n")


def test_timestamp_present_without_deterministic(capsys):
    code, rep = _report(capsys, ["catalog"])
    assert code == 0
    assert "timestamp" in rep


def test_markdown_output(capsys):
    code, out = _capture(capsys, ["verify", "--ambient", "CP", "--n", "2",
                                  "--family", "A1", "--radius", "0.5",
                                  "--format", "markdown", "--deterministic"])
    assert code == 0
    assert out.startswith("# ")
    assert "| check |" in out
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)


def test_out_file_writes_report(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out = _capture(capsys, ["catalog", "--deterministic",
                                  "--out", str(path)])
    assert code == 0
    assert out == ""
    rep = json.loads(path.read_text())
    assert rep["command"] == "catalog"


def test_config_file_supplies_and_flag_overrides(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("ambient = CP\nn = 2\nfamily = A1\nradius = 0.5\n"
                   "deterministic = true\n")
    code, rep = _report(capsys, ["verify", "--config", str(cfg)])
    assert code == 0
    assert rep["config"]["radius"] == 0.5
    assert "timestamp" not in rep
    code, rep = _report(capsys, ["verify", "--config", str(cfg),
                                 "--radius", "0.6"])
    assert rep["config"]["radius"] == 0.6  # flag wins over file


def test_tolerance_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("HYPERLAB_TOL", "1e-3")
    code, rep = _report(capsys, ["verify", "--ambient", "CP", "--n", "2",
                                 "--family", "A1", "--radius", "0.5",
                                 "--deterministic"])
    assert code == 0
    assert rep["config"]["tolerance"] == 1e-3
    monkeypatch.setenv("HYPERLAB_TOL", "-1.0")
    code, _ = _capture(capsys, ["verify", "--ambient", "CP", "--n", "2",
                                "--family", "A1", "--radius", "0.5"])
    assert code == 2


def test_usage_errors_exit_two(capsys):
    assert run(["verify"]) == 2  # missing required arguments
    assert run(["no-such-command"]) == 2
    assert run([]) == 2
    assert run(["--help"]) == 0
    capsys.readouterr()


def test_module_entry_point_smoke():
    proc = subprocess.run([sys.executable, "-m", "hyperlab", "catalog",
                           "--deterministic"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    rep = json.loads(proc.stdout)
    assert rep["schema"] == "hyperlab/1"


def test_canonical_json_formatting():
    blob = to_canonical_json({"b": 0.1, "a": True, "n": 3,
                              "nested": {"x": [1.0, 2.5]}})
    assert '"b": 0.10000000000000001' in blob
    assert '"a": true' in blob
    parsed = json.loads(blob)
    assert parsed["nested"]["x"] == [1.0, 2.5]
    with pytest.raises(ValueError):
        to_canonical_json({"bad": float("nan")})


def test_markdown_renderer_handles_report_blocks():
    report = {"schema": "hyperlab/1", "version": "0", "command": "verify",
              "config": {"n": 2}, "checks": [
                  {"check": "x", "subspace": "all", "residual": 0.0,
                   "tolerance": 1e-9, "pass": True, "expected": True}],
              "summary": {"rows": 1, "unexpected": 0, "all_ok": True}}
    text = to_markdown(report)
    assert text.startswith("# ")
    assert "| x |" in text
