import json

import pytest

from chargedfock.cli import main
from chargedfock.config import ConfigError, RunConfig, load_config_file, resolve_config


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


# ---------------------------------------------------------------------------
# configuration


def test_config_defaults_and_overrides(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# checked-in run settings\nlevel_cutoff = 4\nlambda = 1/8\n", encoding="utf-8")
    cfg = resolve_config(str(path), {"seed": "5", "level_cutoff": None})
    assert cfg.level_cutoff == 4
    assert cfg.lam == "1/8"
    assert cfg.seed == 5
    assert cfg.alpha0 == "1/2"
    cfg2 = resolve_config(str(path), {"level_cutoff": "6"})
    assert cfg2.level_cutoff == 6  # flags beat the file


def test_config_rejects_unknown_and_duplicate_keys(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("bogus = 1\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config_file(str(bad))
    dup = tmp_path / "dup.cfg"
    dup.write_text("seed = 1\nseed = 2\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config_file(str(dup))


def test_config_validates_values():
    with pytest.raises(ConfigError):
        RunConfig(arithmetic="decimal")
    with pytest.raises(ConfigError):
        RunConfig(level_cutoff=-1)
    with pytest.raises(ConfigError):
        RunConfig(charge_window=(2, -2))
    with pytest.raises(ConfigError):
        resolve_config(None, {"charge_window": "1"})


# ---------------------------------------------------------------------------
# exit codes


def test_usage_errors_exit_one(capsys, tmp_path):
    assert main(["no-such-subcommand"]) == 1
    assert main(["verify-algebra", str(tmp_path / "missing.cfg")]) == 1
    bad = tmp_path / "bad.cfg"
    bad.write_text("bogus = 1\n", encoding="utf-8")
    assert main(["verify-algebra", str(bad)]) == 1
    capsys.readouterr()


def test_verify_algebra_default_small(capsys):
    code, out = run(capsys, "verify-algebra", "--level_cutoff", "4")
    assert code == 0
    rep = json.loads(out)
    assert rep["subcommand"] == "verify-algebra"
    assert rep["verdict"] == "pass"
    assert sorted(rep["config"]) == [
        "alpha0",
        "alpha_multiplier",
        "arithmetic",
        "charge_window",
        "lambda",
        "level_cutoff",
        "output",
        "seed",
        "tolerance",
    ]


def test_verify_algebra_fault_injection_exits_two(capsys):
    code, out = run(
        capsys, "verify-algebra", "--level_cutoff", "6", "--inject-fault", "sugawara"
    )
    assert code == 2
    rep = json.loads(out)
    assert rep["verdict"] == "identity_failure"
    assert rep["failed_suite"] == "virasoro_bracket"
    assert rep["first_failure"] == {"m": -4, "n": 2, "sector": -2, "basis": [1]}


def test_verify_algebra_degenerate_cutoff(capsys):
    code, out = run(capsys, "verify-algebra", "--level_cutoff", "0")
    assert code == 0
    rep = json.loads(out)
    assert any("vacuous interior" in w for w in rep["warnings"])


def test_verify_decay_report(capsys):
    code, out = run(capsys, "verify-decay", "--level_cutoff", "8")
    assert code == 0
    rep = json.loads(out)
    assert rep["exact_table"][1]["computed"] == "1/4"
    assert rep["slope"]["ok"]


def test_converge_multi_mode_files(tmp_path, capsys):
    out_path = tmp_path / "series.csv"
    code, _ = run(
        capsys,
        "converge",
        "--m-list",
        "0,2",
        "--n-max",
        "8",
        "--output",
        str(out_path),
    )
    assert code == 0
    m0 = (tmp_path / "series_m0.csv").read_text(encoding="utf-8").splitlines()
    m2 = (tmp_path / "series_m2.csv").read_text(encoding="utf-8").splitlines()
    assert m0[0] == "band,band_norm_sq,partial_sum"
    assert m0[1].startswith("0,1,")
    assert len(m2) == 9


def test_converge_refuses_critical_charge(capsys):
    code, _ = run(capsys, "converge", "--alpha_multiplier", "2")
    assert code == 1


def test_diverge_demo_emits_growing_sums(capsys):
    code, out = run(capsys, "diverge-demo", "--n-max", "64")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "N,partial_sum,increment"
    sums = [float(line.split(",")[1]) for line in lines[1:]]
    assert sums == sorted(sums)
    assert len(sums) == 6  # N = 2, 4, ..., 64


def test_verify_commutativity_small(capsys):
    code, out = run(
        capsys,
        "verify-commutativity",
        "--level_cutoff",
        "7",
        "--m-range",
        "1",
        "--samples",
        "0",
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["vacuum"]["all_exact_zero"]


def test_verify_lorentz_unperturbed_is_exact(capsys):
    code, out = run(capsys, "verify-lorentz", "--level_cutoff", "6", "--lambda", "0")
    assert code == 0
    rep = json.loads(out)
    assert rep["summary"]["verdict"] == "pass"
    assert rep["summary"]["max_abs_residual"] == 0.0
    assert all(r["tail_budget"] == 0.0 for r in rep["records"])


def test_verify_lorentz_refuses_supercritical(capsys):
    code, _ = run(capsys, "verify-lorentz", "--alpha_multiplier", "2", "--level_cutoff", "6")
    assert code == 1


def test_verify_virasoro_c0_needs_imaginary_scalars(capsys):
    code, _ = run(capsys, "verify-virasoro-c0", "--level_cutoff", "6")
    assert code == 1
    code, out = run(
        capsys,
        "verify-virasoro-c0",
        "--level_cutoff",
        "6",
        "--arithmetic",
        "exact-gaussian",
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["summary"]["verdict"] == "pass"
    assert len(rep["coefficient_identity"]) > 0


def test_explore_d_half_reports_closure_at_unit_charge(capsys):
    code, out = run(
        capsys,
        "explore-d-half",
        "--alpha_multiplier",
        "2",
        "--level_cutoff",
        "6",
        "--n-max",
        "8",
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["weight"] == "1/2"
    assert rep["closes_at_this_weight"]
    assert all(r["matches_prediction"] for r in rep["measured_gap"])


def test_output_flag_writes_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out = run(
        capsys, "verify-lorentz", "--level_cutoff", "6", "--lambda", "0", "--output", str(path)
    )
    assert code == 0
    assert out == ""
    rep = json.loads(path.read_text(encoding="utf-8"))
    assert rep["subcommand"] == "verify-lorentz"


def test_reports_are_deterministic(capsys):
    _, first = run(capsys, "verify-lorentz", "--level_cutoff", "6", "--seed", "3")
    _, second = run(capsys, "verify-lorentz", "--level_cutoff", "6", "--seed", "3")
    assert first == second
