import json

import numpy as np
import pytest

from indecision import (
    CriticalCoefficients,
    NetworkShape,
    PatternClass,
    Scenario,
    SigmoidParams,
    coefficients_from_gains,
    get_scenario,
    run_scenario,
    sweep_lambda,
    write_heatmap_svg,
)
from indecision.cli import main as cli_main


def fast_consensus_2x2(seeds=(0, 1), epsilon=0.05):
    """Small, quick scenario: two agents, two options, consensus-type."""
    return Scenario(
        name="mini-consensus-2x2",
        shape=NetworkShape(2, 2),
        coefficients=CriticalCoefficients(c_d=-1.0, c_c=1.0, c_dl=-1.0, c_s=-1.0),
        sigmoids=SigmoidParams(0.5, 0.3),
        epsilon=epsilon,
        seeds=tuple(seeds),
    )


# ---------------------------------------------------------------------------
# scenario mechanics
# ---------------------------------------------------------------------------

def test_builtin_scenarios_have_unit_thresholds():
    for name in ("consensus-4x6", "deadlock-4x6",
                 "dissensus-orbital-4x6", "dissensus-exotic-4x6"):
        sc = get_scenario(name)
        assert sc.first_threshold().lam == 1.0
        assert sc.lambda_value() == pytest.approx(1.0 + sc.epsilon)


def test_scenario_gains_invert_coefficients():
    sc = get_scenario("dissensus-orbital-4x6")
    c2 = coefficients_from_gains(sc.gains(), sc.shape)
    assert np.allclose(c2.as_tuple(), sc.coefficients.as_tuple(), atol=1e-12)


def test_unknown_scenario():
    with pytest.raises(KeyError):
        get_scenario("nope")


def test_run_scenario_mini_consensus():
    reports = run_scenario(fast_consensus_2x2())
    assert all(r.converged for r in reports)
    for r in reports:
        assert r.pattern.pattern_class is PatternClass.CONSENSUS
        assert r.axial_index is None  # consensus is not a dissensus-axial pattern


def test_converged_attractor_is_linearly_stable():
    # the jacobian spectrum at a converged scenario final has negative real parts
    from indecision import integrate, random_near_origin
    sc = fast_consensus_2x2(seeds=(0,))
    Z0 = random_near_origin(sc.shape, sc.radius, 0)
    _, res = integrate(Z0, sc.model_config(), sc.integrator_config(),
                       with_spectrum=True)
    assert res.converged
    assert res.jacobian_spectrum is not None
    assert max(v.real for v in res.jacobian_spectrum) < 0


def test_run_scenario_outputs_are_deterministic(tmp_path):
    sc = fast_consensus_2x2(seeds=(3,))
    d1, d2 = tmp_path / "a", tmp_path / "b"
    run_scenario(sc, out_dir=str(d1))
    run_scenario(sc, out_dir=str(d2))
    for name in ("mini-consensus-2x2_seed3.json",
                 "mini-consensus-2x2_seed3.csv",
                 "mini-consensus-2x2_seed3.svg",
                 "mini-consensus-2x2_summary.json"):
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes()


def test_run_report_json_shape(tmp_path):
    sc = fast_consensus_2x2(seeds=(0,))
    run_scenario(sc, out_dir=str(tmp_path))
    payload = json.loads((tmp_path / "mini-consensus-2x2_seed0.json").read_text())
    assert payload["scenario"] == "mini-consensus-2x2"
    assert payload["converged"] is True
    assert payload["pattern"]["class"] == "Consensus"
    assert len(payload["final"]) == 2 and len(payload["final"][0]) == 2
    summary = json.loads((tmp_path / "mini-consensus-2x2_summary.json").read_text())
    assert summary["n_converged"] == 1
    assert summary["class_counts"] == {"Consensus": 1}


def test_trajectory_csv_written(tmp_path):
    sc = fast_consensus_2x2(seeds=(0,))
    run_scenario(sc, out_dir=str(tmp_path))
    lines = (tmp_path / "mini-consensus-2x2_seed0.csv").read_text().splitlines()
    assert lines[0] == "t,z_1_1,z_1_2,z_2_1,z_2_2"
    assert len(lines) > 10


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

def test_sweep_below_threshold_goes_to_zero():
    sc = fast_consensus_2x2(seeds=(0, 1, 2))
    rows = sweep_lambda(sc, [0.5])
    assert rows[0]["frac_converged"] == 1.0
    assert rows[0]["frac_zero"] == 1.0
    assert rows[0]["mean_amplitude"] <= 1e-7


def test_sweep_detects_threshold_crossing(tmp_path):
    sc = fast_consensus_2x2(seeds=(0, 1))
    lambdas = [0.8, 0.95, 1.05, 1.2]
    out = tmp_path / "sweep.csv"
    rows = sweep_lambda(sc, lambdas, out_csv=str(out))
    amps = [r["mean_amplitude"] for r in rows]
    zeros = [r["frac_zero"] for r in rows]
    assert zeros[0] == 1.0 and zeros[1] == 1.0
    assert zeros[2] == 0.0 and zeros[3] == 0.0
    assert amps[2] > 100 * max(amps[0], amps[1])
    # the observed transition brackets the analytic threshold (lambda = 1)
    first_nonzero = next(lam for lam, z in zip(lambdas, zeros) if z == 0.0)
    last_zero = max(lam for lam, z in zip(lambdas, zeros) if z == 1.0)
    assert last_zero < 1.0 < first_nonzero
    header = out.read_text().splitlines()[0].split(",")
    assert "frac_Consensus" in header and "mean_amplitude" in header


def test_sweep_rejects_empty_lambda_list():
    with pytest.raises(ValueError):
        sweep_lambda(fast_consensus_2x2(), [])


# ---------------------------------------------------------------------------
# heatmap
# ---------------------------------------------------------------------------

def test_heatmap_svg_structure(tmp_path):
    Z = np.array([[1.0, -1.0, 0.0], [0.5, -0.5, 0.25]])
    path = tmp_path / "heat.svg"
    write_heatmap_svg(Z, str(path), title="demo")
    text = path.read_text()
    # one rect per cell plus the background
    assert text.count("<rect") == 1 + Z.size
    assert "agent 1" in text and "opt 3" in text
    assert text.startswith("<svg")
    # extreme negative is redder than extreme positive
    assert "#b2182b" in text and "#2166ac" in text


# ---------------------------------------------------------------------------
# command line
# ---------------------------------------------------------------------------

def write_mini_config(path, seeds=(0,)):
    cfg = {
        "name": "cli-mini",
        "shape": [2, 2],
        "coefficients": {"c_d": -1.0, "c_c": 1.0, "c_dl": -1.0, "c_s": -1.0},
        "sigmoids": [0.5, 0.3],
        "epsilon": 0.05,
        "seeds": list(seeds),
    }
    path.write_text(json.dumps(cfg))
    return path


def test_cli_simulate_with_config(tmp_path, capsys):
    cfg = write_mini_config(tmp_path / "cfg.json")
    out = tmp_path / "out"
    rv = cli_main(["simulate", "--config", str(cfg), "--out-dir", str(out)])
    assert rv == 0
    assert (out / "cli-mini_seed0.json").exists()
    assert (out / "cli-mini_seed0.svg").exists()
    captured = capsys.readouterr().out
    assert "converged" in captured


def test_cli_simulate_flag_overrides(tmp_path, capsys):
    cfg = write_mini_config(tmp_path / "cfg.json")
    rv = cli_main(["simulate", "--config", str(cfg), "--seeds", "1,2",
                   "--epsilon", "0.06"])
    assert rv == 0
    out = capsys.readouterr().out
    assert "lambda=1.06" in out
    assert "seed   1" in out and "seed   2" in out


def test_cli_sweep(tmp_path, capsys):
    cfg = write_mini_config(tmp_path / "cfg.json", seeds=(0, 1))
    out = tmp_path / "out"
    rv = cli_main(["sweep", "--config", str(cfg), "--out-dir", str(out),
                   "--lambda-list", "0.5,1.1"])
    assert rv == 0
    csv_text = (out / "cli-mini_sweep.csv").read_text()
    assert csv_text.splitlines()[0].startswith("lambda,")
    assert len(csv_text.splitlines()) == 3


def test_cli_catalog(tmp_path, capsys):
    rv = cli_main(["catalog", "2", "4", "--out-dir", str(tmp_path)])
    assert rv == 0
    out = capsys.readouterr().out
    assert "total 3" in out
    assert "Exotic" not in out.replace("by verdict", "")  # all orbital on 2x4
    items = json.loads((tmp_path / "axial_catalog_2x4.json").read_text())
    assert len(items) == 3


def test_cli_catalog_4x6_has_exotic(capsys):
    rv = cli_main(["catalog", "4", "6"])
    assert rv == 0
    out = capsys.readouterr().out
    assert "Exotic" in out
    assert "total 14" in out


def test_cli_classify(tmp_path, capsys):
    Z = np.tile(np.array([2.0, 2.0, -1.0]), (3, 1))
    path = tmp_path / "mat.csv"
    path.write_text("\n".join(",".join(f"{v:.17g}" for v in row) for row in Z) + "\n")
    rv = cli_main(["classify", str(path), "--tol", "1e-6"])
    assert rv == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["class"] == "Consensus"


def test_cli_classify_trajectory_file(tmp_path, capsys):
    sc = fast_consensus_2x2(seeds=(0,))
    run_scenario(sc, out_dir=str(tmp_path))
    rv = cli_main(["classify", str(tmp_path / "mini-consensus-2x2_seed0.csv"),
                   "--tol", "1e-4"])
    assert rv == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["class"] == "Consensus"


def test_cli_synthesize(tmp_path, capsys):
    path = tmp_path / "coloring.txt"
    path.write_text("0 1\n1 0\n")
    rv = cli_main(["synthesize", str(path)])
    assert rv == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["stable"] is True
    assert payload["exact_roots"] is True
    assert payload["max_eigenvalue_deviation"] <= 1e-8
