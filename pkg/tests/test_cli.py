"""Command-line surface: schemas, exit codes, files, figures."""

import json

import pytest

from gossipjam.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# solve / simulate / place
# ---------------------------------------------------------------------------


def test_solve_csv_schema(capsys):
    code, out, _ = run(capsys, "solve", "--topology", "ring", "--n", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "node_id,age"
    assert len(lines) == 5
    assert lines[1].split(",")[1] == lines[4].split(",")[1]


def test_solve_json_includes_network(capsys):
    code, out, _ = run(capsys, "solve", "--topology", "ring", "--n", "6",
                       "--cuts", "1-2,4-5", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["average"] == pytest.approx(3.171428571428572)
    assert doc["network"]["n"] == 6


def test_solve_set_flag(capsys):
    code, out, _ = run(capsys, "solve", "--topology", "fc", "--n", "2",
                       "--set", "1,2", "--format", "json")
    assert code == 0
    assert json.loads(out)["age"] == pytest.approx(1.0)


def test_solve_lambda_ratio_rescales(capsys):
    _, plain, _ = run(capsys, "solve", "--topology", "ring", "--n", "4")
    _, scaled, _ = run(capsys, "solve", "--topology", "ring", "--n", "4",
                       "--lambda-ratio", "0.5")
    v0 = float(plain.splitlines()[1].split(",")[1])
    v1 = float(scaled.splitlines()[1].split(",")[1])
    assert v1 == pytest.approx(0.5 * v0)


def test_solve_accepts_config_document(tmp_path, capsys):
    doc = {"n": 2, "lambda_s": 1.0, "source_rates": [0.5, 0.5],
           "links": [{"i": 1, "j": 2, "rate_ij": 0.5, "rate_ji": 0.5}],
           "cuts": []}
    path = tmp_path / "net.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "solve", "--config", str(path),
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["average"] == pytest.approx(1.5)


def test_simulate_csv_schema(capsys):
    code, out, _ = run(capsys, "simulate", "--topology", "fc", "--n", "2",
                       "--horizon", "4000", "--reps", "3", "--seed", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "node_id,mean_age,std_error"
    assert len(lines) == 3
    assert float(lines[1].split(",")[1]) == pytest.approx(1.5, abs=0.15)


def test_place_strategies(capsys):
    code, out, _ = run(capsys, "place", "--topology", "ring", "--n", "9",
                       "--strategy", "equidistant", "--n-jammers", "3")
    assert code == 0
    assert out.splitlines()[0] == "i,j"
    code, out, _ = run(capsys, "place", "--topology", "fc", "--n", "7",
                       "--strategy", "greedy", "--n-jammers", "15",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["n_jammers"] == 15
    assert doc["plan"]["k"] == 4  # keeps C(4,2) = 6 of 21 links
    assert all(len(p) == 2 for p in doc["cuts"])


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

SWEEP_HEADER = ("n,n_jammers,strategy,age_line,age_miniring,age_sim,"
                "sim_stderr,lower_bound,upper_bound,seed")


def test_sweep_ring_csv_and_exit_codes(tmp_path, capsys):
    out_file = tmp_path / "rows.csv"
    code, _, err = run(capsys, "sweep-ring", "--alpha", "0.3",
                       "--n-max", "300",
                       "--engines", "analytic_line,analytic_miniring,bounds",
                       "--out", str(out_file))
    assert code == 1  # lower envelope sits above the mini-ring values here
    assert "bound violation" in err
    lines = out_file.read_text().strip().splitlines()
    assert lines[0] == SWEEP_HEADER
    assert len(lines) > 3
    first = lines[1].split(",")
    assert first[5] == "" and first[6] == ""  # no simulation engine


def test_sweep_ring_skip_bound_check(tmp_path, capsys):
    out_file = tmp_path / "rows.csv"
    code, _, err = run(capsys, "sweep-ring", "--alpha", "0.3",
                       "--n-max", "300",
                       "--engines", "analytic_line,analytic_miniring,bounds",
                       "--skip-bound-check", "--out", str(out_file))
    assert code == 0
    assert "bound violation" in err
    assert out_file.exists()


def test_sweep_ring_clean_alpha_exits_zero(tmp_path, capsys):
    out_file = tmp_path / "rows.csv"
    code, _, _ = run(capsys, "sweep-ring", "--alpha", "0.8",
                     "--n-max", "150", "--strategy", "adjacent",
                     "--engines", "analytic_line,analytic_miniring,bounds",
                     "--out", str(out_file))
    assert code == 0


def test_sweep_ring_plot(tmp_path, capsys):
    out_file = tmp_path / "rows.csv"
    code, _, _ = run(capsys, "sweep-ring", "--alpha", "0.8", "--n-max", "100",
                     "--engines", "analytic_line,analytic_miniring,bounds",
                     "--plot", "--out", str(out_file))
    assert code == 0
    png = tmp_path / "rows.png"
    assert png.exists() and png.stat().st_size > 1000


def test_sweep_fc_json(capsys):
    code, out, _ = run(capsys, "sweep-fc", "--rule", "nlogn",
                       "--n-max", "2000", "--engines", "analytic_line",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["rows"]
    assert doc["trend"]["ratio_min"] >= 1.5
    assert all("age_closed_form" in r for r in doc["rows"])


def test_sweep_fc_csv_maps_into_shared_schema(tmp_path, capsys):
    out_file = tmp_path / "fc.csv"
    code, _, _ = run(capsys, "sweep-fc", "--rule", "nlogn", "--n-max", "500",
                     "--engines", "analytic_line", "--out", str(out_file))
    assert code == 0
    lines = out_file.read_text().strip().splitlines()
    assert lines[0] == SWEEP_HEADER
    first = lines[1].split(",")
    assert first[2] == "greedy"
    assert first[3] != "" and first[4] == ""


def test_sweep_fc_plot(tmp_path, capsys):
    out_file = tmp_path / "fc.csv"
    code, _, _ = run(capsys, "sweep-fc", "--rule", "nlogn", "--n-max", "500",
                     "--engines", "analytic_line", "--plot",
                     "--out", str(out_file))
    assert code == 0
    png = tmp_path / "fc.png"
    assert png.exists() and png.stat().st_size > 1000


# ---------------------------------------------------------------------------
# enumerate / verify
# ---------------------------------------------------------------------------


def test_enumerate_csv(tmp_path, capsys):
    out_file = tmp_path / "enum.csv"
    code, _, _ = run(capsys, "enumerate", "--out", str(out_file))
    assert code == 0
    lines = out_file.read_text().strip().splitlines()
    assert lines[0] == "config_id,links,total_age,average_age"
    assert len(lines) == 8481
    some = [ln for ln in lines if ln.startswith("20,")]
    assert some and "-" in some[0].split(",")[1]


def test_enumerate_plot(tmp_path, capsys):
    out_file = tmp_path / "enum.csv"
    code, _, _ = run(capsys, "enumerate", "--plot", "--out", str(out_file))
    assert code == 0
    png = tmp_path / "enum.png"
    assert png.exists() and png.stat().st_size > 1000


def test_verify_fast_text(capsys):
    code, out, _ = run(capsys, "verify", "--level", "fast")
    assert code == 0
    assert "overall: PASS" in out
    assert "engine_agreement: PASS" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--level", "fast", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True


# ---------------------------------------------------------------------------
# failure modes
# ---------------------------------------------------------------------------


def test_invalid_input_exits_two(capsys):
    code, _, err = run(capsys, "solve", "--topology", "ring", "--n", "0")
    assert code == 2 and "error:" in err
    code, _, err = run(capsys, "solve")
    assert code == 2 and "error:" in err
    code, _, err = run(capsys, "place", "--topology", "ring", "--n", "10",
                       "--strategy", "equidistant", "--n-jammers", "99")
    assert code == 2
    code, _, err = run(capsys, "simulate", "--topology", "ring", "--n", "4",
                       "--horizon", "100", "--warmup", "200")
    assert code == 2


def test_missing_config_file_exits_two(capsys):
    code, _, err = run(capsys, "solve", "--config", "/nonexistent/net.json")
    assert code == 2
