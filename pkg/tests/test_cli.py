import csv
import json
import logging
import threading
import time
from pathlib import Path

import pytest

from commands import simulate
from database import Database
from main import build_parser, main


def _db(tmp_path):
    return Database(str(tmp_path / "results.db"))


def _only_dir(out: Path, prefix: str):
    dirs = sorted(p for p in out.iterdir() if p.name.startswith(prefix))
    assert dirs, f"no {prefix} invocation under {out}"
    return dirs[-1]


def test_all_subcommands_are_discovered():
    parser = build_parser()
    choices = parser._subparsers._group_actions[0].choices
    assert set(choices) == {"simulate", "rho", "bounds", "thresholds", "report"}


def test_simulate_writes_deterministic_outputs(tmp_path):
    out = tmp_path / "out"
    argv = ["simulate", "--n", "200", "--k-max", "2", "--seeds", "3", "--seed", "5",
            "--workers", "1", "--sample-dt", "0.5", "--out", str(out)]
    assert main(argv, database=_db(tmp_path)) == 0
    assert main(argv, database=_db(tmp_path)) == 0
    first, second = sorted(p for p in out.iterdir())
    for name in ("summary_seed5_rep0.json", "summary_seed5_rep2.json", "trace_seed5_rep1.csv"):
        assert (first / name).read_bytes() == (second / name).read_bytes()

    aggregate = json.loads((first / "aggregate.json").read_text())
    assert [level["k"] for level in aggregate["levels"]] == [1, 2]
    manifest = json.loads((first / "manifest.json").read_text())
    assert manifest["status"] == "ok"
    assert set(manifest["seed_wall_times"]) == {"seed5_rep0", "seed5_rep1", "seed5_rep2"}
    assert manifest["config_hash"] in first.name
    trace = (first / "trace_seed5_rep0.csv").read_text().splitlines()
    assert trace[0] == "t,k,c1_frac,edges_frac"
    assert [line.split(",")[1] for line in trace[1:3]] == ["1", "2"]


def test_outputs_do_not_depend_on_worker_count(tmp_path):
    out = tmp_path / "out"
    common = ["simulate", "--n", "200", "--k-max", "2", "--seeds", "3", "--seed", "9", "--sample-dt", "0.5", "--out", str(out)]
    assert main([*common, "--workers", "1"], database=_db(tmp_path)) == 0
    assert main([*common, "--workers", "2"], database=_db(tmp_path)) == 0
    single, pooled = sorted(p for p in out.iterdir())
    names = sorted(p.name for p in single.iterdir() if p.name.startswith(("summary_", "trace_")))
    assert len(names) == 6
    for name in names:
        assert (single / name).read_bytes() == (pooled / name).read_bytes()
    assert (single / "aggregate.json").read_bytes() == (pooled / "aggregate.json").read_bytes()


def test_single_worker_runs_one_stream_at_a_time(tmp_path, monkeypatch):
    lock = threading.Lock()
    active = [0]
    peak = [0]
    real = simulate.simulate_stream

    def counting(*args):
        with lock:
            active[0] += 1
            peak[0] = max(peak[0], active[0])
        try:
            time.sleep(0.02)
            return real(*args)
        finally:
            with lock:
                active[0] -= 1

    monkeypatch.setattr(simulate, "simulate_stream", counting)
    argv = ["simulate", "--n", "100", "--k-max", "1", "--seeds", "6", "--workers", "1", "--out", str(tmp_path / "out")]
    assert main(argv, database=_db(tmp_path)) == 0
    assert peak[0] == 1


def test_single_seed_has_no_stderr(tmp_path):
    out = tmp_path / "out"
    argv = ["simulate", "--n", "150", "--k-max", "1", "--seeds", "1", "--workers", "1", "--out", str(out)]
    assert main(argv, database=_db(tmp_path)) == 0
    with open(_only_dir(out, "simulate") / "aggregate.csv") as f:
        rows = list(csv.DictReader(f))
    assert rows[0]["stderr"] == ""


def test_config_file_is_read_and_flags_win(tmp_path):
    config_file = tmp_path / "run.env"
    config_file.write_text("N=120\nK_MAX=2\nSEEDS=2\nMODE=poisson\n")
    out = tmp_path / "out"
    argv = ["simulate", "--config", str(config_file), "--k-max", "1", "--workers", "1", "--out", str(out)]
    assert main(argv, database=_db(tmp_path)) == 0
    manifest = json.loads((_only_dir(out, "simulate") / "manifest.json").read_text())
    assert manifest["config"]["n"] == 120
    assert manifest["config"]["k_max"] == 1
    assert manifest["config"]["mode"] == "poisson"


def test_invalid_configuration_exits_nonzero(tmp_path):
    assert main(["simulate", "--n", "1", "--out", str(tmp_path)], database=_db(tmp_path)) == 2


def test_report_names_the_missing_producer(tmp_path, caplog):
    with caplog.at_level(logging.ERROR):
        code = main(["report", "--k-max", "2", "--out", str(tmp_path / "out")], database=_db(tmp_path))
    assert code == 1
    assert "simulate" in caplog.text


def test_report_assembles_tables_from_earlier_runs(tmp_path):
    out = str(tmp_path / "out")
    common = ["--k-max", "2", "--out", out]
    assert main(["simulate", "--n", "200", "--seeds", "2", "--workers", "1", *common], database=_db(tmp_path)) == 0
    assert main(["rho", "--dt", "0.02", *common], database=_db(tmp_path)) == 0
    assert main(["bounds", "--dt", "0.001", "--integrator", "rk4", *common], database=_db(tmp_path)) == 0
    assert main(["thresholds", "--dt", "0.02", "--theta-steps", "5000", *common], database=_db(tmp_path)) == 0
    assert main(["report", "--dt", "0.02", *common], database=_db(tmp_path)) == 0

    rho = _only_dir(Path(out), "rho")
    with open(rho / "rho_k2.csv") as f:
        assert next(csv.reader(f)) == ["t", "rho"]
    summary = json.loads((rho / "rho_summary.json").read_text())
    assert [level["curve_file"] for level in summary["levels"]] == ["rho_k1.csv", "rho_k2.csv"]
    kinds = [a["kind"] for a in json.loads((rho / "manifest.json").read_text())["artifacts"]]
    assert kinds.count("rho_curve") == 2

    report = _only_dir(Path(out), "report")
    for name in ("gamma_table.csv", "gamma_minus_2km1.csv", "gamma_hat_by_seed.csv", "Gamma_bounds.csv",
                 "thresholds.csv", "rho_alignment.csv", "conjecture_checks.csv", "manifest.json"):
        assert (report / name).exists(), name
    with open(report / "gamma_table.csv") as f:
        rows = list(csv.DictReader(f))
    assert [row["k"] for row in rows] == ["1", "2"]
    assert float(rows[0]["gamma"]) == pytest.approx(1.202, abs=0.02)
    with open(report / "Gamma_bounds.csv") as f:
        bounds = list(csv.DictReader(f))
    assert float(bounds[1]["Gamma_bar"]) == pytest.approx(4.5542, abs=2e-3)
    with open(report / "gamma_hat_by_seed.csv") as f:
        assert len(list(csv.DictReader(f))) == 4

    inputs = json.loads((report / "manifest.json").read_text())["inputs"]
    for kind in ("rho_summary", "bounds_summary", "thresholds"):
        assert "invocation_id" in inputs[kind], kind
    assert inputs["simulate"]["seeds"] == 2
    assert inputs["bounds_summary"]["integrator"] == "rk4"
    assert inputs["bounds_summary"]["dt"] == pytest.approx(0.001)


def test_report_recomputes_inputs_that_do_not_cover_it(tmp_path):
    out = str(tmp_path / "out")
    assert main(["simulate", "--n", "200", "--seeds", "2", "--k-max", "2", "--workers", "1", "--out", out],
                database=_db(tmp_path)) == 0
    assert main(["rho", "--k-max", "1", "--dt", "0.02", "--out", out], database=_db(tmp_path)) == 0
    assert main(["bounds", "--k-max", "2", "--dt", "0.001", "--out", out], database=_db(tmp_path)) == 0
    assert main(["report", "--k-max", "2", "--dt", "0.02", "--out", out], database=_db(tmp_path)) == 0

    report = _only_dir(Path(out), "report")
    with open(report / "gamma_table.csv") as f:
        rows = list(csv.DictReader(f))
    assert [row["k"] for row in rows] == ["1", "2"]
    assert float(rows[1]["gamma"]) == pytest.approx(3.095, abs=0.02)
    inputs = json.loads((report / "manifest.json").read_text())["inputs"]
    assert inputs["rho_summary"] == {"computed": True}
    assert "invocation_id" in inputs["bounds_summary"]


def test_report_needs_simulations_covering_every_level(tmp_path, caplog):
    out = str(tmp_path / "out")
    assert main(["simulate", "--n", "100", "--seeds", "1", "--k-max", "1", "--workers", "1", "--out", out],
                database=_db(tmp_path)) == 0
    with caplog.at_level(logging.ERROR):
        assert main(["report", "--k-max", "3", "--out", out], database=_db(tmp_path)) == 1
    assert "simulate --k-max 3" in caplog.text
