from __future__ import annotations

import json

import pytest

from smoothsched.cli import main
from smoothsched.model import instance_from_dict, schedule_from_dict


def run(args: list[str]) -> int:
    return main(args)


def test_gen_solve_verify_round_trip(tmp_path, capsys) -> None:
    inst_path = tmp_path / "inst.json"
    sched_path = tmp_path / "sched.json"
    assert run(["gen", "--n", "6", "--m", "3", "--phi", "4", "--seed", "9",
                "--out", str(inst_path)]) == 0
    data = json.loads(inst_path.read_text())
    instance = instance_from_dict(data)
    assert instance.n == 6 and instance.m == 3
    assert instance.speeds == (4.0, 2.0, 1.0)

    assert run(["solve", "--instance", str(inst_path), "--algorithm", "lex-jump",
                "--out", str(sched_path)]) == 0
    out = capsys.readouterr().out
    assert "makespan" in out and "local steps" in out
    schedule = schedule_from_dict(json.loads(sched_path.read_text()))
    assert len(schedule.assignment) == 6

    report_path = tmp_path / "report.json"
    assert run(["verify", "--instance", str(inst_path), "--schedule", str(sched_path),
                "--out", str(report_path)]) == 0
    report = json.loads(report_path.read_text())
    assert report["is_jump_optimal"] is True
    assert report["is_lex_jump_optimal"] is True
    assert report["is_near_list"] is True
    assert report["structure_report"]["ok"] is True
    assert report["structure_report"]["mode"] == "exact"


def test_gen_stdout_and_determinism(tmp_path, capsys) -> None:
    assert run(["gen", "--n", "3", "--m", "2", "--phi", "2", "--seed", "4"]) == 0
    first = capsys.readouterr().out
    assert run(["gen", "--n", "3", "--m", "2", "--phi", "2", "--seed", "4"]) == 0
    assert capsys.readouterr().out == first
    json.loads(first)  # stdout payload is valid JSON


def test_gen_with_spec_file(tmp_path) -> None:
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps({
        "speeds": [2.0, 1.0],
        "jobs": [
            {"density": {"pieces": [{"a": 0.5, "b": 1.0, "h": 2.0}]}},
            {"density": {"pieces": [{"a": 0.0, "b": 0.5, "h": 2.0}]}, "allowed": [2]},
        ],
    }))
    out_path = tmp_path / "inst.json"
    assert run(["gen", "--spec", str(spec_path), "--out", str(out_path)]) == 0
    instance = instance_from_dict(json.loads(out_path.read_text()))
    assert instance.allowed is not None
    assert instance.allowed[1] == frozenset({1})
    assert 0.5 < instance.jobs[0] <= 1.0


def test_gen_requires_shape_or_spec() -> None:
    with pytest.raises(SystemExit):
        run(["gen", "--n", "3"])


def test_solve_list_and_lpt(tmp_path, capsys) -> None:
    inst_path = tmp_path / "inst.json"
    inst_path.write_text(json.dumps({
        "speeds": [1.0, 1.0],
        "jobs": [{"p": 0.9}, {"p": 0.8}, {"p": 0.7}],
    }))
    out_path = tmp_path / "sched.json"
    assert run(["solve", "--instance", str(inst_path), "--algorithm", "lpt",
                "--out", str(out_path)]) == 0
    schedule = schedule_from_dict(json.loads(out_path.read_text()))
    assert schedule.assignment == (0, 1, 1)
    assert "after 0 local steps" in capsys.readouterr().out


def test_verify_with_explicit_order_and_opt(tmp_path) -> None:
    inst_path = tmp_path / "inst.json"
    inst_path.write_text(json.dumps({
        "speeds": [2.0, 1.0],
        "jobs": [{"p": 0.9}, {"p": 0.8}, {"p": 0.7}],
    }))
    sched_path = tmp_path / "sched.json"
    sched_path.write_text(json.dumps({"assignment": [1, 2, 1]}))
    report_path = tmp_path / "report.json"
    assert run(["verify", "--instance", str(inst_path), "--schedule", str(sched_path),
                "--order", "1,2,3", "--opt", "0.8", "--out", str(report_path)]) == 0
    report = json.loads(report_path.read_text())
    assert report["makespan"] == pytest.approx(0.8)
    assert report["near_list_order"] == [1, 2, 3]
    assert report["structure_report"]["ok"] is True


def test_verify_upper_mode_is_advisory(tmp_path) -> None:
    inst_path = tmp_path / "inst.json"
    inst_path.write_text(json.dumps({
        "speeds": [1.0, 1.0],
        "jobs": [{"p": 1.0}, {"p": 1.0}],
    }))
    sched_path = tmp_path / "sched.json"
    sched_path.write_text(json.dumps({"assignment": [1, 2]}))
    report_path = tmp_path / "report.json"
    assert run(["verify", "--instance", str(inst_path), "--schedule", str(sched_path),
                "--opt", "1.0", "--upper", "--out", str(report_path)]) == 0
    report = json.loads(report_path.read_text())
    assert report["structure_report"]["advisory"] is True


def test_verify_budget_note(tmp_path) -> None:
    inst_path = tmp_path / "inst.json"
    inst_path.write_text(json.dumps({
        "speeds": [1.0, 1.0],
        "jobs": [{"p": 0.5} for _ in range(12)],
    }))
    sched_path = tmp_path / "sched.json"
    sched_path.write_text(json.dumps({"assignment": [1, 2] * 6}))
    report_path = tmp_path / "report.json"
    assert run(["verify", "--instance", str(inst_path), "--schedule", str(sched_path),
                "--budget", "100", "--out", str(report_path)]) == 0
    report = json.loads(report_path.read_text())
    assert report["structure_report"] is None
    assert "budget" in report["note"]


def test_construct_writes_artifacts(tmp_path, capsys) -> None:
    prefix = str(tmp_path / "jr")
    assert run(["construct", "--name", "jump-related", "--param", "phi=4",
                "--seed", "7", "--out-prefix", prefix]) == 0
    meta = json.loads((tmp_path / "jr-meta.json").read_text())
    assert meta["event_ok"] is True
    assert meta["params"]["phi"] == 4.0
    instance = instance_from_dict(json.loads((tmp_path / "jr-instance.json").read_text()))
    bad = schedule_from_dict(json.loads((tmp_path / "jr-bad.json").read_text()))
    good = schedule_from_dict(json.loads((tmp_path / "jr-good.json").read_text()))
    assert instance.n == 65
    assert len(bad.assignment) == len(good.assignment) == 65
    assert "event ok" in capsys.readouterr().out


def test_construct_lenient_warns_on_stderr(tmp_path, capsys) -> None:
    prefix = str(tmp_path / "rl")
    assert run(["construct", "--name", "restricted-lex", "--param", "k=2",
                "--lenient", "--seed", "23", "--out-prefix", prefix]) == 0
    err = capsys.readouterr().err
    assert "warning" in err


def test_estimate_json_output(tmp_path) -> None:
    out_path = tmp_path / "est.json"
    assert run(["estimate", "--n", "4", "--m", "2", "--phi", "2", "--trials", "5",
                "--seed", "1", "--out", str(out_path)]) == 0
    est = json.loads(out_path.read_text())
    assert est["count"] == 5
    assert est["ci_low"] <= est["mean"] <= est["ci_high"]
    assert est["neighborhood"] == "jump"


def test_sweep_and_plot(tmp_path) -> None:
    csv_path = tmp_path / "sweep.csv"
    plot_dir = tmp_path / "figs"
    assert run(["sweep", "--phi-grid", "1,2", "--n", "3", "--m", "2",
                "--trials", "3", "--seed", "2", "--out", str(csv_path),
                "--plot-dir", str(plot_dir)]) == 0
    lines = csv_path.read_text().splitlines()
    assert len(lines) == 3  # header + one row per phi
    pngs = list(plot_dir.glob("*.png"))
    assert pngs
    # Re-render from the CSV through the standalone plot command.
    out_dir = tmp_path / "figs2"
    assert run(["plot", "--csv", str(csv_path), "--out-dir", str(out_dir)]) == 0
    assert sorted(p.name for p in out_dir.glob("*.png")) == sorted(p.name for p in pngs)


def test_sweep_construction_grid(tmp_path) -> None:
    csv_path = tmp_path / "cons.csv"
    assert run(["sweep", "--construction", "jump-related", "--param", "phi=4",
                "--trials", "3", "--seed", "5", "--out", str(csv_path)]) == 0
    lines = csv_path.read_text().splitlines()
    assert len(lines) == 2
    assert lines[1].startswith("construction,jump-related")


def test_sweep_grid_file(tmp_path) -> None:
    grid_path = tmp_path / "grid.json"
    grid_path.write_text(json.dumps([
        {"kind": "smoothed", "phi": 2.0, "n": 3, "m": 2,
         "neighborhood": "jump", "method": "exact", "trials": 2},
    ]))
    csv_path = tmp_path / "grid.csv"
    assert run(["sweep", "--grid", str(grid_path), "--out", str(csv_path)]) == 0
    assert len(csv_path.read_text().splitlines()) == 2


def test_main_reports_usage_error() -> None:
    with pytest.raises(SystemExit):
        run(["solve"])  # --instance is required
