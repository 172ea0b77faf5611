from __future__ import annotations

import numpy as np
import pytest

from smoothsched.algorithms import list_schedule
from smoothsched.classification import (
    PreconditionError,
    classify,
    prefix_set,
    validate_nl_structure,
)
from smoothsched.constructions import build_lexlist_lb
from smoothsched.model import Instance, ModelError, Schedule
from smoothsched.oracle import optimal_makespan_exact


def test_classify_three_level_example() -> None:
    inst = Instance(speeds=(1.0, 1.0, 1.0), jobs=(3.2, 1.5, 0.4))
    sched = Schedule(assignment=(0, 1, 2))
    cls = classify(inst, sched, opt_makespan=1.0)
    assert cls.c == 2
    assert cls.thresholds == (3, 2, 1)
    assert cls.levels == (2, 1, 0)
    assert cls.classes == ((2,), (1,), (0,))
    assert cls.prefix(2) == range(1)
    assert cls.prefix(1) == range(2)
    assert cls.prefix(0) == range(3)
    assert cls.prefix(3) == range(0)
    assert cls.mode == "exact"


def test_classify_single_class_when_tight() -> None:
    inst = Instance(speeds=(1.0, 1.0), jobs=(1.0, 1.0))
    cls = classify(inst, Schedule(assignment=(0, 1)), opt_makespan=1.0)
    assert cls.c == 0
    assert cls.classes == ((0, 1),)
    assert cls.levels == (0, 0)


def test_classify_all_machines_in_top_class() -> None:
    inst = Instance(speeds=(1.0, 1.0, 1.0), jobs=(2.5, 2.2, 2.1))
    cls = classify(inst, Schedule(assignment=(0, 1, 2)), opt_makespan=1.0)
    assert cls.c == 1
    assert cls.thresholds == (3, 3)
    assert cls.classes == ((), (0, 1, 2))


def test_classify_eps_rounds_near_thresholds_up() -> None:
    inst = Instance(speeds=(1.0,), jobs=(2.0 - 1e-10,))
    cls = classify(inst, Schedule(assignment=(0,)), opt_makespan=1.0)
    assert cls.c == 1  # load within eps of 2 counts as reaching it


def test_classify_input_errors() -> None:
    inst = Instance(speeds=(1.0,), jobs=(0.5,))
    sched = Schedule(assignment=(0,))
    with pytest.raises(ModelError):
        classify(inst, sched, opt_makespan=0.0)
    with pytest.raises(ModelError):
        classify(inst, sched, opt_makespan=1.0)  # C_max 0.5 below claimed optimum
    with pytest.raises(ModelError):
        classify(inst, sched, opt_makespan=0.5, mode="advisory")


def test_prefix_set_cumulative_scan() -> None:
    inst = Instance(speeds=(1.0,), jobs=(0.5, 0.4, 0.3))
    sched = Schedule(assignment=(0, 0, 0))
    assert prefix_set(inst, sched, (0, 1, 2), 0, 1, 1.0) == (0, 1, 2)


def test_prefix_set_single_heavy_job() -> None:
    inst = Instance(speeds=(1.0,), jobs=(1.2, 0.1))
    sched = Schedule(assignment=(0, 0))
    assert prefix_set(inst, sched, (0, 1), 0, 1, 1.0) == (0,)


def test_prefix_set_minimality() -> None:
    rng = np.random.default_rng(3)
    for _ in range(50):
        n = int(rng.integers(2, 9))
        inst = Instance(speeds=(1.0,), jobs=tuple(float(x) for x in rng.uniform(0.1, 1, n)))
        sched = Schedule(assignment=(0,) * n)
        order = tuple(int(x) for x in rng.permutation(n))
        opt = 0.4
        t = int(sum(inst.jobs) / opt)  # guaranteed reachable
        if t < 1:
            continue
        taken = prefix_set(inst, sched, order, 0, t, opt)
        load = sum(inst.jobs[j] for j in taken)
        assert load >= t * opt - 1e-9
        assert sum(inst.jobs[j] for j in taken[:-1]) < t * opt - 1e-9


def test_prefix_set_insufficient_load_raises_precondition() -> None:
    inst = Instance(speeds=(1.0,), jobs=(0.5, 0.4))
    sched = Schedule(assignment=(0, 0))
    with pytest.raises(PreconditionError):
        prefix_set(inst, sched, (0, 1), 0, 2, 1.0)
    with pytest.raises(ModelError):
        prefix_set(inst, sched, (0, 1), 0, 0, 1.0)


def test_validate_rejects_non_near_list_schedules() -> None:
    inst = Instance(speeds=(1.0, 1.0), jobs=(1.0, 0.4))
    sched = Schedule(assignment=(0, 0))
    with pytest.raises(PreconditionError):
        validate_nl_structure(inst, sched, (0, 1), opt_makespan=0.7)


def test_validate_list_schedules_on_random_instances() -> None:
    rng = np.random.default_rng(11)
    for _ in range(30):
        m = int(rng.integers(1, 5))
        n = int(rng.integers(1, 9))
        speeds = tuple(sorted((float(x) for x in rng.uniform(1, 4, m)), reverse=True))
        inst = Instance(speeds=speeds, jobs=tuple(float(x) for x in rng.uniform(0.05, 1, n)))
        order = [int(x) for x in rng.permutation(n)]
        sched = list_schedule(inst, order)
        opt, opt_sched = optimal_makespan_exact(inst)
        report = validate_nl_structure(
            inst,
            sched,
            tuple(reversed(order)),
            opt_makespan=opt,
            optimal_schedule=opt_sched,
        )
        assert report.ok, report.to_dict()
        assert report.mode == "exact"
        assert not report.advisory
        names = [check.name for check in report.checks]
        assert names == [
            "fastest-machine-top-class",
            "gap-classes-nonempty",
            "speed-doubling",
            "small-jobs",
            "optimal-placement",
        ]


def test_validate_without_optimal_schedule_skips_extended_check() -> None:
    inst = Instance(speeds=(1.0, 1.0), jobs=(1.0, 1.0))
    sched = list_schedule(inst)
    report = validate_nl_structure(inst, sched, (1, 0), opt_makespan=1.0)
    names = [check.name for check in report.checks]
    assert "optimal-placement" not in names
    assert report.ok


def test_validate_vacuous_checks_at_c_zero() -> None:
    inst = Instance(speeds=(1.0, 1.0), jobs=(1.0, 1.0))
    report = validate_nl_structure(
        inst, list_schedule(inst), (1, 0), opt_makespan=1.0
    )
    by_name = {check.name: check for check in report.checks}
    assert by_name["gap-classes-nonempty"].passed is None
    assert by_name["speed-doubling"].passed is None
    assert by_name["small-jobs"].passed is True


def test_validate_upper_bound_mode_is_advisory() -> None:
    construction = build_lexlist_lb(256.0)
    sample = construction.sample(3)
    report = validate_nl_structure(
        sample.instance,
        sample.bad,
        tuple(reversed(construction.list_order)),
        opt_makespan=sample.good_makespan,  # an upper bound on C*, not C* itself
        mode="upper",
    )
    assert report.advisory
    assert report.mode == "upper"
    assert report.classification.opt_makespan == sample.good_makespan


def test_report_serializes_to_plain_data() -> None:
    inst = Instance(speeds=(1.0, 1.0), jobs=(1.0, 1.0))
    report = validate_nl_structure(inst, list_schedule(inst), (1, 0), opt_makespan=1.0)
    data = report.to_dict()
    assert data["ok"] is True
    assert data["mode"] == "exact"
    assert data["classification"]["c"] == 0
    assert all(set(c) >= {"name", "passed", "detail", "witnesses"} for c in data["checks"])
