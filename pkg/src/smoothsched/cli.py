"""Command-line entry point.

Subcommands: gen (sample an instance from a smoothed spec), solve (run a
heuristic on an instance file), verify (optimality predicates plus the
near-list structure report), construct (emit one construction sample),
estimate (smoothed-ratio estimate as JSON), sweep (grid -> CSV, optionally
rendering figures), plot (render figures from an existing CSV).

File formats: instances and schedules are JSON with 1-based machine indices;
sweep reports are CSV with a fixed column set. CLI flags that take machine
or job indices are 1-based to match the files.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algorithms import (
    JUMP,
    NEIGHBORHOODS,
    PIVOT_RULES,
    find_near_list_order,
    is_jump_optimal,
    is_lex_jump_optimal,
    is_near_list,
    list_schedule,
    local_search,
    lpt_schedule,
)
from .classification import validate_nl_structure
from .constructions import CONSTRUCTION_NAMES, build_by_name
from .harness import (
    construction_point,
    estimate_smoothed_ratio,
    smoothed_point,
    standard_smoothed_spec,
    sweep,
)
from .model import (
    DEFAULT_EPS,
    instance_from_dict,
    instance_to_dict,
    makespan,
    schedule_from_dict,
    schedule_to_dict,
)
from .oracle import DEFAULT_BUDGET, BudgetExceededError, optimal_makespan_exact
from .smoothing import sample_instance, spec_from_dict


def _write_json(payload: dict, path: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if path is None or path == "-":
        print(text)
    else:
        with open(path, "w") as handle:
            handle.write(text + "\n")


def _read_json(path: str) -> dict:
    with open(path) as handle:
        return json.load(handle)


def _load_instance(path: str):
    return instance_from_dict(_read_json(path))


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="base RNG seed")
    common.add_argument(
        "--eps", type=float, default=DEFAULT_EPS, help="improvement tolerance"
    )
    common.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_BUDGET,
        help="assignment-space cap for exact oracles",
    )
    common.add_argument(
        "--lenient",
        action="store_true",
        help="build constructions outside their quality premises, with warnings",
    )
    return common


def _parse_params(pairs: list[str]) -> dict[str, float]:
    params = {}
    for pair in pairs:
        if "=" not in pair:
            raise SystemExit(f"--param expects name=value, got {pair!r}")
        key, _, value = pair.partition("=")
        params[key.strip()] = float(value)
    return params


def cmd_gen(args) -> int:
    if args.spec:
        spec = spec_from_dict(_read_json(args.spec))
    else:
        if args.n is None or args.m is None or args.phi is None:
            raise SystemExit("gen needs either --spec or all of --n/--m/--phi")
        spec = standard_smoothed_spec(args.n, args.m, args.phi)
    instance = sample_instance(spec, args.seed)
    _write_json(instance_to_dict(instance), args.out)
    return 0


def cmd_solve(args) -> int:
    instance = _load_instance(args.instance)
    start = lpt_schedule(instance) if args.start == "lpt" else list_schedule(instance)
    if args.algorithm == "list":
        schedule, steps = list_schedule(instance), 0
    elif args.algorithm == "lpt":
        schedule, steps = lpt_schedule(instance), 0
    else:
        result = local_search(
            instance,
            start,
            args.algorithm,
            pivot=args.pivot,
            eps=args.eps,
            seed=args.seed,
        )
        schedule, steps = result.schedule, result.steps
    _write_json(schedule_to_dict(schedule), args.out)
    print(f"makespan {makespan(instance, schedule):.12g} after {steps} local steps")
    return 0


def cmd_verify(args) -> int:
    instance = _load_instance(args.instance)
    schedule = schedule_from_dict(_read_json(args.schedule))
    report: dict = {
        "makespan": makespan(instance, schedule),
        "is_jump_optimal": is_jump_optimal(instance, schedule, eps=args.eps),
        "is_lex_jump_optimal": is_lex_jump_optimal(instance, schedule, eps=args.eps),
    }
    if args.order:
        order = tuple(int(x) - 1 for x in args.order.split(","))
    elif instance.n <= 8:
        order = find_near_list_order(instance, schedule, eps=args.eps)
    else:
        order = tuple(range(instance.n))
    report["near_list_order"] = None if order is None else [j + 1 for j in order]
    report["is_near_list"] = order is not None and is_near_list(
        instance, schedule, order, eps=args.eps
    )
    opt = args.opt
    mode = "upper" if args.upper else "exact"
    if opt is None:
        try:
            opt, _ = optimal_makespan_exact(instance, budget=args.budget)
            mode = "exact"
        except BudgetExceededError:
            report["structure_report"] = None
            report["note"] = (
                "optimum enumeration exceeds --budget; pass --opt (and --upper "
                "if it is only an upper bound) to get the structure report"
            )
            _write_json(report, args.out)
            return 0
    if report["is_near_list"]:
        structure = validate_nl_structure(
            instance, schedule, order, opt, mode=mode, eps=args.eps
        )
        report["structure_report"] = structure.to_dict()
    else:
        report["structure_report"] = None
    _write_json(report, args.out)
    return 0


def cmd_construct(args) -> int:
    built = build_by_name(
        args.name, _parse_params(args.param), lenient=args.lenient
    )
    sample = built.sample(args.seed)
    prefix = args.out_prefix
    _write_json(instance_to_dict(sample.instance), f"{prefix}-instance.json")
    _write_json(schedule_to_dict(sample.bad), f"{prefix}-bad.json")
    _write_json(schedule_to_dict(sample.good), f"{prefix}-good.json")
    meta = {
        "name": built.name,
        "params": dict(built.params),
        "machine_classes": {k: list(v) for k, v in built.machine_classes},
        "job_classes": {k: list(v) for k, v in built.job_classes},
        "events": sample.events,
        "event_ok": sample.event_ok,
        "predicted_ratio_lb": built.predicted_ratio_lb,
        "cstar_cap": built.cstar_cap,
        "ratio_cap": built.ratio_cap,
        "bad_makespan": sample.bad_makespan,
        "good_makespan": sample.good_makespan,
        "ratio": sample.ratio,
        "warnings": list(built.warnings),
        "seed": args.seed,
    }
    _write_json(meta, f"{prefix}-meta.json")
    for warning in built.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    print(
        f"{built.name}: bad {sample.bad_makespan:.6g}, good {sample.good_makespan:.6g}, "
        f"event {'ok' if sample.event_ok else 'MISSED'}"
    )
    return 0


def cmd_estimate(args) -> int:
    spec = standard_smoothed_spec(args.n, args.m, args.phi)
    estimate = estimate_smoothed_ratio(
        spec,
        args.neighborhood,
        method=args.method,
        trials=args.trials,
        seed=args.seed,
        delta=args.delta,
        starts=args.starts,
        pivot=args.pivot,
        budget=args.budget,
        eps=args.eps,
    )
    _write_json(estimate.to_dict(), args.out)
    return 0


def _grid_from_args(args) -> list[dict]:
    if args.grid:
        points = _read_json(args.grid)
        if not isinstance(points, list):
            raise SystemExit("--grid file must hold a JSON list of points")
        return points
    phis = [float(x) for x in args.phi_grid.split(",")] if args.phi_grid else []
    points = []
    if args.construction:
        for phi in phis or [None]:
            params = _parse_params(args.param)
            if phi is not None:
                params["phi"] = phi
            points.append(
                construction_point(args.construction, trials=args.trials, **params)
            )
    else:
        for phi in phis:
            points.append(
                smoothed_point(
                    phi,
                    args.n,
                    args.m,
                    args.neighborhood,
                    method=args.method,
                    trials=args.trials,
                )
            )
    return points


def cmd_sweep(args) -> int:
    points = _grid_from_args(args)
    rows = sweep(
        points,
        args.out,
        seed=args.seed,
        delta=args.delta,
        budget=args.budget,
        eps=args.eps,
        lenient=args.lenient,
    )
    print(f"wrote {len(rows)} rows to {args.out}")
    if args.plot_dir:
        from .plotting import render_sweep

        for path in render_sweep(rows, args.plot_dir):
            print(f"wrote {path}")
    return 0


def cmd_plot(args) -> int:
    from .plotting import read_rows, render_sweep

    for path in render_sweep(read_rows(args.csv), args.out_dir):
        print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="smoothsched",
        description="Makespan scheduling heuristics under smoothed inputs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="sample an instance")
    p.add_argument("--n", type=int, help="job count (standard spec)")
    p.add_argument("--m", type=int, help="machine count (standard spec)")
    p.add_argument("--phi", type=float, help="smoothness parameter")
    p.add_argument("--spec", help="smoothed-spec JSON file (overrides --n/--m/--phi)")
    p.add_argument("--out", default="-", help="instance JSON path (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", parents=[common], help="run a heuristic")
    p.add_argument("--instance", required=True, help="instance JSON file")
    p.add_argument(
        "--algorithm",
        required=True,
        choices=("list", "lpt") + NEIGHBORHOODS,
        help="list/lpt schedule or local search in a neighborhood",
    )
    p.add_argument("--pivot", default="first", choices=PIVOT_RULES)
    p.add_argument(
        "--start",
        default="list",
        choices=("list", "lpt"),
        help="starting schedule for local search",
    )
    p.add_argument("--out", default="-", help="schedule JSON path (default stdout)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser(
        "verify", parents=[common], help="optimality predicates and structure report"
    )
    p.add_argument("--instance", required=True)
    p.add_argument("--schedule", required=True)
    p.add_argument(
        "--order",
        help="comma-separated 1-based job order for the near-list check "
        "(default: search n <= 8, else identity)",
    )
    p.add_argument("--opt", type=float, help="optimal makespan, if already known")
    p.add_argument(
        "--upper",
        action="store_true",
        help="mark --opt as an upper bound (advisory structure report)",
    )
    p.add_argument("--out", default="-", help="report JSON path (default stdout)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser(
        "construct", parents=[common], help="sample a lower-bound construction"
    )
    p.add_argument("--name", required=True, choices=CONSTRUCTION_NAMES)
    p.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="family parameter (repeatable), e.g. --param phi=10",
    )
    p.add_argument("--out-prefix", default="construction")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser(
        "estimate", parents=[common], help="smoothed worst-local-optimum ratio"
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--phi", type=float, required=True)
    p.add_argument("--neighborhood", default=JUMP, choices=NEIGHBORHOODS)
    p.add_argument("--method", default="exact", choices=("exact", "multistart"))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--starts", type=int, default=8, help="multistart run count")
    p.add_argument("--pivot", default="first", choices=PIVOT_RULES)
    p.add_argument("--delta", type=float, default=0.05, help="CI failure probability")
    p.add_argument("--out", default="-", help="estimate JSON path (default stdout)")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("sweep", parents=[common], help="grid evaluation to CSV")
    p.add_argument("--grid", help="JSON file with a list of grid points")
    p.add_argument("--phi-grid", help="comma-separated phi values")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--m", type=int, default=6)
    p.add_argument("--neighborhood", default=JUMP, choices=NEIGHBORHOODS)
    p.add_argument("--method", default="exact", choices=("exact", "multistart"))
    p.add_argument("--trials", type=int, default=20)
    p.add_argument(
        "--construction",
        choices=CONSTRUCTION_NAMES,
        help="sweep a construction family instead of smoothed estimates",
    )
    p.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--plot-dir", help="also render figures into this directory")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("plot", parents=[common], help="render figures from a sweep CSV")
    p.add_argument("--csv", required=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_plot)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
