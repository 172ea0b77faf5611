"""Machine-level classification diagnostics for near list schedules.

A schedule whose makespan is (c+1) optima tall forces structure onto the
speed-sorted machine list. Level thresholds slice it into nested prefixes:
the k-th prefix holds the machines whose load (and every faster machine's
load) reaches k times the optimal makespan. The difference between
consecutive prefixes partitions the machines into classes, level c at the
top, level 0 at the bottom.

On a genuine near list schedule evaluated against the exact optimum, the
classes obey rigid rules that validate_nl_structure re-checks numerically:
the fastest machine sits in the top class, no gap of two adjacent levels
below the top is entirely empty, speeds double every six levels apart, and
at least half the jobs are small (at most 2^(2 - c/6)). Feeding an upper
bound instead of the exact optimum weakens the level count, so reports
carry an exact/upper mode flag and upper-mode failures are advisory.

Indices in reports are 0-based (machine 0 is the fastest), matching the
in-memory convention rather than the 1-based JSON instance files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algorithms import is_near_list
from .model import (
    DEFAULT_EPS,
    Instance,
    ModelError,
    Schedule,
    machine_loads,
)

MODES = ("exact", "upper")


class PreconditionError(ValueError):
    """A lemma premise failed; distinct from a structural check failing."""


@dataclass(frozen=True)
class Classification:
    """Level thresholds and machine classes for one schedule.

    thresholds[k] is the length of the level-k machine prefix, k = 0..c
    (thresholds[0] = m). levels[i] is the class of machine i; classes[k]
    lists the machines of class k in speed order."""

    c: int
    thresholds: tuple[int, ...]
    levels: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    opt_makespan: float
    mode: str

    @property
    def m(self) -> int:
        return len(self.levels)

    def prefix(self, k: int) -> range:
        """Machines of the level-k prefix (all machines for k <= 0)."""
        if k <= 0:
            return range(self.m)
        if k > self.c:
            return range(0)
        return range(self.thresholds[k])

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "thresholds": list(self.thresholds),
            "levels": list(self.levels),
            "opt_makespan": self.opt_makespan,
            "mode": self.mode,
        }


def classify(
    instance: Instance,
    schedule: Schedule,
    opt_makespan: float,
    mode: str = "exact",
    eps: float = DEFAULT_EPS,
) -> Classification:
    """Slice the speed-sorted machines into load-level classes.

    opt_makespan is the exact optimum in "exact" mode or any proven upper
    bound on it in "upper" mode (which can only shrink c and weaken the
    class guarantees). Loads within eps of a level threshold count as
    reaching it."""
    if mode not in MODES:
        raise ModelError(f"mode must be one of {MODES}, got {mode!r}")
    if opt_makespan <= 0:
        raise ModelError(f"opt_makespan must be positive, got {opt_makespan}")
    loads = machine_loads(instance, schedule)
    cmax = max(loads)
    if cmax < opt_makespan - eps:
        raise ModelError(
            f"makespan {cmax} is below the claimed optimum {opt_makespan}; "
            "inconsistent inputs"
        )
    m = instance.m
    c = int(math.floor((cmax + eps) / opt_makespan)) - 1
    thresholds = [m]
    for k in range(1, c + 1):
        bar = k * opt_makespan - eps
        i_k = 0
        limit = thresholds[-1]  # nested by construction
        while i_k < limit and loads[i_k] >= bar:
            i_k += 1
        thresholds.append(i_k)
    levels = [0] * m
    for k in range(1, c + 1):
        for i in range(thresholds[k]):
            levels[i] = k
    classes = tuple(
        tuple(i for i in range(m) if levels[i] == k) for k in range(c + 1)
    )
    # Load-level guarantees, by construction but asserted anyway.
    for k in range(1, c + 1):
        bar = k * opt_makespan - eps
        assert all(loads[i] >= bar for i in range(thresholds[k]))
        assert thresholds[k] == m or loads[thresholds[k]] < bar
    assert cmax < (c + 2) * opt_makespan
    return Classification(
        c=c,
        thresholds=tuple(thresholds),
        levels=tuple(levels),
        classes=classes,
        opt_makespan=float(opt_makespan),
        mode=mode,
    )


def prefix_set(
    instance: Instance,
    schedule: Schedule,
    job_order: tuple[int, ...],
    i: int,
    t: int,
    opt_makespan: float,
    eps: float = DEFAULT_EPS,
) -> tuple[int, ...]:
    """The minimal order-prefix of machine i's jobs whose load contribution
    reaches t optima. Raises PreconditionError when machine i's whole load
    stays below t * opt_makespan."""
    if int(t) != t or t < 1:
        raise ModelError(f"t must be a positive integer, got {t}")
    if opt_makespan <= 0:
        raise ModelError(f"opt_makespan must be positive, got {opt_makespan}")
    if sorted(job_order) != list(range(instance.n)):
        raise ModelError("job_order must be a permutation of all jobs")
    speed = instance.speeds[i]
    target = t * opt_makespan - eps
    taken: list[int] = []
    acc = 0.0
    for j in job_order:
        if schedule.assignment[j] != i:
            continue
        taken.append(j)
        acc += instance.jobs[j] / speed
        if acc >= target:
            return tuple(taken)
    raise PreconditionError(
        f"machine {i} load {acc:.6g} never reaches {t} * {opt_makespan:.6g}"
    )


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool | None  # None when the check is vacuous for this schedule
    detail: str = ""
    witnesses: tuple = ()

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "witnesses": [list(w) if isinstance(w, tuple) else w for w in self.witnesses],
        }


@dataclass(frozen=True)
class StructureReport:
    classification: Classification
    checks: tuple[CheckResult, ...]
    mode: str
    advisory: bool

    @property
    def ok(self) -> bool:
        return all(check.passed is not False for check in self.checks)

    def to_dict(self) -> dict:
        return {
            "classification": self.classification.to_dict(),
            "mode": self.mode,
            "advisory": self.advisory,
            "ok": self.ok,
            "checks": [check.to_dict() for check in self.checks],
        }


def validate_nl_structure(
    instance: Instance,
    schedule: Schedule,
    job_order: tuple[int, ...],
    opt_makespan: float,
    mode: str = "exact",
    optimal_schedule: Schedule | None = None,
    eps: float = DEFAULT_EPS,
) -> StructureReport:
    """Run the structural checks a near list schedule must satisfy when
    evaluated against the exact optimum.

    Checks (vacuous ones report passed=None):
      fastest-machine-top-class  machine 0 belongs to class c
      gap-classes-nonempty       prefix k-2 strictly contains prefix k for
                                 k = 1..c-1 (witnesses: failing k values)
      speed-doubling             min speed of a class >= 2^floor(gap/6)
                                 times the max speed of any class gap levels
                                 below (witnesses: (k_hi, k_lo) pairs)
      small-jobs                 at least n/2 jobs have size <= 2^(2 - c/6)
      optimal-placement          only with optimal_schedule: jobs in a
                                 machine's t-optima order-prefix sit inside
                                 level prefix k-t-1 of the optimal schedule
                                 (witnesses: (machine, t, job) triples)

    Raises PreconditionError when the schedule is not near list under
    job_order. In "upper" mode the report is advisory: the level count is
    computed from an upper bound, so failures do not indicate bugs."""
    if not is_near_list(instance, schedule, job_order, eps=eps):
        raise PreconditionError("schedule is not near list under the supplied order")
    cls = classify(instance, schedule, opt_makespan, mode=mode, eps=eps)
    c, m = cls.c, cls.m
    checks: list[CheckResult] = []

    top_ok = cls.levels[0] == c
    checks.append(
        CheckResult(
            name="fastest-machine-top-class",
            passed=top_ok,
            detail=f"machine 0 has level {cls.levels[0]}, c = {c}",
            witnesses=() if top_ok else (0,),
        )
    )

    if c >= 2:
        bad_k = []
        for k in range(1, c):
            wide = m if k <= 2 else cls.thresholds[k - 2]
            if wide <= cls.thresholds[k]:
                bad_k.append(k)
        checks.append(
            CheckResult(
                name="gap-classes-nonempty",
                passed=not bad_k,
                detail=f"checked k = 1..{c - 1}",
                witnesses=tuple(bad_k),
            )
        )
    else:
        checks.append(
            CheckResult(
                name="gap-classes-nonempty", passed=None, detail=f"vacuous at c = {c}"
            )
        )

    nonempty = [k for k in range(c + 1) if cls.classes[k]]
    if len(nonempty) >= 2:
        bad_pairs = []
        for hi_pos in range(len(nonempty) - 1, 0, -1):
            k_hi = nonempty[hi_pos]
            slowest_hi = instance.speeds[cls.classes[k_hi][-1]]
            for k_lo in nonempty[:hi_pos]:
                fastest_lo = instance.speeds[cls.classes[k_lo][0]]
                factor = 2.0 ** ((k_hi - k_lo) // 6)
                if slowest_hi < factor * fastest_lo * (1.0 - 1e-12):
                    bad_pairs.append((k_hi, k_lo))
        checks.append(
            CheckResult(
                name="speed-doubling",
                passed=not bad_pairs,
                detail=f"nonempty classes {nonempty}",
                witnesses=tuple(bad_pairs),
            )
        )
    else:
        checks.append(
            CheckResult(
                name="speed-doubling",
                passed=None,
                detail="fewer than two nonempty classes",
            )
        )

    small_bar = 2.0 ** (2.0 - c / 6.0)
    small_count = sum(1 for p in instance.jobs if p <= small_bar + eps)
    checks.append(
        CheckResult(
            name="small-jobs",
            passed=2 * small_count >= instance.n,
            detail=f"{small_count} of {instance.n} jobs at or below {small_bar:.6g}",
        )
    )

    if optimal_schedule is not None:
        opt_assign = optimal_schedule.assignment
        violations = []
        applicable = False
        for i in range(m):
            level = cls.levels[i]
            for t in range(1, level - 1):  # nonvacuous needs level - t - 1 >= 1
                applicable = True
                allowed_prefix = cls.thresholds[level - t - 1]
                for j in prefix_set(
                    instance, schedule, job_order, i, t, opt_makespan, eps=eps
                ):
                    if opt_assign[j] >= allowed_prefix:
                        violations.append((i, t, j))
        checks.append(
            CheckResult(
                name="optimal-placement",
                passed=(not violations) if applicable else None,
                detail="no machine level reaches 3" if not applicable else "",
                witnesses=tuple(violations),
            )
        )

    return StructureReport(
        classification=cls,
        checks=tuple(checks),
        mode=mode,
        advisory=(mode == "upper"),
    )
