"""Core data model for makespan scheduling on (restricted) related machines.

An instance is a set of machines with speeds s_1 >= ... >= s_m > 0 and a set
of jobs with processing requirements p_j > 0; job j takes p_j/s_i time units
on machine i. Optional per-job allowed-machine sets turn the unrestricted
problem into the restricted one. A schedule is a total assignment of jobs to
machines; the load of a machine is the sum of p_j/s_i over its jobs and the
makespan is the maximum load.

All arithmetic is 64-bit floating point. Comparisons that decide optimality
or class membership use an absolute tolerance DEFAULT_EPS; "improving" always
means better by strictly more than the tolerance.

Machine and job indices are 0-based everywhere in this package; the JSON
interchange format (instance_to_dict and friends) is 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass

# Absolute comparison tolerance used across the package.
DEFAULT_EPS = 1e-9


class ModelError(ValueError):
    """An instance or schedule violates a structural requirement."""


@dataclass(frozen=True)
class Instance:
    """Immutable problem instance.

    speeds: machine speeds, non-increasing (equal speeds keep their original
        relative order, which fixes all index-based tie-breaking).
    jobs: positive processing requirements p_j.
    allowed: None for an unrestricted instance, else one frozenset of
        0-based machine indices per job (never empty).
    normalized: when True, the slowest machine has speed 1 and max p_j <= 1.
    """

    speeds: tuple[float, ...]
    jobs: tuple[float, ...]
    allowed: tuple[frozenset[int], ...] | None = None
    normalized: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "speeds", tuple(float(s) for s in self.speeds))
        object.__setattr__(self, "jobs", tuple(float(p) for p in self.jobs))
        if self.allowed is not None:
            # Keep frozensets as-is: constructions share one set object across
            # a whole job class, which the predicates exploit via cached
            # hashes, and which keeps validation linear in distinct sets.
            object.__setattr__(
                self,
                "allowed",
                tuple(
                    a if isinstance(a, frozenset) else frozenset(int(i) for i in a)
                    for a in self.allowed
                ),
            )
        if not self.speeds:
            raise ModelError("instance needs at least one machine")
        if not self.jobs:
            raise ModelError("instance needs at least one job")
        if any(s <= 0 for s in self.speeds):
            raise ModelError("all machine speeds must be positive")
        if any(a < b for a, b in zip(self.speeds, self.speeds[1:])):
            raise ModelError("machine speeds must be sorted non-increasing")
        if any(p <= 0 for p in self.jobs):
            raise ModelError("all processing requirements must be positive")
        if self.allowed is not None:
            if len(self.allowed) != len(self.jobs):
                raise ModelError("allowed sets must match the job count")
            checked: set[int] = set()
            for j, machines in enumerate(self.allowed):
                if not machines:
                    raise ModelError(f"job {j} has an empty allowed set")
                if id(machines) in checked:
                    continue
                checked.add(id(machines))
                if any(i < 0 or i >= len(self.speeds) for i in machines):
                    raise ModelError(f"job {j} allows an out-of-range machine")
        if self.normalized:
            if self.speeds[-1] != 1.0 or max(self.jobs) > 1.0 + DEFAULT_EPS:
                raise ModelError("normalized flag requires s_min = 1 and p_max <= 1")

    @property
    def m(self) -> int:
        return len(self.speeds)

    @property
    def n(self) -> int:
        return len(self.jobs)

    def eligible(self, j: int):
        """Machines job j may run on (a range when unrestricted)."""
        if self.allowed is None:
            return range(self.m)
        return self.allowed[j]


@dataclass(frozen=True)
class Schedule:
    """Total assignment: assignment[j] is the 0-based machine of job j."""

    assignment: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", tuple(int(i) for i in self.assignment))


def validate_schedule(instance: Instance, schedule: Schedule) -> list[str]:
    """Return a list of violation messages; empty means feasible.

    Checks totality (one machine per job, in range) and allowed-set
    membership. Purely reporting; never raises.
    """
    problems: list[str] = []
    if len(schedule.assignment) != instance.n:
        problems.append(
            f"assignment covers {len(schedule.assignment)} jobs, instance has {instance.n}"
        )
        return problems
    for j, i in enumerate(schedule.assignment):
        if i < 0 or i >= instance.m:
            problems.append(f"job {j} assigned to out-of-range machine {i}")
        elif instance.allowed is not None and i not in instance.allowed[j]:
            problems.append(f"job {j} assigned to machine {i} outside its allowed set")
    return problems


def ensure_feasible(instance: Instance, schedule: Schedule) -> None:
    problems = validate_schedule(instance, schedule)
    if problems:
        raise ModelError("; ".join(problems))


def machine_loads(instance: Instance, schedule: Schedule) -> tuple[float, ...]:
    """Per-machine loads L_i = sum of p_j/s_i over jobs assigned to i.

    This is the canonical load evaluation: plain Python sums accumulated in
    ascending job-index order. Every component that must agree bitwise on
    makespans (the exact oracles in particular) funnels through it.
    """
    loads = [0.0] * instance.m
    speeds = instance.speeds
    for j, i in enumerate(schedule.assignment):
        loads[i] += instance.jobs[j] / speeds[i]
    return tuple(loads)


def load(instance: Instance, schedule: Schedule, i: int) -> float:
    """Load of machine i (0 for an empty machine)."""
    if i < 0 or i >= instance.m:
        raise ModelError(f"machine index {i} out of range")
    return machine_loads(instance, schedule)[i]


def makespan(instance: Instance, schedule: Schedule) -> float:
    """Maximum machine load."""
    return max(machine_loads(instance, schedule))


def critical_machines(
    instance: Instance, schedule: Schedule, eps: float = DEFAULT_EPS
) -> tuple[int, ...]:
    """Machines whose load is within eps of the makespan."""
    loads = machine_loads(instance, schedule)
    top = max(loads)
    return tuple(i for i, li in enumerate(loads) if li >= top - eps)


def sorted_loads(instance: Instance, schedule: Schedule) -> tuple[float, ...]:
    """Load vector sorted non-increasing (the lex-jump potential)."""
    return tuple(sorted(machine_loads(instance, schedule), reverse=True))


def normalize(instance: Instance) -> Instance:
    """Rescale so the slowest machine has speed 1 and the largest job size 1.

    Dividing all speeds by s_min and all p_j by p_max leaves every ratio of
    two schedules' makespans unchanged, and the argmax machine of any fixed
    schedule's load vector unchanged. Idempotent up to rounding.
    """
    s_min = instance.speeds[-1]
    p_max = max(instance.jobs)
    return Instance(
        speeds=tuple(s / s_min for s in instance.speeds),
        jobs=tuple(p / p_max for p in instance.jobs),
        allowed=instance.allowed,
        normalized=True,
    )


# ---------------------------------------------------------------------------
# JSON interchange (1-based machine indices on the wire)
# ---------------------------------------------------------------------------


def instance_to_dict(instance: Instance) -> dict:
    jobs = []
    for j, p in enumerate(instance.jobs):
        entry: dict = {"p": p}
        if instance.allowed is not None:
            entry["allowed"] = sorted(i + 1 for i in instance.allowed[j])
        jobs.append(entry)
    return {"speeds": list(instance.speeds), "jobs": jobs}


def instance_from_dict(data: dict) -> Instance:
    try:
        speeds = tuple(float(s) for s in data["speeds"])
        raw_jobs = data["jobs"]
        jobs = tuple(float(entry["p"]) for entry in raw_jobs)
    except (KeyError, TypeError) as exc:
        raise ModelError(f"malformed instance JSON: {exc}") from exc
    allowed = None
    if any("allowed" in entry for entry in raw_jobs):
        m = len(speeds)
        allowed = tuple(
            frozenset(int(i) - 1 for i in entry.get("allowed", range(1, m + 1)))
            for entry in raw_jobs
        )
    return Instance(speeds=speeds, jobs=jobs, allowed=allowed)


def schedule_to_dict(schedule: Schedule) -> dict:
    return {"assignment": [i + 1 for i in schedule.assignment]}


def schedule_from_dict(data: dict) -> Schedule:
    try:
        assignment = tuple(int(i) - 1 for i in data["assignment"])
    except (KeyError, TypeError) as exc:
        raise ModelError(f"malformed schedule JSON: {exc}") from exc
    return Schedule(assignment=assignment)
