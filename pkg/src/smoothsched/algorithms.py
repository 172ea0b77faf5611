"""Greedy heuristics and local-search neighborhoods.

Three schedule producers live here: list scheduling (each job in list order
goes to the eligible machine where it would finish earliest), LPT (list
scheduling with jobs sorted by non-increasing size), and jump / lex-jump
local search. A jump moves a job off a critical machine to a machine where
it finishes strictly earlier; a lex-jump moves any job so that its completion
time strictly improves, which is equivalent to a strict lexicographic
decrease of the non-increasing sorted load vector. Local optima of the
lex-jump neighborhood coincide with the pure Nash equilibria of the
associated load-balancing game.

The module also hosts the near-list membership test: a schedule is a near
list schedule if its jobs can be ordered so that for every job j on machine
i and every other machine i' the job would not have finished earlier on i'
even after discounting everything that was placed on i after j, i.e.
L_{i'} + p_j/s_{i'} >= L_i - (load contribution of jobs before j on i).
List schedules satisfy this with the reverse of their construction order;
lex-jump optima satisfy it with any order.
"""

from __future__ import annotations

import heapq
import itertools
import random
from dataclasses import dataclass

from .model import (
    DEFAULT_EPS,
    Instance,
    ModelError,
    Schedule,
    critical_machines,
    ensure_feasible,
    machine_loads,
    sorted_loads,
)

JUMP = "jump"
LEX_JUMP = "lex-jump"
NEIGHBORHOODS = (JUMP, LEX_JUMP)
PIVOT_RULES = ("first", "max-gain", "min-gain", "random")


@dataclass(frozen=True)
class Move:
    """One accepted reassignment: job moves source -> target, completion
    improves by gain = L_source - (L_target + p/s_target) > eps."""

    job: int
    source: int
    target: int
    gain: float


@dataclass(frozen=True)
class SearchResult:
    schedule: Schedule
    steps: int
    moves: tuple[Move, ...]
    # Sorted (non-increasing) load vector before the first move and after
    # every accepted move; strictly lexicographically decreasing.
    load_history: tuple[tuple[float, ...], ...]


# ---------------------------------------------------------------------------
# Greedy assignment
# ---------------------------------------------------------------------------


def _eligible_machines(instance: Instance, j: int, machine_filter) -> list[int]:
    base = instance.eligible(j)
    if machine_filter is None:
        machines = sorted(base) if isinstance(base, frozenset) else list(base)
    else:
        allowed = set(base)
        machines = [i for i in machine_filter if i in allowed]
    if not machines:
        raise ModelError(f"job {j} has no eligible machine under the given filter")
    return machines


def greedy_extend(
    instance: Instance,
    assignment: list[int],
    loads: list[float],
    job_ids,
    machine_filter=None,
) -> None:
    """List-scheduling subroutine: place job_ids (in the given order) on top
    of an existing partial assignment, mutating assignment and loads.

    Each job goes to the eligible machine minimizing loads[i] + p_j/s_i,
    ties to the lowest machine index. machine_filter, when given, further
    restricts the candidates (used by the lower-bound constructions to scope
    list scheduling to a machine class).
    """
    speeds = instance.speeds
    jobs = instance.jobs
    job_ids = list(job_ids)
    if not job_ids:
        return
    machines = _eligible_machines(instance, job_ids[0], machine_filter)
    if instance.allowed is None:
        shared_candidates = True
    else:
        sig0 = instance.allowed[job_ids[0]]
        shared_candidates = all(
            instance.allowed[j] is sig0 or instance.allowed[j] == sig0 for j in job_ids
        )
    uniform = shared_candidates and len({speeds[i] for i in machines}) == 1
    if uniform and len(machines) > 2 and len(job_ids) > len(machines):
        # Identical speeds and one shared candidate set: the earliest-finish
        # machine is just the least-loaded one, so a heap avoids the per-job
        # linear scan. (load, index) ordering reproduces the index tie-break.
        heap = [(loads[i], i) for i in machines]
        heapq.heapify(heap)
        for j in job_ids:
            li, i = heapq.heappop(heap)
            assignment[j] = i
            li += jobs[j] / speeds[i]
            loads[i] = li
            heapq.heappush(heap, (li, i))
        return
    for j in job_ids:
        candidates = machines if uniform else _eligible_machines(instance, j, machine_filter)
        best = None
        best_completion = float("inf")
        for i in candidates:
            completion = loads[i] + jobs[j] / speeds[i]
            if completion < best_completion:
                best = i
                best_completion = completion
        assignment[j] = best
        loads[best] += jobs[j] / speeds[best]


def list_schedule(instance: Instance, order=None, machine_filter=None) -> Schedule:
    """Greedy earliest-finish assignment of all jobs in list order.

    order is a permutation of job indices (default: ascending index).
    """
    if order is None:
        order = range(instance.n)
    order = [int(j) for j in order]
    if sorted(order) != list(range(instance.n)):
        raise ModelError("order must be a permutation of all jobs")
    assignment = [-1] * instance.n
    loads = [0.0] * instance.m
    greedy_extend(instance, assignment, loads, order, machine_filter)
    return Schedule(assignment=tuple(assignment))


def lpt_order(jobs) -> tuple[int, ...]:
    """Job indices by non-increasing processing requirement, ties ascending."""
    return tuple(sorted(range(len(jobs)), key=lambda j: (-jobs[j], j)))


def lpt_schedule(instance: Instance, machine_filter=None) -> Schedule:
    return list_schedule(instance, lpt_order(instance.jobs), machine_filter)


# ---------------------------------------------------------------------------
# Improving moves and local search
# ---------------------------------------------------------------------------


def _iter_improving_moves(instance, loads, assignment, neighborhood, eps):
    """Yield Move objects in (job index, target index) order."""
    speeds = instance.speeds
    if neighborhood == JUMP:
        top = max(loads)
        sources = {i for i, li in enumerate(loads) if li >= top - eps}
    elif neighborhood == LEX_JUMP:
        sources = None
    else:
        raise ValueError(f"unknown neighborhood: {neighborhood!r}")
    for j, i in enumerate(assignment):
        if sources is not None and i not in sources:
            continue
        li = loads[i]
        p = instance.jobs[j]
        for t in sorted(instance.eligible(j)):
            if t == i:
                continue
            completion = loads[t] + p / speeds[t]
            if completion < li - eps:
                yield Move(job=j, source=i, target=t, gain=li - completion)


def find_improving_move(
    instance: Instance,
    schedule: Schedule,
    neighborhood: str = JUMP,
    pivot: str = "first",
    eps: float = DEFAULT_EPS,
    rng: random.Random | None = None,
) -> Move | None:
    """One improving move under the pivot rule, or None at a local optimum.

    Pivot rules: "first" returns the first improving move in (job, target)
    order; "max-gain" / "min-gain" extremize the completion-time gain (ties
    to the first in scan order); "random" picks uniformly via rng.
    """
    if pivot not in PIVOT_RULES:
        raise ValueError(f"unknown pivot rule: {pivot!r}")
    loads = machine_loads(instance, schedule)
    moves = _iter_improving_moves(instance, loads, schedule.assignment, neighborhood, eps)
    if pivot == "first":
        return next(moves, None)
    if pivot == "random":
        pool = list(moves)
        if not pool:
            return None
        return (rng or random.Random(0)).choice(pool)
    best = None
    for move in moves:
        if best is None:
            best = move
        elif pivot == "max-gain" and move.gain > best.gain:
            best = move
        elif pivot == "min-gain" and move.gain < best.gain:
            best = move
    return best


def local_search(
    instance: Instance,
    start: Schedule,
    neighborhood: str = JUMP,
    pivot: str = "first",
    eps: float = DEFAULT_EPS,
    seed: int = 0,
    max_steps: int | None = None,
) -> SearchResult:
    """Apply improving moves until none exists.

    The sorted load vector must strictly decrease lexicographically at every
    accepted move (checked; a violation means a broken pivot or tolerance).
    Termination follows: the finite assignment space cannot repeat a state.
    """
    ensure_feasible(instance, start)
    rng = random.Random(seed)
    assignment = list(start.assignment)
    schedule = start
    history = [sorted_loads(instance, schedule)]
    moves: list[Move] = []
    while True:
        move = find_improving_move(instance, schedule, neighborhood, pivot, eps, rng)
        if move is None:
            break
        if max_steps is not None and len(moves) >= max_steps:
            raise RuntimeError(f"local search exceeded {max_steps} steps")
        assignment[move.job] = move.target
        schedule = Schedule(assignment=tuple(assignment))
        vector = sorted_loads(instance, schedule)
        if not vector < history[-1]:
            raise RuntimeError(
                f"accepted move {move} did not decrease the sorted load vector"
            )
        history.append(vector)
        moves.append(move)
    return SearchResult(
        schedule=schedule,
        steps=len(moves),
        moves=tuple(moves),
        load_history=tuple(history),
    )


# ---------------------------------------------------------------------------
# Local-optimality predicates
# ---------------------------------------------------------------------------
#
# The fast paths group machines by speed: for a job of size p, the best
# completion among machines of one speed is attained on the least-loaded of
# them, so only each speed class's two least-loaded machines (two, in case
# the least-loaded one is the job's own machine) ever need to be consulted.
# With allowed sets, the grouping is per distinct allowed set. The naive
# all-pairs scans are kept for cross-checking.


def _speed_class_minima(speeds, loads, machines):
    """Per distinct speed among `machines`: (speed, (load1, i1), (load2, i2))
    with the two smallest loads (index tie-break), second may be None."""
    per_speed: dict[float, list] = {}
    for i in machines:
        s = speeds[i]
        entry = per_speed.get(s)
        pair = (loads[i], i)
        if entry is None:
            per_speed[s] = [pair, None]
        elif pair < entry[0]:
            entry[1] = entry[0]
            entry[0] = pair
        elif entry[1] is None or pair < entry[1]:
            entry[1] = pair
    return [(s, e[0], e[1]) for s, e in per_speed.items()]


def _best_completion(minima, p, exclude):
    best = float("inf")
    for s, first, second in minima:
        pair = second if first[1] == exclude else first
        if pair is None:
            continue
        completion = pair[0] + p / s
        if completion < best:
            best = completion
    return best


class _TargetIndex:
    """Lazy per-allowed-set speed-class minima over a fixed load vector."""

    def __init__(self, instance: Instance, loads):
        self._instance = instance
        self._loads = loads
        self._cache: dict = {}

    def minima_for(self, j: int):
        key = None if self._instance.allowed is None else self._instance.allowed[j]
        minima = self._cache.get(key)
        if minima is None:
            machines = range(self._instance.m) if key is None else key
            minima = _speed_class_minima(self._instance.speeds, self._loads, machines)
            self._cache[key] = minima
        return minima


def _smallest_job_per_group(instance, assignment, machines=None):
    """For each (machine, allowed-set) pair present, the smallest job on it.

    If any job of a group improves by moving to a fixed target, the smallest
    one does (completion is increasing in p), so these are the only jobs a
    local-optimality check needs to test.
    """
    best: dict = {}
    for j, i in enumerate(assignment):
        if machines is not None and i not in machines:
            continue
        key = (i, None if instance.allowed is None else instance.allowed[j])
        p = instance.jobs[j]
        if key not in best or p < best[key][0]:
            best[key] = (p, j)
    return best


def is_jump_optimal(instance: Instance, schedule: Schedule, eps: float = DEFAULT_EPS) -> bool:
    """True iff no job on a critical machine can finish strictly earlier
    (by more than eps) on another eligible machine."""
    ensure_feasible(instance, schedule)
    loads = machine_loads(instance, schedule)
    top = max(loads)
    critical = {i for i, li in enumerate(loads) if li >= top - eps}
    index = _TargetIndex(instance, loads)
    for (i, _key), (p, j) in _smallest_job_per_group(
        instance, schedule.assignment, critical
    ).items():
        if _best_completion(index.minima_for(j), p, i) < loads[i] - eps:
            return False
    return True


def is_lex_jump_optimal(instance: Instance, schedule: Schedule, eps: float = DEFAULT_EPS) -> bool:
    """True iff no job at all can finish strictly earlier elsewhere, i.e.
    the sorted load vector cannot be lexicographically decreased."""
    ensure_feasible(instance, schedule)
    loads = machine_loads(instance, schedule)
    index = _TargetIndex(instance, loads)
    for (i, _key), (p, j) in _smallest_job_per_group(instance, schedule.assignment).items():
        if _best_completion(index.minima_for(j), p, i) < loads[i] - eps:
            return False
    return True


def is_jump_optimal_naive(instance, schedule, eps: float = DEFAULT_EPS) -> bool:
    loads = machine_loads(instance, schedule)
    return (
        next(
            _iter_improving_moves(instance, loads, schedule.assignment, JUMP, eps), None
        )
        is None
    )


def is_lex_jump_optimal_naive(instance, schedule, eps: float = DEFAULT_EPS) -> bool:
    loads = machine_loads(instance, schedule)
    return (
        next(
            _iter_improving_moves(instance, loads, schedule.assignment, LEX_JUMP, eps),
            None,
        )
        is None
    )


# ---------------------------------------------------------------------------
# Near list schedules
# ---------------------------------------------------------------------------


def is_near_list(instance: Instance, schedule: Schedule, job_order, eps: float = DEFAULT_EPS) -> bool:
    """Test the near-list inequality under the given job ordering.

    job_order lists job indices from first to last; for job j on machine i
    with prefix load c (contributions of jobs ordered before j on i), every
    other eligible machine i' must satisfy L_{i'} + p_j/s_{i'} >= L_i - c - eps.
    """
    order = [int(j) for j in job_order]
    if sorted(order) != list(range(instance.n)):
        raise ModelError("job_order must be a permutation of all jobs")
    ensure_feasible(instance, schedule)
    loads = machine_loads(instance, schedule)
    index = _TargetIndex(instance, loads)
    prefix = [0.0] * instance.m
    for j in order:
        i = schedule.assignment[j]
        p = instance.jobs[j]
        threshold = loads[i] - prefix[i]
        if _best_completion(index.minima_for(j), p, i) < threshold - eps:
            return False
        prefix[i] += p / instance.speeds[i]
    return True


def find_near_list_order(
    instance: Instance, schedule: Schedule, limit: int = 8, eps: float = DEFAULT_EPS
):
    """Exhaustively search job orderings; return the first one under which
    the schedule is a near list schedule, or None. Refuses n > limit."""
    if instance.n > limit:
        raise ModelError(
            f"near-list order search is exhaustive; n={instance.n} exceeds limit {limit}"
        )
    for order in itertools.permutations(range(instance.n)):
        if is_near_list(instance, schedule, order, eps):
            return order
    return None
