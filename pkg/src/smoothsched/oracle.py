"""Exact ground truth and closed-form quality bounds.

Two independent exact solvers: a depth-first branch-and-bound over the
assignment space (largest jobs first, pruned by the volume bound Q/sum(s),
per-job best-alone completions, and the running incumbent) and a plain
exhaustive enumeration kept as its cross-check oracle. Both evaluate
candidate schedules through model.machine_loads, the canonical load routine,
so their reported optima agree bitwise; the branch-and-bound prunes with a
small relative slack so float drift in its incremental loads can only cost
extra nodes, never the exact value.

worst_local_optimum_exact enumerates every feasible assignment (numpy,
mixed-radix decoded in chunks with job 0 the most significant digit),
filters by a local-optimality predicate evaluated tensor-wise, and reports
the worst local optimum's makespan over the exact optimum. Ties keep the
first assignment in enumeration order, which makes witnesses deterministic.

The closed-form evaluators cover: the classic worst-case jump-optimality
guarantee (1 + sqrt(4 min(m,n) - 3))/2; the volume-based per-instance bound
1 + (n-1)/Q for jump-optimal schedules on instances with p_j <= 1; the
smoothed mean bounds 5.1*phi + 2.5 (jump) and 18*log2(phi) + 30 (near-list /
lex-jump); and the near-list tail bound (32*phi / 2^(alpha/6))^(n/2).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .algorithms import JUMP, LEX_JUMP, lpt_schedule
from .model import DEFAULT_EPS, Instance, Schedule, makespan

DEFAULT_BUDGET = 10**7

# Relative pruning slack: large enough to swallow incremental-vs-canonical
# float drift (~n ulps), small enough never to mask a genuinely better leaf.
_PRUNE_SLACK = 1e-12

_ENUM_CHUNK = 1 << 16


class BudgetExceededError(RuntimeError):
    """The assignment space exceeds the configured enumeration budget."""


def assignment_space_size(instance: Instance) -> int:
    size = 1
    for j in range(instance.n):
        size *= len(instance.eligible(j))
    return size


def _check_budget(instance: Instance, budget: int) -> int:
    size = assignment_space_size(instance)
    if size > budget:
        raise BudgetExceededError(
            f"assignment space {size} exceeds budget {budget}"
        )
    return size


def makespan_lower_bound(instance: Instance) -> float:
    """max(Q / sum(s_i), max_j min over eligible i of p_j/s_i); never above
    the exact optimum."""
    volume = sum(instance.jobs) / sum(instance.speeds)
    alone = max(
        min(instance.jobs[j] / instance.speeds[i] for i in instance.eligible(j))
        for j in range(instance.n)
    )
    return max(volume, alone)


# ---------------------------------------------------------------------------
# Exact optimum
# ---------------------------------------------------------------------------


def optimal_makespan_bruteforce(
    instance: Instance, budget: int = DEFAULT_BUDGET
) -> tuple[float, Schedule]:
    """Exhaustive enumeration in pure Python; the reference oracle.

    Iterates assignments with job 0 as the most significant digit and keeps
    the first minimum, evaluating loads exactly like machine_loads.
    """
    _check_budget(instance, budget)
    p = instance.jobs
    s = instance.speeds
    m = instance.m
    eligible = [sorted(instance.eligible(j)) for j in range(instance.n)]
    best_val = float("inf")
    best_assign: tuple[int, ...] | None = None
    for assign in itertools.product(*eligible):
        loads = [0.0] * m
        for j, i in enumerate(assign):
            loads[i] += p[j] / s[i]
        val = max(loads)
        if val < best_val:
            best_val = val
            best_assign = assign
    return best_val, Schedule(assignment=best_assign)


def optimal_makespan_exact(
    instance: Instance, budget: int = DEFAULT_BUDGET
) -> tuple[float, Schedule]:
    """Exact optimal makespan and one optimal schedule via branch-and-bound.

    The budget bounds the total assignment count prod_j |eligible_j| (the
    search explores far fewer nodes); exceeding it raises
    BudgetExceededError before any work.
    """
    _check_budget(instance, budget)
    n, m = instance.n, instance.m
    p, s = instance.jobs, instance.speeds
    order = sorted(range(n), key=lambda j: (-p[j], j))
    eligible = [sorted(instance.eligible(j)) for j in range(n)]
    volume_lb = sum(p) / sum(s)
    alone = [min(p[j] / s[i] for i in eligible[j]) for j in range(n)]
    # suffix_alone[idx]: best-alone completion of the largest remaining job
    # once order[:idx] are placed; a lower bound on any completion below idx.
    suffix_alone = [0.0] * (n + 1)
    for idx in range(n - 1, -1, -1):
        suffix_alone[idx] = max(suffix_alone[idx + 1], alone[order[idx]])

    incumbent = lpt_schedule(instance)
    best_val = makespan(instance, incumbent)
    best_assign = list(incumbent.assignment)

    loads = [0.0] * m
    assign = [-1] * n
    unrestricted = instance.allowed is None

    def dfs(idx: int, cur_max: float) -> None:
        nonlocal best_val, best_assign
        slack = _PRUNE_SLACK * max(1.0, best_val)
        if max(cur_max, volume_lb, suffix_alone[idx]) >= best_val + slack:
            return
        if idx == n:
            val = makespan(instance, Schedule(assignment=tuple(assign)))
            if val < best_val:
                best_val = val
                best_assign = list(assign)
            return
        j = order[idx]
        candidates = sorted(eligible[j], key=lambda i: (loads[i] + p[j] / s[i], i))
        empty_speeds_seen = set()
        for i in candidates:
            if unrestricted and loads[i] == 0.0:
                # Equal-speed empty machines are interchangeable; exploring
                # one of them covers the others' subtrees value-for-value.
                if s[i] in empty_speeds_seen:
                    continue
                empty_speeds_seen.add(s[i])
            new_load = loads[i] + p[j] / s[i]
            if max(new_load, cur_max) >= best_val + slack:
                continue
            saved = loads[i]
            loads[i] = new_load
            assign[j] = i
            dfs(idx + 1, max(cur_max, new_load))
            loads[i] = saved
            assign[j] = -1

    dfs(0, 0.0)
    return best_val, Schedule(assignment=tuple(best_assign))


# ---------------------------------------------------------------------------
# Exhaustive worst local optimum
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WorstCaseResult:
    ratio: float
    witness: Schedule
    worst_makespan: float
    optimal_makespan: float
    optima_count: int


def _eligible_arrays(instance: Instance) -> list[np.ndarray]:
    return [
        np.array(sorted(instance.eligible(j)), dtype=np.int64)
        for j in range(instance.n)
    ]


def _decode_chunk(eligible_arrays, start: int, stop: int) -> np.ndarray:
    """Assignments start..stop of the mixed-radix enumeration, one row each;
    job 0 is the most significant digit."""
    n = len(eligible_arrays)
    rem = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, n), dtype=np.int64)
    for j in range(n - 1, -1, -1):
        radix = len(eligible_arrays[j])
        out[:, j] = eligible_arrays[j][rem % radix]
        rem //= radix
    return out


def _allowed_mask(instance: Instance) -> np.ndarray | None:
    if instance.allowed is None:
        return None
    mask = np.zeros((instance.n, instance.m), dtype=bool)
    for j, machines in enumerate(instance.allowed):
        mask[j, list(machines)] = True
    return mask


def _optima_mask(instance, assigns, allowed_mask, neighborhood, eps):
    """Boolean mask of locally optimal rows plus each row's max load."""
    p = np.asarray(instance.jobs)
    s = np.asarray(instance.speeds)
    m = instance.m
    onehot = (assigns[:, :, None] == np.arange(m)).astype(np.float64)
    loads = np.einsum("kjm,j->km", onehot, p) / s
    cmax = loads.max(axis=1)
    completions = loads[:, None, :] + (p[:, None] / s[None, :])
    np.put_along_axis(completions, assigns[:, :, None], np.inf, axis=2)
    if allowed_mask is not None:
        completions = np.where(allowed_mask[None, :, :], completions, np.inf)
    best = completions.min(axis=2)
    current = np.take_along_axis(loads, assigns, axis=1)
    improving = best < current - eps
    if neighborhood == JUMP:
        critical = loads >= cmax[:, None] - eps
        improving &= np.take_along_axis(critical, assigns, axis=1)
    elif neighborhood != LEX_JUMP:
        raise ValueError(f"unknown neighborhood: {neighborhood!r}")
    return ~improving.any(axis=1), cmax


def _iter_optima(instance, neighborhood, budget, eps):
    size = _check_budget(instance, budget)
    eligible_arrays = _eligible_arrays(instance)
    allowed_mask = _allowed_mask(instance)
    for start in range(0, size, _ENUM_CHUNK):
        stop = min(start + _ENUM_CHUNK, size)
        assigns = _decode_chunk(eligible_arrays, start, stop)
        mask, cmax = _optima_mask(instance, assigns, allowed_mask, neighborhood, eps)
        yield assigns, mask, cmax


def worst_local_optimum_exact(
    instance: Instance,
    neighborhood: str = JUMP,
    budget: int = DEFAULT_BUDGET,
    eps: float = DEFAULT_EPS,
) -> WorstCaseResult:
    """Exhaustively find the worst local optimum of the given neighborhood.

    Returns its makespan divided by the exact optimum, with a witness
    schedule (first worst in enumeration order). Reported makespans are
    canonical re-evaluations of the selected rows.
    """
    worst_val = -1.0
    worst_assign: tuple[int, ...] | None = None
    count = 0
    for assigns, mask, cmax in _iter_optima(instance, neighborhood, budget, eps):
        count += int(mask.sum())
        if not mask.any():
            continue
        local = np.where(mask, cmax, -np.inf)
        row = int(local.argmax())
        candidate = tuple(int(i) for i in assigns[row])
        val = makespan(instance, Schedule(assignment=candidate))
        if val > worst_val:
            worst_val = val
            worst_assign = candidate
    if worst_assign is None:
        raise RuntimeError("no local optimum found; unreachable for feasible instances")
    opt_val, _ = optimal_makespan_exact(instance, budget)
    witness = Schedule(assignment=worst_assign)
    return WorstCaseResult(
        ratio=worst_val / opt_val,
        witness=witness,
        worst_makespan=worst_val,
        optimal_makespan=opt_val,
        optima_count=count,
    )


def local_optima_exact(
    instance: Instance,
    neighborhood: str = JUMP,
    budget: int = DEFAULT_BUDGET,
    eps: float = DEFAULT_EPS,
) -> list[Schedule]:
    """All locally optimal schedules, in enumeration order."""
    found: list[Schedule] = []
    for assigns, mask, _cmax in _iter_optima(instance, neighborhood, budget, eps):
        for row in np.flatnonzero(mask):
            found.append(Schedule(assignment=tuple(int(i) for i in assigns[row])))
    return found


# ---------------------------------------------------------------------------
# Closed-form bounds
# ---------------------------------------------------------------------------


def cho_sahni_bound(m: int, n: int) -> float:
    """Worst-case guarantee for jump-optimal schedules on related machines:
    (1 + sqrt(4 min(m, n) - 3)) / 2."""
    return (1.0 + math.sqrt(4.0 * min(m, n) - 3.0)) / 2.0


def jump_quality_bound(instance: Instance) -> float:
    """Per-instance guarantee 1 + (n-1)/Q with Q = sum of p_j.

    Covers every jump-optimal schedule of an instance whose processing
    requirements satisfy p_j <= 1 (rescale first otherwise).
    """
    return 1.0 + (instance.n - 1) / sum(instance.jobs)


def mean_jump_ratio_bound(phi: float) -> float:
    """Mean worst-jump-ratio bound 5.1*phi + 2.5 for phi-smooth instances."""
    return 5.1 * phi + 2.5


def nl_tail_bound(phi: float, alpha: float, n: int) -> float:
    """Tail bound (32*phi / 2^(alpha/6))^(n/2) on the probability that some
    near list schedule has ratio >= alpha, clamped to [0, 1]. Needs phi >= 2."""
    if phi < 2:
        raise ValueError("nl_tail_bound requires phi >= 2")
    value = (32.0 * phi / 2.0 ** (alpha / 6.0)) ** (n / 2.0)
    return min(1.0, value)


def nl_expectation_bound(phi: float) -> float:
    """Mean ratio bound 18*log2(phi) + 30 for near list schedules (hence for
    lex-jump optima and list schedules) on phi-smooth instances. Needs
    phi >= 2."""
    if phi < 2:
        raise ValueError("nl_expectation_bound requires phi >= 2")
    return 18.0 * math.log2(phi) + 30.0
