"""Adversarial lower-bound instance families.

Each builder returns a Construction bundling the smoothed spec of one
instance family, a deterministic realize procedure that turns a sampled
instance into an adversarial "bad" schedule and a benchmark "good" schedule,
event flags certifying that the sample landed in the regime where the bad
schedule is provably a local optimum of the intended neighborhood, and
deterministic metadata: machine/job class index ranges, the predicted ratio
lower bound, a deterministic cap on the optimal makespan, and a deterministic
almost-sure cap on the bad/good ratio (the Hoeffding range for sweeps).

The four families:

- jump-related: one fast machine against many unit machines; the bad
  schedule parks an anchor job on a unit machine and packs the fast machine
  just short of it, so nothing on the critical machine can jump. Jump-optimal
  with ratio > phi - 1 whenever the filler mass reaches the fast speed.
- lexlist: geometric speed groups 2^r .. 1 and job sizes concentrated just
  above 2^l; list scheduling in a specific interleaved order stacks l jobs of
  size ~2^l on each speed-2^l machine, which is lex-jump optimal with ratio
  >= r/3 deterministically (the benchmark spreads each job one speed group
  down).
- restricted-jump: an allowed-set variant with one slow anchor machine, a
  small buffer group, and many fast machines; jump-optimal with makespan
  ~sqrt(m * s_max) times the benchmark when the filler mass event holds.
- restricted-lex: unit machines in layers sized by an integer recurrence;
  large jobs may ride one layer up, small jobs are pinned. Per-layer LPT is
  lex-jump optimal with ratio ~3k/16 when per-layer sums concentrate.

Strict mode enforces the quality premises (sqrt(m' * s_max) >= 17, k' >= 1,
k >= 68) as errors; lenient mode records each unmet premise as a warning and
builds anyway. Event flags are always evaluated honestly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .algorithms import greedy_extend, list_schedule
from .model import Instance, Schedule, ensure_feasible, machine_loads, makespan
from .smoothing import DensitySpec, SmoothedInstanceSpec, sample_instance, uniform_spec

DEFAULT_MAX_JOBS = 5_000_000

CONSTRUCTION_NAMES = ("jump-related", "lexlist", "restricted-jump", "restricted-lex")


class ParameterError(ValueError):
    """Construction parameters outside the supported domain."""


@dataclass(frozen=True)
class ConstructionSample:
    instance: Instance
    bad: Schedule
    good: Schedule
    events: dict[str, bool]
    bad_makespan: float
    good_makespan: float

    @property
    def event_ok(self) -> bool:
        return all(self.events.values())

    @property
    def ratio(self) -> float:
        """Bad over sampled-benchmark makespan."""
        return self.bad_makespan / self.good_makespan


@dataclass(frozen=True)
class Construction:
    name: str
    spec: SmoothedInstanceSpec
    realize: Callable[[Instance], tuple[Schedule, Schedule, dict[str, bool]]]
    predicted_ratio_lb: float
    cstar_cap: float  # deterministic upper bound on the optimal makespan
    ratio_cap: float  # deterministic upper bound on bad/good (CI range)
    machine_classes: tuple[tuple[str, tuple[int, int]], ...]
    job_classes: tuple[tuple[str, tuple[int, int]], ...]
    params: tuple[tuple[str, float], ...]
    warnings: tuple[str, ...] = ()
    list_order: tuple[int, ...] | None = None

    def param(self, name: str) -> float:
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)

    def machine_class(self, name: str) -> range:
        for key, (start, stop) in self.machine_classes:
            if key == name:
                return range(start, stop)
        raise KeyError(name)

    def job_class(self, name: str) -> range:
        for key, (start, stop) in self.job_classes:
            if key == name:
                return range(start, stop)
        raise KeyError(name)

    def sample(self, seed: int) -> ConstructionSample:
        instance = sample_instance(self.spec, seed)
        bad, good, events = self.realize(instance)
        ensure_feasible(instance, bad)
        ensure_feasible(instance, good)
        return ConstructionSample(
            instance=instance,
            bad=bad,
            good=good,
            events=events,
            bad_makespan=makespan(instance, bad),
            good_makespan=makespan(instance, good),
        )


# ---------------------------------------------------------------------------
# Jump neighborhood, related machines
# ---------------------------------------------------------------------------


def build_jump_related_lb(phi: float) -> Construction:
    """One fast machine (speed (n-1)/(4 phi)) and n-1 unit machines, with
    n = ceil(4 phi^2 + 1). Job 0 is uniform on [1 - 1/phi, 1], the rest on
    [0, 1/phi]. The bad schedule puts job 0 alone on the first unit machine
    and fills the fast machine to just below it; whenever the filler mass
    reaches the fast speed this is jump optimal with makespan ratio > phi - 1
    against the benchmark cap 1/phi. Needs phi > 2."""
    if phi <= 2:
        raise ParameterError(f"jump-related family needs phi > 2, got {phi}")
    phi = float(phi)
    n = math.ceil(4.0 * phi * phi + 1.0)
    s1 = (n - 1) / (4.0 * phi)
    speeds = (s1,) + (1.0,) * (n - 1)
    anchor = uniform_spec(1.0 - 1.0 / phi, 1.0)
    filler = uniform_spec(0.0, 1.0 / phi)
    spec = SmoothedInstanceSpec(
        speeds=speeds, densities=(anchor,) + (filler,) * (n - 1)
    )
    window = 1.0 / (phi * s1)

    def realize(instance: Instance):
        p = instance.jobs
        assign = [-1] * n
        assign[0] = 1
        target = p[0] - window  # pack the fast machine into [target, p[0])
        fast_load = 0.0
        j = 1
        while j < n and fast_load < target:
            assign[j] = 0
            fast_load += p[j] / s1
            j += 1
        machine = 2
        for jj in range(j, n):
            assign[jj] = machine
            machine += 1
        good = tuple([0] + list(range(1, n)))
        events = {"filler_mass": sum(p[1:]) >= s1}
        return Schedule(assignment=tuple(assign)), Schedule(assignment=good), events

    return Construction(
        name="jump-related",
        spec=spec,
        realize=realize,
        predicted_ratio_lb=phi - 1.0,
        cstar_cap=1.0 / phi,
        ratio_cap=s1 * phi / (phi - 1.0),
        machine_classes=(("fast", (0, 1)), ("unit", (1, n))),
        job_classes=(("anchor", (0, 1)), ("filler", (1, n))),
        params=(("phi", phi), ("n", float(n)), ("s1", s1)),
    )


# ---------------------------------------------------------------------------
# Lex-jump neighborhood, related machines (list-schedule family)
# ---------------------------------------------------------------------------


def _log4_floor(phi: float) -> int:
    r = 0
    while 4 ** (r + 1) <= phi:
        r += 1
    return r


def build_lexlist_lb(phi: float) -> Construction:
    """Speed groups 2^r, ..., 2, 1 (r = floor(log4 phi)) with r!/k! machines
    of speed 2^k, and job groups of r!/(l-1)! jobs concentrated in
    [2^l, 2^l + 2^(r+1)/phi). List scheduling in an interleaved order (for
    pass k = 1..r, for l = r down to k, schedule r!/l! fresh group-l jobs)
    stacks exactly l group-l jobs on each speed-2^l machine. The result is
    lex-jump optimal with makespan >= r, while spreading each group one speed
    class down costs < 3, deterministically. Needs phi >= 4."""
    if phi < 4:
        raise ParameterError(f"lexlist family needs phi >= 4, got {phi}")
    phi = float(phi)
    r = _log4_floor(phi)
    scale = float(2 ** (r + 1))
    machine_sizes = [(f"speed{2 ** k}", math.factorial(r) // math.factorial(k)) for k in range(r, -1, -1)]
    speeds: list[float] = []
    machine_classes = []
    for (name, count), k in zip(machine_sizes, range(r, -1, -1)):
        machine_classes.append((name, (len(speeds), len(speeds) + count)))
        speeds.extend([float(2**k)] * count)
    job_classes = []
    densities: list[DensitySpec] = []
    for level in range(1, r + 1):
        count = math.factorial(r) // math.factorial(level - 1)
        density = uniform_spec(float(2**level), 2**level + scale / phi, scale=scale)
        job_classes.append((f"size{2 ** level}", (len(densities), len(densities) + count)))
        densities.extend([density] * count)
    n = len(densities)
    spec = SmoothedInstanceSpec(speeds=tuple(speeds), densities=tuple(densities))

    # Interleaved construction order over job indices.
    cursor = {level: job_classes[level - 1][1][0] for level in range(1, r + 1)}
    order: list[int] = []
    for _pass in range(1, r + 1):
        for level in range(r, _pass - 1, -1):
            take = math.factorial(r) // math.factorial(level)
            order.extend(range(cursor[level], cursor[level] + take))
            cursor[level] += take
    assert len(order) == n
    list_order = tuple(order)

    class_ranges = [rng for _name, rng in machine_classes]  # speed-descending

    def realize(instance: Instance):
        bad = list_schedule(instance, list_order)
        good = [-1] * n
        # Group-l jobs go one-per-machine onto the speed-2^(l-1) class.
        for level in range(1, r + 1):
            jstart, jstop = job_classes[level - 1][1]
            mstart, mstop = class_ranges[r - (level - 1)]  # class of speed 2^(l-1)
            assert jstop - jstart == mstop - mstart
            for offset, j in enumerate(range(jstart, jstop)):
                good[j] = mstart + offset
        return bad, Schedule(assignment=tuple(good)), {}

    return Construction(
        name="lexlist",
        spec=spec,
        realize=realize,
        predicted_ratio_lb=r / 3.0,
        cstar_cap=3.0,
        ratio_cap=(r + 1.0) / 2.0,
        machine_classes=tuple(machine_classes),
        job_classes=tuple(job_classes),
        params=(("phi", phi), ("r", float(r))),
        list_order=list_order,
    )


def layered_list_structure_ok(construction: Construction, sample: ConstructionSample) -> bool:
    """Exact layered shape of the lexlist bad schedule: every speed-2^l
    machine carries exactly l jobs, all from the size-2^l group, and the
    speed-1 class is empty."""
    r = int(construction.param("r"))
    assignment = sample.bad.assignment
    per_machine: dict[int, list[int]] = {}
    for j, i in enumerate(assignment):
        per_machine.setdefault(i, []).append(j)
    for idx, (_name, (mstart, mstop)) in enumerate(construction.machine_classes):
        level = r - idx  # classes are speed-descending
        if level == 0:
            expected_jobs: range | None = None
        else:
            jstart, jstop = construction.job_classes[level - 1][1]
            expected_jobs = range(jstart, jstop)
        for i in range(mstart, mstop):
            jobs_here = per_machine.get(i, [])
            if level == 0:
                if jobs_here:
                    return False
                continue
            if len(jobs_here) != level:
                return False
            if any(j not in expected_jobs for j in jobs_here):
                return False
    return True


# ---------------------------------------------------------------------------
# Jump neighborhood, restricted machines
# ---------------------------------------------------------------------------


def build_restricted_jump_lb(
    m: int, s_max: float, z: int, lenient: bool = False
) -> Construction:
    """Restricted family on m machines: one unit-speed anchor machine, a
    buffer group of k = ceil(sqrt(m'/s_max)) machines of speed
    s' = max(1, s_max * k'/k), and m' + 1 - k fast machines of speed s_max
    (m' = m - 2). Large jobs (uniform [1/2, 1]) may only use the anchor or
    the buffer; small jobs (uniform [0, 1/2]) go anywhere. The bad schedule
    piles all large jobs on the anchor and pads the buffer to just below it;
    when the small-job mass Q exceeds 4 z (s_max k')^2 this is jump optimal
    with makespan >= z s_max k' - 1 against a benchmark of at most 17 z."""
    if int(m) != m or m < 3:
        raise ParameterError(f"need integer m >= 3, got {m}")
    if s_max < 1:
        raise ParameterError(f"need s_max >= 1, got {s_max}")
    if int(z) != z or z <= 2:
        raise ParameterError(f"need integer z > 2, got {z}")
    m, z, s = int(m), int(z), float(s_max)
    m_prime = m - 2
    k_prime = math.sqrt(m_prime / s)
    k = math.ceil(k_prime)
    s_prime = max(1.0, s * k_prime / k)
    warnings: list[str] = []
    if math.sqrt(m_prime * s) < 17.0:
        message = (
            f"quality premise sqrt(m' * s_max) >= 17 unmet "
            f"({math.sqrt(m_prime * s):.3f} < 17); the predicted ratio may not be meaningful"
        )
        if not lenient:
            raise ParameterError(message)
        warnings.append(message)
    if k_prime < 1.0:
        message = f"k' = sqrt(m'/s_max) = {k_prime:.3f} < 1 (s_max exceeds m')"
        if not lenient:
            raise ParameterError(message)
        warnings.append(message)
    n_large = math.floor(2.0 * z * s * k_prime)
    n_small = math.ceil(32.0 * z * s * (m_prime - k_prime))
    if n_large < 1 or n_small < 1:
        raise ParameterError("degenerate job counts; increase m, s_max, or z")

    fast_count = m_prime + 1 - k
    fast = range(0, fast_count)
    buffer = range(fast_count, fast_count + k)
    anchor = fast_count + k
    speeds = (s,) * fast_count + (s_prime,) * k + (1.0,)
    large_allowed = frozenset(buffer) | {anchor}
    all_allowed = frozenset(range(m))
    allowed = (large_allowed,) * n_large + (all_allowed,) * n_small
    densities = (uniform_spec(0.5, 1.0),) * n_large + (uniform_spec(0.0, 0.5),) * n_small
    spec = SmoothedInstanceSpec(speeds=speeds, densities=densities, allowed=allowed)
    q_threshold = 4.0 * z * (s * k_prime) ** 2

    def realize(instance: Instance):
        p = instance.jobs
        n = instance.n
        assign = [-1] * n
        loads = [0.0] * m
        for j in range(n_large):
            assign[j] = anchor
            loads[anchor] += p[j]
        anchor_load = loads[anchor]
        window_floor = anchor_load - 1.0 / (2.0 * s_prime)
        j = n_large
        while j < n:
            target = min(buffer, key=lambda i: (loads[i], i))
            if loads[target] >= window_floor:
                break  # every buffer machine sits in [L1 - 1/(2s'), L1)
            assign[j] = target
            loads[target] += p[j] / s_prime
            j += 1
        greedy_extend(instance, assign, loads, range(j, n), machine_filter=fast)
        bad = Schedule(assignment=tuple(assign))

        good_assign = [-1] * n
        good_loads = [0.0] * m
        greedy_extend(instance, good_assign, good_loads, range(n_large), machine_filter=buffer)
        greedy_extend(instance, good_assign, good_loads, range(n_large, n), machine_filter=fast)
        good = Schedule(assignment=tuple(good_assign))
        events = {"filler_mass": sum(p[n_large:]) > q_threshold}
        return bad, good, events

    good_floor = n_large / (2.0 * k * s_prime)
    bad_cap = max(float(n_large), (n_small / 2.0) / (s * fast_count) + 0.5 / s)
    return Construction(
        name="restricted-jump",
        spec=spec,
        realize=realize,
        predicted_ratio_lb=(z * s * k_prime - 1.0) / (17.0 * z),
        cstar_cap=17.0 * z,
        ratio_cap=bad_cap / good_floor,
        machine_classes=(
            ("fast", (0, fast_count)),
            ("buffer", (fast_count, fast_count + k)),
            ("anchor", (anchor, anchor + 1)),
        ),
        job_classes=(("large", (0, n_large)), ("small", (n_large, n_large + n_small))),
        params=(
            ("m", float(m)),
            ("s_max", s),
            ("z", float(z)),
            ("m_prime", float(m_prime)),
            ("k_prime", k_prime),
            ("k", float(k)),
            ("s_prime", s_prime),
            ("n_large", float(n_large)),
            ("n_small", float(n_small)),
            ("q_threshold", q_threshold),
        ),
        warnings=tuple(warnings),
    )


# ---------------------------------------------------------------------------
# Lex-jump neighborhood, restricted machines
# ---------------------------------------------------------------------------


def recurrence_a(k: int) -> tuple[tuple[int, ...], int]:
    """Layer-size recurrence: a_0 = k^2, a_1 = k^3, then
    a_h = ceil((a_{h-1}/a_{h-2} - 7/15) * a_{h-1}) in exact rational
    arithmetic, stopping at the first z with a_z <= a_{z-1}.

    Returns (a_0..a_z, z). Verified on return: each ratio step whose
    premise a_{h-1} >= 15 holds shrinks by at least 2/5 (so the chained
    bound a_h/a_{h-1} <= k - (h-1)*2/5 holds whenever k^2 >= 15; at k ∈
    {2, 3} the +1 ceiling slack can exceed the 1/15 margin), the depth z
    stays below 5k/2, and the machine total sum(a_0..a_{z-1}) stays below
    Gamma(ceil(5k/2) + 3). Use ratio_bound_margins for the per-step
    slack of the chained bound itself."""
    if int(k) != k or k < 2:
        raise ParameterError(f"need integer k >= 2, got {k}")
    k = int(k)
    seq = [k * k, k**3]
    while True:
        ratio = Fraction(seq[-1], seq[-2])
        if ratio <= 1:
            break
        seq.append(math.ceil((ratio - Fraction(7, 15)) * seq[-1]))
    z = len(seq) - 1
    for h in range(2, z + 1):
        step_ok = Fraction(seq[h], seq[h - 1]) <= Fraction(seq[h - 1], seq[h - 2]) - Fraction(2, 5)
        if seq[h - 1] >= 15 and not step_ok:
            raise RuntimeError(f"recurrence ratio step violated at h={h} for k={k}")
    if not 2 * z < 5 * k:
        raise RuntimeError(f"recurrence depth {z} reached 5k/2 for k={k}")
    log_machines = math.log(sum(seq[:z]))
    if log_machines > math.lgamma(math.ceil(5 * k / 2) + 3):
        raise RuntimeError(f"machine total exceeds its gamma bound for k={k}")
    return tuple(seq), z


def ratio_bound_margins(k: int) -> tuple[Fraction, ...]:
    """Exact margins (k - (h-1)*2/5) - a_h/a_{h-1} for h = 1..z; the
    chained ratio bound holds iff every margin is nonnegative."""
    seq, z = recurrence_a(k)
    return tuple(
        Fraction(k) - Fraction(2 * (h - 1), 5) - Fraction(seq[h], seq[h - 1])
        for h in range(1, z + 1)
    )


def restricted_lex_size(k: int) -> tuple[int, int]:
    """(machine count, job count) of the layered family, without building."""
    seq, z = recurrence_a(k)
    machines = sum(seq[:z])
    jobs = sum(seq[1:]) + 17 * machines
    return machines, jobs


def build_restricted_lex_lb(
    k: int, lenient: bool = False, max_jobs: int = DEFAULT_MAX_JOBS
) -> Construction:
    """Unit machines in layers of sizes a_0..a_{z-1} (recurrence_a). Layer h
    holds a_h large jobs (uniform [7/8, 1], allowed on layers h and h+1; the
    last layer's large jobs stay inside it) and 17 a_{h-1} small jobs
    (uniform [0, 1/8], pinned to layer h). The bad schedule is per-layer LPT;
    when every layer's large and small mass concentrates (within m_h/16 and
    m_h/32 of its mean), it is lex-jump optimal with makespan >= 15k/16,
    while the spread-one-layer-up benchmark stays <= 5."""
    if int(k) != k or k < 2:
        raise ParameterError(f"need integer k >= 2, got {k}")
    k = int(k)
    warnings: list[str] = []
    if k < 68:
        message = f"quality premise k >= 68 unmet (k={k}); ratios shrink accordingly"
        if not lenient:
            raise ParameterError(message)
        warnings.append(message)
    seq, z = recurrence_a(k)
    machine_total, job_total = restricted_lex_size(k)
    if job_total > max_jobs:
        raise ParameterError(
            f"layered family at k={k} needs {machine_total} machines and "
            f"{job_total} jobs, beyond the max_jobs cap {max_jobs}"
        )

    machine_classes = []
    offset = 0
    for h in range(1, z + 1):
        m_h = seq[h - 1]
        machine_classes.append((f"layer{h}", (offset, offset + m_h)))
        offset += m_h
    layer_machines = {
        h: frozenset(range(start, stop))
        for h, (_name, (start, stop)) in zip(range(1, z + 1), machine_classes)
    }

    large_density = uniform_spec(7.0 / 8.0, 1.0)
    small_density = uniform_spec(0.0, 1.0 / 8.0)
    job_classes = []
    densities: list[DensitySpec] = []
    allowed: list[frozenset[int]] = []
    for h in range(1, z + 1):
        a_h = seq[h]
        m_h = seq[h - 1]
        if h < z:
            ride_up = frozenset(layer_machines[h] | layer_machines[h + 1])
        else:
            ride_up = layer_machines[z]
        start = len(densities)
        job_classes.append((f"layer{h}_large", (start, start + a_h)))
        densities.extend([large_density] * a_h)
        allowed.extend([ride_up] * a_h)
        start = len(densities)
        job_classes.append((f"layer{h}_small", (start, start + 17 * m_h)))
        densities.extend([small_density] * (17 * m_h))
        allowed.extend([layer_machines[h]] * (17 * m_h))

    spec = SmoothedInstanceSpec(
        speeds=(1.0,) * machine_total,
        densities=tuple(densities),
        allowed=tuple(allowed),
    )

    def realize(instance: Instance):
        p = instance.jobs
        n = instance.n
        assign = [-1] * n
        loads = [0.0] * machine_total
        events: dict[str, bool] = {}
        arr = np.asarray(p)
        for h in range(1, z + 1):
            a_h, m_h = seq[h], seq[h - 1]
            lstart, lstop = job_classes[2 * (h - 1)][1]
            sstart, sstop = job_classes[2 * h - 1][1]
            layer_jobs = list(range(lstart, lstop)) + list(range(sstart, sstop))
            layer_jobs.sort(key=lambda j: (-p[j], j))
            machines = machine_classes[h - 1][1]
            greedy_extend(
                instance, assign, loads, layer_jobs, machine_filter=range(*machines)
            )
            large_sum = float(arr[lstart:lstop].sum())
            small_sum = float(arr[sstart:sstop].sum())
            events[f"layer{h}_large"] = (
                abs(large_sum - (15.0 / 16.0) * a_h) <= m_h / 16.0
            )
            events[f"layer{h}_small"] = (
                abs(small_sum - (17.0 / 16.0) * m_h) <= m_h / 32.0
            )
        bad = Schedule(assignment=tuple(assign))

        good = [-1] * n
        for h in range(1, z + 1):
            lstart, lstop = job_classes[2 * (h - 1)][1]
            target_layer = h + 1 if h < z else z
            mstart, _mstop = machine_classes[target_layer - 1][1]
            for offset_j, j in enumerate(range(lstart, lstop)):
                good[j] = mstart + offset_j
            sstart, sstop = job_classes[2 * h - 1][1]
            base = machine_classes[h - 1][1][0]
            for offset_j, j in enumerate(range(sstart, sstop)):
                good[j] = base + offset_j // 17
        return bad, Schedule(assignment=tuple(good)), events

    bad_cap = max(
        (seq[h] + 17.0 * seq[h - 1] / 8.0) / seq[h - 1] + 1.0 for h in range(1, z + 1)
    )
    return Construction(
        name="restricted-lex",
        spec=spec,
        realize=realize,
        predicted_ratio_lb=(15.0 * k / 16.0) / 5.0,
        cstar_cap=5.0,
        ratio_cap=bad_cap / (7.0 / 8.0),
        machine_classes=tuple(machine_classes),
        job_classes=tuple(job_classes),
        params=(("k", float(k)), ("z", float(z))),
        warnings=tuple(warnings),
    )


def class_load_spread(construction: Construction, sample: ConstructionSample) -> float:
    """Largest within-machine-class load spread (max - min) of the bad
    schedule. The layered family keeps this at or below 1/8 on concentrated
    samples."""
    loads = machine_loads(sample.instance, sample.bad)
    worst = 0.0
    for _name, (start, stop) in construction.machine_classes:
        class_loads = loads[start:stop]
        worst = max(worst, max(class_loads) - min(class_loads))
    return worst


def class_load_deviation(construction: Construction, sample: ConstructionSample) -> float:
    """Largest deviation of a bad-schedule machine load from its layer's
    expected mean load ((15/16) a_h + (17/16) m_h) / m_h; at most 7/32 on
    concentrated samples of the layered family."""
    loads = machine_loads(sample.instance, sample.bad)
    worst = 0.0
    for index, (_name, (start, stop)) in enumerate(construction.machine_classes):
        h = index + 1
        m_h = stop - start
        lstart, lstop = construction.job_classes[2 * (h - 1)][1]
        a_h = lstop - lstart
        expected = ((15.0 / 16.0) * a_h + (17.0 / 16.0) * m_h) / m_h
        for i in range(start, stop):
            worst = max(worst, abs(loads[i] - expected))
    return worst


# ---------------------------------------------------------------------------
# Name-based dispatch (CLI and sweeps)
# ---------------------------------------------------------------------------


def build_by_name(
    name: str,
    params: dict[str, float],
    lenient: bool = False,
    max_jobs: int = DEFAULT_MAX_JOBS,
) -> Construction:
    if name == "jump-related":
        return build_jump_related_lb(params["phi"])
    if name == "lexlist":
        return build_lexlist_lb(params["phi"])
    if name == "restricted-jump":
        return build_restricted_jump_lb(
            int(params["m"]), params["s_max"], int(params["z"]), lenient=lenient
        )
    if name == "restricted-lex":
        return build_restricted_lex_lb(
            int(params["k"]), lenient=lenient, max_jobs=max_jobs
        )
    raise ParameterError(f"unknown construction {name!r}; known: {CONSTRUCTION_NAMES}")
