"""Smoothed input model, samplers, and Hoeffding machinery.

A smoothed instance keeps speeds and allowed sets deterministic while each
processing requirement p_j is drawn independently from an adversarial
piecewise-constant density on [0, scale] whose height never exceeds
phi/scale. For scale 1 this is the usual phi-smooth model: phi = 1 is the
uniform average case, and growing phi lets the adversary concentrate each
job into an interval of width as small as 1/phi. The scale field admits the
rescaled variant some constructions use without renormalizing them.

Sampling is reproducible and order-insensitive: one counter-based stream
(Philox keyed through SeedSequence) yields a uniform vector u, and job j
deterministically receives inverse_cdf_j(1 - u[j]). Identical seeds give
identical instances; prefixes agree across specs sharing their first jobs.
derive_seed(seed, *path) gives collision-free child seeds for trial and
multistart streams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import Instance, ModelError

_INTEGRAL_TOL = 1e-9


def rng_stream(seed: int, *path: int) -> np.random.Generator:
    """Counter-based generator keyed by (seed, path); streams with distinct
    paths are independent and insensitive to call order."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=path)
    return np.random.Generator(np.random.Philox(ss))


_stream = rng_stream


def derive_seed(seed: int, *path: int) -> int:
    """Deterministic 128-bit child seed for (seed, path)."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=path)
    high, low = (int(x) for x in ss.generate_state(2, np.uint64))
    return (high << 64) | low


@dataclass(frozen=True)
class DensitySpec:
    """Piecewise-constant probability density on [0, scale].

    pieces: disjoint (a, b, height) triples with 0 <= a < b <= scale and
    height >= 0, total integral 1. phi defaults to the tightest valid value
    scale * max(height), never below 1.
    """

    pieces: tuple[tuple[float, float, float], ...]
    scale: float = 1.0
    phi: float | None = None

    def __post_init__(self) -> None:
        pieces = tuple(
            (float(a), float(b), float(h)) for a, b, h in self.pieces
        )
        pieces = tuple(sorted(pieces))
        object.__setattr__(self, "pieces", pieces)
        object.__setattr__(self, "scale", float(self.scale))
        if self.scale <= 0:
            raise ModelError("density scale must be positive")
        if not pieces:
            raise ModelError("density needs at least one piece")
        integral = 0.0
        previous_b = 0.0
        for a, b, h in pieces:
            if not (0.0 <= a < b <= self.scale + 1e-12):
                raise ModelError(f"piece [{a}, {b}) outside [0, {self.scale}]")
            if h < 0:
                raise ModelError("piece heights must be non-negative")
            if a < previous_b - 1e-12:
                raise ModelError("density pieces overlap")
            previous_b = b
            integral += h * (b - a)
        if abs(integral - 1.0) > _INTEGRAL_TOL:
            raise ModelError(f"density integrates to {integral}, expected 1")
        tight = max(1.0, self.scale * max(h for _a, _b, h in pieces))
        if self.phi is None:
            object.__setattr__(self, "phi", tight)
        else:
            object.__setattr__(self, "phi", float(self.phi))
            if self.phi < 1.0:
                raise ModelError("phi must be at least 1")
            if tight > self.phi * (1.0 + 1e-12):
                raise ModelError(
                    f"density height {tight / self.scale} exceeds phi/scale"
                )

    def support(self) -> tuple[float, float]:
        live = [(a, b) for a, b, h in self.pieces if h > 0]
        return (live[0][0], live[-1][1])

    def mean(self) -> float:
        return sum(h * (b * b - a * a) / 2.0 for a, b, h in self.pieces)

    def ppf(self, u):
        """Inverse CDF; u may be a scalar or array in (0, 1]."""
        live = [(a, b, h) for a, b, h in self.pieces if h > 0]
        starts = np.array([a for a, _b, _h in live])
        heights = np.array([h for _a, _b, h in live])
        masses = np.array([h * (b - a) for a, b, h in live])
        cum = np.cumsum(masses)
        cum[-1] = max(cum[-1], 1.0)  # guard the top end against rounding
        u_arr = np.asarray(u, dtype=np.float64)
        idx = np.minimum(np.searchsorted(cum, u_arr, side="left"), len(live) - 1)
        before = np.concatenate(([0.0], cum[:-1]))
        x = starts[idx] + (u_arr - before[idx]) / heights[idx]
        ends = np.array([b for _a, b, _h in live])
        x = np.minimum(x, ends[idx])
        if np.isscalar(u) or u_arr.ndim == 0:
            return float(x)
        return x


def uniform_spec(a: float, b: float, scale: float = 1.0) -> DensitySpec:
    """Uniform density on [a, b] inside [0, scale]; phi = scale/(b-a)."""
    a, b, scale = float(a), float(b), float(scale)
    if not (0.0 <= a < b <= scale):
        raise ModelError(f"need 0 <= a < b <= scale, got a={a}, b={b}, scale={scale}")
    return DensitySpec(pieces=((a, b, 1.0 / (b - a)),), scale=scale)


@dataclass(frozen=True)
class SmoothedInstanceSpec:
    """Deterministic part of a smoothed instance: speeds, allowed sets, and
    one density per job."""

    speeds: tuple[float, ...]
    densities: tuple[DensitySpec, ...]
    allowed: tuple[frozenset[int], ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "speeds", tuple(float(s) for s in self.speeds))
        object.__setattr__(self, "densities", tuple(self.densities))
        if not self.speeds or not self.densities:
            raise ModelError("spec needs at least one machine and one job")
        if any(s <= 0 for s in self.speeds):
            raise ModelError("all machine speeds must be positive")
        if any(x < y for x, y in zip(self.speeds, self.speeds[1:])):
            raise ModelError("machine speeds must be sorted non-increasing")
        if self.allowed is not None:
            object.__setattr__(
                self,
                "allowed",
                tuple(
                    a if isinstance(a, frozenset) else frozenset(int(i) for i in a)
                    for a in self.allowed
                ),
            )
            if len(self.allowed) != len(self.densities):
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

    @property
    def m(self) -> int:
        return len(self.speeds)

    @property
    def n(self) -> int:
        return len(self.densities)

    @property
    def phi(self) -> float:
        return max(d.phi for d in self.densities)


def sample_instance(spec: SmoothedInstanceSpec, seed: int) -> Instance:
    """Draw one instance; pure in (spec, seed).

    u[j] is the j-th entry of the seed's counter-based stream, so the draw
    for job j depends only on (seed, j); jobs sharing a density object are
    inverted in one vectorized call.
    """
    u = _stream(seed).random(spec.n)
    v = 1.0 - u  # in (0, 1], keeping every draw strictly inside the support
    p = np.empty(spec.n, dtype=np.float64)
    groups: dict[int, list[int]] = {}
    for j, density in enumerate(spec.densities):
        groups.setdefault(id(density), []).append(j)
    for indices in groups.values():
        density = spec.densities[indices[0]]
        idx = np.array(indices)
        p[idx] = density.ppf(v[idx])
    normalized = spec.speeds[-1] == 1.0 and all(
        d.support()[1] <= 1.0 for d in spec.densities
    )
    return Instance(
        speeds=spec.speeds,
        jobs=tuple(float(x) for x in p),
        allowed=spec.allowed,
        normalized=normalized,
    )


# ---------------------------------------------------------------------------
# Hoeffding machinery
# ---------------------------------------------------------------------------


def hoeffding_tail(ranges, t: float) -> float:
    """exp(-2 t^2 / sum (b_j - a_j)^2): bound on P(sum deviates from its
    mean by at least t on either side), for independent bounded variables."""
    if t < 0:
        raise ValueError("deviation t must be non-negative")
    denom = sum((b - a) ** 2 for a, b in ranges)
    if denom == 0.0:
        return 1.0 if t == 0 else 0.0
    return math.exp(-2.0 * t * t / denom)


def hoeffding_ci(samples, value_range: float, delta: float) -> tuple[float, float]:
    """Two-sided confidence interval at level 1 - delta for the mean of
    i.i.d. samples spanning at most value_range: mean +/- value_range *
    sqrt(ln(2/delta) / (2 count))."""
    samples = list(samples)
    if not samples:
        raise ValueError("need at least one sample")
    if not 0 < delta <= 2:
        raise ValueError("delta must be in (0, 2]")
    mean = sum(samples) / len(samples)
    half = value_range * math.sqrt(math.log(2.0 / delta) / (2.0 * len(samples)))
    return (mean - half, mean + half)


def check_sum_lower_tail(n: int, phi: float, trials: int, seed: int = 0) -> float:
    """Empirical frequency of Q <= (n - sqrt(n ln n)) / (2 phi) for Q the
    sum of n i.i.d. uniform [0, 1/phi] draws. The analytic tail bound for
    this event is 1/sqrt(n)."""
    threshold = (n - math.sqrt(n * math.log(n))) / (2.0 * phi)
    hits = 0
    chunk = max(1, min(trials, 10**7 // max(1, n)))
    rng = _stream(seed)
    done = 0
    while done < trials:
        take = min(chunk, trials - done)
        q = rng.random((take, n)).sum(axis=1) / phi
        hits += int((q <= threshold).sum())
        done += take
    return hits / trials


@dataclass(frozen=True)
class RatioEstimate:
    """Monte-Carlo estimate of a mean performance ratio.

    value_range is the almost-sure ratio bound used for the CI width;
    fallback_denominators counts trials whose denominator fell back from the
    exact optimum to makespan_lower_bound (multistart mode under budget
    pressure), which widens value_range conservatively.
    """

    count: int
    ratios: tuple[float, ...]
    mean: float
    ci_low: float
    ci_high: float
    delta: float
    value_range: float
    neighborhood: str
    method: str
    fallback_denominators: int = 0

    def __post_init__(self) -> None:
        if self.count <= 0:
            raise ModelError("estimate needs at least one sample")
        if not (self.ci_low <= self.mean <= self.ci_high):
            raise ModelError("confidence interval must contain the mean")

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "mean": self.mean,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "delta": self.delta,
            "value_range": self.value_range,
            "neighborhood": self.neighborhood,
            "method": self.method,
            "fallback_denominators": self.fallback_denominators,
            "ratios": list(self.ratios),
        }


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def density_to_dict(density: DensitySpec) -> dict:
    return {
        "pieces": [{"a": a, "b": b, "h": h} for a, b, h in density.pieces],
        "scale": density.scale,
    }


def density_from_dict(data: dict) -> DensitySpec:
    try:
        pieces = tuple((p["a"], p["b"], p["h"]) for p in data["pieces"])
    except (KeyError, TypeError) as exc:
        raise ModelError(f"malformed density JSON: {exc}") from exc
    return DensitySpec(pieces=pieces, scale=float(data.get("scale", 1.0)))


def spec_to_dict(spec: SmoothedInstanceSpec) -> dict:
    jobs = []
    for j, density in enumerate(spec.densities):
        entry: dict = {"density": density_to_dict(density)}
        if spec.allowed is not None:
            entry["allowed"] = sorted(i + 1 for i in spec.allowed[j])
        jobs.append(entry)
    return {"speeds": list(spec.speeds), "jobs": jobs}


def spec_from_dict(data: dict) -> SmoothedInstanceSpec:
    try:
        speeds = tuple(float(s) for s in data["speeds"])
        raw_jobs = data["jobs"]
        densities = tuple(density_from_dict(entry["density"]) for entry in raw_jobs)
    except (KeyError, TypeError) as exc:
        raise ModelError(f"malformed spec JSON: {exc}") from exc
    allowed = None
    if any("allowed" in entry for entry in raw_jobs):
        m = len(speeds)
        allowed = tuple(
            frozenset(int(i) - 1 for i in entry.get("allowed", range(1, m + 1)))
            for entry in raw_jobs
        )
    return SmoothedInstanceSpec(speeds=speeds, densities=densities, allowed=allowed)
