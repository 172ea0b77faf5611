from __future__ import annotations

import math

import numpy as np
import pytest

from smoothsched.model import ModelError
from smoothsched.smoothing import (
    DensitySpec,
    RatioEstimate,
    SmoothedInstanceSpec,
    check_sum_lower_tail,
    density_from_dict,
    density_to_dict,
    derive_seed,
    hoeffding_ci,
    hoeffding_tail,
    rng_stream,
    sample_instance,
    spec_from_dict,
    spec_to_dict,
    uniform_spec,
)


def test_uniform_spec_basics() -> None:
    d = uniform_spec(0.5, 1.0)
    assert d.phi == 2.0
    assert d.support() == (0.5, 1.0)
    assert d.mean() == pytest.approx(0.75)
    assert d.ppf(0.5) == pytest.approx(0.75)
    assert uniform_spec(0.0, 1.0).phi == 1.0


def test_density_two_piece_ppf_and_mean() -> None:
    d = DensitySpec(pieces=((0.0, 0.5, 0.5), (0.5, 1.0, 1.5)))
    assert d.phi == 1.5
    assert d.mean() == pytest.approx(0.625)
    assert d.ppf(0.25) == pytest.approx(0.5)
    assert d.ppf(0.625) == pytest.approx(0.75)
    assert d.ppf(1.0) == pytest.approx(1.0)
    xs = d.ppf(np.array([0.1, 0.25, 0.9]))
    assert xs == pytest.approx([0.2, 0.5, 1.0 - 0.1 / 1.5])


def test_density_with_gap() -> None:
    d = DensitySpec(pieces=((0.0, 0.25, 2.0), (0.75, 1.0, 2.0)))
    assert d.support() == (0.0, 1.0)
    assert d.ppf(0.5) == pytest.approx(0.25)
    assert d.ppf(0.75) == pytest.approx(0.875)


def test_density_validation() -> None:
    with pytest.raises(ModelError):
        DensitySpec(pieces=())
    with pytest.raises(ModelError):
        DensitySpec(pieces=((0.0, 1.0, 1.0),), scale=0.0)
    with pytest.raises(ModelError):
        DensitySpec(pieces=((0.0, 2.0, 0.5),), scale=1.0)  # outside [0, scale]
    with pytest.raises(ModelError):
        DensitySpec(pieces=((0.0, 0.5, 1.0), (0.25, 1.0, 1.0)))  # overlap
    with pytest.raises(ModelError):
        DensitySpec(pieces=((0.0, 1.0, 0.9),))  # integral != 1
    with pytest.raises(ModelError):
        DensitySpec(pieces=((0.0, 1.0, 1.0),), phi=0.5)  # phi below 1
    with pytest.raises(ModelError):
        uniform_spec(0.5, 1.0).pieces and DensitySpec(
            pieces=((0.5, 1.0, 2.0),), phi=1.5
        )  # height 2 exceeds phi/scale


def test_density_phi_may_exceed_tight_value() -> None:
    d = DensitySpec(pieces=((0.0, 1.0, 1.0),), phi=8.0)
    assert d.phi == 8.0


def test_smoothed_spec_properties_and_validation() -> None:
    spec = SmoothedInstanceSpec(
        speeds=(2.0, 1.0),
        densities=(uniform_spec(0.0, 1.0), uniform_spec(0.75, 1.0)),
    )
    assert spec.m == 2
    assert spec.n == 2
    assert spec.phi == 4.0
    with pytest.raises(ModelError):
        SmoothedInstanceSpec(speeds=(1.0, 2.0), densities=(uniform_spec(0.0, 1.0),))
    with pytest.raises(ModelError):
        SmoothedInstanceSpec(
            speeds=(1.0,),
            densities=(uniform_spec(0.0, 1.0),),
            allowed=(frozenset(),),
        )
    with pytest.raises(ModelError):
        SmoothedInstanceSpec(
            speeds=(1.0,),
            densities=(uniform_spec(0.0, 1.0),),
            allowed=(frozenset({1}),),
        )


def test_sample_instance_deterministic_and_in_support() -> None:
    spec = SmoothedInstanceSpec(
        speeds=(2.0, 1.0),
        densities=(uniform_spec(0.5, 1.0), uniform_spec(0.0, 0.25), uniform_spec(0.5, 1.0)),
    )
    a = sample_instance(spec, 42)
    b = sample_instance(spec, 42)
    assert a == b
    assert a != sample_instance(spec, 43)
    for j, density in enumerate(spec.densities):
        lo, hi = density.support()
        assert lo < a.jobs[j] <= hi
    assert a.normalized  # slowest speed 1 and all supports inside [0, 1]


def test_sample_instance_prefix_stable() -> None:
    d = uniform_spec(0.0, 1.0)
    long_spec = SmoothedInstanceSpec(speeds=(1.0,), densities=(d,) * 6)
    short_spec = SmoothedInstanceSpec(speeds=(1.0,), densities=(d,) * 3)
    long_inst = sample_instance(long_spec, 7)
    short_inst = sample_instance(short_spec, 7)
    assert long_inst.jobs[:3] == short_inst.jobs


def test_rng_stream_and_derive_seed() -> None:
    assert rng_stream(1, 2, 3).random() == rng_stream(1, 2, 3).random()
    assert rng_stream(1, 2, 3).random() != rng_stream(1, 2, 4).random()
    s = derive_seed(5, 1, 2)
    assert s == derive_seed(5, 1, 2)
    assert isinstance(s, int)
    assert 0 <= s < 2**128
    assert derive_seed(5) != derive_seed(5, 0)
    assert derive_seed(5, 1) != derive_seed(5, 2)


def test_hoeffding_tail_values() -> None:
    assert hoeffding_tail([(0.0, 1.0)], 0.0) == 1.0
    assert hoeffding_tail([(0.0, 1.0)], 1.0) == pytest.approx(math.exp(-2.0))
    assert hoeffding_tail([], 0.5) == 0.0
    with pytest.raises(ValueError):
        hoeffding_tail([(0.0, 1.0)], -0.1)


def test_hoeffding_ci_width() -> None:
    samples = [0.5] * 100
    low, high = hoeffding_ci(samples, value_range=1.0, delta=0.05)
    half = math.sqrt(math.log(2.0 / 0.05) / 200.0)
    assert high - low == pytest.approx(2.0 * half)
    assert (low + high) / 2.0 == pytest.approx(0.5)
    assert half == pytest.approx(0.135810151574, abs=1e-9)
    with pytest.raises(ValueError):
        hoeffding_ci([], 1.0, 0.05)
    with pytest.raises(ValueError):
        hoeffding_ci([1.0], 1.0, 0.0)


def test_check_sum_lower_tail_single_job() -> None:
    # n=1: threshold is 1/(2 phi), the median of uniform [0, 1/phi].
    freq = check_sum_lower_tail(1, 2.0, trials=4000, seed=1)
    assert freq == pytest.approx(0.5, abs=0.05)


def test_check_sum_lower_tail_is_deterministic_and_small_for_large_n() -> None:
    a = check_sum_lower_tail(100, 2.0, trials=2000, seed=0)
    b = check_sum_lower_tail(100, 2.0, trials=2000, seed=0)
    assert a == b
    assert a <= 1.0 / math.sqrt(100)  # analytic bound 1/sqrt(n)


def test_ratio_estimate_validation_and_to_dict() -> None:
    est = RatioEstimate(
        count=2,
        ratios=(1.0, 1.5),
        mean=1.25,
        ci_low=1.0,
        ci_high=1.5,
        delta=0.05,
        value_range=2.0,
        neighborhood="jump",
        method="exact",
    )
    d = est.to_dict()
    assert d["mean"] == 1.25
    assert d["ratios"] == [1.0, 1.5]
    assert d["fallback_denominators"] == 0
    with pytest.raises(ModelError):
        RatioEstimate(
            count=0,
            ratios=(),
            mean=1.0,
            ci_low=0.9,
            ci_high=1.1,
            delta=0.05,
            value_range=1.0,
            neighborhood="jump",
            method="exact",
        )
    with pytest.raises(ModelError):
        RatioEstimate(
            count=1,
            ratios=(1.0,),
            mean=2.0,
            ci_low=0.9,
            ci_high=1.1,
            delta=0.05,
            value_range=1.0,
            neighborhood="jump",
            method="exact",
        )


def test_density_json_round_trip() -> None:
    d = DensitySpec(pieces=((0.0, 0.5, 0.5), (0.5, 1.0, 1.5)), scale=1.0)
    again = density_from_dict(density_to_dict(d))
    assert again == d
    with pytest.raises(ModelError):
        density_from_dict({"pieces": [{"a": 0.0}]})


def test_spec_json_round_trip_one_based_allowed() -> None:
    spec = SmoothedInstanceSpec(
        speeds=(2.0, 1.0),
        densities=(uniform_spec(0.0, 1.0), uniform_spec(0.5, 1.0)),
        allowed=(frozenset({0, 1}), frozenset({1})),
    )
    data = spec_to_dict(spec)
    assert data["jobs"][1]["allowed"] == [2]  # JSON speaks 1-based
    again = spec_from_dict(data)
    assert again == spec
    assert sample_instance(again, 3) == sample_instance(spec, 3)
