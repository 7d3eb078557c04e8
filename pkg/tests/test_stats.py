"""Moment summary, interval, and z-score behavior."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from outlier_perf.errors import (
    EmptySample,
    NegativeStdev,
    NonPositiveK,
    ZeroMean,
    ZeroStdev,
)
from outlier_perf.stats import (
    DEFAULT_CONVENTIONS,
    MomentConventions,
    coefficient_of_variation,
    interval,
    summarize,
    zscore,
)

ALL_CONVENTIONS = [
    MomentConventions(sm, hm, kb)
    for sm in ("sample", "population")
    for hm in ("adjusted", "population")
    for kb in ("excess", "raw")
]


def test_constant_sample():
    s = summarize((5.0, 5.0, 5.0))
    assert s.n == 3
    assert s.min == s.max == s.mean == 5.0
    assert s.sum == 15.0
    assert s.stdev == 0.0
    assert s.skewness is None and s.kurtosis is None


def test_symmetric_sample_has_zero_skewness():
    s = summarize((1.0, 2.0, 3.0))
    assert s.mean == 2.0
    assert s.skewness == pytest.approx(0.0, abs=1e-15)


def test_stdev_modes():
    xs = (1.0, 2.0, 3.0, 4.0)
    assert summarize(xs).stdev == pytest.approx(1.2909944487358056, rel=1e-15)
    pop = summarize(xs, MomentConventions(stdev_mode="population"))
    assert pop.stdev == pytest.approx(1.118033988749895, rel=1e-15)


def test_singleton_sample():
    for conv in ALL_CONVENTIONS:
        s = summarize((4.2,), conv)
        assert s.n == 1
        assert s.min == s.max == s.mean == s.sum == 4.2
        assert s.stdev == 0.0
        assert s.skewness is None and s.kurtosis is None


def test_adjusted_shape_minimum_sample_sizes():
    two = summarize((1.0, 2.0))
    assert two.skewness is None and two.kurtosis is None
    three = summarize((1.0, 2.0, 4.0))
    assert three.skewness is not None and three.kurtosis is None
    four = summarize((1.0, 2.0, 3.0, 6.0))
    assert four.skewness is not None and four.kurtosis is not None


def test_population_shape_defined_from_n2():
    s = summarize((1.0, 2.0), MomentConventions(shape_mode="population"))
    assert s.skewness is not None and s.kurtosis is not None


def test_adjusted_shape_values():
    s = summarize((1.0, 2.0, 3.0, 6.0))
    assert s.skewness == pytest.approx(1.1903401282789945, rel=1e-12)
    assert s.kurtosis == pytest.approx(1.5, abs=1e-12)


def test_population_shape_values():
    conv = MomentConventions(shape_mode="population", kurtosis_basis="raw")
    s = summarize((1.0, 2.0, 3.0, 6.0), conv)
    assert s.skewness == pytest.approx(0.6872431934890912, rel=1e-12)
    assert s.kurtosis == pytest.approx(2.0, abs=1e-12)


def test_raw_kurtosis_is_excess_plus_three():
    rng = random.Random(9)
    xs = tuple(rng.uniform(-3, 3) for _ in range(40))
    for hm in ("adjusted", "population"):
        excess = summarize(xs, MomentConventions(shape_mode=hm, kurtosis_basis="excess"))
        raw = summarize(xs, MomentConventions(shape_mode=hm, kurtosis_basis="raw"))
        assert raw.kurtosis == pytest.approx(excess.kurtosis + 3.0, rel=1e-15)


def test_empty_sample_raises():
    with pytest.raises(EmptySample):
        summarize(())


def test_permutation_invariance_is_exact():
    rng = random.Random(4)
    xs = [rng.uniform(-50, 50) for _ in range(37)]
    shuffled = xs[:]
    random.Random(5).shuffle(shuffled)
    assert summarize(tuple(xs)) == summarize(tuple(shuffled))


def test_sum_equals_n_times_mean():
    rng = random.Random(6)
    xs = tuple(rng.uniform(-1e3, 1e3) for _ in range(100))
    s = summarize(xs)
    assert s.sum == pytest.approx(s.n * s.mean, rel=1e-12)


def test_normal_sample_excess_kurtosis_near_zero():
    rng = random.Random(123)
    xs = tuple(rng.gauss(0.0, 1.0) for _ in range(10_000))
    s = summarize(xs)
    assert abs(s.kurtosis) < 0.1
    assert abs(s.skewness) < 0.1


@given(
    xs=st.lists(st.floats(min_value=-100, max_value=100), min_size=2, max_size=40),
    a=st.floats(min_value=0.25, max_value=8.0),
    negate=st.booleans(),
    b=st.floats(min_value=-100, max_value=100),
)
@settings(max_examples=150, deadline=None)
def test_affine_equivariance(xs, a, negate, b):
    base = summarize(tuple(xs))
    if base.stdev < 1e-3:
        return
    if negate:
        a = -a
    moved = summarize(tuple(a * x + b for x in xs))
    assert moved.mean == pytest.approx(a * base.mean + b, rel=1e-9, abs=1e-9)
    assert moved.stdev == pytest.approx(abs(a) * base.stdev, rel=1e-9)
    if base.skewness is not None:
        sign = 1.0 if a > 0 else -1.0
        assert moved.skewness == pytest.approx(sign * base.skewness, rel=1e-6, abs=1e-6)
    if base.kurtosis is not None:
        assert moved.kurtosis == pytest.approx(base.kurtosis, rel=1e-6, abs=1e-6)


def test_interval_reproduces_published_bounds():
    bounds = interval(1.8713e-2, 0.082777, 2.0)
    assert bounds.lower == pytest.approx(-0.14684, abs=5e-6)
    assert bounds.upper == pytest.approx(0.18427, abs=5e-6)


def test_interval_degenerate_and_symmetry():
    flat = interval(3.5, 0.0, 2.0)
    assert (flat.lower, flat.upper) == (3.5, 3.5)
    bounds = interval(0.25, 1.5, 2.0)
    assert bounds.lower == 0.25 - 2.0 * 1.5
    assert bounds.upper == 0.25 + 2.0 * 1.5
    assert bounds.upper - bounds.lower == pytest.approx(2 * 2.0 * 1.5, rel=1e-15)


def test_interval_argument_errors():
    with pytest.raises(NegativeStdev):
        interval(0.0, -1.0, 2.0)
    with pytest.raises(NegativeStdev):
        interval(0.0, float("nan"), 2.0)
    for bad_k in (0.0, -2.0):
        with pytest.raises(NonPositiveK):
            interval(0.0, 1.0, bad_k)


def test_zscore_basics():
    s = summarize((0.0, 1.0, 2.0))  # mean 1, sample stdev 1
    assert zscore(1.0, s) == 0.0
    assert zscore(3.0, s) == pytest.approx(2.0, rel=1e-15)
    degenerate = summarize((2.0, 2.0))
    with pytest.raises(ZeroStdev):
        zscore(5.0, degenerate)


def test_zscore_matches_interval_classification():
    from outlier_perf.outliers import classify

    rng = random.Random(77)
    for _ in range(1000):
        xs = tuple(rng.uniform(-10, 10) for _ in range(rng.randint(2, 30)))
        s = summarize(xs)
        if s.stdev == 0.0:
            continue
        value = s.mean + rng.uniform(-4, 4) * s.stdev
        k = rng.uniform(0.5, 3.0)
        z = zscore(value, s)
        label = classify(value, interval(s.mean, s.stdev, k)).label
        assert (abs(z) >= k) == (label != "inlier")


def test_coefficient_of_variation():
    s = summarize((1.0, 2.0, 3.0))
    assert coefficient_of_variation(s) == pytest.approx(1.0 / 2.0, rel=1e-15)
    centered = summarize((-1.0, 0.0, 1.0))
    with pytest.raises(ZeroMean):
        coefficient_of_variation(centered)


def test_cv_is_signed():
    s = summarize((-1.0, -2.0, -3.0))
    assert coefficient_of_variation(s) < 0.0


def test_unknown_convention_strings_rejected():
    with pytest.raises(ValueError):
        MomentConventions(stdev_mode="bogus")
    with pytest.raises(ValueError):
        MomentConventions(shape_mode="bogus")
    with pytest.raises(ValueError):
        MomentConventions(kurtosis_basis="bogus")


def test_default_conventions():
    assert DEFAULT_CONVENTIONS.stdev_mode == "sample"
    assert DEFAULT_CONVENTIONS.shape_mode == "adjusted"
    assert DEFAULT_CONVENTIONS.kurtosis_basis == "excess"
