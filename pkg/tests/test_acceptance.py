"""Acceptance gate: one test per published criterion.

Each test pins a criterion at its stated tolerance and runtime budget.
The conftest hook prints a PASS/FAIL line per criterion after the run.

``test_systematic_rollup`` is expected to fail: the published roll-up
lists Mondo TV as a systematic negative outlier at threshold 6, but
only 4 of its 12 printed cells lie outside the printed intervals, so
the roll-up arithmetic cannot reach 6. The test asserts the published
finding as stated rather than weakening the threshold.
"""

import math
import time
from decimal import Decimal

import pytest

from click.testing import CliRunner

from outlier_perf.cli import main as cli_main
from outlier_perf.fixtures import (
    BENCHMARK_CELLS,
    BENCHMARK_DS_AVG_SPREAD,
    BENCHMARK_MOMENTS,
    FixtureSpec,
    KNOWN_DISCREPANCIES,
    PlantedOutlier,
    benchmark_fixture,
    benchmark_report,
    generate,
    oracle_summarize,
)
from outlier_perf.indicators import (
    RATIO_NAMES,
    CrossSections,
    cross_sections,
    efficiency_matrix,
)
from outlier_perf.ingest import write_dataset
from outlier_perf.outliers import (
    classify,
    detect_outliers,
    direction_cohorts,
    systematic_outliers,
)
from outlier_perf.stats import (
    DistributionSummary,
    MomentConventions,
    coefficient_of_variation,
    interval,
    summarize,
)

ALL_CONVENTIONS = [
    MomentConventions(sm, hm, kb)
    for sm in ("sample", "population")
    for hm in ("adjusted", "population")
    for kb in ("excess", "raw")
]

# Printed bounds that miss the recomputed value by more than half a unit
# in their last digit. Every one of them still lands within the
# tolerance propagated from the printed inputs (the mean and stdev are
# themselves rounded), so the misses are print-precision artifacts.
EXPECTED_STRICT_MISSES = {
    ("ros_over_ttam", "lower"),
    ("ros_over_ttam", "upper"),
    ("ds_over_ttaM", "lower"),
    ("roi_over_ttaM", "lower"),
    ("ros_over_ttaM", "lower"),
}


def half_unit(printed: float) -> float:
    """Half of one unit in the last printed decimal digit."""
    exponent = Decimal(repr(printed)).as_tuple().exponent
    return 0.5 * 10.0 ** exponent


def test_interval_reproduction():
    started = time.perf_counter()
    vectors = benchmark_fixture()
    strict_misses = set()
    for name, (mu, sigma) in BENCHMARK_MOMENTS.items():
        printed = vectors.intervals[name]
        computed = interval(mu, sigma, 2.0)
        propagated = half_unit(mu) + 2.0 * half_unit(sigma)
        for side, want, got in (
            ("lower", printed.lower, computed.lower),
            ("upper", printed.upper, computed.upper),
        ):
            error = abs(got - want)
            assert error <= half_unit(want) + propagated, (
                f"{name} {side}: recomputed {got!r} vs printed {want!r}, "
                f"error {error:g} exceeds even the propagated tolerance"
            )
            if error > half_unit(want) + 1e-12:
                strict_misses.add((name, side))
    assert strict_misses == EXPECTED_STRICT_MISSES
    assert time.perf_counter() - started < 1.0


def test_benchmark_classification():
    started = time.perf_counter()
    report = benchmark_report()
    mismatches = set()
    agreements = 0
    for firm, cells in BENCHMARK_CELLS.items():
        for name, (value, marked) in cells.items():
            computed = classify(value, report.indicators[name].interval)
            if computed.is_outlier == marked:
                agreements += 1
            else:
                mismatches.add((firm, name))
    assert agreements == 46
    assert mismatches == KNOWN_DISCREPANCIES
    assert time.perf_counter() - started < 1.0


def test_systematic_rollup():
    started = time.perf_counter()
    listed = set(systematic_outliers(benchmark_report(), threshold=6))
    expected = {
        ("Ternienergia", "positive"),
        ("Buongiorno", "positive"),
        ("Cairo Communications", "positive"),
        ("Mondo TV", "negative"),
    }
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    assert listed == expected, (
        "published roll-up at threshold 6 is not reproducible from the "
        "printed cells: Mondo TV shows only 4 of 12 cells outside the "
        f"printed intervals, so it cannot reach the threshold (got {sorted(listed)})"
    )


def test_denominator_monotonicity():
    started = time.perf_counter()
    buongiorno = benchmark_fixture().values["Buongiorno"]
    assert (
        buongiorno["ds_over_ttam"]
        >= buongiorno["ds_over_tta2"]
        >= buongiorno["ds_over_ttaM"]
    )
    assert (buongiorno["ds_over_ttam"], buongiorno["ds_over_tta2"]) == (0.4795, 0.2328)

    records = generate(FixtureSpec(firms=10_000, seed=11))
    for record in records:
        matrix = efficiency_matrix(record)
        for kind in ("ds", "da", "roi", "ros"):
            low = matrix.ratios[f"{kind}_over_ttaM"]
            mid = matrix.ratios[f"{kind}_over_tta2"]
            high = matrix.ratios[f"{kind}_over_ttam"]
            if matrix.averages.value(kind) >= 0:
                assert low <= mid <= high, record.firm_id
            else:
                assert low >= mid >= high, record.firm_id
    assert time.perf_counter() - started < 5.0


def test_moment_oracle_equivalence():
    started = time.perf_counter()
    import random

    rng = random.Random(20260818)
    for _ in range(1000):
        n = rng.randint(4, 500)
        sample = tuple(rng.uniform(-100.0, 100.0) for _ in range(n))
        for conventions in ALL_CONVENTIONS:
            ours = summarize(sample, conventions)
            ref = oracle_summarize(sample, conventions)
            for field in ("mean", "stdev", "skewness", "kurtosis"):
                a = getattr(ours, field)
                b = getattr(ref, field)
                assert (a is None) == (b is None), (n, conventions, field)
                if a is not None:
                    assert math.isclose(a, b, rel_tol=1e-10, abs_tol=1e-10), (
                        n,
                        conventions,
                        field,
                        a,
                        b,
                    )
    assert time.perf_counter() - started < 10.0


def test_coefficient_of_variation():
    mean, stdev = BENCHMARK_DS_AVG_SPREAD
    summary = DistributionSummary(
        n=62,
        min=mean,
        max=mean,
        sum=62 * mean,
        mean=mean,
        stdev=stdev,
        skewness=None,
        kurtosis=None,
    )
    assert coefficient_of_variation(summary) == pytest.approx(2.49, abs=0.01)


def _fixture_reports():
    """100 seeded panels, each with one indicator singled out."""
    for seed in range(100):
        records = generate(FixtureSpec(firms=30, seed=seed))
        cross = cross_sections([efficiency_matrix(r) for r in records])
        yield seed, RATIO_NAMES[seed % len(RATIO_NAMES)], cross


def test_scale_invariance():
    checked = 0
    for seed, name, cross in _fixture_reports():
        base = detect_outliers(cross)
        assert name in base.indicators, (seed, name)
        base_labels = {
            fid: cell.label for fid, cell in base.indicators[name].classifications.items()
        }
        for c in (0.01, 1.0, 100.0):
            scaled_samples = dict(cross.samples)
            scaled_samples[name] = tuple(c * x for x in cross.samples[name])
            scaled_cross = CrossSections(firm_ids=cross.firm_ids, samples=scaled_samples)
            scaled = detect_outliers(scaled_cross)
            labels = {
                fid: cell.label
                for fid, cell in scaled.indicators[name].classifications.items()
            }
            assert labels == base_labels, (seed, name, c)
            checked += 1
    assert checked == 300


def test_k_monotonicity():
    for seed, _name, cross in _fixture_reports():
        cells: dict[float, set] = {}
        for k in (1.0, 2.0, 3.0):
            report = detect_outliers(cross, k=k)
            cells[k] = {
                (name, fid)
                for name, screen in report.indicators.items()
                for fid, cell in screen.classifications.items()
                if cell.is_outlier
            }
        assert cells[1.0] >= cells[2.0] >= cells[3.0], seed


def test_cohort_counts():
    records = generate(FixtureSpec(firms=62, seed=7, direction_counts=(45, 17, 0)))
    report = detect_outliers(cross_sections([efficiency_matrix(r) for r in records]))
    cohorts = direction_cohorts(records, report)
    assert cohorts.counts == {"increase": 45, "decrease": 17, "flat": 0}


def test_end_to_end_determinism(tmp_path):
    records = generate(
        FixtureSpec(
            firms=62,
            seed=7,
            direction_counts=(45, 17, 0),
            planted=(PlantedOutlier("ds_over_ttam", 17, 3.0),),
        )
    )
    panel = tmp_path / "panel.csv"
    write_dataset(records, panel)
    runner = CliRunner()
    outputs = []
    for sub in ("first", "second"):
        out = tmp_path / sub
        result = runner.invoke(
            cli_main,
            [
                "analyze",
                "--input",
                str(panel),
                "--out",
                str(out),
                "--format",
                "markdown,csv,json",
                "--scatter",
                "--svg",
                "--stacked-tta",
            ],
        )
        assert result.exit_code == 0, result.output
        outputs.append(out)
    first, second = outputs
    names = sorted(p.name for p in first.iterdir())
    assert names == sorted(p.name for p in second.iterdir())
    assert len(names) == 24
    for name in names:
        assert (first / name).read_bytes() == (second / name).read_bytes(), name
