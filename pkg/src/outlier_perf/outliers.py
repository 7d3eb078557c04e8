"""Interval screening of the ratio cross-sections.

Every firm is classified on every ratio indicator against that
indicator's open interval ]mean - k*stdev, mean + k*stdev[. A value at
or beyond a bound is an outlier of the matching polarity; only the
strict interior is an inlier. Indicators with zero cross-sectional
variance carry no screening information and are excluded with a
warning instead of being zero-filled.

On top of the per-cell classifications the module rolls up:

* systematic outliers: firms flagged with one polarity on at least
  ``threshold`` of the 12 indicators and never with the other,
* near-misses: inlier cells of already-flagged firms that sit within
  ``margin`` of the interval half-width from the nearer bound,
* direction cohorts: firm counts by pre-window investment direction,
  cross-tabulated with the systematic outcome.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from .indicators import (
    RATIO_NAMES,
    CrossSections,
    Direction,
    derive_tta_profile,
)
from .ingest import CompanyRecord
from .stats import (
    DEFAULT_CONVENTIONS,
    DistributionSummary,
    MomentConventions,
    OutlierInterval,
    coefficient_of_variation,
    interval,
    summarize,
)
from .errors import ZeroMean

Label = Literal["negative_outlier", "inlier", "positive_outlier"]
Polarity = Literal["positive", "negative", "mixed"]

SCHEMA_VERSION = "outlier-report/1"


@dataclass(frozen=True)
class Classification:
    """One cell of the screen: label plus the evidence behind it."""

    label: Label
    value: float
    interval: OutlierInterval

    @property
    def is_outlier(self) -> bool:
        return self.label != "inlier"


@dataclass(frozen=True)
class DegenerateIndicator:
    """Warning: an indicator was excluded from screening."""

    indicator: str
    reason: str


@dataclass(frozen=True)
class IndicatorScreen:
    """Screening result for one indicator across all firms.

    ``summary`` may be None for screens rebuilt from literal interval
    data rather than from a sample.
    """

    interval: OutlierInterval
    classifications: dict[str, Classification]
    summary: DistributionSummary | None = None


@dataclass(frozen=True)
class NearMiss:
    firm_id: str
    indicator: str
    value: float
    distance: float


@dataclass(frozen=True)
class OutlierReport:
    """Full screen: per-indicator intervals and per-cell classifications."""

    k: float
    conventions: MomentConventions
    firm_ids: tuple[str, ...]
    indicators: dict[str, IndicatorScreen]
    warnings: tuple[DegenerateIndicator, ...] = ()

    def counts(self) -> dict[str, tuple[int, int]]:
        """(positive, negative) outlier-cell counts per firm, firm order kept."""
        totals = {fid: [0, 0] for fid in self.firm_ids}
        for screen in self.indicators.values():
            for fid, cell in screen.classifications.items():
                if cell.label == "positive_outlier":
                    totals[fid][0] += 1
                elif cell.label == "negative_outlier":
                    totals[fid][1] += 1
        return {fid: (pos, neg) for fid, (pos, neg) in totals.items()}

    def flagged_firms(self) -> tuple[str, ...]:
        """Firms that are an outlier on at least one indicator."""
        counts = self.counts()
        return tuple(fid for fid in self.firm_ids if sum(counts[fid]) > 0)


def classify(value: float, bounds: OutlierInterval) -> Classification:
    """Place ``value`` against the open interval.

    Boundary values classify as outliers: the interval is open, so only
    strictly interior values are inliers.
    """
    if value <= bounds.lower:
        label: Label = "negative_outlier"
    elif value >= bounds.upper:
        label = "positive_outlier"
    else:
        label = "inlier"
    return Classification(label=label, value=value, interval=bounds)


def detect_outliers(
    cross: CrossSections,
    k: float = 2.0,
    conventions: MomentConventions = DEFAULT_CONVENTIONS,
) -> OutlierReport:
    """Screen every firm on every ratio indicator.

    Indicators whose cross-section has fewer than 2 firms or zero
    spread are skipped and reported in ``warnings``.
    """
    screens: dict[str, IndicatorScreen] = {}
    warnings: list[DegenerateIndicator] = []
    for name in RATIO_NAMES:
        sample = cross.samples[name]
        summary = summarize(sample, conventions)
        if summary.n < 2:
            warnings.append(DegenerateIndicator(name, "fewer than 2 firms"))
            continue
        if summary.stdev == 0.0:
            warnings.append(DegenerateIndicator(name, "zero variance"))
            continue
        bounds = interval(summary.mean, summary.stdev, k)
        cells = {
            fid: classify(value, bounds)
            for fid, value in zip(cross.firm_ids, sample)
        }
        screens[name] = IndicatorScreen(
            interval=bounds, classifications=cells, summary=summary
        )
    return OutlierReport(
        k=k,
        conventions=conventions,
        firm_ids=cross.firm_ids,
        indicators=screens,
        warnings=tuple(warnings),
    )


def systematic_outliers(
    report: OutlierReport, threshold: int = 6
) -> list[tuple[str, Polarity]]:
    """Firms whose outlier cells pile up on one side.

    A firm is listed as ``positive`` when it has at least ``threshold``
    positive outlier cells and zero negative ones; symmetrically for
    ``negative``. A firm flagged on both sides is listed as ``mixed``
    when its combined outlier-cell count reaches the threshold (per-side
    thresholds cannot both be met once threshold exceeds half the
    indicators). At threshold 1 the listing is exactly the set of firms
    with any outlier cell.
    """
    if not 1 <= threshold <= len(RATIO_NAMES):
        raise ValueError(f"threshold must be in 1..{len(RATIO_NAMES)}, got {threshold}")
    listed: list[tuple[str, Polarity]] = []
    counts = report.counts()
    for fid in report.firm_ids:
        pos, neg = counts[fid]
        if pos >= threshold and neg == 0:
            listed.append((fid, "positive"))
        elif neg >= threshold and pos == 0:
            listed.append((fid, "negative"))
        elif pos > 0 and neg > 0 and pos + neg >= threshold:
            listed.append((fid, "mixed"))
    return listed


def near_misses(report: OutlierReport, margin: float = 0.5) -> list[NearMiss]:
    """Inlier cells of flagged firms that sit close to a bound.

    A cell qualifies when its distance to the nearer interval bound is
    at most ``margin`` times the interval half-width (k*stdev).
    """
    if not 0.0 < margin < 1.0:
        raise ValueError(f"margin must be in (0, 1), got {margin}")
    flagged = set(report.flagged_firms())
    found: list[NearMiss] = []
    for fid in report.firm_ids:
        if fid not in flagged:
            continue
        for name, screen in report.indicators.items():
            cell = screen.classifications.get(fid)
            if cell is None or cell.is_outlier:
                continue
            bounds = screen.interval
            half = (bounds.upper - bounds.lower) / 2.0
            distance = min(cell.value - bounds.lower, bounds.upper - cell.value)
            if distance <= margin * half:
                found.append(
                    NearMiss(firm_id=fid, indicator=name, value=cell.value, distance=distance)
                )
    return found


@dataclass(frozen=True)
class DirectionCohorts:
    """Firm counts per investment direction, plus the systematic cross-tab."""

    counts: dict[Direction, int]
    systematic: tuple[tuple[str, Polarity, Direction], ...]


def direction_cohorts(
    records: Sequence[CompanyRecord],
    report: OutlierReport,
    threshold: int = 6,
) -> DirectionCohorts:
    """Count firms by direction and attach directions to systematic firms."""
    directions = {
        r.firm_id: derive_tta_profile(r.tta_pre).direction for r in records
    }
    counts: dict[Direction, int] = {"increase": 0, "decrease": 0, "flat": 0}
    for d in directions.values():
        counts[d] += 1
    crosstab = tuple(
        (fid, polarity, directions[fid])
        for fid, polarity in systematic_outliers(report, threshold)
        if fid in directions
    )
    return DirectionCohorts(counts=counts, systematic=crosstab)


def _summary_payload(summary: DistributionSummary | None) -> dict | None:
    if summary is None:
        return None
    try:
        cv: float | None = coefficient_of_variation(summary)
    except ZeroMean:
        cv = None
    return {
        "n": summary.n,
        "min": summary.min,
        "max": summary.max,
        "sum": summary.sum,
        "mean": summary.mean,
        "stdev": summary.stdev,
        "skewness": summary.skewness,
        "kurtosis": summary.kurtosis,
        "cv": cv,
    }


def report_document(
    report: OutlierReport,
    directions: dict[str, Direction] | None = None,
    systematic_threshold: int = 6,
    near_miss_margin: float = 0.5,
) -> dict:
    """JSON-ready document for the whole screen (schema outlier-report/1)."""
    systematic = dict(systematic_outliers(report, systematic_threshold))
    counts = report.counts()
    misses = near_misses(report, near_miss_margin)

    indicators_doc = {
        name: {
            "summary": _summary_payload(screen.summary),
            "interval": {
                "lower": screen.interval.lower,
                "upper": screen.interval.upper,
                "k": screen.interval.k,
            },
            "classifications": {
                fid: cell.label for fid, cell in screen.classifications.items()
            },
        }
        for name, screen in report.indicators.items()
    }
    firms_doc = {
        fid: {
            "positive_count": counts[fid][0],
            "negative_count": counts[fid][1],
            "systematic": systematic.get(fid),
            "direction": directions.get(fid) if directions else None,
        }
        for fid in report.firm_ids
    }
    cohorts: dict[str, int] = {"increase": 0, "decrease": 0, "flat": 0}
    if directions:
        for d in directions.values():
            cohorts[d] += 1

    return {
        "schema": SCHEMA_VERSION,
        "k": report.k,
        "conventions": {
            "stdev_mode": report.conventions.stdev_mode,
            "shape_mode": report.conventions.shape_mode,
            "kurtosis_basis": report.conventions.kurtosis_basis,
        },
        "systematic_threshold": systematic_threshold,
        "near_miss_margin": near_miss_margin,
        "firm_count": len(report.firm_ids),
        "indicators": indicators_doc,
        "firms": firms_doc,
        "systematic_outliers": [[fid, pol] for fid, pol in systematic.items()],
        "near_misses": [
            {
                "firm_id": m.firm_id,
                "indicator": m.indicator,
                "value": m.value,
                "distance": m.distance,
            }
            for m in misses
        ],
        "cohorts": cohorts,
        "warnings": [
            {"indicator": w.indicator, "reason": w.reason} for w in report.warnings
        ],
    }
