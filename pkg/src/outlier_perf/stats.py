"""Descriptive moment statistics with explicit estimator conventions.

One cross-sectional sample goes in, a :class:`DistributionSummary` comes
out. Every choice that textbooks and spreadsheets disagree on is a field
of :class:`MomentConventions` rather than a hidden default:

* ``stdev_mode``: ``sample`` divides squared deviations by n-1,
  ``population`` divides by n.
* ``shape_mode``: ``adjusted`` uses the bias-adjusted (spreadsheet style)
  skewness and kurtosis estimators, ``population`` uses the plain moment
  ratios m3/m2^1.5 and m4/m2^2.
* ``kurtosis_basis``: ``excess`` subtracts the normal baseline so large
  normal samples read about 0, ``raw`` leaves it near 3.

Skewness and kurtosis are flagged undefined (``None``) instead of raising
when the sample is constant or too small for the chosen estimator, so
summaries of degenerate samples still render.

All computation is stdlib float arithmetic. Deviations are accumulated
with ``math.fsum`` for exactness at any realistic sample size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

from .errors import (
    EmptySample,
    NegativeStdev,
    NonPositiveK,
    ZeroMean,
    ZeroStdev,
)

StdevMode = Literal["sample", "population"]
ShapeMode = Literal["adjusted", "population"]
KurtosisBasis = Literal["excess", "raw"]

# Smallest n for which the bias-adjusted estimators are defined: the
# correction divisors contain (n-1)(n-2) and (n-2)(n-3) factors.
MIN_N_ADJUSTED_SKEWNESS = 3
MIN_N_ADJUSTED_KURTOSIS = 4


@dataclass(frozen=True)
class MomentConventions:
    """Estimator choices for :func:`summarize`."""

    stdev_mode: StdevMode = "sample"
    shape_mode: ShapeMode = "adjusted"
    kurtosis_basis: KurtosisBasis = "excess"

    def __post_init__(self) -> None:
        if self.stdev_mode not in ("sample", "population"):
            raise ValueError(f"unknown stdev_mode: {self.stdev_mode!r}")
        if self.shape_mode not in ("adjusted", "population"):
            raise ValueError(f"unknown shape_mode: {self.shape_mode!r}")
        if self.kurtosis_basis not in ("excess", "raw"):
            raise ValueError(f"unknown kurtosis_basis: {self.kurtosis_basis!r}")


DEFAULT_CONVENTIONS = MomentConventions()


@dataclass(frozen=True)
class DistributionSummary:
    """Moments of one sample.

    ``skewness`` and ``kurtosis`` are ``None`` when undefined (constant
    sample, or n below the estimator's minimum). ``stdev`` is 0.0 for a
    single-element sample under either mode: all values of a singleton
    are equal, and equal values mean zero spread.
    """

    n: int
    min: float
    max: float
    sum: float
    mean: float
    stdev: float
    skewness: float | None
    kurtosis: float | None
    conventions: MomentConventions = DEFAULT_CONVENTIONS

    @property
    def shape_defined(self) -> bool:
        return self.skewness is not None and self.kurtosis is not None


@dataclass(frozen=True)
class OutlierInterval:
    """The open interval ]mean - k*stdev, mean + k*stdev[.

    Values at or beyond a bound count as outliers; only the strict
    interior is inlier territory (see ``outliers.classify``).
    """

    lower: float
    upper: float
    k: float


def summarize(
    sample: Sequence[float],
    conventions: MomentConventions = DEFAULT_CONVENTIONS,
) -> DistributionSummary:
    """Compute min/max/sum/mean/stdev/skewness/kurtosis of ``sample``.

    Args:
        sample: non-empty sequence of finite reals.
        conventions: estimator choices; see :class:`MomentConventions`.

    Raises:
        EmptySample: if the sample has no elements.
    """
    n = len(sample)
    if n == 0:
        raise EmptySample()

    total = math.fsum(sample)
    mean = total / n
    deviations = [x - mean for x in sample]
    m2 = math.fsum(d * d for d in deviations)
    m3 = math.fsum(d * d * d for d in deviations)
    m4 = math.fsum(d * d * d * d for d in deviations)

    if n == 1:
        stdev = 0.0
    elif conventions.stdev_mode == "sample":
        stdev = math.sqrt(m2 / (n - 1))
    else:
        stdev = math.sqrt(m2 / n)

    skewness = _skewness(n, m2, m3, conventions.shape_mode)
    kurtosis = _kurtosis(n, m2, m4, conventions.shape_mode, conventions.kurtosis_basis)

    return DistributionSummary(
        n=n,
        min=min(sample),
        max=max(sample),
        sum=total,
        mean=mean,
        stdev=stdev,
        skewness=skewness,
        kurtosis=kurtosis,
        conventions=conventions,
    )


def _skewness(n: int, m2: float, m3: float, mode: ShapeMode) -> float | None:
    if m2 == 0.0:
        return None
    if mode == "adjusted":
        if n < MIN_N_ADJUSTED_SKEWNESS:
            return None
        s = math.sqrt(m2 / (n - 1))
        return (n / ((n - 1) * (n - 2))) * (m3 / s**3)
    sigma = math.sqrt(m2 / n)
    return (m3 / n) / sigma**3


def _kurtosis(
    n: int, m2: float, m4: float, mode: ShapeMode, basis: KurtosisBasis
) -> float | None:
    if m2 == 0.0:
        return None
    if mode == "adjusted":
        if n < MIN_N_ADJUSTED_KURTOSIS:
            return None
        s2 = m2 / (n - 1)
        excess = (n * (n + 1) / ((n - 1) * (n - 2) * (n - 3))) * (m4 / (s2 * s2)) - 3 * (
            n - 1
        ) ** 2 / ((n - 2) * (n - 3))
        return excess if basis == "excess" else excess + 3.0
    sigma2 = m2 / n
    raw = (m4 / n) / (sigma2 * sigma2)
    return raw - 3.0 if basis == "excess" else raw


def coefficient_of_variation(summary: DistributionSummary) -> float:
    """Return stdev/mean (signed). Raises ZeroMean when mean is 0."""
    if summary.mean == 0.0:
        raise ZeroMean()
    return summary.stdev / summary.mean


def interval(mean: float, stdev: float, k: float) -> OutlierInterval:
    """Build the k-sigma screening interval around ``mean``.

    Args:
        mean: sample mean.
        stdev: sample spread, must be >= 0.
        k: interval half-width in stdev units, must be > 0.

    Raises:
        NegativeStdev: if ``stdev`` is negative (or not comparable).
        NonPositiveK: if ``k`` is not strictly positive.
    """
    if not stdev >= 0.0:
        raise NegativeStdev(stdev)
    if not k > 0.0:
        raise NonPositiveK(k)
    half = k * stdev
    return OutlierInterval(lower=mean - half, upper=mean + half, k=k)


def zscore(value: float, summary: DistributionSummary) -> float:
    """Standardized distance of ``value`` from the sample mean.

    ``abs(zscore(v, s)) >= k`` is equivalent to ``v`` falling outside
    ``interval(s.mean, s.stdev, k)``.

    Raises:
        ZeroStdev: if the summary has zero spread.
    """
    if not summary.stdev > 0.0:
        raise ZeroStdev()
    return (value - summary.mean) / summary.stdev
