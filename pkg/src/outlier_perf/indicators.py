"""Per-firm investment profiles and efficiency ratios.

For each firm, the pre-window investment values yield three denominators
(minimum ``ttam``, maximum ``ttaM``, mean ``tta2``) and a direction tag
(did investment rise or fall across the pre-window). Each of the four
performance indicators is averaged over the post-window and divided by
each denominator, giving 12 named efficiency ratios per firm.

The indicator name vocabulary is fixed and used verbatim in every
output: ``{ds,da,roi,ros}_over_{ttam,ttaM,tta2}`` for the ratios, plus
``ttam, ttaM, tta2, ds_avg, da_avg, roi_avg, ros_avg`` for the summary
samples. Lowercase ``ttam`` is the pre-window minimum, uppercase-M
``ttaM`` the maximum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

from .errors import EmptyDataset, NonPositiveTta, WrongWindowLength
from .ingest import INDICATOR_KINDS, CompanyRecord

DENOMINATOR_NAMES = ("ttam", "ttaM", "tta2")

# Ratio names in canonical table-row order: all four kinds over the
# pre-window minimum first, then over the maximum, then over the mean.
RATIO_NAMES: tuple[str, ...] = tuple(
    f"{kind}_over_{denom}" for denom in DENOMINATOR_NAMES for kind in INDICATOR_KINDS
)

AVERAGE_NAMES: tuple[str, ...] = tuple(f"{kind}_avg" for kind in INDICATOR_KINDS)

# Row order of the dataset-level summary table.
SUMMARY_NAMES: tuple[str, ...] = DENOMINATOR_NAMES + AVERAGE_NAMES

Direction = Literal["increase", "decrease", "flat"]
DIRECTIONS: tuple[Direction, ...] = ("increase", "decrease", "flat")


@dataclass(frozen=True)
class TtaProfile:
    """Pre-window investment summary for one firm."""

    tta_min: float
    tta_max: float
    tta_mean: float
    direction: Direction

    def denominator(self, name: str) -> float:
        if name == "ttam":
            return self.tta_min
        if name == "ttaM":
            return self.tta_max
        if name == "tta2":
            return self.tta_mean
        raise KeyError(name)


@dataclass(frozen=True)
class PerformancePanel:
    """Post-window averages of the four performance indicators."""

    ds: float
    da: float
    roi: float
    ros: float

    def value(self, kind: str) -> float:
        return getattr(self, kind)


@dataclass(frozen=True)
class EfficiencyMatrix:
    """The 12 efficiency ratios of one firm, keyed by canonical name.

    The source profile and averages ride along so cross-sections can be
    assembled without going back to the raw records.
    """

    firm_id: str
    ratios: dict[str, float]
    profile: TtaProfile
    averages: PerformancePanel


@dataclass(frozen=True)
class CrossSections:
    """Column-wise view of a dataset: one sample per indicator name.

    ``samples`` holds the 12 ratio samples plus the 3 denominator and 4
    average samples; every sample preserves firm order and has one entry
    per firm in ``firm_ids``.
    """

    firm_ids: tuple[str, ...]
    samples: dict[str, tuple[float, ...]]


def derive_tta_profile(tta_pre: Sequence[float]) -> TtaProfile:
    """Summarize the pre-window investment values.

    Direction compares the first and last pre-window values; min, max
    and mean run over the whole window.

    Raises:
        WrongWindowLength: fewer than 2 values.
        NonPositiveTta: any value not a strictly positive finite real.
    """
    if len(tta_pre) < 2:
        raise WrongWindowLength(">= 2", len(tta_pre), what="pre-window")
    for value in tta_pre:
        if not (math.isfinite(value) and value > 0):
            raise NonPositiveTta(value)
    first, last = tta_pre[0], tta_pre[-1]
    direction: Direction = "increase" if first < last else "decrease" if first > last else "flat"
    return TtaProfile(
        tta_min=min(tta_pre),
        tta_max=max(tta_pre),
        tta_mean=math.fsum(tta_pre) / len(tta_pre),
        direction=direction,
    )


def time_average(values: Sequence[float]) -> float:
    """Arithmetic mean over the post-window."""
    if len(values) < 1:
        raise WrongWindowLength(">= 1", 0, what="post-window")
    return math.fsum(values) / len(values)


def efficiency_matrix(record: CompanyRecord) -> EfficiencyMatrix:
    """Compute the firm's 12 ratios: post-window average / denominator.

    For a non-negative average p the ratios obey
    p/ttaM <= p/tta2 <= p/ttam (reversed for negative p), since the
    denominators are ordered and strictly positive.
    """
    profile = derive_tta_profile(record.tta_pre)
    averages = PerformancePanel(
        **{kind: time_average(record.perf_post[kind]) for kind in INDICATOR_KINDS}
    )
    ratios = {
        f"{kind}_over_{denom}": averages.value(kind) / profile.denominator(denom)
        for denom in DENOMINATOR_NAMES
        for kind in INDICATOR_KINDS
    }
    return EfficiencyMatrix(
        firm_id=record.firm_id, ratios=ratios, profile=profile, averages=averages
    )


def cross_sections(matrices: Sequence[EfficiencyMatrix]) -> CrossSections:
    """Pivot per-firm matrices into per-indicator samples, firm order kept."""
    if not matrices:
        raise EmptyDataset("cannot build cross-sections from zero firms")
    samples: dict[str, tuple[float, ...]] = {}
    for name in RATIO_NAMES:
        samples[name] = tuple(m.ratios[name] for m in matrices)
    for name in DENOMINATOR_NAMES:
        samples[name] = tuple(m.profile.denominator(name) for m in matrices)
    for kind in INDICATOR_KINDS:
        samples[f"{kind}_avg"] = tuple(m.averages.value(kind) for m in matrices)
    return CrossSections(
        firm_ids=tuple(m.firm_id for m in matrices),
        samples=samples,
    )
