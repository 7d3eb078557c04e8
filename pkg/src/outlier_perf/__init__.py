"""Outlier-based screening of firm performance-efficiency ratios.

The pipeline: parse a wide per-firm CSV panel, derive 12 efficiency
ratios (4 post-window performance averages over 3 pre-window investment
levels), summarize each ratio's cross-section, flag firms outside the
open mean +/- k*stdev interval, and roll the flags up into systematic
outliers, near-misses, and direction cohorts. Results render as
Markdown/CSV/JSON tables, a JSON report document, and scatter exports.

Library use starts at :func:`pipeline.build_artifacts` or the finer
operations re-exported here; the same pipeline is served over HTTP by
:mod:`outlier_perf.service` and driven by the ``outlier-perf`` CLI.
"""

from .errors import (
    DataError,
    DuplicateFirmId,
    EmptyDataset,
    EmptySample,
    InfeasibleConstraints,
    MissingColumn,
    NonNumericCell,
    NonPositiveK,
    NonPositiveTta,
    OutlierPerfError,
    StatsError,
    UnexpectedColumn,
    WrongWindowLength,
    ZeroMean,
    ZeroStdev,
)
from .indicators import (
    RATIO_NAMES,
    SUMMARY_NAMES,
    CrossSections,
    EfficiencyMatrix,
    cross_sections,
    derive_tta_profile,
    efficiency_matrix,
    time_average,
)
from .ingest import (
    CompanyRecord,
    DatasetConfig,
    Violation,
    parse_dataset,
    parse_text,
    render_csv,
    validate_dataset,
    write_dataset,
)
from .outliers import (
    Classification,
    DegenerateIndicator,
    OutlierReport,
    classify,
    detect_outliers,
    direction_cohorts,
    near_misses,
    report_document,
    systematic_outliers,
)
from .pipeline import AnalysisOptions, Artifacts, RunConfig, build_artifacts, run_pipeline
from .stats import (
    DEFAULT_CONVENTIONS,
    DistributionSummary,
    MomentConventions,
    OutlierInterval,
    coefficient_of_variation,
    interval,
    summarize,
    zscore,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "AnalysisOptions",
    "Artifacts",
    "Classification",
    "CompanyRecord",
    "CrossSections",
    "DataError",
    "DatasetConfig",
    "DEFAULT_CONVENTIONS",
    "DegenerateIndicator",
    "DistributionSummary",
    "DuplicateFirmId",
    "EfficiencyMatrix",
    "EmptyDataset",
    "EmptySample",
    "InfeasibleConstraints",
    "MissingColumn",
    "MomentConventions",
    "NonNumericCell",
    "NonPositiveK",
    "NonPositiveTta",
    "OutlierInterval",
    "OutlierPerfError",
    "OutlierReport",
    "RATIO_NAMES",
    "RunConfig",
    "StatsError",
    "SUMMARY_NAMES",
    "UnexpectedColumn",
    "Violation",
    "WrongWindowLength",
    "ZeroMean",
    "ZeroStdev",
    "build_artifacts",
    "classify",
    "coefficient_of_variation",
    "cross_sections",
    "derive_tta_profile",
    "detect_outliers",
    "direction_cohorts",
    "efficiency_matrix",
    "interval",
    "near_misses",
    "parse_dataset",
    "parse_text",
    "render_csv",
    "report_document",
    "run_pipeline",
    "summarize",
    "systematic_outliers",
    "time_average",
    "validate_dataset",
    "write_dataset",
    "zscore",
]
