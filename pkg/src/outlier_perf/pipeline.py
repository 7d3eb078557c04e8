"""End-to-end run: parse, screen, render, write.

``build_artifacts`` is the pure half: records in, a name-to-content
mapping of every output file out. ``run_pipeline`` wraps it with input
parsing and atomic writing. Output files are computed in full before
anything touches the output directory, then staged to a temp directory
on the same filesystem and moved into place with ``os.replace``, so a
failed run leaves no partial table behind.
"""

from __future__ import annotations

import json
import os
import shutil
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .indicators import RATIO_NAMES, EfficiencyMatrix, cross_sections, efficiency_matrix
from .ingest import CompanyRecord, parse_dataset
from .outliers import detect_outliers, report_document
from .reporting import (
    FORMATS,
    build_scatter_series,
    render_indicator_table,
    render_interval_table,
    render_outlier_table,
    render_scatter_csv,
    render_scatter_svg,
    render_stacked_tta_csv,
    render_summary_table,
)
from .stats import DEFAULT_CONVENTIONS, MomentConventions

_EXTENSIONS = {"markdown": "md", "csv": "csv", "json": "json"}

TABLE_BASENAMES = ("summary_table", "indicator_table", "interval_table", "outlier_table")


@dataclass(frozen=True)
class AnalysisOptions:
    """Screening and rendering knobs, independent of file locations."""

    k: float = 2.0
    conventions: MomentConventions = DEFAULT_CONVENTIONS
    systematic_threshold: int = 6
    near_miss_margin: float = 0.5
    formats: tuple[str, ...] = ("markdown",)
    scatter: bool = False
    svg: bool = False
    stacked_tta: bool = False

    def __post_init__(self) -> None:
        if not self.k > 0.0:
            raise ValueError(f"k must be > 0, got {self.k}")
        if not 1 <= self.systematic_threshold <= len(RATIO_NAMES):
            raise ValueError(
                f"systematic threshold must be in 1..{len(RATIO_NAMES)}, "
                f"got {self.systematic_threshold}"
            )
        if not 0.0 < self.near_miss_margin < 1.0:
            raise ValueError(
                f"near-miss margin must be in (0, 1), got {self.near_miss_margin}"
            )
        unknown = [f for f in self.formats if f not in FORMATS]
        if unknown:
            raise ValueError(f"unknown formats {unknown}; expected a subset of {FORMATS}")
        if len(set(self.formats)) != len(self.formats):
            raise ValueError(f"duplicate formats in {self.formats}")


@dataclass(frozen=True)
class RunConfig:
    """One analyze run: where to read, where to write, and all knobs."""

    input_path: Path
    out_dir: Path
    k: float = 2.0
    conventions: MomentConventions = DEFAULT_CONVENTIONS
    systematic_threshold: int = 6
    near_miss_margin: float = 0.5
    formats: tuple[str, ...] = ("markdown",)
    scatter: bool = False
    svg: bool = False
    stacked_tta: bool = False

    def options(self) -> AnalysisOptions:
        return AnalysisOptions(
            k=self.k,
            conventions=self.conventions,
            systematic_threshold=self.systematic_threshold,
            near_miss_margin=self.near_miss_margin,
            formats=self.formats,
            scatter=self.scatter,
            svg=self.svg,
            stacked_tta=self.stacked_tta,
        )

    def __post_init__(self) -> None:
        self.options()  # validate the knob invariants eagerly


@dataclass(frozen=True)
class Artifacts:
    """Everything one run produces, before any file is written."""

    files: dict[str, str]
    document: dict
    warnings: tuple[str, ...]
    firm_count: int
    flagged_firms: tuple[str, ...] = field(default=())


def build_artifacts(
    records: Sequence[CompanyRecord], options: AnalysisOptions = AnalysisOptions()
) -> Artifacts:
    """Run the full analysis and render every requested output file."""
    matrices = [efficiency_matrix(r) for r in records]
    cross = cross_sections(matrices)
    report = detect_outliers(cross, options.k, options.conventions)
    directions = {m.firm_id: m.profile.direction for m in matrices}
    document = report_document(
        report,
        directions=directions,
        systematic_threshold=options.systematic_threshold,
        near_miss_margin=options.near_miss_margin,
    )

    files: dict[str, str] = {}
    for fmt in options.formats:
        ext = _EXTENSIONS[fmt]
        files[f"summary_table.{ext}"] = render_summary_table(
            cross, options.conventions, fmt
        )
        files[f"indicator_table.{ext}"] = render_indicator_table(
            cross, options.conventions, fmt
        )
        files[f"interval_table.{ext}"] = render_interval_table(report, fmt)
        files[f"outlier_table.{ext}"] = render_outlier_table(report, fmt)
    files["report.json"] = json.dumps(document, indent=2) + "\n"
    if options.scatter:
        for series in build_scatter_series(records, matrices):
            files[f"{series.name}.csv"] = render_scatter_csv(series)
            if options.svg:
                files[f"{series.name}.svg"] = render_scatter_svg(series)
    if options.stacked_tta:
        files["stacked_tta.csv"] = render_stacked_tta_csv(records)

    return Artifacts(
        files=files,
        document=document,
        warnings=tuple(
            f"indicator {w['indicator']} skipped: {w['reason']}"
            for w in document["warnings"]
        ),
        firm_count=len(records),
        flagged_firms=tuple(report.flagged_firms()),
    )


def write_output_tree(out_dir: Path | str, files: dict[str, str]) -> list[Path]:
    """Write all files into ``out_dir`` via stage-then-rename.

    Contents are staged to a temp directory on the same filesystem and
    moved into place with ``os.replace``, one atomic rename per file,
    only after every file has been fully written.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name in files:
        if os.sep in name or name.startswith("."):
            raise ValueError(f"output file names must be flat, got {name!r}")
    stage = Path(tempfile.mkdtemp(prefix=".staging-", dir=out))
    try:
        for name, content in files.items():
            (stage / name).write_text(content, encoding="utf-8")
        written = []
        for name in files:
            os.replace(stage / name, out / name)
            written.append(out / name)
        return written
    finally:
        shutil.rmtree(stage, ignore_errors=True)


def export_scatter(
    records: Sequence[CompanyRecord],
    matrices: Sequence[EfficiencyMatrix],
    out_dir: Path | str,
) -> list[Path]:
    """Write the five scatter CSV files into ``out_dir``."""
    files = {
        f"{series.name}.csv": render_scatter_csv(series)
        for series in build_scatter_series(records, matrices)
    }
    return write_output_tree(out_dir, files)


def run_pipeline(config: RunConfig) -> Artifacts:
    """Parse the input, build all artifacts, write them atomically.

    Raises DataError subclasses (with row and column context) on bad
    input; nothing is written in that case.
    """
    records = parse_dataset(config.input_path)
    artifacts = build_artifacts(records, config.options())
    write_output_tree(config.out_dir, artifacts.files)
    return artifacts
