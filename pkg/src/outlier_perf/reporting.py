"""Render pipeline results as tables and scatter exports.

Three table families mirror the shapes used in the benchmark study:
moment summaries (one row per level sample), the 12-row ratio-indicator
summary, the 12-row screening-interval table, and the outlier table
(indicator rows, one column per flagged firm). Each renders to
Markdown, CSV, or JSON.

Formatting is fixed so identical inputs give byte-identical text:
Markdown/CSV summary values carry 5 significant digits (``.5g``, which
rounds half to even), the Markdown outlier table prints 4 decimals, and
the outlier/scatter CSVs carry full ``repr`` precision so they parse
back to the exact floats. In the outlier table, inlier cells of listed
firms are wrapped in parentheses and outlier cells are bare.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Sequence

from .indicators import (
    INDICATOR_KINDS,
    RATIO_NAMES,
    SUMMARY_NAMES,
    CrossSections,
    EfficiencyMatrix,
)
from .ingest import CompanyRecord
from .outliers import OutlierReport
from .stats import DEFAULT_CONVENTIONS, MomentConventions, summarize

FORMATS = ("markdown", "csv", "json")

MOMENT_COLUMNS = ("indicator", "min", "max", "sum", "mean", "stdev", "skewness", "kurtosis")
INTERVAL_COLUMNS = ("indicator", "mean", "stdev", "lower", "upper")

SCATTER_HEADER = ("firm_id", "x", "y", "tag")


def _sig(value: float | None) -> str:
    """5-significant-digit cell text; empty for undefined values."""
    if value is None:
        return ""
    return format(value, ".5g")


def _full(value: float) -> str:
    return repr(value)


def _check_format(fmt: str) -> None:
    if fmt not in FORMATS:
        raise ValueError(f"unknown table format {fmt!r}; expected one of {FORMATS}")


def _markdown_table(columns: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    def cell(text: str) -> str:
        return text if text else "n/a"

    lines = [
        "| " + " | ".join(columns) + " |",
        "| " + " | ".join("---" for _ in columns) + " |",
    ]
    for row in rows:
        lines.append("| " + row[0] + " | " + " | ".join(cell(c) for c in row[1:]) + " |")
    return "\n".join(lines) + "\n"


def _csv_table(columns: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buffer.getvalue()


def _json_table(columns: Sequence[str], records: Sequence[dict]) -> str:
    return json.dumps({"columns": list(columns), "rows": list(records)}, indent=2) + "\n"


def _moment_rows(
    names: Sequence[str],
    cross: CrossSections,
    conventions: MomentConventions,
) -> tuple[list[list[str]], list[dict]]:
    cells: list[list[str]] = []
    records: list[dict] = []
    for name in names:
        s = summarize(cross.samples[name], conventions)
        cells.append(
            [name, _sig(s.min), _sig(s.max), _sig(s.sum), _sig(s.mean),
             _sig(s.stdev), _sig(s.skewness), _sig(s.kurtosis)]
        )
        records.append(
            {"indicator": name, "min": s.min, "max": s.max, "sum": s.sum,
             "mean": s.mean, "stdev": s.stdev, "skewness": s.skewness,
             "kurtosis": s.kurtosis}
        )
    return cells, records


def render_summary_table(
    cross: CrossSections,
    conventions: MomentConventions = DEFAULT_CONVENTIONS,
    fmt: str = "markdown",
) -> str:
    """Moment summary of the 3 investment levels and 4 performance averages."""
    _check_format(fmt)
    cells, records = _moment_rows(SUMMARY_NAMES, cross, conventions)
    if fmt == "markdown":
        return _markdown_table(MOMENT_COLUMNS, cells)
    if fmt == "csv":
        return _csv_table(MOMENT_COLUMNS, cells)
    return _json_table(MOMENT_COLUMNS, records)


def render_indicator_table(
    cross: CrossSections,
    conventions: MomentConventions = DEFAULT_CONVENTIONS,
    fmt: str = "markdown",
) -> str:
    """Moment summary of the 12 efficiency-ratio indicators."""
    _check_format(fmt)
    cells, records = _moment_rows(RATIO_NAMES, cross, conventions)
    if fmt == "markdown":
        return _markdown_table(MOMENT_COLUMNS, cells)
    if fmt == "csv":
        return _csv_table(MOMENT_COLUMNS, cells)
    return _json_table(MOMENT_COLUMNS, records)


def render_interval_table(report: OutlierReport, fmt: str = "markdown") -> str:
    """Screening intervals per indicator: mean, stdev, lower, upper.

    Rows cover the indicators the report actually screened; degenerate
    indicators are absent here and carried in the report's warnings.
    """
    _check_format(fmt)
    cells: list[list[str]] = []
    records: list[dict] = []
    for name, screen in report.indicators.items():
        s = screen.summary
        mean = s.mean if s is not None else None
        stdev = s.stdev if s is not None else None
        cells.append(
            [name, _sig(mean), _sig(stdev),
             _sig(screen.interval.lower), _sig(screen.interval.upper)]
        )
        records.append(
            {"indicator": name, "mean": mean, "stdev": stdev,
             "lower": screen.interval.lower, "upper": screen.interval.upper}
        )
    if fmt == "markdown":
        return _markdown_table(INTERVAL_COLUMNS, cells)
    if fmt == "csv":
        return _csv_table(INTERVAL_COLUMNS, cells)
    return _json_table(INTERVAL_COLUMNS, records)


def render_outlier_table(report: OutlierReport, fmt: str = "markdown") -> str:
    """Outlier table: indicator rows, one column per flagged firm.

    Outlier cells are printed bare; inlier cells of listed firms are
    wrapped in parentheses. Markdown prints 4 decimals; CSV keeps full
    precision (strip the parentheses to parse values back). With no
    flagged firms the table is a header plus a note.
    """
    _check_format(fmt)
    flagged = report.flagged_firms()
    columns = ("indicator",) + flagged

    def cell(firm: str, name: str, precise: bool) -> str:
        c = report.indicators[name].classifications[firm]
        text = _full(c.value) if precise else format(c.value, ".4f")
        return text if c.is_outlier else f"({text})"

    if fmt == "json":
        records = [
            {
                "indicator": name,
                "cells": {
                    firm: {
                        "value": report.indicators[name].classifications[firm].value,
                        "label": report.indicators[name].classifications[firm].label,
                    }
                    for firm in flagged
                },
            }
            for name in report.indicators
        ]
        return _json_table(columns, records)

    note = f"no outliers at k={report.k:g}"
    if fmt == "markdown":
        rows = [
            [name] + [cell(firm, name, precise=False) for firm in flagged]
            for name in report.indicators
        ] if flagged else []
        text = _markdown_table(columns, rows)
        if not flagged:
            text += "\n" + note + "\n"
        return text
    rows = [
        [name] + [cell(firm, name, precise=True) for firm in flagged]
        for name in report.indicators
    ] if flagged else []
    text = _csv_table(columns, rows)
    if not flagged:
        text += "# " + note + "\n"
    return text


# ---------------------------------------------------------------------------
# Scatter exports


@dataclass(frozen=True)
class ScatterSeries:
    """One exportable point cloud: (firm_id, x, y, tag) per firm."""

    name: str
    x_label: str
    y_label: str
    points: tuple[tuple[str, float, float, str], ...]


def build_scatter_series(
    records: Sequence[CompanyRecord],
    matrices: Sequence[EfficiencyMatrix],
) -> list[ScatterSeries]:
    """The five standard point clouds.

    One plots the second pre-window investment level against the first,
    tagged by direction; the other four plot each performance average
    against the mean investment level, carrying the same tag so the
    cohorts stay visible.
    """
    directions = {m.firm_id: m.profile.direction for m in matrices}
    series = [
        ScatterSeries(
            name="tta07_vs_tta06",
            x_label="tta_2006",
            y_label="tta_2007",
            points=tuple(
                (r.firm_id, r.tta_pre[0], r.tta_pre[1], directions[r.firm_id])
                for r in records
            ),
        )
    ]
    for kind in INDICATOR_KINDS:
        series.append(
            ScatterSeries(
                name=f"{kind}_avg_vs_tta2",
                x_label="tta2",
                y_label=f"{kind}_avg",
                points=tuple(
                    (m.firm_id, m.profile.tta_mean, m.averages.value(kind),
                     m.profile.direction)
                    for m in matrices
                ),
            )
        )
    return series


def render_scatter_csv(series: ScatterSeries) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SCATTER_HEADER)
    for firm_id, x, y, tag in series.points:
        writer.writerow([firm_id, _full(x), _full(y), tag])
    return buffer.getvalue()


def render_stacked_tta_csv(records: Sequence[CompanyRecord]) -> str:
    """Optional export: both pre-window levels per firm, sorted by name."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("firm_id", "name", "tta_2006", "tta_2007"))
    for r in sorted(records, key=lambda r: (r.name, r.firm_id)):
        writer.writerow([r.firm_id, r.name, _full(r.tta_pre[0]), _full(r.tta_pre[1])])
    return buffer.getvalue()


_TAG_COLORS = {"increase": "#0072b2", "decrease": "#d55e00", "flat": "#777777"}

_SVG_W, _SVG_H = 640, 480
_MARGIN = 56


def _scale(lo: float, hi: float) -> tuple[float, float]:
    if hi == lo:
        pad = abs(lo) if lo != 0.0 else 1.0
        return lo - pad, hi + pad
    pad = (hi - lo) * 0.05
    return lo - pad, hi + pad


def render_scatter_svg(series: ScatterSeries) -> str:
    """Static SVG scatter of one series.

    Entirely self-contained and deterministic: no timestamps, ids, or
    library fingerprints, so repeated runs emit identical bytes.
    """
    xs = [p[1] for p in series.points]
    ys = [p[2] for p in series.points]
    x0, x1 = _scale(min(xs), max(xs))
    y0, y1 = _scale(min(ys), max(ys))
    plot_w = _SVG_W - 2 * _MARGIN
    plot_h = _SVG_H - 2 * _MARGIN

    def px(x: float) -> str:
        return format(_MARGIN + (x - x0) / (x1 - x0) * plot_w, ".2f")

    def py(y: float) -> str:
        return format(_SVG_H - _MARGIN - (y - y0) / (y1 - y0) * plot_h, ".2f")

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" height="{_SVG_H}" '
        f'viewBox="0 0 {_SVG_W} {_SVG_H}">',
        f'<rect width="{_SVG_W}" height="{_SVG_H}" fill="white"/>',
        f'<line x1="{_MARGIN}" y1="{_SVG_H - _MARGIN}" x2="{_SVG_W - _MARGIN}" '
        f'y2="{_SVG_H - _MARGIN}" stroke="black"/>',
        f'<line x1="{_MARGIN}" y1="{_MARGIN}" x2="{_MARGIN}" '
        f'y2="{_SVG_H - _MARGIN}" stroke="black"/>',
        f'<text x="{_SVG_W // 2}" y="{_SVG_H - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{series.x_label}</text>',
        f'<text x="16" y="{_SVG_H // 2}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="13" transform="rotate(-90 16 {_SVG_H // 2})">{series.y_label}</text>',
        f'<text x="{_SVG_W // 2}" y="24" text-anchor="middle" font-family="sans-serif" '
        f'font-size="15">{series.name}</text>',
        # axis extent labels at the data corners
        f'<text x="{_MARGIN}" y="{_SVG_H - _MARGIN + 16}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="11">{format(x0, ".4g")}</text>',
        f'<text x="{_SVG_W - _MARGIN}" y="{_SVG_H - _MARGIN + 16}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="11">{format(x1, ".4g")}</text>',
        f'<text x="{_MARGIN - 6}" y="{_SVG_H - _MARGIN}" text-anchor="end" '
        f'font-family="sans-serif" font-size="11">{format(y0, ".4g")}</text>',
        f'<text x="{_MARGIN - 6}" y="{_MARGIN + 4}" text-anchor="end" '
        f'font-family="sans-serif" font-size="11">{format(y1, ".4g")}</text>',
    ]
    for firm_id, x, y, tag in series.points:
        color = _TAG_COLORS.get(tag, "#333333")
        parts.append(
            f'<circle cx="{px(x)}" cy="{py(y)}" r="3" fill="{color}" '
            f'fill-opacity="0.8"><title>{firm_id}</title></circle>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
