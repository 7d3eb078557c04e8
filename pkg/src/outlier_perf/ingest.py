"""CSV ingestion of firm panel data.

One row per firm, wide format, UTF-8, comma separated, '.' decimal
point. The default schema is::

    firm_id,name,sector,
    tta_2006,tta_2007,
    ds_2008,ds_2009,ds_2010,
    da_2008,da_2009,da_2010,
    roi_2008,roi_2009,roi_2010,
    ros_2008,ros_2009,ros_2010

``tta_*`` columns hold the firm's investment level (opaque monetary
units, strictly positive) over the pre-window years. The ``ds/da/roi/
ros`` columns hold performance indicator values over the post-window
years, stored as dimensionless fractions (0.0795 means 7.95%); negative
values are legal. Year labels and window lengths come from
:class:`DatasetConfig`.

Parsing is strict: unknown columns, missing columns, non-numeric or
non-finite cells, non-positive investment values, duplicate firm ids
and empty files all raise a specific :class:`~outlier_perf.errors.DataError`.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    DuplicateFirmId,
    EmptyDataset,
    MissingColumn,
    NonNumericCell,
    NonPositiveTta,
    UnexpectedColumn,
    WrongWindowLength,
)

INDICATOR_KINDS = ("ds", "da", "roi", "ros")


@dataclass(frozen=True)
class DatasetConfig:
    """Window lengths and the year labels used for column names."""

    pre_years: tuple[str, ...] = ("2006", "2007")
    post_years: tuple[str, ...] = ("2008", "2009", "2010")

    def __post_init__(self) -> None:
        if len(self.pre_years) < 2:
            raise WrongWindowLength(">= 2", len(self.pre_years), what="pre-window")
        if len(self.post_years) < 1:
            raise WrongWindowLength(">= 1", len(self.post_years), what="post-window")

    @property
    def pre_window(self) -> int:
        return len(self.pre_years)

    @property
    def post_window(self) -> int:
        return len(self.post_years)

    def columns(self) -> list[str]:
        """Full header row, in canonical order."""
        cols = ["firm_id", "name", "sector"]
        cols += [f"tta_{y}" for y in self.pre_years]
        for kind in INDICATOR_KINDS:
            cols += [f"{kind}_{y}" for y in self.post_years]
        return cols


DEFAULT_CONFIG = DatasetConfig()


@dataclass(frozen=True)
class CompanyRecord:
    """One firm's raw panel row.

    ``tta_pre`` is chronological and strictly positive. ``perf_post``
    maps each indicator kind to its chronological post-window values.
    """

    firm_id: str
    name: str
    sector: str
    tta_pre: tuple[float, ...]
    perf_post: dict[str, tuple[float, ...]]


@dataclass(frozen=True)
class Violation:
    """One validation finding. Data, not an exception."""

    code: str
    message: str
    firm_id: str | None = None
    row: int | None = None
    column: str | None = None


def parse_dataset(path: str | Path, config: DatasetConfig = DEFAULT_CONFIG) -> list[CompanyRecord]:
    """Parse a CSV file into records, raising on the first defect.

    Args:
        path: CSV file location.
        config: window layout; defaults to 2 pre + 3 post years.

    Returns:
        Records in file order.

    Raises:
        MissingColumn, UnexpectedColumn, NonNumericCell, NonPositiveTta,
        DuplicateFirmId, EmptyDataset.
    """
    text = Path(path).read_text(encoding="utf-8")
    return parse_text(text, config)


def parse_text(text: str, config: DatasetConfig = DEFAULT_CONFIG) -> list[CompanyRecord]:
    """Parse CSV content already in memory. Same contract as parse_dataset."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise EmptyDataset("input has no header row") from None

    expected = config.columns()
    seen = set(header)
    for col in expected:
        if col not in seen:
            raise MissingColumn(col)
    counted: set[str] = set()
    for col in header:
        if col not in expected or col in counted:
            raise UnexpectedColumn(col)
        counted.add(col)
    # header is a permutation of the schema at this point
    position = {col: header.index(col) for col in expected}

    records: list[CompanyRecord] = []
    ids: set[str] = set()
    for row_number, row in enumerate(reader, start=2):
        if not row or all(cell.strip() == "" for cell in row):
            continue  # blank line
        record = _parse_row(row, row_number, position, config)
        if record.firm_id in ids:
            raise DuplicateFirmId(record.firm_id, row=row_number)
        ids.add(record.firm_id)
        records.append(record)

    if not records:
        raise EmptyDataset()
    return records


def _parse_row(
    row: list[str],
    row_number: int,
    position: dict[str, int],
    config: DatasetConfig,
) -> CompanyRecord:
    def cell(column: str) -> str:
        idx = position[column]
        if idx >= len(row):
            raise NonNumericCell(row_number, column, "")
        return row[idx]

    def number(column: str) -> float:
        raw = cell(column).strip()
        try:
            value = float(raw)
        except ValueError:
            raise NonNumericCell(row_number, column, raw) from None
        if not math.isfinite(value):
            raise NonNumericCell(row_number, column, raw)
        return value

    firm_id = cell("firm_id").strip()
    name = cell("name").strip()
    sector = cell("sector").strip()

    tta = []
    for year in config.pre_years:
        column = f"tta_{year}"
        value = number(column)
        if not value > 0:
            raise NonPositiveTta(value, firm_id=firm_id, column=column)
        tta.append(value)

    perf: dict[str, tuple[float, ...]] = {}
    for kind in INDICATOR_KINDS:
        perf[kind] = tuple(number(f"{kind}_{year}") for year in config.post_years)

    return CompanyRecord(
        firm_id=firm_id,
        name=name,
        sector=sector,
        tta_pre=tuple(tta),
        perf_post=perf,
    )


def write_dataset(
    records: Iterable[CompanyRecord],
    path: str | Path,
    config: DatasetConfig = DEFAULT_CONFIG,
) -> None:
    """Write records as CSV. write then parse reproduces them exactly."""
    Path(path).write_text(render_csv(records, config), encoding="utf-8")


def render_csv(records: Iterable[CompanyRecord], config: DatasetConfig = DEFAULT_CONFIG) -> str:
    """CSV text for ``records``. Floats use repr, so parsing is lossless."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(config.columns())
    for r in records:
        row: list[str] = [r.firm_id, r.name, r.sector]
        row += [repr(v) for v in r.tta_pre]
        for kind in INDICATOR_KINDS:
            row += [repr(v) for v in r.perf_post[kind]]
        writer.writerow(row)
    return out.getvalue()


def validate_dataset(
    records: Sequence[CompanyRecord],
    config: DatasetConfig = DEFAULT_CONFIG,
) -> list[Violation]:
    """Check record invariants and id uniqueness.

    Returns an empty list iff the records form a valid dataset. Unlike
    parsing, validation never raises; every finding is a Violation.
    """
    violations: list[Violation] = []
    if not records:
        violations.append(Violation(code="empty_dataset", message="dataset contains no firms"))
        return violations

    seen: set[str] = set()
    for r in records:
        if r.firm_id in seen:
            violations.append(
                Violation(
                    code="duplicate_firm_id",
                    message=f"duplicate firm_id {r.firm_id!r}",
                    firm_id=r.firm_id,
                )
            )
        seen.add(r.firm_id)

        if len(r.tta_pre) != config.pre_window:
            violations.append(
                Violation(
                    code="wrong_window_length",
                    message=(
                        f"firm {r.firm_id!r}: expected {config.pre_window} tta values, "
                        f"got {len(r.tta_pre)}"
                    ),
                    firm_id=r.firm_id,
                )
            )
        for year, value in zip(config.pre_years, r.tta_pre):
            if not (math.isfinite(value) and value > 0):
                violations.append(
                    Violation(
                        code="non_positive_tta",
                        message=f"firm {r.firm_id!r}: tta_{year} = {value!r} is not > 0",
                        firm_id=r.firm_id,
                        column=f"tta_{year}",
                    )
                )

        missing = [k for k in INDICATOR_KINDS if k not in r.perf_post]
        extra = [k for k in r.perf_post if k not in INDICATOR_KINDS]
        for kind in missing:
            violations.append(
                Violation(
                    code="missing_indicator",
                    message=f"firm {r.firm_id!r}: no {kind} values",
                    firm_id=r.firm_id,
                )
            )
        for kind in extra:
            violations.append(
                Violation(
                    code="unexpected_indicator",
                    message=f"firm {r.firm_id!r}: unknown indicator kind {kind!r}",
                    firm_id=r.firm_id,
                )
            )
        for kind in INDICATOR_KINDS:
            values = r.perf_post.get(kind)
            if values is None:
                continue
            if len(values) != config.post_window:
                violations.append(
                    Violation(
                        code="wrong_window_length",
                        message=(
                            f"firm {r.firm_id!r}: expected {config.post_window} {kind} "
                            f"values, got {len(values)}"
                        ),
                        firm_id=r.firm_id,
                    )
                )
            for year, value in zip(config.post_years, values):
                if not math.isfinite(value):
                    violations.append(
                        Violation(
                            code="non_numeric_cell",
                            message=f"firm {r.firm_id!r}: {kind}_{year} = {value!r} is not finite",
                            firm_id=r.firm_id,
                            column=f"{kind}_{year}",
                        )
                    )
    return violations
