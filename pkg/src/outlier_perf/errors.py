"""Exception taxonomy shared across the package.

Data-shaped problems (bad cells, bad columns, impossible constraints)
derive from :class:`DataError` so callers can map them to a single
"bad input" path. Misuse of the statistics functions derives from
:class:`StatsError`, which is also a ValueError.
"""

from __future__ import annotations


class OutlierPerfError(Exception):
    """Base class for every error raised by this package."""


class DataError(OutlierPerfError):
    """Invalid input data. CLI exit code 1, HTTP status 400."""

    code = "data_error"

    def context(self) -> dict:
        """Structured context for diagnostics (row, column, firm)."""
        return {}


class MissingColumn(DataError):
    code = "missing_column"

    def __init__(self, column: str):
        self.column = column
        super().__init__(f"missing required column: {column!r}")

    def context(self) -> dict:
        return {"column": self.column}


class UnexpectedColumn(DataError):
    code = "unexpected_column"

    def __init__(self, column: str):
        self.column = column
        super().__init__(f"unexpected column: {column!r}")

    def context(self) -> dict:
        return {"column": self.column}


class NonNumericCell(DataError):
    code = "non_numeric_cell"

    def __init__(self, row: int, column: str, cell: str):
        self.row = row
        self.column = column
        self.cell = cell
        super().__init__(
            f"row {row}, column {column!r}: cell {cell!r} is not a finite number"
        )

    def context(self) -> dict:
        return {"row": self.row, "column": self.column}


class NonPositiveTta(DataError):
    """Investment (TTA) values must be strictly positive."""

    code = "non_positive_tta"

    def __init__(self, value: float, firm_id: str | None = None, column: str | None = None):
        self.value = value
        self.firm_id = firm_id
        self.column = column
        where = ""
        if firm_id is not None:
            where = f" (firm {firm_id!r}"
            where += f", column {column!r})" if column else ")"
        super().__init__(f"tta value must be > 0, got {value!r}{where}")

    def context(self) -> dict:
        return {"firm_id": self.firm_id, "column": self.column}


class DuplicateFirmId(DataError):
    code = "duplicate_firm_id"

    def __init__(self, firm_id: str, row: int | None = None):
        self.firm_id = firm_id
        self.row = row
        at = f" at row {row}" if row is not None else ""
        super().__init__(f"duplicate firm_id {firm_id!r}{at}")

    def context(self) -> dict:
        return {"firm_id": self.firm_id, "row": self.row}


class EmptyDataset(DataError):
    code = "empty_dataset"

    def __init__(self, message: str = "dataset contains no firms"):
        super().__init__(message)


class WrongWindowLength(DataError):
    code = "wrong_window_length"

    def __init__(self, expected: int | str, got: int, what: str = "window"):
        self.expected = expected
        self.got = got
        super().__init__(f"{what} must have {expected} entries, got {got}")


class InfeasibleConstraints(DataError):
    """Fixture constraints that no dataset can satisfy."""

    code = "infeasible_constraints"


class StatsError(OutlierPerfError, ValueError):
    """Invalid argument to a statistics function."""


class EmptySample(StatsError):
    def __init__(self):
        super().__init__("sample must be non-empty")


class ZeroMean(StatsError):
    def __init__(self):
        super().__init__("coefficient of variation is undefined for mean 0")


class NegativeStdev(StatsError):
    def __init__(self, stdev: float):
        super().__init__(f"stdev must be >= 0, got {stdev!r}")


class NonPositiveK(StatsError):
    def __init__(self, k: float):
        super().__init__(f"k must be > 0, got {k!r}")


class ZeroStdev(StatsError):
    def __init__(self):
        super().__init__("z-score is undefined for stdev 0")
