"""Request and response models for the HTTP service.

A dataset arrives either as ``csv_text`` (the same wide CSV the CLI
reads) or as structured ``firms`` rows; exactly one must be given.
Analysis knobs mirror the CLI flags by name.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, model_validator

from ..ingest import CompanyRecord
from ..pipeline import AnalysisOptions
from ..stats import MomentConventions


class FirmRow(BaseModel):
    """One firm's panel: 2 pre-window investment values, 3 post-window
    values per performance kind."""

    firm_id: str = Field(min_length=1)
    name: str = ""
    sector: str = ""
    tta_pre: list[float] = Field(min_length=2, max_length=2)
    ds: list[float] = Field(min_length=3, max_length=3)
    da: list[float] = Field(min_length=3, max_length=3)
    roi: list[float] = Field(min_length=3, max_length=3)
    ros: list[float] = Field(min_length=3, max_length=3)

    def to_record(self) -> CompanyRecord:
        return CompanyRecord(
            firm_id=self.firm_id,
            name=self.name,
            sector=self.sector,
            tta_pre=tuple(self.tta_pre),
            perf_post={
                "ds": tuple(self.ds),
                "da": tuple(self.da),
                "roi": tuple(self.roi),
                "ros": tuple(self.ros),
            },
        )


class AnalyzeOptions(BaseModel):
    """Screening and rendering knobs; names match the CLI flags."""

    k: float = Field(default=2.0, gt=0)
    stdev: Literal["sample", "population"] = "sample"
    moments: Literal["adjusted", "population"] = "adjusted"
    kurtosis: Literal["excess", "raw"] = "excess"
    systematic_threshold: int = Field(default=6, ge=1, le=12)
    near_miss_margin: float = Field(default=0.5, gt=0, lt=1)
    formats: list[Literal["markdown", "csv", "json"]] = ["markdown"]
    scatter: bool = False
    svg: bool = False
    stacked_tta: bool = False

    def to_options(self) -> AnalysisOptions:
        return AnalysisOptions(
            k=self.k,
            conventions=MomentConventions(
                stdev_mode=self.stdev,
                shape_mode=self.moments,
                kurtosis_basis=self.kurtosis,
            ),
            systematic_threshold=self.systematic_threshold,
            near_miss_margin=self.near_miss_margin,
            formats=tuple(dict.fromkeys(self.formats)),
            scatter=self.scatter,
            svg=self.svg,
            stacked_tta=self.stacked_tta,
        )


class _DatasetPayload(BaseModel):
    csv_text: str | None = None
    firms: list[FirmRow] | None = None

    @model_validator(mode="after")
    def _exactly_one_source(self):
        if (self.csv_text is None) == (self.firms is None):
            raise ValueError("provide exactly one of csv_text or firms")
        return self


class AnalyzeRequest(_DatasetPayload):
    options: AnalyzeOptions = AnalyzeOptions()


class AnalyzeResponse(BaseModel):
    report: dict
    files: dict[str, str]
    warnings: list[str]
    firm_count: int
    flagged_firms: list[str]


class ValidateRequest(_DatasetPayload):
    pass


class ViolationModel(BaseModel):
    code: str
    message: str
    firm_id: str | None = None
    row: int | None = None
    column: str | None = None


class ValidateResponse(BaseModel):
    ok: bool
    firm_count: int = 0
    violations: list[ViolationModel] = []


class PlantModel(BaseModel):
    indicator: str
    firm_index: int = Field(ge=0)
    z: float


class FixtureRequest(BaseModel):
    firms: int = Field(ge=0)
    seed: int | str = 0
    tta_range: tuple[float, float] = (20.0, 120.0)
    perf_range: tuple[float, float] = (-8.0, 12.0)
    direction_counts: tuple[int, int, int] | None = None
    planted: list[PlantModel] = []


class FixtureResponse(BaseModel):
    csv_text: str
    firm_count: int
