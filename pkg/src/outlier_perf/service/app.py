"""FastAPI application exposing the pipeline.

Endpoints: POST /analyze, POST /validate, POST /fixtures, GET /health.
Invalid request shapes get FastAPI's standard 422; data-level problems
(bad cells, impossible constraints) get a structured 400 with an error
code, message, and context. /validate is the exception: it exists to
report data problems, so it answers 200 with a verdict instead of 400.
"""

from __future__ import annotations

import logging

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import DataError
from ..fixtures import FixtureSpec, PlantedOutlier, generate
from ..ingest import CompanyRecord, parse_text, render_csv, validate_dataset
from ..pipeline import build_artifacts
from .schemas import (
    AnalyzeRequest,
    AnalyzeResponse,
    FixtureRequest,
    FixtureResponse,
    ValidateRequest,
    ValidateResponse,
    ViolationModel,
)

logger = logging.getLogger("outlier_perf.service")


def _load_records(payload: AnalyzeRequest | ValidateRequest) -> list[CompanyRecord]:
    """Materialize the dataset from whichever source the request used.

    CSV text goes through the parser (which raises DataError on the
    first defect). Structured rows are checked with the non-raising
    validator, and any violation is reported as a 400 so /analyze never
    runs on malformed data.
    """
    if payload.csv_text is not None:
        return parse_text(payload.csv_text)
    records = [row.to_record() for row in payload.firms]
    violations = validate_dataset(records)
    if violations:
        first = violations[0]
        raise HTTPException(
            status_code=400,
            detail={
                "error": first.code,
                "message": first.message,
                "context": {"firm_id": first.firm_id, "row": first.row, "column": first.column},
                "violations": [ViolationModel(**vars(v)).model_dump() for v in violations],
            },
        )
    return records


def create_app() -> FastAPI:
    app = FastAPI(title="outlier-perf", version=__version__)

    @app.exception_handler(DataError)
    async def data_error_handler(request: Request, exc: DataError) -> JSONResponse:
        logger.info("data error on %s: %s", request.url.path, exc)
        return JSONResponse(
            status_code=400,
            content={
                "detail": {
                    "error": exc.code,
                    "message": str(exc),
                    "context": exc.context(),
                }
            },
        )

    @app.get("/health")
    async def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/analyze", response_model=AnalyzeResponse)
    async def analyze(payload: AnalyzeRequest) -> AnalyzeResponse:
        records = _load_records(payload)
        artifacts = build_artifacts(records, payload.options.to_options())
        logger.info(
            "analyzed %d firms, %d flagged, %d files",
            artifacts.firm_count, len(artifacts.flagged_firms), len(artifacts.files),
        )
        return AnalyzeResponse(
            report=artifacts.document,
            files=artifacts.files,
            warnings=list(artifacts.warnings),
            firm_count=artifacts.firm_count,
            flagged_firms=list(artifacts.flagged_firms),
        )

    @app.post("/validate", response_model=ValidateResponse)
    async def validate(payload: ValidateRequest) -> ValidateResponse:
        if payload.csv_text is not None:
            try:
                records = parse_text(payload.csv_text)
            except DataError as exc:
                ctx = exc.context()
                return ValidateResponse(
                    ok=False,
                    violations=[
                        ViolationModel(
                            code=exc.code,
                            message=str(exc),
                            firm_id=ctx.get("firm_id"),
                            row=ctx.get("row"),
                            column=ctx.get("column"),
                        )
                    ],
                )
        else:
            records = [row.to_record() for row in payload.firms]
        violations = validate_dataset(records)
        return ValidateResponse(
            ok=not violations,
            firm_count=len(records),
            violations=[ViolationModel(**vars(v)) for v in violations],
        )

    @app.post("/fixtures", response_model=FixtureResponse)
    async def fixtures(payload: FixtureRequest) -> FixtureResponse:
        spec = FixtureSpec(
            firms=payload.firms,
            seed=payload.seed,
            tta_range=payload.tta_range,
            perf_range=payload.perf_range,
            direction_counts=payload.direction_counts,
            planted=tuple(
                PlantedOutlier(indicator=p.indicator, firm_index=p.firm_index, z=p.z)
                for p in payload.planted
            ),
        )
        records = generate(spec)
        return FixtureResponse(csv_text=render_csv(records), firm_count=len(records))

    return app


app = create_app()
