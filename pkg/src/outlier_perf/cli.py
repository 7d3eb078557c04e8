"""Command-line front end.

Every command is a thin client over the HTTP service: by default it
talks to an in-process instance of the app (no socket, no daemon), and
``--server URL`` points it at a remote one instead. Either way the
request and response travel through the same endpoint models, so batch
runs and a deployed service cannot drift apart.

Exit codes: 0 on success, 1 for data errors (bad input, failed
validation, unreachable server), 2 for usage errors (bad flags or
request shapes). Set ``OUTLIER_PERF_LOG=debug|info|warning|error`` for
diagnostics on stderr.
"""

from __future__ import annotations

import asyncio
import json
import logging
import os
import sys
from pathlib import Path

import click
import httpx

from .pipeline import write_output_tree
from .reporting import FORMATS

logger = logging.getLogger("outlier_perf.cli")

_LOG_LEVELS = {
    "debug": logging.DEBUG,
    "info": logging.INFO,
    "warning": logging.WARNING,
    "error": logging.ERROR,
}


def _configure_logging() -> None:
    raw = os.environ.get("OUTLIER_PERF_LOG", "warning").strip().lower()
    level = _LOG_LEVELS.get(raw)
    if level is None:
        level = logging.WARNING
        logging.basicConfig(level=level, stream=sys.stderr)
        logger.warning("OUTLIER_PERF_LOG=%r not recognized; using warning", raw)
        return
    logging.basicConfig(level=level, stream=sys.stderr)


def _client(server: str | None) -> httpx.AsyncClient:
    if server:
        logger.info("using remote server %s", server)
        return httpx.AsyncClient(base_url=server, timeout=60.0)
    from .service.app import create_app

    logger.debug("using in-process service")
    return httpx.AsyncClient(
        transport=httpx.ASGITransport(app=create_app()),
        base_url="http://outlier-perf.local",
    )


async def _post(server: str | None, path: str, payload: dict) -> httpx.Response:
    async with _client(server) as client:
        logger.debug("POST %s", path)
        return await client.post(path, json=payload)


def _fail(message: str, code: int) -> int:
    click.echo(f"error: {message}", err=True)
    return code


def _detail(response: httpx.Response):
    try:
        return response.json().get("detail")
    except ValueError:
        return response.text


def _handle_http_error(response: httpx.Response) -> int:
    detail = _detail(response)
    if response.status_code == 400 and isinstance(detail, dict):
        message = detail.get("message", "invalid data")
        context = {k: v for k, v in (detail.get("context") or {}).items() if v is not None}
        suffix = f" [{', '.join(f'{k}={v}' for k, v in sorted(context.items()))}]" if context else ""
        return _fail(message + suffix, 1)
    if response.status_code == 422:
        return _fail(f"invalid request: {json.dumps(detail)}", 2)
    return _fail(f"server returned {response.status_code}: {detail}", 1)


def _parse_formats(_ctx, _param, value: str) -> list[str]:
    formats = [f.strip() for f in value.split(",") if f.strip()]
    if not formats:
        raise click.BadParameter("at least one format is required")
    unknown = [f for f in formats if f not in FORMATS]
    if unknown:
        raise click.BadParameter(f"unknown format(s) {unknown}; choose from {', '.join(FORMATS)}")
    return list(dict.fromkeys(formats))


@click.group()
@click.version_option(package_name="outlier-perf")
@click.option(
    "--server",
    default=None,
    metavar="URL",
    help="Send requests to a running service instead of in-process.",
)
@click.pass_context
def main(ctx: click.Context, server: str | None) -> None:
    """Outlier screening of firm performance-efficiency ratios."""
    _configure_logging()
    ctx.obj = server


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(path_type=Path), help="Input CSV panel.")
@click.option("--k", default=2.0, show_default=True, help="Interval half-width in standard deviations (> 0).")
@click.option("--stdev", type=click.Choice(["sample", "population"]), default="sample", show_default=True, help="Standard deviation divisor convention.")
@click.option("--moments", type=click.Choice(["adjusted", "population"]), default="adjusted", show_default=True, help="Skewness/kurtosis estimator convention.")
@click.option("--kurtosis", type=click.Choice(["excess", "raw"]), default="excess", show_default=True, help="Kurtosis baseline.")
@click.option("--systematic-threshold", default=6, show_default=True, help="Outlier cells (of 12) needed to call a firm systematic.")
@click.option("--near-miss-margin", default=0.5, show_default=True, help="Near-miss distance as a fraction of the interval half-width, in (0, 1).")
@click.option("--format", "formats", default="markdown", show_default=True, callback=_parse_formats, help="Comma-separated table formats: markdown,csv,json.")
@click.option("--scatter", is_flag=True, help="Also export the five scatter CSV files.")
@click.option("--svg", is_flag=True, help="With --scatter, also render static SVG scatters.")
@click.option("--stacked-tta", is_flag=True, help="Also export the per-firm investment-level file.")
@click.option("--out", "out_dir", default=Path("out"), show_default=True, type=click.Path(path_type=Path), help="Output directory.")
@click.pass_obj
def analyze(
    server: str | None,
    input_path: Path,
    k: float,
    stdev: str,
    moments: str,
    kurtosis: str,
    systematic_threshold: int,
    near_miss_margin: float,
    formats: list[str],
    scatter: bool,
    svg: bool,
    stacked_tta: bool,
    out_dir: Path,
) -> None:
    """Run the full analysis and write tables, report, and exports."""
    if not k > 0.0:
        raise click.BadParameter("k must be > 0", param_hint="--k")
    if not 1 <= systematic_threshold <= 12:
        raise click.BadParameter("must be in 1..12", param_hint="--systematic-threshold")
    if not 0.0 < near_miss_margin < 1.0:
        raise click.BadParameter("must be in (0, 1)", param_hint="--near-miss-margin")
    try:
        csv_text = input_path.read_text(encoding="utf-8")
    except OSError as exc:
        sys.exit(_fail(f"cannot read {input_path}: {exc}", 1))
    payload = {
        "csv_text": csv_text,
        "options": {
            "k": k,
            "stdev": stdev,
            "moments": moments,
            "kurtosis": kurtosis,
            "systematic_threshold": systematic_threshold,
            "near_miss_margin": near_miss_margin,
            "formats": formats,
            "scatter": scatter,
            "svg": svg,
            "stacked_tta": stacked_tta,
        },
    }
    try:
        response = asyncio.run(_post(server, "/analyze", payload))
    except httpx.HTTPError as exc:
        sys.exit(_fail(f"cannot reach service: {exc}", 1))
    if response.status_code != 200:
        sys.exit(_handle_http_error(response))
    body = response.json()
    write_output_tree(out_dir, body["files"])
    for warning in body["warnings"]:
        click.echo(f"warning: {warning}", err=True)
    click.echo(f"analyzed {body['firm_count']} firms; {len(body['flagged_firms'])} flagged")
    for firm_id, polarity in body["report"]["systematic_outliers"]:
        click.echo(f"systematic {polarity}: {firm_id}")
    click.echo(f"wrote {len(body['files'])} files to {out_dir}")


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(path_type=Path), help="Input CSV panel.")
@click.pass_obj
def validate(server: str | None, input_path: Path) -> None:
    """Check an input file and report every violation found."""
    try:
        csv_text = input_path.read_text(encoding="utf-8")
    except OSError as exc:
        sys.exit(_fail(f"cannot read {input_path}: {exc}", 1))
    try:
        response = asyncio.run(_post(server, "/validate", {"csv_text": csv_text}))
    except httpx.HTTPError as exc:
        sys.exit(_fail(f"cannot reach service: {exc}", 1))
    if response.status_code != 200:
        sys.exit(_handle_http_error(response))
    body = response.json()
    if body["ok"]:
        click.echo(f"ok: {body['firm_count']} firms")
        return
    for v in body["violations"]:
        where = ", ".join(
            f"{key}={v[key]}" for key in ("firm_id", "row", "column") if v.get(key) is not None
        )
        click.echo(f"{v['code']}: {v['message']}" + (f" [{where}]" if where else ""))
    sys.exit(1)


@main.command()
@click.option("--firms", required=True, type=click.IntRange(min=0), help="Number of firms to generate.")
@click.option("--seed", default=0, show_default=True, help="Generator seed.")
@click.option("--out", "out_path", required=True, type=click.Path(path_type=Path), help="Output CSV path.")
@click.pass_obj
def fixtures(server: str | None, firms: int, seed: int, out_path: Path) -> None:
    """Generate a deterministic synthetic dataset CSV."""
    try:
        response = asyncio.run(_post(server, "/fixtures", {"firms": firms, "seed": seed}))
    except httpx.HTTPError as exc:
        sys.exit(_fail(f"cannot reach service: {exc}", 1))
    if response.status_code != 200:
        sys.exit(_handle_http_error(response))
    body = response.json()
    parent = out_path.parent if str(out_path.parent) else Path(".")
    write_output_tree(parent, {out_path.name: body["csv_text"]})
    click.echo(f"wrote {body['firm_count']} firms to {out_path}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
