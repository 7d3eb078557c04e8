"""Table rendering, scatter exports, and SVG output."""

import csv
import io

import pytest

from outlier_perf.fixtures import FixtureSpec, benchmark_report, generate
from outlier_perf.indicators import (
    RATIO_NAMES,
    SUMMARY_NAMES,
    cross_sections,
    efficiency_matrix,
)
from outlier_perf.outliers import detect_outliers
from outlier_perf.reporting import (
    INTERVAL_COLUMNS,
    MOMENT_COLUMNS,
    SCATTER_HEADER,
    build_scatter_series,
    render_indicator_table,
    render_interval_table,
    render_outlier_table,
    render_scatter_csv,
    render_scatter_svg,
    render_stacked_tta_csv,
    render_summary_table,
)

SPEC_62 = FixtureSpec(firms=62, seed=7, direction_counts=(45, 17, 0))


@pytest.fixture(scope="module")
def records():
    return generate(SPEC_62)


@pytest.fixture(scope="module")
def matrices(records):
    return [efficiency_matrix(r) for r in records]


@pytest.fixture(scope="module")
def cross(matrices):
    return cross_sections(matrices)


def parse_csv(text: str) -> list[list[str]]:
    return list(csv.reader(io.StringIO(text)))


def test_summary_table_shape(cross):
    rows = parse_csv(render_summary_table(cross, fmt="csv"))
    assert rows[0] == list(MOMENT_COLUMNS)
    assert [r[0] for r in rows[1:]] == list(SUMMARY_NAMES)


def test_indicator_table_shape(cross):
    rows = parse_csv(render_indicator_table(cross, fmt="csv"))
    assert [r[0] for r in rows[1:]] == list(RATIO_NAMES)
    assert len(rows) == 13


def test_markdown_tables_have_separator(cross):
    lines = render_summary_table(cross, fmt="markdown").splitlines()
    assert lines[0].startswith("| indicator |")
    assert set(lines[1].replace("|", "").split()) == {"---"}
    assert len(lines) == 2 + len(SUMMARY_NAMES)


def test_json_tables_are_records(cross):
    import json

    payload = json.loads(render_summary_table(cross, fmt="json"))
    assert payload["columns"] == list(MOMENT_COLUMNS)
    assert len(payload["rows"]) == 7
    assert payload["rows"][0]["indicator"] == "ttam"


def test_unknown_format_rejected(cross):
    with pytest.raises(ValueError):
        render_summary_table(cross, fmt="html")
    with pytest.raises(ValueError):
        render_outlier_table(benchmark_report(), fmt="xlsx")


def test_interval_table_is_self_consistent(cross):
    report = detect_outliers(cross)
    rows = parse_csv(render_interval_table(report, fmt="csv"))
    assert rows[0] == list(INTERVAL_COLUMNS)
    assert len(rows) == 13
    for row in rows[1:]:
        mean, stdev, lower, upper = map(float, row[1:])
        # printed at 5 significant digits, so allow rounding slack
        assert lower == pytest.approx(mean - 2 * stdev, rel=1e-3, abs=1e-6)
        assert upper == pytest.approx(mean + 2 * stdev, rel=1e-3, abs=1e-6)


def test_outlier_table_marks_inliers_with_parentheses():
    md = render_outlier_table(benchmark_report())
    lines = md.splitlines()
    assert lines[0] == "| indicator | Buongiorno | Cairo Communications | Mondo TV | Ternienergia |"
    first = lines[2]
    assert first.startswith("| ds_over_ttam |")
    assert "| 0.4795 |" in first  # outlier cell, bare
    assert "| (0.0186) |" in first  # inlier cell, parenthesized
    assert "| (-0.1155) |" in md  # negative inlier keeps its sign inside


def test_outlier_table_csv_round_trip():
    report = benchmark_report()
    rows = parse_csv(render_outlier_table(report, fmt="csv"))
    assert rows[0][0] == "indicator"
    firms = rows[0][1:]
    for row in rows[1:]:
        indicator = row[0]
        screen = report.indicators[indicator]
        for firm, cell_text in zip(firms, row[1:]):
            cell = screen.classifications[firm]
            wrapped = cell_text.startswith("(") and cell_text.endswith(")")
            assert wrapped == (not cell.is_outlier)
            assert float(cell_text.strip("()")) == cell.value


def test_outlier_table_without_outliers(records):
    flat = [r for r in records][:3]
    # identical firms: no spread anywhere, nothing to flag
    base = flat[0]
    import dataclasses

    same = [dataclasses.replace(base, firm_id=f"F{i}") for i in range(3)]
    report = detect_outliers(cross_sections([efficiency_matrix(r) for r in same]))
    md = render_outlier_table(report, fmt="markdown")
    assert "no outliers at k=2" in md
    assert md.splitlines()[0] == "| indicator |"
    csv_text = render_outlier_table(report, fmt="csv")
    assert "# no outliers at k=2" in csv_text


def test_scatter_series_layout(records, matrices):
    series = build_scatter_series(records, matrices)
    assert [s.name for s in series] == [
        "tta07_vs_tta06",
        "ds_avg_vs_tta2",
        "da_avg_vs_tta2",
        "roi_avg_vs_tta2",
        "ros_avg_vs_tta2",
    ]
    for s in series:
        assert [p[0] for p in s.points] == [r.firm_id for r in records]


def test_scatter_x_matches_recomputed_mean(records, matrices):
    by_name = {s.name: s for s in build_scatter_series(records, matrices)}
    points = by_name["da_avg_vs_tta2"].points
    for record, (firm_id, x, _y, _tag) in zip(records, points):
        assert firm_id == record.firm_id
        assert x == sum(record.tta_pre) / len(record.tta_pre)


def test_scatter_tags_are_directions(records, matrices):
    series = build_scatter_series(records, matrices)[0]
    tags = [p[3] for p in series.points]
    assert tags.count("increase") == 45
    assert tags.count("decrease") == 17
    assert tags.count("flat") == 0


def test_scatter_csv(records, matrices):
    series = build_scatter_series(records, matrices)[0]
    rows = parse_csv(render_scatter_csv(series))
    assert rows[0] == list(SCATTER_HEADER)
    assert len(rows) == 63
    assert float(rows[1][1]) == records[0].tta_pre[0]


def test_scatter_single_firm(records, matrices):
    series = build_scatter_series(records[:1], matrices[:1])
    for s in series:
        assert len(s.points) == 1
        assert len(parse_csv(render_scatter_csv(s))) == 2


def test_svg_is_deterministic_and_complete(records, matrices):
    series = build_scatter_series(records, matrices)[2]
    first = render_scatter_svg(series)
    second = render_scatter_svg(series)
    assert first == second
    assert first.count("<circle") == 62
    for r in records:
        assert f"<title>{r.firm_id}</title>" in first
    assert "<svg" in first and first.rstrip().endswith("</svg>")


def test_stacked_tta_csv_is_sorted(records):
    rows = parse_csv(render_stacked_tta_csv(records))
    assert rows[0] == ["firm_id", "name", "tta_2006", "tta_2007"]
    names = [r[1] for r in rows[1:]]
    assert names == sorted(names)
    assert len(rows) == 63
    for row in rows[1:]:
        assert float(row[2]) > 0 and float(row[3]) > 0
