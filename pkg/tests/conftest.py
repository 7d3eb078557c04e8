"""Test plumbing: emit one PASS/FAIL line per acceptance criterion."""

ACCEPTANCE_FILE = "test_acceptance.py"

CRITERIA = (
    "test_interval_reproduction",
    "test_benchmark_classification",
    "test_systematic_rollup",
    "test_denominator_monotonicity",
    "test_moment_oracle_equivalence",
    "test_coefficient_of_variation",
    "test_scale_invariance",
    "test_k_monotonicity",
    "test_cohort_counts",
    "test_end_to_end_determinism",
)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes = {}
    for status, label in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if ACCEPTANCE_FILE not in nodeid:
                continue
            name = nodeid.split("::")[-1].split("[")[0]
            if name in CRITERIA and outcomes.get(name) != "FAIL":
                outcomes[name] = label
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name in CRITERIA:
        if name in outcomes:
            terminalreporter.write_line(f"ACCEPTANCE {name}: {outcomes[name]}")
