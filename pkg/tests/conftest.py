"""Prints a one-line pass/fail summary per acceptance criterion."""

from __future__ import annotations

import re

_CRITERION_RE = re.compile(r"test_criterion_(\d+)")

_TITLES = {
    1: "evaluator/oracle equivalence (exhaustive + seeded random)",
    2: "root-probe cardinality on the 2x2 witness graph",
    3: "forward direction: witness verifies for both stock instances",
    4: "fragment claims and classifier/oracle agreement",
    5: "bounded counterexample search sanity",
    6: "converse-direction consistency on the untileable instance",
    7: "left outer join algebra vs literal-formula oracle",
    8: "tiling solvers and mutual-exclusion sweep",
}

_results: dict[int, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    match = _CRITERION_RE.search(report.nodeid)
    if not match:
        return
    number = int(match.group(1))
    outcome = report.outcome  # passed / failed / skipped
    previous = _results.get(number)
    if previous == "failed":
        return
    if outcome == "failed" or previous is None or previous == "skipped":
        _results[number] = outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        status = "PASS" if _results[number] == "passed" else _results[number].upper()
        title = _TITLES.get(number, "")
        terminalreporter.write_line(f"criterion {number}: {status} - {title}")
