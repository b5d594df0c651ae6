"""Shared test plumbing.

Tests marked ``@pytest.mark.acceptance(num, title)`` are collected into a
terminal summary section that prints one pass/fail line per criterion, so
a plain ``pytest`` run shows the acceptance verdict at a glance.
"""

from __future__ import annotations

import pytest


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(num, title): acceptance criterion test"
    )
    config._acceptance_results = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None and report.when == "call":
        num, title = marker.args
        if report.skipped:
            verdict = "SKIP"
        else:
            verdict = "PASS" if report.passed else "FAIL"
        item.config._acceptance_results[num] = (title, verdict)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_acceptance_results", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        title, verdict = results[num]
        terminalreporter.write_line(f"criterion {num}: {verdict} - {title}")
