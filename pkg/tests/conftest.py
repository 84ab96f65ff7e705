"""Test-suite wiring: echo acceptance-criterion verdict lines at the end
of the run so they survive pytest's output capture."""

from __future__ import annotations

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
