"""Shared fixtures: acceptance criteria report one PASS/FAIL line each."""

import pytest

_LINES = []


class Criterion:
    """Collects named sub-checks and reports them as a single line."""

    def __init__(self, number, title):
        self.number = number
        self.title = title
        self.failures = []

    def check(self, ok, label):
        if not ok:
            self.failures.append(label)

    def finish(self):
        status = "FAIL" if self.failures else "PASS"
        line = f"{status} criterion {self.number}: {self.title}"
        if self.failures:
            line += " [" + "; ".join(self.failures) + "]"
        _LINES.append(line)
        print(line)
        assert not self.failures, line


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
