"""Shared pytest wiring: the acceptance verdict summary section.

Acceptance tests append one preformatted line per criterion to VERDICTS;
printing them from a terminal-summary hook keeps them visible under the
default output capture.
"""

VERDICTS: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if VERDICTS:
        terminalreporter.section("acceptance verdicts")
        for line in VERDICTS:
            terminalreporter.write_line(line)
