"""Shared pytest plumbing.

The acceptance tests record one human-readable line per criterion; the
terminal-summary hook replays them at the end of the run so the pass/fail
ledger is visible regardless of output capture.
"""

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
