"""Shared test plumbing: acceptance pass/fail summary lines."""

acceptance_lines: list[str] = []


def record_acceptance(ok: bool, label: str, detail: str) -> None:
    """Queue one pass/fail line for the terminal summary."""
    acceptance_lines.append(f"{'PASS' if ok else 'FAIL'} {label}: {detail}")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)
