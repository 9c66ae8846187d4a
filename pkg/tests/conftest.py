ACCEPTANCE_PREFIX = "test_criterion_"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion, printed uncaptured."""
    rows = []
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            name = report.location[2]
            if name.startswith(ACCEPTANCE_PREFIX):
                label = name[len(ACCEPTANCE_PREFIX):]
                rows.append((label, "PASS" if status == "passed" else "FAIL"))
    if not rows:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for label, verdict in sorted(rows):
        terminalreporter.write_line(f"ACCEPTANCE {label}: {verdict}")
