def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if not test_acceptance.OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in test_acceptance.OUTCOMES:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
