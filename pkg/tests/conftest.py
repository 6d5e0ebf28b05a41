from oracles import ACCEPTANCE_LIMITS, ACCEPTANCE_LOG


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted({row[0] for row in ACCEPTANCE_LOG}):
        rows = [r for r in ACCEPTANCE_LOG if r[0] == n]
        total = sum(r[3] for r in rows)
        failed = [r[1] for r in rows if not r[2]]
        ok = not failed and total < ACCEPTANCE_LIMITS[n]
        note = f"; failing part: {', '.join(failed)}" if failed else ""
        terminalreporter.write_line(
            f"criterion {n}: {'PASS' if ok else 'FAIL'} ({total:.2f}s, limit {ACCEPTANCE_LIMITS[n]}s{note})"
        )
