import time

ACCEPTANCE = {}
_START = time.perf_counter()
SUITE_BUDGET = 300.0


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    elapsed = time.perf_counter() - _START
    if "10" in ACCEPTANCE:
        ok, detail = ACCEPTANCE["10"]
        within = elapsed < SUITE_BUDGET
        ACCEPTANCE["10"] = (ok and within, f"{detail}; session runtime {elapsed:.1f} s (budget {SUITE_BUDGET:.0f} s)")
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=int):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'} | {detail}")
