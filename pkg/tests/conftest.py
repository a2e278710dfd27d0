import sys

import hypothesis

hypothesis.settings.register_profile("fast", max_examples=20)
hypothesis.settings.register_profile("thorough", max_examples=500)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    REPORT = getattr(mod, "REPORT", None)
    if not REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(REPORT, key=int):
        parts = REPORT[key]
        ok = all(p[0] for p in parts)
        detail = "; ".join(p[1] for p in parts if not p[0]) or parts[-1][1]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
