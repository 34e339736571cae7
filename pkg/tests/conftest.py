from __future__ import annotations

import pytest

# one line per acceptance criterion, filled in by test_acceptance.py
CRITERIA_LINES: dict[int, str] = {}
# wall time of each scenario in the shared suite run
SUITE_SECONDS: dict[str, float] = {}


@pytest.fixture(scope="session")
def suite_reports():
    import time

    from propcoh.pquotient import clear_tower_cache
    from propcoh.scenarios import default_suite, run_scenario

    clear_tower_cache()
    out = {}
    for s in default_suite():
        start = time.perf_counter()
        rep = run_scenario(s)
        SUITE_SECONDS[s.name] = time.perf_counter() - start
        out[s.name] = rep
    return out


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA_LINES):
        terminalreporter.write_line(CRITERIA_LINES[k])
