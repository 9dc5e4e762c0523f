"""Shared fixtures and the per-criterion acceptance summary."""

from __future__ import annotations

import pytest

from blockmap.cache import SeriesCache

CRITERIA = {
    1: "quadrangulation m_n^(u) table reproduced exactly, n = 1..10, < 1 s",
    2: "series equals brute-force block counts, cubic and meander, n <= 8, < 2 min",
    3: "critical constants (quads exact, cubic 1e-5, meander 1e-10), < 1 s",
    4: "duality relations, 100 random inputs at 1e-12 and exact rational cases",
    5: "quadrangulation (50,5)-estimates of 2 - gamma_str at u = 1, 9/5, 3, < 30 s",
    6: "quadrangulation (35,6)-estimates of chi at u = 1, 9/5",
    7: "log-corrected estimates at u_cr (cubic eta = 1/2, open path eta = 1/4)",
    8: "quantum-ball mass at gamma = sqrt 2 and sqrt 8",
    9: "distance profile (Phi(20), small r, contour form, Fisher 1.2 +- 0.06), < 30 s",
    10: "bicubic file constants, or brute-force sum rules and monotone u_cr sequence",
    11: "quartic relation for M_u vanishes exactly at (9/5, 25/432, 8/5)",
}

# criterion number -> [(test name, outcome)]
_OUTCOMES: dict[int, list] = {n: [] for n in CRITERIA}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number): acceptance criterion")
    config.addinivalue_line("markers", "slow: takes more than a few seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _OUTCOMES[mark.args[0]].append((item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not any(_OUTCOMES.values()):
        return
    terminalreporter.section("acceptance criteria")
    for number, description in CRITERIA.items():
        outcomes = _OUTCOMES[number]
        if not outcomes:
            status = "NOT RUN"
        elif any(o == "failed" for _, o in outcomes):
            status = "FAIL"
        elif all(o == "skipped" for _, o in outcomes):
            status = "SKIP"
        else:
            status = "PASS"
        failed = [name for name, o in outcomes if o == "failed"]
        skipped = [name for name, o in outcomes if o == "skipped"]
        extra = ""
        if failed:
            extra += f" failed: {', '.join(failed)}"
        if skipped:
            extra += f" skipped: {', '.join(skipped)}"
        terminalreporter.write_line(f"criterion {number:>2} {status:<7} {description}{extra}")


@pytest.fixture(scope="session")
def table_cache(tmp_path_factory):
    """Cache shared by the slow brute-force tables of one session."""
    return SeriesCache(tmp_path_factory.mktemp("series-cache"))
