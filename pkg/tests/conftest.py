from collections import defaultdict

import pytest

CRITERIA = {
    1: "catalog reproduction",
    2: "latin-square GDCs of type g^3",
    3: "prime-power codes and generators",
    4: "ternary sweep n = 3 mod 4 up to 99",
    5: "quaternary distance-3 lengths",
    6: "quaternary distance-4 odd sweep 19..127",
    7: "shortening to even lengths",
    8: "exact and witness oracle",
    9: "hill-climbing the seven prestructures",
    10: "property suites standalone",
}

_results = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion k")


def pytest_runtest_logreport(report):
    k = getattr(report, "criterion", None)
    if k is None:
        return
    if report.when == "call" or report.failed or report.skipped:
        _results[k].append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for k, name in CRITERIA.items():
        outcomes = _results.get(k)
        if not outcomes:
            verdict = "NOT RUN"
        elif "failed" in outcomes:
            verdict = "FAIL"
        elif "passed" in outcomes:
            verdict = "PASS" if "skipped" not in outcomes else "PASS (some items skipped)"
        else:
            verdict = "SKIPPED"
        terminalreporter.write_line(f"criterion {k:2d}: {verdict:<8} {name}")
