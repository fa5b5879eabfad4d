"""Print one PASS/FAIL line per acceptance criterion at the end of the run."""

import re

_RESULTS = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2).replace("_", " "))
    if report.when == "call" or report.outcome != "passed":
        if report.failed or key not in _RESULTS:
            _RESULTS[key] = "FAIL" if report.failed else ("PASS" if report.passed else "SKIP")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for (n, name), outcome in sorted(_RESULTS.items()):
        terminalreporter.write_line(f"criterion {n:2d} {outcome}: {name}")
