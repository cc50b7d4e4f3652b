from __future__ import annotations

import pytest

# criterion number -> (title, [passed, ...]) filled in as acceptance tests run
_CRITERIA: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    entry = _CRITERIA.setdefault(n, (title, []))
    if report.when == "call" or (report.when == "setup" and not report.passed):
        entry[1].append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, results = _CRITERIA[n]
        ok = bool(results) and all(results)
        tr.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")
    passed = sum(1 for _, r in _CRITERIA.values() if r and all(r))
    tr.write_line(f"{passed}/{len(_CRITERIA)} criteria pass")
