import os

import pytest

FULL = os.environ.get("ONEROUND_FULL") == "1"

_results: dict[str, list] = {}


def pytest_collection_modifyitems(config, items):
    if FULL:
        return
    skip = pytest.mark.skip(reason="set ONEROUND_FULL=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    key = f"C{number:<2} {title}"
    if report.when == "call" or (report.when == "setup" and not report.passed):
        details = [v for k, v in item.user_properties if k == "detail"]
        _results.setdefault(key, []).append((report.outcome, item.name, details))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for key in sorted(_results, key=lambda k: int(k[1:3])):
        runs = _results[key]
        outcomes = {o for o, _, _ in runs}
        if "failed" in outcomes:
            verdict = "FAIL"
        elif outcomes == {"skipped"}:
            verdict = "SKIP"
        else:
            verdict = "PASS"
        tr.write_line(f"{verdict} {key}")
        for outcome, name, details in runs:
            for d in details:
                tr.write_line(f"       {name}: {d}")
            if outcome == "skipped":
                tr.write_line(f"       {name}: skipped")
