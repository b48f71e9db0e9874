"""Collects acceptance outcomes and prints one line per criterion at the end of the run."""

import pytest

ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title, limit=None): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    number, title = mark.args[:2]
    limit = mark.kwargs.get("limit")
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        ACCEPTANCE[number] = (title, rep.passed, rep.duration, limit)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, duration, limit = ACCEPTANCE[number]
        budget = f", limit {limit} s" if limit else ""
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {title} ({duration:.2f} s{budget})")
