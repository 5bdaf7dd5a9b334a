import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _criteria[n] = (title, "PASS" if rep.passed else "FAIL", rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, status, secs = _criteria[n]
        terminalreporter.write_line(f"[{status}] criterion {n:2d}: {title} ({secs:.2f} s)")
