import pytest

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    report = outcome.get_result()
    key, label = marker.args
    ok, _ = _criteria.get(key, (True, label))
    if report.failed or (report.when == "call" and report.skipped):
        ok = False
    _criteria[key] = (ok, label)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria, key=lambda k: int(k[2:])):
        ok, label = _criteria[key]
        terminalreporter.write_line(f"{key} {'PASS' if ok else 'FAIL'}  {label}")
