import pytest

_criteria: dict[int, tuple[str, str, float, float, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, limit): acceptance criterion with a runtime limit in seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call":
        return
    number, title, limit = marker.args
    detail = "; ".join(str(v) for k, v in item.user_properties if k == "detail")
    status = "PASS" if rep.passed else "FAIL"
    _criteria[number] = (status, title, rep.duration, limit, detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_criteria):
        status, title, duration, limit, detail = _criteria[number]
        line = f"[{status}] {number}. {title} ({duration:.1f} s, limit {limit:g} s)"
        tr.write_line(line)
        if detail:
            tr.write_line(f"       {detail}")
