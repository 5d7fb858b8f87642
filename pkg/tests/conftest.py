import pytest

_OUTCOMES = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    number, title = mark.args
    entry = _OUTCOMES.setdefault(number, {"title": title, "failed": [], "total": 0})
    entry["total"] += 1
    if not rep.passed:
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_OUTCOMES):
        e = _OUTCOMES[number]
        status = "FAIL" if e["failed"] else "PASS"
        line = f"{status} criterion {number:>2}: {e['title']} ({e['total'] - len(e['failed'])}/{e['total']} tests)"
        if e["failed"]:
            line += " failing: " + ", ".join(e["failed"])
        terminalreporter.write_line(line)
