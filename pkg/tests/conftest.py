"""Collects acceptance-criterion outcomes and prints one line per criterion."""

_criteria = {}  # nodeid -> (number, title)
_outcomes = {}  # number -> list of outcomes


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _criteria[item.nodeid] = (int(m.args[0]), str(m.args[1]))


def pytest_runtest_logreport(report):
    info = _criteria.get(report.nodeid)
    if info is None:
        return
    if report.when == "call" or report.failed:
        _outcomes.setdefault(info, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for (num, title), results in sorted(_outcomes.items()):
        ok = all(r == "passed" for r in results)
        terminalreporter.write_line(f"criterion {num:2d}  {'PASS' if ok else 'FAIL'}  {title}")
