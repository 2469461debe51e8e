"""Collects acceptance-criterion outcomes and prints one PASS/FAIL line per criterion."""

_criteria = {}
_results = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _criteria[item.nodeid] = mark.args


def pytest_runtest_logreport(report):
    crit = _criteria.get(report.nodeid)
    if crit is None:
        return
    # a failing setup counts against the criterion too
    if report.when != "call" and report.passed:
        return
    n, title = crit
    _, ok, secs = _results.get(n, (title, True, 0.0))
    _results[n] = (title, ok and report.passed, secs + report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        title, ok, secs = _results[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}  ({secs:.1f}s)")
