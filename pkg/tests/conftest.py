"""Aggregate acceptance results: one PASS/FAIL line per criterion."""

from collections import defaultdict

_results: dict[int, list[tuple[str, str]]] = defaultdict(list)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for key, value in report.user_properties:
        if key == "criterion":
            _results[value].append((report.nodeid, report.outcome))


def pytest_runtest_setup(item):
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        item.user_properties.append(("criterion", mark.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_results):
        outcomes = _results[n]
        failed = [nid.split("::")[-1] for nid, o in outcomes if o != "passed"]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {n:2d}: {status} ({len(outcomes) - len(failed)}/{len(outcomes)} checks)"
        if failed:
            line += " failing: " + ", ".join(failed)
        tr.write_line(line)
