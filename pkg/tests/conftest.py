"""Collect acceptance results and print one line per criterion at the end."""

import pytest

_RESULTS = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    ok = call.excinfo is None
    prev = _RESULTS.get(number)
    _RESULTS[number] = (title, ok and (prev is None or prev[1]), call.duration + (prev[2] if prev else 0))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, ok, seconds = _RESULTS[number]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {title} ({seconds:.2f}s)")
