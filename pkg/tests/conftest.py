"""Collect acceptance outcomes and print one line per criterion at the end."""

import pytest

_results: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, summary): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and rep.passed):
        return
    n, summary = mark.args
    entry = _results.setdefault(n, {"summary": summary, "ok": True, "failed": []})
    if not rep.passed:
        entry["ok"] = False
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_results):
        e = _results[n]
        line = f"criterion {n}: {'PASS' if e['ok'] else 'FAIL'}  {e['summary']}"
        if e["failed"]:
            line += f"  [failed: {', '.join(e['failed'])}]"
        tr.write_line(line)
