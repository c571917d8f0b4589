import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_outcomes: dict[int, list[str]] = {}
_notes: dict[int, list[str]] = {}
_reported: set[int] = set()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, reported=False): acceptance criterion covered by the test")


@pytest.fixture
def note(request):
    """Attach a line of free text to the criterion summary."""
    marker = request.node.get_closest_marker("criterion")

    def add(text):
        if marker is not None:
            _notes.setdefault(marker.args[0], []).append(str(text))
    return add


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n = marker.args[0]
    if marker.kwargs.get("reported"):
        _reported.add(n)
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _outcomes.setdefault(n, []).append(rep.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_outcomes):
        res = _outcomes[n]
        if "failed" in res:
            verdict = "FAIL"
        elif all(r == "skipped" for r in res):
            verdict = "SKIP"
        elif n in _reported:
            verdict = "REPORTED"
        else:
            verdict = "PASS"
        tr.write_line(f"criterion {n:2d}: {verdict}  ({len(res)} test(s))")
        for line in _notes.get(n, []):
            tr.write_line(f"    {line}")
