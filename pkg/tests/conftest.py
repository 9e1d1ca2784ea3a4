"""Collects one PASS/FAIL line per acceptance criterion and prints them in
the terminal summary (and immediately, when output capture is off)."""
import pytest

_RESULTS = {}


class _Recorder:
    def __call__(self, number: int, title: str, ok: bool, detail: str = ""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title}"
        if detail:
            line += f" -- {detail}"
        _RESULTS[number] = line
        print(line)
        return ok


@pytest.fixture
def criterion():
    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_RESULTS):
        terminalreporter.write_line(_RESULTS[k])
