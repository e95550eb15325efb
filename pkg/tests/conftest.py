import pytest

_LINES = {}


@pytest.fixture
def criterion_line():
    """Record one PASS/FAIL line per acceptance criterion."""
    def record(num, title, ok, detail=""):
        line = f"criterion {num:>2} {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
        _LINES[num] = line
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_LINES):
        terminalreporter.write_line(_LINES[num])
