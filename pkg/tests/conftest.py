import pytest

_ACCEPTANCE: dict = {}


@pytest.fixture
def criterion():
    """Record the outcome of one acceptance criterion: ``criterion(n, passed, detail)``."""

    def record(number: int, passed: bool, detail: str = ""):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}" + (f" - {detail}" if detail else "")
        _ACCEPTANCE[number] = line
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[number])
