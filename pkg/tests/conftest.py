import pytest

ACCEPTANCE_LINES = {}


def record_acceptance(number, passed, detail=""):
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'}"
    if detail:
        line += f" - {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


@pytest.fixture
def acceptance():
    return record_acceptance


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
