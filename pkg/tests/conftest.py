import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

_ACCEPTANCE: list = []


@pytest.fixture
def acceptance():
    """Call with (number, passed, summary); the line is echoed now and in the summary."""

    def record(number: int, passed: bool, summary: str):
        line = f"ACCEPTANCE {number}: {'PASS' if passed else 'FAIL'} - {summary}"
        _ACCEPTANCE.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
