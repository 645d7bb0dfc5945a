import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SAMPLE = (1, 87, 15, 39, 21)

# acceptance lines collected by test_acceptance.py, printed at the end of the run
AC_LINES: dict[str, str] = {}


@pytest.fixture(scope="session")
def sample():
    return SAMPLE


def pytest_terminal_summary(terminalreporter):
    if not AC_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(AC_LINES, key=lambda k: int(k[2:])):
        terminalreporter.write_line(AC_LINES[key])
