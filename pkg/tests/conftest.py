import pytest

from compop import orlicz
from compop.specs import witness_profile


@pytest.fixture(scope="session")
def exp_x_witness():
    return witness_profile(orlicz.exp_x())


@pytest.fixture(scope="session")
def exp_x_profile(exp_x_witness):
    return exp_x_witness[0]


def pytest_terminal_summary(terminalreporter):
    lines = getattr(pytest, "acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
