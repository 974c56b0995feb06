import pytest

from hyperincl import BigFloat, ExactRational, HardwareFloat

ACCEPTANCE_LINES = []


@pytest.fixture(params=["float", "bigfloat", "rational"])
def mode(request):
    return {"float": HardwareFloat(), "bigfloat": BigFloat(128), "rational": ExactRational()}[request.param]


@pytest.fixture(params=["float", "bigfloat"])
def float_mode(request):
    return {"float": HardwareFloat(), "bigfloat": BigFloat(128)}[request.param]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
