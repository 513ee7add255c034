import pytest

from tests import _acceptance_log


def pytest_terminal_summary(terminalreporter):
    lines = _acceptance_log.LINES
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)


@pytest.fixture
def rng():
    import numpy as np
    return np.random.default_rng(12345)
