import numpy as np
import pytest

from bikegeom.curves import WaveFront


@pytest.fixture(scope="session")
def tricusp():
    return WaveFront({3: (1.0, 0.0)})


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import summary_lines

    lines = summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
