import numpy as np
import pytest

from sumcoarray import ARRAY_I, ARRAY_II, proof_waveform, sensing_matrix, uniform_grid


@pytest.fixture(scope="session")
def grid16():
    return uniform_grid(16)


@pytest.fixture(scope="session")
def sm_I(grid16):
    return sensing_matrix(proof_waveform(), ARRAY_I, grid16)


@pytest.fixture(scope="session")
def sm_II(grid16):
    return sensing_matrix(proof_waveform(), ARRAY_II, grid16)


def symbolic_waveform():
    """2x3 waveform with distinct generic entries, handy for structure checks."""
    return np.array([[1.3 + 0.2j, -0.7 + 1.1j, 0.4 - 0.9j], [2.1 - 0.5j, 0.6 + 0.3j, -1.4 - 0.8j]])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
