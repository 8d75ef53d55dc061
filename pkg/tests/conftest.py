import numpy as np
import pytest

from renyi_lab import instances
from renyi_lab.mutual_information import SolverConfig


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def cfg():
    return SolverConfig()


@pytest.fixture
def bsc_joint():
    """Input (3/4, 1/4) through BSC(0.1), counting references."""
    return instances.joint_from([0.75, 0.25], instances.bsc(0.1))


def pytest_terminal_summary(terminalreporter):
    failed = terminalreporter.stats.get("failed", [])
    acc = [r.nodeid.split("::")[-1] for r in failed if "test_acceptance" in r.nodeid]
    if acc:
        terminalreporter.write_sep("-", "acceptance criteria not met")
        for name in acc:
            terminalreporter.write_line(name)
