import numpy as np
import pytest

from logminorant import AtomicMassDistribution, LogPotentialFunction


@pytest.fixture
def rng():
    return np.random.default_rng(20221003)


def random_measure(rng, n_max=20, spread=1.0, max_mass=3.0, integer=False):
    n = int(rng.integers(1, n_max + 1))
    centers = spread * (rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n))
    if integer:
        masses = rng.integers(1, 4, n).astype(float)
    else:
        masses = max_mass * (1.0 - rng.random(n))
    return AtomicMassDistribution(centers, masses)


def random_potential(rng, **kw):
    return LogPotentialFunction(float(rng.normal()), random_measure(rng, **kw))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
