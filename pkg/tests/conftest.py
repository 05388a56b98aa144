import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from jmvcc.solver import JmvccState, uniform_weights  # noqa: E402

CRITERIA = []


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(CRITERIA):
        terminalreporter.write_line(line)


def random_instance(rng, V, K, N, dims=None):
    """Random positive views and a random positive state (weights uniform)."""
    if dims is None:
        dims = rng.integers(K, 11, size=V)
    X = [rng.random((int(M), N)) + 0.05 for M in dims]
    F = [rng.random((int(M), K)) + 0.05 for M in dims]
    G = [rng.random((K, N)) + 0.05 for _ in range(V)]
    Gstar = rng.random((K, N)) + 0.05
    alpha, beta = uniform_weights(V)
    return X, JmvccState(F, G, Gstar, alpha, beta)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
