import math

import numpy as np
import pytest

from hlpoly.polynomial import HomoPoly


@pytest.fixture
def xy():
    """P = x1 x2."""
    return HomoPoly("real", 2, 2, {(1, 1): 1.0})


@pytest.fixture
def p2():
    """P_2 = x1^2 - x2^2."""
    return HomoPoly("real", 2, 2, {(2, 0): 1.0, (0, 2): -1.0})


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


INF = math.inf
