import random

import pytest

from twotrunc.polytope import make_cube, truncate
from twotrunc.verify import random_sequence


@pytest.fixture
def square():
    return make_cube(2)


@pytest.fixture
def pentagon():
    return truncate(make_cube(2), ("x1+", "x2+"))


@pytest.fixture
def cube3_edge():
    return truncate(make_cube(3), ("x1+", "x2+"))


def sample_sequences(count, dims, steps_max, seed):
    """Deterministic (dim, steps) pairs for property tests."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        dim = rng.choice(dims)
        out.append((dim, random_sequence(rng, dim, steps_max)))
    return out
