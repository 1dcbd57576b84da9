import random

import pytest

from symgrass.fields import GF, QQ
from symgrass.matrices import Matrix

TEST_FIELDS = [QQ, GF(2), GF(3), GF(5), GF(7), GF(2, 2), GF(3, 2)]


@pytest.fixture(params=TEST_FIELDS, ids=lambda f: repr(f))
def field(request):
    return request.param


@pytest.fixture
def rng():
    return random.Random(987654321)


def random_matrix(field, rows, cols, rng):
    return Matrix(field, [[field.sample(rng) for _ in range(cols)] for _ in range(rows)])


def random_invertible(field, n, rng):
    while True:
        m = random_matrix(field, n, n, rng)
        if m.rank() == n:
            return m
