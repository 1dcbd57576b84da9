import random

import pytest

from symgrass.fields import GF, QQ, embed_scalar
from symgrass.matrices import Matrix, char_poly_coeffs, left_kernel, rref

from conftest import TEST_FIELDS, random_matrix


def test_rref_proportional_rows():
    m = Matrix(QQ, [[1, 2], [2, 4]])
    red, rank, pivots = rref(m)
    assert rank == 1
    assert pivots == (0,)


def test_rref_identity():
    m = Matrix.identity(QQ, 3)
    red, rank, _ = rref(m)
    assert rank == 3 and red == m


def test_rref_f2_single_pivot():
    m = Matrix(GF(2), [[0, 1], [0, 0]])
    red, rank, pivots = rref(m)
    assert rank == 1
    assert pivots == (1,)


@pytest.mark.parametrize("field", TEST_FIELDS, ids=repr)
def test_rref_idempotent_random(field):
    rng = random.Random(11)
    for _ in range(25):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = random_matrix(field, rows, cols, rng)
        red, rank, pivots = m.rref()
        again, rank2, pivots2 = red.rref()
        assert again == red
        assert rank2 == rank and pivots2 == pivots


def test_left_kernel_full_row_rank_is_empty():
    m = Matrix(QQ, [[1, 0, 0], [0, 1, 0]])
    assert left_kernel(m).nrows == 0


def test_left_kernel_proportional_rows():
    m = Matrix(QQ, [[1, 2], [2, 4]])
    ker = left_kernel(m)
    assert ker.nrows == 1
    v = ker.data[0]
    # spans the same line as (2, -1)
    assert v[0] * (-1) == v[1] * 2


def test_left_kernel_zero_matrix():
    m = Matrix.zero(QQ, 3, 2)
    assert left_kernel(m).nrows == 3


@pytest.mark.parametrize("field", TEST_FIELDS, ids=repr)
def test_left_kernel_properties(field):
    rng = random.Random(23)
    for _ in range(20):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = random_matrix(field, rows, cols, rng)
        ker = m.left_kernel()
        assert ker.nrows + m.rank() == rows
        for v in ker.data:
            assert all(field.is_zero(x) for x in m.mul_vector(v))


def test_rank_invariant_under_field_extension():
    rng = random.Random(31)
    f3, f9 = GF(3), GF(3, 2)
    for _ in range(25):
        m = random_matrix(f3, rng.randint(1, 5), rng.randint(1, 5), rng)
        lifted = m.map_scalars(f9, lambda a: embed_scalar(f3, f9, a))
        assert lifted.rank() == m.rank()


def test_inverse_and_det():
    rng = random.Random(47)
    for field in (QQ, GF(5)):
        for _ in range(10):
            n = rng.randint(1, 4)
            while True:
                m = random_matrix(field, n, n, rng)
                if not field.is_zero(m.det()):
                    break
            assert m.mul(m.inverse()) == Matrix.identity(field, n)


def test_char_poly_examples():
    # diag(2,2) over GF(5): (x-2)^2 = x^2 + x + 4
    assert char_poly_coeffs(Matrix(GF(5), [[2, 0], [0, 2]])) == (4, 1, 1)
    assert char_poly_coeffs(Matrix(QQ, [[0, 1], [0, 0]]))[2] == 1
    assert char_poly_coeffs(Matrix(QQ, [[0, 1], [0, 0]]))[:2] == (0, 0)
    # companion matrix of x^2 + 1 over GF(3)
    comp = Matrix(GF(3), [[0, 2], [1, 0]])
    assert char_poly_coeffs(comp) == (1, 0, 1)


@pytest.mark.parametrize("field", TEST_FIELDS, ids=repr)
def test_char_poly_matches_determinant_expansion(field):
    # det(xI - M) evaluated at scalar points agrees with the Berkowitz output
    rng = random.Random(7)
    for _ in range(10):
        n = rng.randint(1, 4)
        m = random_matrix(field, n, n, rng)
        coeffs = char_poly_coeffs(m)
        assert len(coeffs) == n + 1
        assert coeffs[-1] == field.one()
        for probe in range(3):
            x = field.from_int(probe)
            shifted = Matrix.identity(field, n).scale(x).sub(m)
            direct = shifted.det()
            acc = field.zero()
            power = field.one()
            for c in coeffs:
                acc = field.add(acc, field.mul(c, power))
                power = field.mul(power, x)
            assert acc == direct
