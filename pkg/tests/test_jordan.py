import random

import pytest

from symgrass.errors import SplitFailure
from symgrass.fields import GF, QQ
from symgrass.jordan import (
    generalized_jordan_form,
    is_generalized_jordan,
    jordan_decomposition,
    jordan_matrix,
)
from symgrass.matrices import Matrix

from conftest import random_invertible, random_matrix


def test_nilpotent_wide_matrix_is_fixed_point():
    a = Matrix(QQ, [[0, 1, 0], [0, 0, 0]])
    res = generalized_jordan_form(a)
    assert res.normal_form == a
    assert res.eigenvalues == (0, 0)
    assert res.superdiagonal == (1,)


def test_identity_pattern():
    a = Matrix(QQ, [[1, 0, 0], [0, 1, 0]])
    res = generalized_jordan_form(a)
    assert res.eigenvalues == (1, 1)
    assert res.superdiagonal == (0,)
    assert res.normal_form == a


def test_jordan_block_over_f5():
    a = Matrix(GF(5), [[2, 1], [0, 2]])
    res = generalized_jordan_form(a)
    assert res.normal_form == a
    assert res.eigenvalues == (2, 2)
    assert res.superdiagonal == (1,)


def test_split_failure_over_q():
    # rotation matrix: x^2 + 1 has no rational roots
    a = Matrix(QQ, [[0, -1], [1, 0]])
    with pytest.raises(SplitFailure):
        generalized_jordan_form(a)


def test_finite_field_extends_instead_of_failing():
    a = Matrix(GF(3), [[0, 2], [1, 0]])  # char poly x^2 + 1
    res = generalized_jordan_form(a)
    assert res.field == GF(3, 2)
    assert len(res.eigenvalues) == 2
    assert res.superdiagonal == (0,)


def test_block_ranges():
    a = Matrix(QQ, [[2, 1, 0], [0, 2, 0], [0, 0, 5]])
    res = generalized_jordan_form(a)
    assert res.block_ranges() == ((0, 2), (2, 3))


@pytest.mark.parametrize("field", [QQ, GF(5), GF(7), GF(3)], ids=repr)
def test_round_trip_random(field):
    rng = random.Random(99)
    done = 0
    attempts = 0
    while done < 15 and attempts < 150:
        attempts += 1
        k = rng.randint(1, 4)
        n = rng.randint(k, 6)
        a = random_matrix(field, k, n, rng)
        try:
            res = generalized_jordan_form(a)
        except SplitFailure:
            continue
        done += 1
        lifted = a if res.field == a.field else a.map_scalars(res.field, res.embed)
        assert res.row_change.mul(lifted).mul(res.col_change) == res.normal_form
        assert is_generalized_jordan(res.normal_form)
        # recorded changes preserve the wide identity pattern on the left
        F = res.field
        ident = Matrix.identity(F, k)
        if n > k:
            ident = ident.hstack(Matrix.zero(F, k, n - k))
        assert res.row_change.mul(ident).mul(res.col_change) == ident
        # determinism
        res2 = generalized_jordan_form(a)
        assert res2.normal_form == res.normal_form
        assert res2.eigenvalues == res.eigenvalues
    assert done >= 10


def _conjugated_jordan(field, rng, n):
    """Random matrix with planted rational block structure: P J P^-1."""
    eigs = []
    superdiag = []
    left = n
    while left:
        s = rng.randint(1, left)
        lam = field.from_int(rng.randint(-2, 2))
        eigs.extend([lam] * s)
        superdiag.extend([1] * (s - 1) + [0])
        left -= s
    j = jordan_matrix(field, eigs, superdiag[:-1])
    p = random_invertible(field, n, rng)
    return p.mul(j).mul(p.inverse())


def test_jordan_decomposition_structure():
    rng = random.Random(7)
    for field in (GF(5), QQ):
        for _ in range(15):
            n = rng.randint(1, 4)
            a = _conjugated_jordan(field, rng, n)
            F, embed, p, j, eigenvalues, superdiag = jordan_decomposition(a)
            assert F == field
            assert p.inverse().mul(a).mul(p) == j
            assert j == jordan_matrix(F, eigenvalues, superdiag)


def test_eigenvalue_sorting_is_canonical():
    a = Matrix(QQ, [[5, 0], [0, 2]])
    res = generalized_jordan_form(a)
    assert res.eigenvalues == (2, 5)
