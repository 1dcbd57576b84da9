import json
import random
from fractions import Fraction

import pytest

from symgrass.errors import PreconditionError
from symgrass.fields import GF, QQ
from symgrass.forms import random_alternating_form
from symgrass.matrices import Matrix
from symgrass.serialize import (
    field_from_json,
    field_to_json,
    form_from_json,
    form_to_json,
    matrix_from_json,
    matrix_to_json,
    scalar_from_json,
    scalar_to_json,
)

from conftest import TEST_FIELDS, random_matrix


@pytest.mark.parametrize("field", TEST_FIELDS, ids=repr)
def test_field_round_trip(field):
    assert field_from_json(field_to_json(field)) == field


@pytest.mark.parametrize("field", TEST_FIELDS, ids=repr)
def test_scalar_round_trip(field):
    rng = random.Random(1)
    for _ in range(20):
        a = field.sample(rng)
        encoded = scalar_to_json(field, a)
        json.dumps(encoded)  # must be a JSON value
        assert scalar_from_json(field, encoded) == a


def test_rational_scalar_formats():
    assert scalar_to_json(QQ, Fraction(3)) == "3"
    assert scalar_to_json(QQ, Fraction(-3, 4)) == "-3/4"
    assert scalar_from_json(QQ, "7/2") == Fraction(7, 2)
    assert scalar_from_json(QQ, "5") == Fraction(5)
    assert scalar_from_json(QQ, 5) == Fraction(5)


@pytest.mark.parametrize("field", TEST_FIELDS, ids=repr)
def test_matrix_round_trip(field):
    rng = random.Random(2)
    m = random_matrix(field, 3, 4, rng)
    obj = matrix_to_json(m)
    json.dumps(obj)
    assert matrix_from_json(obj) == m


def test_form_round_trip_and_validation():
    rng = random.Random(3)
    f = random_alternating_form(GF(5), 4, rng)
    obj = form_to_json(f)
    assert form_from_json(obj) == f
    # diagnostic names the offending entry
    bad = matrix_to_json(Matrix(GF(5), [[0, 1], [1, 0]]))
    bad["type"] = "alternating"
    with pytest.raises(PreconditionError) as err:
        form_from_json(bad)
    assert "entries[0][1]" in str(err.value)
    bad_diag = matrix_to_json(Matrix(GF(5), [[2, 0], [0, 0]]))
    bad_diag["type"] = "alternating"
    with pytest.raises(PreconditionError) as err2:
        form_from_json(bad_diag)
    assert "entries[0][0]" in str(err2.value)


def test_form_requires_type_marker():
    obj = matrix_to_json(Matrix(GF(5), [[0, 1], [4, 0]]))
    with pytest.raises(PreconditionError):
        form_from_json(obj)
