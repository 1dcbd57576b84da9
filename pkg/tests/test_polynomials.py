import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from symgrass.errors import SplitFailure
from symgrass.fields import GF, QQ
from symgrass.polynomials import (
    BinaryForm,
    Polynomial,
    binary_form_common_root,
    det_binary_form_matrix,
    factor_squarefree_roots,
    lagrange_interpolate,
    pencil_minor_common_root,
    rational_roots,
)
from symgrass.matrices import Matrix


def poly(field, *coeffs):
    return Polynomial(field, list(coeffs))


def test_divmod_roundtrip():
    rng = random.Random(3)
    for field in (QQ, GF(5), GF(2, 2)):
        for _ in range(25):
            a = Polynomial(field, [field.sample(rng) for _ in range(rng.randint(0, 6))])
            b = Polynomial(field, [field.sample(rng) for _ in range(rng.randint(1, 4))])
            if b.is_zero():
                continue
            q, r = a.divmod(b)
            assert q.mul(b).add(r) == a
            assert r.is_zero() or r.degree < b.degree


def test_shift_is_composition():
    p = poly(QQ, 4, 0, 1)  # x^2 + 4
    shifted = p.shift(Fraction(3))  # (x+3)^2 + 4
    for x in (-2, 0, 1, 5):
        assert shifted.eval(Fraction(x)) == p.eval(Fraction(x + 3))


def test_gcd_monic():
    a = Polynomial.from_roots(QQ, [1, 2, 3]).scale(Fraction(7))
    b = Polynomial.from_roots(QQ, [2, 3, 5])
    g = a.gcd(b)
    assert g == Polynomial.from_roots(QQ, [2, 3])


def test_roots_over_f5():
    split = factor_squarefree_roots(poly(GF(5), 4, 0, 1))  # x^2 - 1
    assert split.field == GF(5)
    assert split.roots == ((1, 1), (4, 1))


def test_double_root_over_q():
    split = factor_squarefree_roots(poly(QQ, 0, 0, 1))  # x^2
    assert split.roots == ((Fraction(0), 2),)


def test_irrational_roots_raise():
    with pytest.raises(SplitFailure):
        factor_squarefree_roots(poly(QQ, -2, 0, 1))


def test_rational_roots_cofactor_product():
    # (x-1)^2 (x^2+1): rational part (x-1)^2, cofactor x^2+1
    p = Polynomial.from_roots(QQ, [1, 1]).mul(poly(QQ, 1, 0, 1))
    roots, cofactor = rational_roots(p)
    assert roots == ((Fraction(1), 2),)
    rebuilt = cofactor
    for root, mult in roots:
        rebuilt = rebuilt.mul(Polynomial.from_roots(QQ, [root] * mult))
    assert rebuilt == p


def test_automatic_extension_splits_all_factors():
    # x^2 + 1 is irreducible over GF(3); roots must appear in GF(9)
    split = factor_squarefree_roots(poly(GF(3), 1, 0, 1))
    assert split.field == GF(3, 2)
    assert len(split.roots) == 2
    rebuilt = Polynomial.one(split.field)
    for root, mult in split.roots:
        rebuilt = rebuilt.mul(Polynomial.from_roots(split.field, [root] * mult))
    lifted = poly(GF(3), 1, 0, 1).map_field(split.field, split.embed)
    assert rebuilt == lifted.monic()


def test_mixed_degree_extension():
    # (x^2+1)(x-1) over GF(3): linear root in base, quadratic needs GF(9)
    p = poly(GF(3), 1, 0, 1).mul(Polynomial.from_roots(GF(3), [1]))
    split = factor_squarefree_roots(p)
    assert split.field == GF(3, 2)
    assert len(split.roots) == 3


def test_split_product_reconstruction_random():
    rng = random.Random(13)
    for field in (GF(5), GF(7)):
        for _ in range(20):
            roots = [field.sample(rng) for _ in range(rng.randint(1, 4))]
            p = Polynomial.from_roots(field, roots)
            split = factor_squarefree_roots(p)
            assert split.field == field
            rebuilt = Polynomial.one(field)
            for root, mult in split.roots:
                rebuilt = rebuilt.mul(Polynomial.from_roots(field, [root] * mult))
            assert rebuilt == p


def test_frobenius_collapse_squarefree():
    # x^2 over GF(2) has zero derivative; roots must still come out right
    split = factor_squarefree_roots(poly(GF(2), 0, 0, 1))
    assert split.roots == ((0, 2),)


# ------------------------------------------------------------- binary forms


def test_common_root_examples():
    lam_mu = BinaryForm(QQ, 2, [0, 1, 0])
    lam_sq = BinaryForm(QQ, 2, [1, 0, 0])
    r = binary_form_common_root([lam_mu, lam_sq])
    assert r.kind == "root" and r.witness == (Fraction(0), Fraction(1))

    r2 = binary_form_common_root([BinaryForm(QQ, 1, [1, 0]), BinaryForm(QQ, 1, [0, 1])])
    assert r2.kind == "none"

    r3 = binary_form_common_root(
        [BinaryForm(QQ, 2, [1, 0, -1]), BinaryForm(QQ, 1, [1, -1])]
    )
    assert r3.kind == "root" and r3.witness == (Fraction(1), Fraction(1))


def test_common_root_at_infinity():
    # mu^2 and lam*mu share the zero (1 : 0)
    r = binary_form_common_root(
        [BinaryForm(QQ, 2, [0, 0, 1]), BinaryForm(QQ, 2, [0, 1, 0])]
    )
    assert r.kind == "root" and r.witness == (Fraction(1), Fraction(0))


def test_all_zero_forms():
    r = binary_form_common_root([BinaryForm(QQ, 1, [0, 0])])
    assert r.kind == "all_zero"


def test_existence_only_over_q():
    # lam^2 - 2 mu^2 has only irrational zeros
    f = BinaryForm(QQ, 2, [1, 0, -2])
    r = binary_form_common_root([f])
    assert r.kind == "root" and r.existence_only
    assert r.gcd_poly is not None and r.gcd_poly.degree == 2


def test_extension_witness_over_f3():
    # lam^2 + mu^2 needs GF(9)
    f = BinaryForm(GF(3), 2, [1, 0, 1])
    r = binary_form_common_root([f])
    assert r.kind == "root" and r.witness_field == GF(3, 2)
    lam, mu = r.witness
    lifted = BinaryForm(
        r.witness_field,
        2,
        [r.witness_field.from_int(1), r.witness_field.zero(), r.witness_field.from_int(1)],
    )
    assert lifted.eval(lam, mu) == r.witness_field.zero()


def test_binary_det_matches_scalar_det():
    rng = random.Random(17)
    field = GF(7)
    for _ in range(15):
        n = rng.randint(1, 4)
        m1 = [[field.sample(rng) for _ in range(n)] for _ in range(n)]
        m2 = [[field.sample(rng) for _ in range(n)] for _ in range(n)]
        entries = [
            [BinaryForm.linear(field, m1[i][j], m2[i][j]) for j in range(n)]
            for i in range(n)
        ]
        det_form = det_binary_form_matrix(entries)
        for lam in field.elements():
            combined = Matrix(
                field,
                [
                    [
                        field.add(field.mul(lam, m1[i][j]), m2[i][j])
                        for j in range(n)
                    ]
                    for i in range(n)
                ],
            )
            assert det_form.eval(lam, field.one()) == combined.det()


def test_pencil_minor_common_root_rank_profile():
    field = QQ
    m1 = Matrix.identity(field, 3)
    m2 = Matrix(field, [[1, 0, 0], [0, 1, 0], [0, 0, 2]])
    res = pencil_minor_common_root(m1, m2, 2)
    assert res.has_common_root
    m3 = Matrix(QQ, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    res2 = pencil_minor_common_root(m1, m3, 2)
    # lam I + mu C drops rank by 2 only if two eigenvalues coincide; the
    # 3-cycle has distinct eigenvalues over the closure
    assert not res2.has_common_root


def test_lagrange_exactness():
    pts = [(Fraction(q), Fraction(q**3 + q**2 + q + 1)) for q in (2, 3, 5, 7)]
    p = lagrange_interpolate(pts)
    assert [int(c) for c in p.coeffs] == [1, 1, 1, 1]
