import random
from fractions import Fraction

import pytest

from symgrass.errors import (
    DegreeMismatch,
    SupportCollision,
    VanishingViolated,
)
from symgrass.fields import GF, QQ
from symgrass.polynomials import Polynomial
from symgrass.residues import (
    INFINITY,
    RationalFunction,
    SplitBundle,
    build_residue_model,
    global_section_subspace,
    h0_twist,
    h1_twist,
    laurent_coefficient,
    pencil_injectivity,
    recovered_intersection_dim,
    residue_at,
    residue_sum,
    section_basis,
)


def rf(field, num, den=(1,)):
    return RationalFunction(Polynomial(field, num), Polynomial(field, den))


def test_residue_simple_pole():
    assert residue_at(rf(QQ, [1], [0, 1]), 0) == 1


def test_residue_at_infinity():
    assert residue_at(rf(QQ, [1], [0, 1]), INFINITY) == -1


def test_residue_double_pole():
    assert residue_at(rf(QQ, [1], [0, 0, 1]), 0) == 0


def test_residue_shifted_double_pole_with_numerator():
    # (2z + 3) / (z - 1)^2 has residue 2 at 1
    f = rf(QQ, [3, 2], [1, -2, 1])
    assert residue_at(f, 1) == 2
    assert residue_at(f, INFINITY) == -2


def test_laurent_coefficients():
    f = rf(QQ, [1], [0, 1])  # 1/z
    assert laurent_coefficient(f, 0, -1) == 1
    assert laurent_coefficient(f, 0, 0) == 0
    assert laurent_coefficient(f, 1, 0) == 1  # 1/z at z=1
    assert laurent_coefficient(f, 1, 1) == -1


def test_residue_sum_partial_fractions():
    a = rf(QQ, [1], [-1, 1])
    b = rf(QQ, [2], [-3, 1])
    g = a.add(b)
    assert residue_at(g, INFINITY) == -3
    assert residue_sum(g) == 0


def test_residue_sum_polynomial():
    assert residue_sum(rf(QQ, [1, 2, 3])) == 0


def test_residue_sum_random_rational_functions():
    rng = random.Random(2718)
    for field in (QQ, GF(5), GF(7)):
        count = 0
        while count < 60:
            npoles = rng.randint(1, 3)
            poles = []
            while len(poles) < npoles:
                c = field.sample(rng)
                if all(c != p for p in poles):
                    poles.append(c)
            den = Polynomial.from_roots(field, poles)
            num = Polynomial(
                field, [field.sample(rng) for _ in range(rng.randint(1, 4))]
            )
            if num.is_zero():
                continue
            f = RationalFunction(num, den)
            count += 1
            total = residue_sum(f)
            bf = f.field if not hasattr(total, "__len__") else None
            assert total == f.field.zero() or total == 0 or not any(total)


def test_residue_sum_needs_extension_over_finite_field():
    # denominator irreducible over GF(3): residues live in GF(9), sum to zero
    f = rf(GF(3), [1], [1, 0, 1])
    total = residue_sum(f)
    assert not any(total)


def test_model_dimensions_two_points():
    model = build_residue_model(SplitBundle(-1, -1), [1, -1], [], rf(QQ, [1]))
    assert model.dim == 8
    assert model.order_zero_tails.dim == 4
    s = global_section_subspace(model)
    assert s.dim == 4
    assert recovered_intersection_dim(model, s) == 0


def test_model_dimensions_single_point():
    model = build_residue_model(SplitBundle(-1, -1), [0], [], rf(QQ, [1]))
    assert model.dim == 4
    assert model.order_zero_tails.dim == 2
    s = global_section_subspace(model)
    assert s.dim == 2


def test_zero_delta_order_zero_tails_totally_isotropic():
    model = build_residue_model(SplitBundle(-1, -1), [1, 2], [], rf(QQ, [1]))
    from symgrass.forms import restrict

    restricted = restrict(model.form, model.order_zero_tails)
    assert restricted.gram.is_zero()
    assert restricted.degeneracy == restricted.dim == 4


def test_model_with_delta_points():
    # d = -1, delta = 1, twist budget 0: constant map into omega(Delta)
    model = build_residue_model(SplitBundle(0, -1), [1, 2], [3], rf(QQ, [1]))
    assert model.dim == 4 * 2 + 2 * 1
    assert model.order_zero_tails.dim == 2 * 2 + 2 * 1
    s = global_section_subspace(model)
    assert s.dim == -1 + 4 + 2
    assert recovered_intersection_dim(model, s) == h0_twist(0) + h0_twist(-1)


def test_model_over_f7():
    model = build_residue_model(SplitBundle(-1, -1), [1, 2], [], rf(GF(7), [1]))
    assert model.dim == 8
    assert model.form.is_nondegenerate()
    s = global_section_subspace(model)
    assert s.dim == 4


def test_support_collision_rejected():
    # phi = z - 1 vanishes at the divisor point 1
    with pytest.raises(SupportCollision):
        build_residue_model(SplitBundle(-2, -1), [1], [], rf(QQ, [-1, 1]))


def test_degree_budget_rejected():
    # budget for d = -2, delta = 0 is 0; a linear phi is too big
    with pytest.raises(DegreeMismatch):
        build_residue_model(SplitBundle(-1, -1), [1], [], rf(QQ, [0, 1]))


def test_rational_phi_with_poles_rejected():
    with pytest.raises(DegreeMismatch):
        build_residue_model(SplitBundle(-1, -1), [1], [], rf(QQ, [1], [2, 1]))


def test_vanishing_violated():
    # O(-3) + O(1): h1(O(-3)(D)) > 0 for deg D = 1
    model = build_residue_model(SplitBundle(-3, 1), [1], [], rf(QQ, [1]))
    with pytest.raises(VanishingViolated):
        global_section_subspace(model)
    assert h1_twist(-3 + 1) == 1


def test_section_basis_shape():
    basis = section_basis(QQ, -1, [Fraction(1), Fraction(2)])
    assert len(basis) == 2  # twist + deg D + 1


def test_injectivity_single_form():
    rep = pencil_injectivity([rf(QQ, [1])], SplitBundle(-1, -1), [1, 2])
    assert rep.method == "rank"
    assert rep.injective
    assert rep.min_injective_degree == 1


def test_injectivity_two_forms_examples():
    phis = [rf(QQ, [1]), rf(QQ, [0, 1])]
    rep = pencil_injectivity(phis, SplitBundle(-1, -2), [1, 2, 3])
    assert rep.method == "minor-gcd"
    assert rep.injective
    phis7 = [rf(GF(7), [1]), rf(GF(7), [0, 1])]
    rep7 = pencil_injectivity(phis7, SplitBundle(-1, -2), [1, 3, 5])
    assert rep7.injective


def test_injectivity_rejects_divisor_on_zero():
    phis = [rf(QQ, [1]), rf(QQ, [0, 1])]
    with pytest.raises(SupportCollision):
        pencil_injectivity(phis, SplitBundle(-1, -2), [0, 1, 2])


def test_injectivity_wrong_count_rejected():
    with pytest.raises(DegreeMismatch):
        pencil_injectivity([rf(QQ, [1])], SplitBundle(-1, -2), [1, 2, 3])


def test_injectivity_three_forms_sampling():
    phis = [rf(GF(7), [1]), rf(GF(7), [0, 1]), rf(GF(7), [0, 0, 1])]
    rep = pencil_injectivity(phis, SplitBundle(-2, -2), [1, 2, 3])
    assert rep.method == "sampling"
    assert rep.injective
