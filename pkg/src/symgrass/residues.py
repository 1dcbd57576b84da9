"""Rational functions, residues, and the residue pairing on the line.

The geometric setup is genus zero throughout: line bundles are twists O(m)
with sections the rational functions g/prod(z - P) of bounded numerator
degree, cohomology is twist arithmetic, and residues are exact Laurent
coefficient extractions. A split rank-2 bundle O(a) + O(b) together with
reduced divisors D, Delta and a twisting function phi produces a space of
Laurent tails carrying an alternating form; the distinguished subspaces (the
order-zero tails, and the image of the global sections) realize the
degeneracy and isotropy behaviour that the campaigns verify.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    DegreeMismatch,
    InvariantViolation,
    PreconditionError,
    SupportCollision,
    VanishingViolated,
)
from .fields import Field, QQ
from .forms import AlternatingForm, Subspace, radical_intersection_dim, restrict
from .matrices import Matrix
from .polynomials import (
    Polynomial,
    factor_squarefree_roots,
    pencil_minor_common_root,
)


class RationalFunction:
    """num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("field", "num", "den")

    def __init__(self, num: Polynomial, den: Polynomial):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        F = num.field
        if den.field != F:
            raise PreconditionError("numerator and denominator field mismatch")
        if not num.is_zero():
            g = num.gcd(den)
            if g.degree >= 1:
                num = num.exact_div(g)
                den = den.exact_div(g)
        else:
            den = Polynomial.one(F)
        lead = den.leading()
        if lead != F.one():
            inv = F.inv(lead)
            num = num.scale(inv)
            den = den.scale(inv)
        self.field = F
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: Polynomial):
        return cls(p, Polynomial.one(p.field))

    @classmethod
    def constant(cls, field, c):
        return cls(Polynomial.constant(field, c), Polynomial.one(field))

    @classmethod
    def x(cls, field):
        return cls(Polynomial.x(field), Polynomial.one(field))

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self.num!r} / {self.den!r})"

    def add(self, other):
        n = self.num.mul(other.den).add(other.num.mul(self.den))
        return RationalFunction(n, self.den.mul(other.den))

    def sub(self, other):
        return self.add(other.neg())

    def neg(self):
        return RationalFunction(self.num.neg(), self.den)

    def mul(self, other):
        return RationalFunction(self.num.mul(other.num), self.den.mul(other.den))

    def div(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction(self.num.mul(other.den), self.den.mul(other.num))

    def scale(self, c):
        return RationalFunction(self.num.scale(c), self.den)

    def eval_at(self, point):
        F = self.field
        dv = self.den.eval(point)
        if F.is_zero(dv):
            raise ZeroDivisionError("pole at evaluation point")
        return F.mul(self.num.eval(point), F.inv(dv))

    def map_field(self, dst, fn):
        return RationalFunction(self.num.map_field(dst, fn), self.den.map_field(dst, fn))


INFINITY = "infinity"


def laurent_coefficient(f: RationalFunction, point, order: int):
    """Coefficient of (z - point)^order in the local Laurent expansion."""
    F = f.field
    point = F.check(point)
    ns = f.num.shift(point)
    ds = f.den.shift(point)
    if ns.is_zero():
        return F.zero()
    m = 0
    dcs = list(ds.coeffs)
    while dcs and F.is_zero(dcs[0]):
        dcs.pop(0)
        m += 1
    d0 = Polynomial(F, dcs)
    t = order + m
    if t < 0:
        return F.zero()
    # power series division ns / d0 up to order t
    inv0 = F.inv(d0.coeffs[0])
    series = []
    for j in range(t + 1):
        acc = ns.coeffs[j] if j < len(ns.coeffs) else F.zero()
        for i in range(j):
            dj = d0.coeffs[j - i] if j - i < len(d0.coeffs) else F.zero()
            acc = F.sub(acc, F.mul(series[i], dj))
        series.append(F.mul(acc, inv0))
    return series[t]


def _expand_at_infinity(f: RationalFunction) -> RationalFunction:
    """The differential f(z) dz pulled back along z = 1/w, i.e. -f(1/w)/w^2."""
    F = f.field
    ndeg, ddeg = f.num.degree, f.den.degree
    revn = f.num.reverse()
    revd = f.den.reverse()
    shift = ddeg - ndeg - 2
    if shift >= 0:
        num = revn.mul(Polynomial(F, [F.zero()] * shift + [F.one()]))
        den = revd
    else:
        num = revn
        den = revd.mul(Polynomial(F, [F.zero()] * (-shift) + [F.one()]))
    return RationalFunction(num.neg(), den)


def residue_at(f: RationalFunction, point):
    """Residue of the differential f dz at a point of the line or at infinity."""
    if point == INFINITY:
        return laurent_coefficient(_expand_at_infinity(f), f.field.zero(), -1)
    return laurent_coefficient(f, point, -1)


def residue_sum(f: RationalFunction):
    """Sum of the residues of f dz over every pole, infinity included.

    Finite-field denominators are split in an extension when necessary;
    over the rationals a non-splitting denominator raises SplitFailure.
    The result is computed, not assumed; callers assert it vanishes.
    """
    F = f.field
    if f.den.degree >= 1:
        split = factor_squarefree_roots(f.den)
        big = split.field
        lifted = f.map_field(big, split.embed) if big != F else f
        total = big.zero()
        for root, _ in split.roots:
            total = big.add(total, residue_at(lifted, root))
        total = big.add(total, residue_at(lifted, INFINITY))
        return total
    return residue_at(f, INFINITY)


# -------------------------------------------------------------- twist algebra


def h0_twist(m: int) -> int:
    """Global sections of O(m) on the line."""
    return max(0, m + 1)


def h1_twist(m: int) -> int:
    return max(0, -m - 1)


@dataclass(frozen=True)
class SplitBundle:
    """Rank-2 split bundle O(a) + O(b); determinant degree a + b."""

    a: int
    b: int

    @property
    def det_degree(self) -> int:
        return self.a + self.b

    @property
    def twists(self):
        return (self.a, self.b)


@dataclass(frozen=True)
class ResidueModel:
    """Laurent-tail space of E(D)/E(-D-Delta) with its residue pairing.

    Coordinates are labelled (point, summand, order) with points ascending in
    the field order, orders -1 and 0 at D-points and 0 at Delta-points. The
    order-zero coordinates span `order_zero_tails` (the image of the
    sections regular along D); its restricted radical has dimension exactly
    2 deg D.
    """

    bundle: SplitBundle
    dpoints: tuple
    deltapoints: tuple
    phi: RationalFunction
    psi: RationalFunction
    coords: tuple
    form: AlternatingForm
    order_zero_tails: Subspace

    @property
    def field(self):
        return self.form.field

    @property
    def dim(self):
        return self.form.dim

    def coord_index(self, point, summand, order):
        return self.coords.index((point, summand, order))


def _validate_divisors(field: Field, dpoints, deltapoints):
    d = [field.check(p) for p in dpoints]
    dd = [field.check(p) for p in deltapoints]
    if len(set(d)) != len(d) or len(set(dd)) != len(dd):
        raise PreconditionError("divisor points must be distinct")
    if set(d) & set(dd):
        raise PreconditionError("D and Delta must be disjoint")
    key = field.sort_key
    return tuple(sorted(d, key=key)), tuple(sorted(dd, key=key))


def _validate_phi(phi: RationalFunction, det_degree: int, delta: int, support):
    """phi must be a bundle map O(det_degree) -> O(delta - 2): a polynomial of
    degree at most delta - 2 - det_degree, nonvanishing on the support."""
    F = phi.field
    if phi.is_zero():
        raise DegreeMismatch("the twisting function must be nonzero")
    if phi.den.degree >= 1:
        raise DegreeMismatch(
            "the twisting function has finite poles; it is not a bundle map"
        )
    budget = delta - 2 - det_degree
    if phi.num.degree > budget:
        raise DegreeMismatch(
            f"twisting degree {phi.num.degree} exceeds the budget {budget}"
        )
    for p in support:
        if F.is_zero(phi.num.eval(p)):
            raise SupportCollision(f"twisting function vanishes at {p}")


def build_residue_model(
    bundle: SplitBundle, dpoints, deltapoints, phi: RationalFunction
) -> ResidueModel:
    """Assemble the tail space, its residue Gram matrix, and the order-zero part.

    Postconditions (checked): the Gram matrix is alternating and
    nondegenerate of dimension 4 deg D + 2 deg Delta, and the restriction to
    the order-zero tails has radical of dimension exactly 2 deg D.
    """
    F = phi.field
    dpts, dels = _validate_divisors(F, dpoints, deltapoints)
    delta = len(dels)
    _validate_phi(phi, bundle.det_degree, delta, dpts + dels)
    denom = Polynomial.from_roots(F, dels)
    psi = RationalFunction(phi.num, phi.den.mul(denom))
    key = F.sort_key
    points = sorted(dpts + dels, key=key)
    coords = []
    for p in points:
        orders = (-1, 0) if p in dpts else (0,)
        for summand in (0, 1):
            for order in orders:
                coords.append((p, summand, order))
    dim = len(coords)
    z = F.zero()
    gram = [[z] * dim for _ in range(dim)]
    for i, (p1, s1, o1) in enumerate(coords):
        for j, (p2, s2, o2) in enumerate(coords):
            if p1 != p2 or s1 == s2 or j <= i:
                continue
            power = o1 + o2
            if power >= 0:
                mono = RationalFunction.from_poly(
                    Polynomial.from_roots(F, [p1] * power)
                )
            else:
                mono = RationalFunction(
                    Polynomial.one(F), Polynomial.from_roots(F, [p1] * (-power))
                )
            val = residue_at(psi.mul(mono), p1)
            if s1 == 0:
                gram[i][j] = val
                gram[j][i] = F.neg(val)
            else:
                gram[i][j] = F.neg(val)
                gram[j][i] = val
    form = AlternatingForm(Matrix(F, gram))
    if not form.is_nondegenerate():
        raise InvariantViolation(
            "residue pairing is degenerate despite disjoint support"
        )
    zero_rows = []
    o = F.one()
    for i, (_, _, order) in enumerate(coords):
        if order == 0:
            row = [z] * dim
            row[i] = o
            zero_rows.append(row)
    order_zero = Subspace(F, dim, zero_rows, already_reduced=True)
    restricted = restrict(form, order_zero)
    if restricted.degeneracy != 2 * len(dpts):
        raise InvariantViolation(
            "order-zero tails have the wrong restricted radical dimension"
        )
    return ResidueModel(
        bundle=bundle,
        dpoints=dpts,
        deltapoints=dels,
        phi=phi,
        psi=psi,
        coords=tuple(coords),
        form=form,
        order_zero_tails=order_zero,
    )


def check_section_vanishing(bundle: SplitBundle, deg_d: int, delta: int):
    """The twist arithmetic behind injectivity of sections into tails."""
    for m in bundle.twists:
        if h1_twist(m + deg_d) != 0:
            raise VanishingViolated(
                f"h1(O({m})(D)) = {h1_twist(m + deg_d)} is nonzero"
            )
        if h0_twist(m - deg_d - delta) != 0:
            raise VanishingViolated(
                f"h0(O({m})(-D-Delta)) = {h0_twist(m - deg_d - delta)} is nonzero"
            )


def section_basis(field: Field, twist: int, dpoints):
    """Monomial basis of H^0(O(twist)(D)): z^j / prod(z - P), j <= twist + deg D."""
    deg_d = len(dpoints)
    denom = Polynomial.from_roots(field, dpoints)
    out = []
    for j in range(twist + deg_d + 1):
        num = Polynomial(field, [field.zero()] * j + [field.one()])
        out.append(RationalFunction(num, denom))
    return out


def _section_coords(model: ResidueModel, summand: int, func: RationalFunction):
    row = []
    for (p, s, order) in model.coords:
        if s != summand:
            row.append(model.field.zero())
        else:
            row.append(laurent_coefficient(func, p, order))
    return row


def global_section_subspace(model: ResidueModel) -> Subspace:
    """Image of H^0 of the D-twisted bundle inside the tail space.

    Requires the twist-arithmetic vanishing conditions; the image is checked
    to have the full expected dimension det_degree + 2 deg D + 2 and to be
    isotropic for the residue pairing.
    """
    F = model.field
    deg_d = len(model.dpoints)
    delta = len(model.deltapoints)
    check_section_vanishing(model.bundle, deg_d, delta)
    rows = []
    for summand, twist in enumerate(model.bundle.twists):
        for func in section_basis(F, twist, model.dpoints):
            rows.append(_section_coords(model, summand, func))
    s = Subspace(F, model.dim, rows)
    expected = model.bundle.det_degree + 2 * deg_d + 2
    if s.dim != expected:
        raise InvariantViolation(
            f"section image has dimension {s.dim}, expected {expected}"
        )
    if not _subspace_isotropic(model.form, s):
        raise InvariantViolation("global sections are not isotropic for the pairing")
    return s


def _subspace_isotropic(form: AlternatingForm, v: Subspace) -> bool:
    b = v.basis_matrix()
    return b.mul(form.gram).mul(b.transpose()).is_zero()


def recovered_intersection_dim(model: ResidueModel, sections: Subspace) -> int:
    """Dimension of (section image) meet (order-zero tails): the global h^0."""
    return sections.intersect(model.order_zero_tails).dim


# --------------------------------------------------------- pencil injectivity


@dataclass(frozen=True)
class InjectivityReport:
    """Injectivity of the section space into the dual tails, per D-prefix.

    per_degree maps deg D' (prefixes of the sorted D) to True/False, or None
    when the vanishing preconditions fail at that degree. method records the
    decision route: "rank" (one form), "minor-gcd" (two forms, closure
    exact), or "sampling" (three or more, base-field combinations only).
    """

    bundle: SplitBundle
    dpoints: tuple
    num_forms: int
    per_degree: tuple
    min_injective_degree: int | None
    injective: bool
    method: str


def pencil_injectivity(phis, bundle: SplitBundle, dpoints) -> InjectivityReport:
    """Check that no nonzero combination of the induced forms kills a section.

    phis must be a basis of the bundle maps O(d) -> O(-2) (d = a + b <= -2,
    so there are -d-1 of them); Delta is empty throughout. For each prefix of
    the sorted divisor the verdict is recorded, giving the minimal divisor
    degree at which injectivity holds.
    """
    phis = list(phis)
    if not phis:
        raise PreconditionError("need at least one twisting function")
    F = phis[0].field
    d = bundle.det_degree
    if d > -2:
        raise DegreeMismatch("determinant degree must be at most -2")
    m = -d - 1
    if len(phis) != m:
        raise DegreeMismatch(
            f"need exactly {m} independent twisting functions for degree {d}"
        )
    budget = -2 - d
    coeff_rows = []
    for phi in phis:
        if phi.den.degree >= 1 or phi.num.degree > budget:
            raise DegreeMismatch("twisting functions must be polynomials within budget")
        coeffs = list(phi.num.coeffs) + [F.zero()] * (budget + 1 - len(phi.num.coeffs))
        coeff_rows.append(coeffs)
    if Matrix(F, coeff_rows).rank() != m:
        raise PreconditionError("twisting functions are linearly dependent")
    dpts, _ = _validate_divisors(F, dpoints, [])
    for phi in phis:
        for p in dpts:
            if F.is_zero(phi.num.eval(p)):
                raise SupportCollision(f"divisor point {p} is a zero of a twist")
    method = "rank" if m == 1 else ("minor-gcd" if m == 2 else "sampling")
    per_degree = []
    min_deg = None
    verdict_full = False
    for t in range(1, len(dpts) + 1):
        prefix = dpts[:t]
        try:
            check_section_vanishing(bundle, t, 0)
        except VanishingViolated:
            per_degree.append((t, None))
            continue
        ok = _injective_for_divisor(phis, bundle, prefix, method)
        per_degree.append((t, ok))
        if ok and min_deg is None:
            min_deg = t
        if t == len(dpts):
            verdict_full = ok
    return InjectivityReport(
        bundle=bundle,
        dpoints=dpts,
        num_forms=m,
        per_degree=tuple(per_degree),
        min_injective_degree=min_deg,
        injective=verdict_full,
        method=method,
    )


def _injective_for_divisor(phis, bundle, dpts, method) -> bool:
    F = phis[0].field
    models = [build_residue_model(bundle, dpts, [], phi) for phi in phis]
    sections = global_section_subspace(models[0])
    sb = sections.basis_matrix()
    mats = [sb.mul(model.form.gram) for model in models]
    ks = sections.dim
    if ks == 0:
        return True
    if method == "rank":
        return mats[0].rank() == ks
    if method == "minor-gcd":
        result = pencil_minor_common_root(mats[0], mats[1], ks)
        return not result.has_common_root
    # sampling: all projective combinations over the base field, or a grid
    combos = _lambda_samples(F, len(mats))
    for combo in combos:
        member = Matrix.zero(F, ks, mats[0].ncols)
        for c, mat in zip(combo, mats):
            member = member.add(mat.scale(c))
        if member.rank() < ks:
            return False
    return True


def _lambda_samples(F: Field, m: int):
    if F.is_finite:
        elements = list(F.elements())
        out = []
        for combo in itertools.product(elements, repeat=m):
            first_nonzero = next((i for i, c in enumerate(combo) if not F.is_zero(c)), None)
            if first_nonzero is None:
                continue
            if combo[first_nonzero] != F.one():
                continue  # one representative per projective point
            out.append(combo)
        return out
    grid = [F.from_int(v) for v in (-2, -1, 0, 1, 2, 3)]
    out = []
    for combo in itertools.product(grid, repeat=m):
        if any(not F.is_zero(c) for c in combo):
            out.append(combo)
    return out
