"""Univariate polynomials over a Field, exact root extraction, and binary forms.

Root finding is deliberately unsophisticated: finite fields are scanned (and
extended just enough to split every irreducible factor, with the degree found
by distinct-degree sieving), and over the rationals only rational roots are
produced, signalling SplitFailure when an irrational factor remains. That is
all the rest of the package needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import PreconditionError, SplitFailure
from .fields import ExtensionField, Field, GF, PrimeField, QQ, embed_scalar
from .matrices import Matrix, char_poly_coeffs


class Polynomial:
    """Coefficients ascending by degree; the zero polynomial has no coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        cs = [field.check(c) for c in coeffs]
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # ------------------------------------------------------------- structure

    @classmethod
    def zero(cls, field):
        return cls(field, [])

    @classmethod
    def one(cls, field):
        return cls(field, [field.one()])

    @classmethod
    def x(cls, field):
        return cls(field, [field.zero(), field.one()])

    @classmethod
    def constant(cls, field, c):
        return cls(field, [c])

    @classmethod
    def from_roots(cls, field, roots):
        p = cls.one(field)
        for r in roots:
            p = p.mul(cls(field, [field.neg(field.check(r)), field.one()]))
        return p

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            raise PreconditionError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs)]
        return "Poly(" + " + ".join(terms) + ")"

    # ------------------------------------------------------------ arithmetic

    def add(self, other):
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Polynomial(F, out)

    def sub(self, other):
        return self.add(other.neg())

    def neg(self):
        F = self.field
        return Polynomial(F, [F.neg(c) for c in self.coeffs])

    def mul(self, other):
        F = self.field
        if self.is_zero() or other.is_zero():
            return Polynomial.zero(F)
        out = [F.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if F.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Polynomial(F, out)

    def scale(self, c):
        F = self.field
        return Polynomial(F, [F.mul(c, a) for a in self.coeffs])

    def divmod(self, other):
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [F.zero()] * max(0, len(rem) - len(other.coeffs) + 1)
        inv_lead = F.inv(other.leading())
        d = other.degree
        while len(rem) - 1 >= d and rem:
            c = F.mul(rem[-1], inv_lead)
            shift = len(rem) - 1 - d
            q[shift] = c
            for i, oc in enumerate(other.coeffs):
                rem[shift + i] = F.sub(rem[shift + i], F.mul(c, oc))
            while rem and F.is_zero(rem[-1]):
                rem.pop()
        return Polynomial(F, q), Polynomial(F, rem)

    def mod(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise PreconditionError("division is not exact")
        return q

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading()))

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.mod(b)
        return a.monic() if not a.is_zero() else a

    def derivative(self):
        F = self.field
        out = []
        for i, c in enumerate(self.coeffs[1:], start=1):
            mult = F.from_int(i)
            out.append(F.mul(mult, c))
        return Polynomial(F, out)

    def eval(self, x):
        F = self.field
        x = F.check(x)
        acc = F.zero()
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def shift(self, a):
        """Compose with (x + a), by iterated synthetic division at a."""
        F = self.field
        a = F.check(a)
        cs = list(self.coeffs)
        out = []
        while cs:
            # divide by (x - a): carries are quotient digits, last is p(a)
            digits = []
            carry = F.zero()
            for c in reversed(cs):
                carry = F.add(F.mul(carry, a), c)
                digits.append(carry)
            digits.reverse()
            out.append(digits[0])
            cs = digits[1:]
        return Polynomial(F, out)

    def reverse(self, at_degree=None):
        """Coefficient reversal x^d * p(1/x), padding to `at_degree` if given."""
        d = self.degree if at_degree is None else at_degree
        if d < self.degree:
            raise PreconditionError("cannot reverse below actual degree")
        F = self.field
        padded = list(self.coeffs) + [F.zero()] * (d - self.degree)
        return Polynomial(F, list(reversed(padded)))

    def pow_mod(self, exp: int, modulus: "Polynomial"):
        F = self.field
        result = Polynomial.one(F)
        base = self.mod(modulus)
        while exp:
            if exp & 1:
                result = result.mul(base).mod(modulus)
            base = base.mul(base).mod(modulus)
            exp >>= 1
        return result

    def map_field(self, dst: Field, fn: Callable):
        return Polynomial(dst, [fn(c) for c in self.coeffs])


def char_poly(m: Matrix) -> Polynomial:
    """Monic characteristic polynomial det(xI - M)."""
    return Polynomial(m.field, char_poly_coeffs(m))


# ---------------------------------------------------------------- root finding


@dataclass(frozen=True)
class SplitRoots:
    """Roots with multiplicity after any needed base change.

    `field` is the (possibly extended) field containing every root, `embed`
    maps scalars of the original field into it, and the product of
    (x - root)^mult over `roots` equals the monic part of the lifted input.
    """

    field: Field
    embed: Callable
    roots: tuple  # ((root, multiplicity), ...)

    def extension_degree(self) -> int:
        if isinstance(self.field, ExtensionField):
            return self.field.e
        return 1


def rational_roots(p: Polynomial):
    """All rational roots with multiplicities plus the rootless cofactor.

    Exact at any coefficient size: real roots of the squarefree part are
    isolated with Sturm sequences, each isolating interval is narrowed until
    it can hold at most one fraction with denominator dividing the leading
    coefficient, and the simplest fraction inside is verified by evaluation.
    No integer factorization is involved.
    """
    if p.field != QQ:
        raise PreconditionError("rational_roots needs a polynomial over QQ")
    if p.is_zero():
        raise PreconditionError("zero polynomial")
    roots = []
    work = p
    mult0 = 0
    while not work.is_zero() and work.coeffs[0] == 0:
        work = Polynomial(QQ, work.coeffs[1:])
        mult0 += 1
    if mult0:
        roots.append((Fraction(0), mult0))
    if work.degree >= 1:
        squarefree = work.exact_div(work.gcd(work.derivative())) if not work.gcd(
            work.derivative()
        ).is_zero() else work
        for cand in _rational_roots_squarefree(squarefree.monic()):
            mult = 0
            while work.degree >= 1 and work.eval(cand) == 0:
                work = work.exact_div(Polynomial.from_roots(QQ, [cand]))
                mult += 1
            if mult:
                roots.append((cand, mult))
    roots.sort(key=lambda rm: rm[0])
    return tuple(roots), work


def _primitive_int_coeffs(p: Polynomial):
    from math import gcd, lcm

    den = 1
    for c in p.coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g > 1:
        ints = [c // g for c in ints]
    return ints


def _sturm_chain(p: Polynomial):
    chain = [p, p.derivative()]
    while chain[-1].degree >= 1:
        rem = chain[-2].mod(chain[-1])
        if rem.is_zero():
            break
        chain.append(rem.neg())
    if chain[-1].is_zero():
        chain.pop()
    return chain


def _sign_variations(chain, x):
    signs = []
    for q in chain:
        v = q.eval(x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _simplest_fraction_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Fraction of smallest denominator in the closed interval [lo, hi]."""
    from math import floor

    if lo > hi:
        lo, hi = hi, lo
    fl = floor(lo)
    if lo == fl:
        return Fraction(fl)
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    return fl + 1 / _simplest_fraction_between(
        1 / (hi - Fraction(fl)), 1 / (lo - Fraction(fl))
    )


def _rational_roots_squarefree(w: Polynomial):
    """Rational roots of a squarefree monic rational polynomial."""
    if w.degree < 1:
        return []
    if w.degree == 1:
        return [-w.coeffs[0] / w.coeffs[1]]
    ints = _primitive_int_coeffs(w)
    lead = abs(ints[-1])
    # any rational root in lowest terms has denominator dividing `lead`;
    # two such fractions differ by at least 1/lead^2
    gap = Fraction(1, 2 * lead * lead)
    bound = Fraction(1) + max(
        Fraction(abs(c), abs(ints[-1])) for c in ints[:-1]
    )
    poly = Polynomial(QQ, [Fraction(c) for c in ints])
    chain = _sturm_chain(poly)
    found = []
    # make sure the outer endpoints are not roots (Cauchy bound is strict)
    lo, hi = -bound, bound
    stack = [(lo, hi, _sign_variations(chain, lo) - _sign_variations(chain, hi))]
    while stack:
        a, b, count = stack.pop()
        if count <= 0:
            continue
        if count == 1:
            root = _refine_to_rational(poly, chain, a, b, gap)
            if root is not None:
                found.append(root)
            continue
        mid = (a + b) / 2
        if poly.eval(mid) == 0:
            found.append(mid)
            reduced = poly.exact_div(Polynomial.from_roots(QQ, [mid]))
            return found + _rational_roots_squarefree(reduced.monic())
        va, vm, vb = (
            _sign_variations(chain, a),
            _sign_variations(chain, mid),
            _sign_variations(chain, b),
        )
        stack.append((a, mid, va - vm))
        stack.append((mid, b, vm - vb))
    return sorted(found)


def _refine_to_rational(poly, chain, a, b, gap):
    """Shrink an isolating interval (a, b] and test the simplest fraction."""
    while b - a > gap:
        mid = (a + b) / 2
        if poly.eval(mid) == 0:
            return mid
        if _sign_variations(chain, a) - _sign_variations(chain, mid) == 1:
            b = mid
        else:
            a = mid
    if poly.eval(b) == 0:
        return b
    cand = _simplest_fraction_between(a, b)
    if a < cand <= b and poly.eval(cand) == 0:
        return cand
    return None


def base_field_roots(p: Polynomial):
    """Roots in the polynomial's own finite field, with the cofactor."""
    F = p.field
    if not F.is_finite:
        raise PreconditionError("base_field_roots needs a finite field")
    roots = []
    work = p
    for a in F.elements():
        mult = 0
        while work.degree >= 1 and F.is_zero(work.eval(a)):
            work = work.exact_div(Polynomial.from_roots(F, [a]))
            mult += 1
        if mult:
            roots.append((a, mult))
    return tuple(roots), work


def _squarefree_part(p: Polynomial) -> Polynomial:
    """Radical of p over a finite field (handles the x^char collapse)."""
    F = p.field
    if p.degree <= 0:
        return p.monic()
    d = p.derivative()
    if d.is_zero():
        # p = g(x^char); take char-th root of coefficients via Frobenius inverse
        ch = F.char
        q = F.order
        new = []
        for i in range(0, p.degree + 1, ch):
            c = p.coeffs[i] if i < len(p.coeffs) else F.zero()
            # c^(q/ch) is the ch-th root in GF(q)
            new.append(_scalar_pow(F, c, q // ch))
        return _squarefree_part(Polynomial(F, new))
    g = p.gcd(d)
    return p.exact_div(g).monic()


def _scalar_pow(F, a, exp):
    acc = F.one()
    base = a
    while exp:
        if exp & 1:
            acc = F.mul(acc, base)
        base = F.mul(base, base)
        exp >>= 1
    return acc


def _splitting_degree(p: Polynomial) -> int:
    """Smallest e so every irreducible factor splits in GF(q^e)."""
    from math import lcm

    F = p.field
    q = F.order
    sf = _squarefree_part(p)
    # peel linear factors first
    _, sf = base_field_roots(sf)
    e = 1
    d = 1
    x = Polynomial.x(F)
    while sf.degree >= 1:
        d += 1
        frob = x.pow_mod(q**d, sf)
        g = sf.gcd(frob.sub(x))
        if g.degree >= 1:
            e = lcm(e, d)
            sf = sf.exact_div(g)
    return e


def factor_squarefree_roots(p: Polynomial) -> SplitRoots:
    """Every root of p with multiplicity, extending a finite base field if needed.

    Over QQ only rational roots exist to find; SplitFailure is raised when an
    irrational factor remains, so callers can route to rank-based checks.
    """
    if p.is_zero():
        raise PreconditionError("zero polynomial has every element as a root")
    F = p.field
    if F == QQ:
        roots, cof = rational_roots(p)
        if cof.degree >= 1:
            raise SplitFailure(
                f"irrational factor of degree {cof.degree} remains over QQ"
            )
        return SplitRoots(QQ, lambda a: a, roots)
    if not F.is_finite:
        raise PreconditionError("unsupported field for root finding")
    roots, cof = base_field_roots(p)
    if cof.degree < 1:
        return SplitRoots(F, lambda a: a, roots)
    ext_deg = _splitting_degree(cof)
    if isinstance(F, PrimeField):
        big = GF(F.p, ext_deg)
    else:
        big = GF(F.p, F.e * ext_deg)
    emb = lambda a: embed_scalar(F, big, a)  # noqa: E731
    lifted = p.map_field(big, emb)
    roots_big, cof_big = base_field_roots(lifted)
    if cof_big.degree >= 1:
        raise AssertionError("splitting degree computation failed (unreachable)")
    return SplitRoots(big, emb, roots_big)


# ---------------------------------------------------------------- binary forms


class BinaryForm:
    """Homogeneous form in (lam : mu), stored by descending lam power.

    coeffs[s] multiplies lam^(degree-s) * mu^s. The zero form of a given
    degree keeps its degree so pencils of minors stay graded.
    """

    __slots__ = ("field", "hdegree", "coeffs")

    def __init__(self, field: Field, hdegree: int, coeffs):
        cs = tuple(field.check(c) for c in coeffs)
        if len(cs) != hdegree + 1:
            raise PreconditionError("binary form needs degree+1 coefficients")
        self.field = field
        self.hdegree = hdegree
        self.coeffs = cs

    @classmethod
    def linear(cls, field, a, b):
        return cls(field, 1, [a, b])

    @classmethod
    def from_lambda_poly(cls, field, poly: Polynomial, hdegree: int):
        """Homogenize a polynomial in lam (mu = 1) to the given degree."""
        if poly.degree > hdegree:
            raise PreconditionError("degree overflow when homogenizing")
        z = field.zero()
        asc = list(poly.coeffs) + [z] * (hdegree + 1 - len(poly.coeffs))
        return cls(field, hdegree, list(reversed(asc)))

    def is_zero(self):
        F = self.field
        return all(F.is_zero(c) for c in self.coeffs)

    def dehomogenize_mu(self) -> Polynomial:
        """Substitute mu = 1, producing a polynomial in lam."""
        return Polynomial(self.field, list(reversed(self.coeffs)))

    def value_at_infinity(self):
        """Coefficient of lam^degree, i.e. the value pattern at (1 : 0)."""
        return self.coeffs[0]

    def eval(self, lam, mu):
        F = self.field
        acc = F.zero()
        d = self.hdegree
        lam_pow = [F.one()]
        mu_pow = [F.one()]
        for _ in range(d):
            lam_pow.append(F.mul(lam_pow[-1], lam))
            mu_pow.append(F.mul(mu_pow[-1], mu))
        for s, c in enumerate(self.coeffs):
            acc = F.add(acc, F.mul(c, F.mul(lam_pow[d - s], mu_pow[s])))
        return acc

    def mul(self, other):
        F = self.field
        d = self.hdegree + other.hdegree
        out = [F.zero()] * (d + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return BinaryForm(F, d, out)

    def add(self, other):
        if self.hdegree != other.hdegree:
            raise PreconditionError("cannot add forms of different degrees")
        F = self.field
        return BinaryForm(
            F, self.hdegree, [F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __repr__(self):
        return f"BinaryForm(deg={self.hdegree}, {self.coeffs})"


@dataclass(frozen=True)
class CommonRootResult:
    """Outcome of the shared-projective-zero decision for a set of binary forms.

    kind is one of "none", "root", "all_zero". A "root" result carries a
    witness (lam, mu) over `witness_field` when one could be produced; over
    the rationals an irrational common root yields existence_only=True with
    the gcd polynomial recorded instead.
    """

    kind: str
    witness: tuple | None = None
    witness_field: Field | None = None
    existence_only: bool = False
    gcd_poly: Polynomial | None = None

    @property
    def has_common_root(self) -> bool:
        return self.kind in ("root", "all_zero")


def binary_form_common_root(forms) -> CommonRootResult:
    """Decide, over the algebraic closure, whether all forms share a zero.

    The finite-lambda locus is the gcd of the mu=1 dehomogenizations; the
    point at infinity (1:0) is checked separately via leading coefficients.
    The decision is closure-correct; the witness, when produced, lives in the
    smallest field containing one (finite fields), else existence is reported.
    """
    forms = list(forms)
    if not forms:
        raise PreconditionError("need at least one form")
    F = forms[0].field
    nonzero = [f for f in forms if not f.is_zero()]
    if not nonzero:
        return CommonRootResult(kind="all_zero")
    # point at infinity
    if all(F.is_zero(f.value_at_infinity()) for f in nonzero):
        return CommonRootResult(
            kind="root", witness=(F.one(), F.zero()), witness_field=F
        )
    g = Polynomial.zero(F)
    for f in nonzero:
        g = g.gcd(f.dehomogenize_mu())
        if g.degree == 0:
            return CommonRootResult(kind="none")
    if g.degree == 0:
        return CommonRootResult(kind="none")
    # g is nonconstant: a common root exists over the closure
    if F == QQ:
        roots, _ = rational_roots(g)
        if roots:
            root = min(r for r, _ in roots)
            return CommonRootResult(kind="root", witness=(root, F.one()), witness_field=F)
        return CommonRootResult(kind="root", existence_only=True, gcd_poly=g)
    split = factor_squarefree_roots(g)
    if not split.roots:
        raise AssertionError("nonconstant gcd with no roots after splitting")
    BF = split.field
    root = min((r for r, _ in split.roots), key=BF.sort_key)
    return CommonRootResult(
        kind="root", witness=(root, BF.one()), witness_field=BF
    )


def det_binary_form_matrix(entries) -> BinaryForm:
    """Determinant of a square matrix of degree-1 binary forms.

    Computed as a univariate determinant at mu = 1 (fraction-free Bareiss),
    then re-homogenized to the size of the matrix; exactness follows because
    the determinant is homogeneous of that degree.
    """
    n = len(entries)
    if n == 0:
        raise PreconditionError("empty determinant")
    F = entries[0][0].field
    if n == 1:
        return entries[0][0]
    rows = [[e.dehomogenize_mu() for e in row] for row in entries]
    det = _bareiss_poly_det(F, rows)
    return BinaryForm.from_lambda_poly(F, det, n)


def _bareiss_poly_det(F, rows):
    n = len(rows)
    m = [row[:] for row in rows]
    sign = 1
    prev = Polynomial.one(F)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = None
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    swap = i
                    break
            if swap is None:
                return Polynomial.zero(F)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j].mul(m[k][k]).sub(m[i][k].mul(m[k][j]))
                m[i][j] = num.exact_div(prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    if sign < 0:
        det = det.neg()
    return det


def pencil_minor_common_root(m1: Matrix, m2: Matrix, size: int) -> CommonRootResult:
    """Common projective zero of all size x size minors of lam*m1 + mu*m2.

    Early-exits once the running gcd is a unit and the point at infinity is
    excluded; identically vanishing minor sets report all_zero.
    """
    import itertools

    F = m1.field
    gcd_running = Polynomial.zero(F)
    at_infinity = True
    minors = []
    saw_nonzero = False
    for rs in itertools.combinations(range(m1.nrows), size):
        for cs in itertools.combinations(range(m1.ncols), size):
            entries = [
                [BinaryForm.linear(F, m1[i, j], m2[i, j]) for j in cs] for i in rs
            ]
            minor = det_binary_form_matrix(entries)
            if minor.is_zero():
                continue
            saw_nonzero = True
            if not F.is_zero(minor.value_at_infinity()):
                at_infinity = False
            gcd_running = gcd_running.gcd(minor.dehomogenize_mu())
            minors.append(minor)
            if gcd_running.degree == 0 and not at_infinity:
                return CommonRootResult(kind="none")
    if not saw_nonzero:
        return CommonRootResult(kind="all_zero")
    return binary_form_common_root(minors)


def lagrange_interpolate(points, field=QQ) -> Polynomial:
    """Exact interpolation through (x, y) pairs over the given field."""
    pts = list(points)
    xs = [field.check(x) for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise PreconditionError("duplicate sample abscissae")
    total = Polynomial.zero(field)
    for i, (xi, yi) in enumerate(pts):
        node = Polynomial.constant(field, field.check(yi))
        for j, (xj, _) in enumerate(pts):
            if i == j:
                continue
            xi_, xj_ = field.check(xi), field.check(xj)
            denom = field.sub(xi_, xj_)
            lin = Polynomial(field, [field.neg(xj_), field.one()])
            node = node.mul(lin.scale(field.inv(denom)))
        total = total.add(node)
    return total
