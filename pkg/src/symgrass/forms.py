"""Alternating bilinear forms and canonical subspaces.

The alternating condition is enforced as zero diagonal AND antisymmetry, so
characteristic 2 behaves correctly (there the two conditions differ and the
zero diagonal is the binding one). Subspaces are kept in reduced row echelon
form; that canonical representative makes equality, hashing and enumeration
deduplication trivial.
"""

from __future__ import annotations

from .errors import PreconditionError
from .fields import Field
from .matrices import Matrix


class Subspace:
    """A subspace of F^n, stored as an echelonized basis matrix (rows)."""

    __slots__ = ("field", "ambient", "basis")

    def __init__(self, field: Field, ambient: int, basis_rows, already_reduced=False):
        m = Matrix(field, [list(r) for r in basis_rows])
        if m.nrows and m.ncols != ambient:
            raise PreconditionError("basis width differs from ambient dimension")
        if not already_reduced:
            red, rank, _ = m.rref()
            rows = red.data[:rank]
        else:
            rows = m.data
        self.field = field
        self.ambient = ambient
        self.basis = tuple(rows)

    @classmethod
    def zero(cls, field, ambient):
        return cls(field, ambient, [])

    @classmethod
    def full(cls, field, ambient):
        return cls(field, ambient, Matrix.identity(field, ambient).data, already_reduced=True)

    @classmethod
    def from_matrix(cls, m: Matrix):
        return cls(m.field, m.ncols, m.data)

    @property
    def dim(self):
        return len(self.basis)

    def basis_matrix(self) -> Matrix:
        m = Matrix(self.field, [list(r) for r in self.basis])
        if m.nrows == 0:
            m.ncols = self.ambient
        return m

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.field, self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def contains(self, vector) -> bool:
        F = self.field
        vec = [F.check(x) for x in vector]
        work = list(vec)
        for row in self.basis:
            pivot = _pivot_index(F, row)
            if pivot is not None and not F.is_zero(work[pivot]):
                c = work[pivot]
                work = [F.sub(w, F.mul(c, r)) for w, r in zip(work, row)]
        return all(F.is_zero(x) for x in work)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.basis)

    def add(self, other: "Subspace") -> "Subspace":
        return Subspace(
            self.field, self.ambient, list(self.basis) + list(other.basis)
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via the kernel of the stacked-coefficients system."""
        F = self.field
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(F, self.ambient)
        a = self.basis_matrix()
        b = other.basis_matrix()
        stacked = a.vstack(b)
        ker = stacked.left_kernel()  # rows (x | y) with x A + y B = 0
        rows = []
        for kr in ker.data:
            x = kr[: a.nrows]
            rows.append(a.mul_vector(x))
        return Subspace(F, self.ambient, rows)


def _pivot_index(F, row):
    for i, x in enumerate(row):
        if not F.is_zero(x):
            return i
    return None


class AlternatingForm:
    """Square Gram matrix with zero diagonal and antisymmetry; radical cached."""

    __slots__ = ("field", "gram", "radical_space", "rank", "delta", "degeneracy")

    def __init__(self, gram: Matrix):
        F = gram.field
        if gram.nrows != gram.ncols:
            raise PreconditionError("Gram matrix must be square")
        r = gram.nrows
        for i in range(r):
            if not F.is_zero(gram[i, i]):
                raise PreconditionError(
                    f"diagonal entry ({i},{i}) must vanish for an alternating form"
                )
            for j in range(i + 1, r):
                if gram[i, j] != F.neg(gram[j, i]):
                    raise PreconditionError(
                        f"entries ({i},{j}) and ({j},{i}) are not antisymmetric"
                    )
        self.field = F
        self.gram = gram
        ker = gram.left_kernel()
        self.radical_space = Subspace(F, r, ker.data, already_reduced=True)
        self.rank = r - self.radical_space.dim
        if self.rank % 2 != 0:
            raise AssertionError("alternating form of odd rank (unreachable)")
        self.delta = self.rank // 2
        self.degeneracy = self.radical_space.dim

    @classmethod
    def from_rows(cls, field, rows):
        return cls(Matrix(field, rows))

    @property
    def dim(self):
        return self.gram.nrows

    def __eq__(self, other):
        return isinstance(other, AlternatingForm) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        return (
            f"AlternatingForm(dim={self.dim}, rank={self.rank}, "
            f"degeneracy={self.degeneracy})"
        )

    def pair(self, u, v):
        F = self.field
        row = self.gram.mul_vector(tuple(F.check(x) for x in u))
        acc = F.zero()
        for a, b in zip(row, v):
            acc = F.add(acc, F.mul(a, F.check(b)))
        return acc

    def is_nondegenerate(self) -> bool:
        return self.degeneracy == 0


def standard_form(field: Field, r: int, delta: int) -> AlternatingForm:
    """Block diagonal form with `delta` hyperbolic 2x2 blocks then zeros."""
    if 2 * delta > r:
        raise PreconditionError("rank cannot exceed the dimension")
    z, o = field.zero(), field.one()
    rows = [[z] * r for _ in range(r)]
    for b in range(delta):
        rows[2 * b][2 * b + 1] = o
        rows[2 * b + 1][2 * b] = field.neg(o)
    return AlternatingForm(Matrix(field, rows))


def radical(f: AlternatingForm) -> Subspace:
    """Vectors pairing to zero with the whole space."""
    return f.radical_space


def restrict(f: AlternatingForm, v: Subspace) -> AlternatingForm:
    """The form pulled back to V's echelon basis."""
    if v.ambient != f.dim:
        raise PreconditionError("ambient dimension mismatch")
    b = v.basis_matrix()
    return AlternatingForm(b.mul(f.gram).mul(b.transpose()))


def is_isotropic(f: AlternatingForm, v: Subspace) -> bool:
    """True when the restricted Gram matrix vanishes identically."""
    if v.ambient != f.dim:
        raise PreconditionError("ambient dimension mismatch")
    b = v.basis_matrix()
    return b.mul(f.gram).mul(b.transpose()).is_zero()


def orthogonal_complement(f: AlternatingForm, v: Subspace) -> Subspace:
    """All vectors pairing to zero with every element of V."""
    if v.ambient != f.dim:
        raise PreconditionError("ambient dimension mismatch")
    if v.dim == 0:
        return Subspace.full(f.field, f.dim)
    pairing = v.basis_matrix().mul(f.gram)  # k x r, rows <v_a, .>
    ker = pairing.right_kernel()
    return Subspace(f.field, f.dim, ker.data, already_reduced=True)


def radical_intersection_dim(f: AlternatingForm, v: Subspace) -> int:
    """dim(V meet radical), computed as dim V - rank(V_basis @ G)."""
    b = v.basis_matrix()
    return v.dim - b.mul(f.gram).rank()


def darboux_basis(f: AlternatingForm):
    """Basis change B with B^T G B = blockdiag(J2, ..., J2, 0).

    Returns (B, rank). Classic symplectic Gram-Schmidt: repeatedly take the
    first pair of working vectors with nonzero pairing, normalize, and
    project the remainder off the hyperbolic plane they span.
    """
    F = f.field
    r = f.dim
    working = [tuple(row) for row in Matrix.identity(F, r).data]
    pairs = []
    while True:
        hit = None
        for i in range(len(working)):
            for j in range(i + 1, len(working)):
                if not F.is_zero(f.pair(working[i], working[j])):
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            break
        i, j = hit
        u = working[i]
        w = working[j]
        c = f.pair(u, w)
        w = tuple(F.mul(F.inv(c), x) for x in w)
        rest = [working[t] for t in range(len(working)) if t not in (i, j)]
        projected = []
        for vvec in rest:
            a = f.pair(vvec, w)
            b = f.pair(vvec, u)
            # v - <v,w> u + <v,u> w kills both pairings
            new = tuple(
                F.add(F.sub(x, F.mul(a, ux)), F.mul(b, wx))
                for x, ux, wx in zip(vvec, u, w)
            )
            projected.append(new)
        pairs.append((u, w))
        working = projected
    columns = []
    for u, w in pairs:
        columns.append(u)
        columns.append(w)
    columns.extend(working)
    b = Matrix(F, list(zip(*columns)))
    return b, 2 * len(pairs)


def random_alternating_form(field: Field, r: int, rng) -> AlternatingForm:
    """Uniform-ish random alternating Gram matrix (strict upper drawn freely)."""
    z = field.zero()
    rows = [[z] * r for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            a = field.sample(rng)
            rows[i][j] = a
            rows[j][i] = field.neg(a)
    return AlternatingForm(Matrix(field, rows))


def random_symplectic_form(field: Field, r: int, rng, max_tries=1000) -> AlternatingForm:
    """Random nondegenerate alternating form; r must be even."""
    if r % 2 != 0:
        raise PreconditionError("nondegenerate alternating forms need even dimension")
    for _ in range(max_tries):
        f = random_alternating_form(field, r, rng)
        if f.is_nondegenerate():
            return f
    raise PreconditionError("failed to sample a nondegenerate form")
