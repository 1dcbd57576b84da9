"""Tangent-space conditions for isotropic subspaces and pencil rank analysis.

Two independent decision routes answer the same question about a surjective
pair of pairings (psi1, psi2): V x W -> F.

  rank route      dependence_space: left kernel of the stacked symmetry
                  condition matrix; works over any field.
  criterion route pencil_rank_drop: gcd of the (k-1)-minors of the pencil
                  lam*psi1 + mu*psi2; correct over the algebraic closure.

Their agreement is the theorem under test elsewhere, so neither calls the
other.

Conventions. A tangent direction phi in Hom(V, W) is a k x n matrix with
phi[a][b] the w_b-coefficient of phi(v_a), flattened row-major. The symmetry
condition row labelled (i, j, l), j < l, is the functional

    phi -> (psi_i(phi(v_j)))(v_l) - (psi_i(phi(v_l)))(v_j).

Dependence coefficient vectors (c, c') are left-kernel coordinates of the
stacked rows in that labelling.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    InvariantViolation,
    MalformedCertificate,
    NotIsotropic,
    NotSurjective,
    PreconditionError,
)
from .fields import Field
from .forms import AlternatingForm, Subspace, is_isotropic
from .jordan import is_generalized_jordan
from .matrices import Matrix
from .polynomials import (
    CommonRootResult,
    Polynomial,
    pencil_minor_common_root,
)


def binom2(m: int) -> int:
    return m * (m - 1) // 2 if m >= 2 else 0


def pair_labels(k: int):
    """(j, l) with j < l, lexicographic; the row labelling of all conditions."""
    return [(j, l) for j in range(k) for l in range(j + 1, k)]


@dataclass(frozen=True)
class FormPencil:
    """A pair of k x n pairing matrices with recorded surjectivity flags."""

    psi1: Matrix
    psi2: Matrix
    surjective1: bool
    surjective2: bool

    @classmethod
    def build(cls, psi1: Matrix, psi2: Matrix) -> "FormPencil":
        if psi1.shape != psi2.shape or psi1.field != psi2.field:
            raise PreconditionError("pencil members must share shape and field")
        k = psi1.nrows
        return cls(
            psi1=psi1,
            psi2=psi2,
            surjective1=psi1.rank() == k,
            surjective2=psi2.rank() == k,
        )

    @property
    def field(self):
        return self.psi1.field

    @property
    def k(self):
        return self.psi1.nrows

    @property
    def n(self):
        return self.psi1.ncols

    def member(self, lam, mu) -> Matrix:
        return self.psi1.scale(lam).add(self.psi2.scale(mu))


@dataclass(frozen=True)
class ConditionSystem:
    """Stacked symmetry conditions for a list of pairings.

    matrix has m * C(k,2) rows (label order: pairing index outer, (j, l)
    lexicographic inner) and k * n columns (phi positions, row-major).
    """

    matrix: Matrix
    row_labels: tuple
    k: int
    n: int
    m: int


def condition_matrix(psis, k=None, n=None) -> ConditionSystem:
    """Symmetry condition rows for each pairing in `psis`."""
    psis = list(psis)
    if not psis:
        raise PreconditionError("need at least one pairing")
    F = psis[0].field
    k = psis[0].nrows if k is None else k
    n = psis[0].ncols if n is None else n
    for psi in psis:
        if psi.shape != (k, n) or psi.field != F:
            raise PreconditionError("pairings must share shape and field")
    labels = []
    rows = []
    z = F.zero()
    for i, psi in enumerate(psis):
        for (j, l) in pair_labels(k):
            row = [z] * (k * n)
            for b in range(n):
                row[j * n + b] = F.add(row[j * n + b], psi[l, b])
                row[l * n + b] = F.sub(row[l * n + b], psi[j, b])
            rows.append(row)
            labels.append((i, j, l))
    matrix = Matrix(F, rows)
    if not rows:
        matrix.ncols = k * n
    return ConditionSystem(matrix=matrix, row_labels=tuple(labels), k=k, n=n, m=len(psis))


def evaluate_condition_row(psi: Matrix, j: int, l: int, phi: Matrix):
    """Direct evaluation of one symmetry condition on a tangent matrix."""
    F = psi.field
    acc = F.zero()
    for b in range(psi.ncols):
        acc = F.add(acc, F.mul(phi[j, b], psi[l, b]))
        acc = F.sub(acc, F.mul(phi[l, b], psi[j, b]))
    return acc


def dependence_space(pencil: FormPencil) -> Matrix:
    """Echelonized basis of the left kernel of the two-form condition matrix.

    Rows are (c, c') coefficient families of width 2 * C(k,2); an empty basis
    means the 2 * C(k,2) conditions are linearly independent.
    """
    k = pencil.k
    if binom2(k) == 0:
        m = Matrix(pencil.field, [])
        m.ncols = 0
        return m
    system = condition_matrix([pencil.psi1, pencil.psi2])
    return system.matrix.left_kernel()


def dependence_from_witness(pencil: FormPencil, lam, mu, vprime: Subspace):
    """Explicit (c, c') kernel vector from a vanishing pencil member.

    If lam*psi1 + mu*psi2 vanishes on V' x W for a 2-dimensional V' spanned
    by rows u, v, the antisymmetric coefficient matrices C = lam*(u^T v -
    v^T u) and C' = mu*(u^T v - v^T u) give a dependence among the condition
    rows. Returned flattened in row-label order.
    """
    F = pencil.field
    k = pencil.k
    if vprime.dim != 2 or vprime.ambient != k:
        raise PreconditionError("witness subspace must be a 2-plane in V")
    u, v = vprime.basis
    labels = pair_labels(k)
    out = []
    for coeff in (lam, mu):
        for (j, l) in labels:
            wedge = F.sub(F.mul(u[j], v[l]), F.mul(u[l], v[j]))
            out.append(F.mul(coeff, wedge))
    return tuple(out)


@dataclass(frozen=True)
class DependenceCertificate:
    """Verdict of the pencil rank-drop criterion, with witnesses when available.

    For a dependent pencil, witness_lambda = (lam, mu) locates a member of
    rank <= k-2 over witness_field (possibly an extension), vprime is a
    2-plane of V inside its left kernel, and coefficients is an explicit
    (c, c') dependence vector when the witness lives in the base field. Over
    the rationals an irrational witness yields existence_only with the
    minor gcd recorded instead.
    """

    dependent: bool
    witness_lambda: tuple | None = None
    witness_field: Field | None = None
    vprime: Subspace | None = None
    coefficients: tuple | None = None
    existence_only: bool = False
    gcd_poly: Polynomial | None = None

    def witness_field_degree(self) -> int | None:
        if self.witness_field is None:
            return None
        from .fields import ExtensionField

        if isinstance(self.witness_field, ExtensionField):
            return self.witness_field.e
        return 1


def pencil_rank_drop(pencil: FormPencil) -> DependenceCertificate:
    """Decide whether some nonzero pencil member has rank at most k - 2.

    Both pairings must be surjective. The decision is via the common
    projective zeros of all (k-1) x (k-1) minors of lam*psi1 + mu*psi2,
    which is closure-correct; rank drops below k - 2 are covered a fortiori
    (identically vanishing minor sets count as a common root).
    """
    if not (pencil.surjective1 and pencil.surjective2):
        raise NotSurjective("pencil rank criterion needs surjective pairings")
    k, n = pencil.k, pencil.n
    if k > n:
        raise PreconditionError("need k <= n")
    if k == 1:
        return DependenceCertificate(dependent=False)
    result = pencil_minor_common_root(pencil.psi1, pencil.psi2, k - 1)
    if result.kind == "all_zero":
        raise InvariantViolation(
            "all pencil minors vanish although both pairings are surjective"
        )
    return _certificate_from_root(pencil, result)


def _certificate_from_root(pencil: FormPencil, result: CommonRootResult) -> DependenceCertificate:
    if result.kind == "none":
        return DependenceCertificate(dependent=False)
    if result.existence_only:
        return DependenceCertificate(
            dependent=True, existence_only=True, gcd_poly=result.gcd_poly
        )
    lam, mu = result.witness
    wf = result.witness_field
    # normalize the projective witness so its first nonzero coordinate is 1
    if not wf.is_zero(lam):
        scale = wf.inv(lam)
    else:
        scale = wf.inv(mu)
    lam, mu = wf.mul(scale, lam), wf.mul(scale, mu)
    F = pencil.field
    if wf == F:
        p1, p2 = pencil.psi1, pencil.psi2
    else:
        from .fields import embed_scalar

        lift = lambda a: embed_scalar(F, wf, a)  # noqa: E731
        p1 = pencil.psi1.map_scalars(wf, lift)
        p2 = pencil.psi2.map_scalars(wf, lift)
    member = p1.scale(lam).add(p2.scale(mu))
    ker = member.left_kernel()
    if ker.nrows < 2:
        raise InvariantViolation(
            "criterion found a rank-drop point but the kernel is too small"
        )
    vprime = Subspace(wf, pencil.k, ker.data[:2])
    coeffs = None
    if wf == F:
        coeffs = dependence_from_witness(pencil, lam, mu, vprime)
    return DependenceCertificate(
        dependent=True,
        witness_lambda=(lam, mu),
        witness_field=wf,
        vprime=vprime,
        coefficients=coeffs,
    )


# ------------------------------------------------------------ tangent spaces


def _complement_columns(v: Subspace):
    pivots = []
    F = v.field
    for row in v.basis:
        for i, x in enumerate(row):
            if not F.is_zero(x):
                pivots.append(i)
                break
    pivset = set(pivots)
    return [c for c in range(v.ambient) if c not in pivset]


def induced_pairing(f: AlternatingForm, v: Subspace) -> Matrix:
    """The pairing V x (E/V) -> F in V's echelon basis and the complement basis.

    E/V is represented by the standard basis vectors at V's non-pivot
    columns; well defined on the quotient because V is isotropic.
    """
    if not is_isotropic(f, v):
        raise NotIsotropic("induced pairing needs an isotropic subspace")
    full = v.basis_matrix().mul(f.gram)  # k x r, rows <v_a, e_j>
    comp = _complement_columns(v)
    return full.submatrix(range(v.dim), comp)


def induced_pencil(f1: AlternatingForm, f2: AlternatingForm, v: Subspace) -> FormPencil:
    return FormPencil.build(induced_pairing(f1, v), induced_pairing(f2, v))


def sg_tangent(f: AlternatingForm, v: Subspace) -> Subspace:
    """Tangent space at V of the isotropic locus of a nondegenerate form.

    Returned as a subspace of the k*(r-k)-dimensional space of matrices
    Hom(V, E/V), flattened row-major; the kernel of the single-form
    condition system. Dimension is k(r-k) - C(k,2).
    """
    if not f.is_nondegenerate():
        raise PreconditionError("tangent computation expects a nondegenerate form")
    psi = induced_pairing(f, v)
    k, n = psi.shape
    if binom2(k) == 0:
        return Subspace.full(f.field, k * n)
    system = condition_matrix([psi])
    ker = system.matrix.right_kernel()
    return Subspace(f.field, k * n, ker.data, already_reduced=True)


@dataclass(frozen=True)
class SmoothnessReport:
    """Tangent codimension versus the pencil criterion at one subspace."""

    k: int
    r: int
    tangent_codim: int
    expected_codim: int
    dependence_dim: int
    certificate: DependenceCertificate
    agreement: bool

    @property
    def smooth(self) -> bool:
        return self.tangent_codim == self.expected_codim


def msg_smoothness_at(
    f1: AlternatingForm, f2: AlternatingForm, v: Subspace
) -> SmoothnessReport:
    """Compare tangent codimension with the rank-drop criterion at V.

    The tangent space of the simultaneous isotropic locus is cut by the
    stacked condition systems of both induced pairings; its codimension is
    2*C(k,2) minus the dependence dimension. The criterion route decides
    independence separately; `agreement` records that both say the same,
    which is the equivalence under test in the campaigns.
    """
    if not (f1.is_nondegenerate() and f2.is_nondegenerate()):
        raise PreconditionError("both forms must be nondegenerate")
    pencil = induced_pencil(f1, f2, v)
    k = pencil.k
    dep = dependence_space(pencil)
    dep_dim = dep.nrows
    codim = 2 * binom2(k) - dep_dim
    cert = pencil_rank_drop(pencil)
    agreement = (codim == 2 * binom2(k)) == (not cert.dependent)
    return SmoothnessReport(
        k=k,
        r=f1.dim,
        tangent_codim=codim,
        expected_codim=2 * binom2(k),
        dependence_dim=dep_dim,
        certificate=cert,
        agreement=agreement,
    )


# ----------------------------------------------- eigenvector extraction


@dataclass(frozen=True)
class ExtractedVector:
    row: int
    eigenvalue: object
    vector: tuple


def extract_dependence_vectors(a: Matrix, coefficients) -> list:
    """Left eigenvectors of a generalized-Jordan matrix read off a dependence.

    `a` must have its leftmost block in Jordan form and `coefficients` must
    be a (c, c') vector (as produced by dependence_space for the pencil
    ([I | 0], a)) with nonzero c' part. For each Jordan block whose minimal
    row i carries a nonzero c' row, the vector (c'_{i,1}, ..., c'_{i,k})
    annihilates a - lambda_i * I_{k,n} exactly; at least two independent
    vectors come back.
    """
    F = a.field
    k, n = a.nrows, a.ncols
    if not is_generalized_jordan(a):
        raise MalformedCertificate("matrix is not in generalized Jordan form")
    labels = pair_labels(k)
    if coefficients is None or len(coefficients) != 2 * len(labels):
        raise MalformedCertificate("coefficient vector has the wrong width")
    cp = coefficients[len(labels) :]
    if all(F.is_zero(F.check(x)) for x in cp):
        raise MalformedCertificate("certificate has vanishing c' part")
    # antisymmetric extension c'[j][l]
    z = F.zero()
    cpm = [[z] * k for _ in range(k)]
    for (j, l), val in zip(labels, cp):
        val = F.check(val)
        cpm[j][l] = val
        cpm[l][j] = F.neg(val)
    blocks = _jordan_blocks(a)
    out = []
    for (s, e) in blocks:
        row_idx = None
        for i in range(s, e):
            if any(not F.is_zero(x) for x in cpm[i]):
                row_idx = i
                break
        if row_idx is None:
            continue
        lam = a[row_idx, row_idx]
        vec = tuple(cpm[row_idx])
        # check v (A - lam I_{k,n}) = 0
        residual = list(a.mul_vector(vec))
        for j in range(k):
            residual[j] = F.sub(residual[j], F.mul(lam, vec[j]))
        if any(not F.is_zero(x) for x in residual):
            raise InvariantViolation(
                f"extracted vector at row {row_idx} fails the eigen equation"
            )
        out.append(ExtractedVector(row=row_idx, eigenvalue=lam, vector=vec))
    if len(out) < 2:
        raise InvariantViolation(
            "fewer than two eigenvectors extracted from a nonzero c' part"
        )
    span = Matrix(F, [list(ev.vector) for ev in out])
    if span.rank() < 2:
        raise InvariantViolation("extracted vectors do not span two dimensions")
    return out


def _jordan_blocks(a: Matrix):
    F = a.field
    k = a.nrows
    one = F.one()
    blocks = []
    start = 0
    for i in range(k - 1):
        if a[i, i + 1] != one:
            blocks.append((start, i + 1))
            start = i + 1
    blocks.append((start, k))
    return blocks
