"""Generalized Jordan normal form for wide matrices.

A k x n matrix (k <= n) is brought to a form whose leftmost k x k block is a
Jordan matrix, using only transformations A -> R A C with C block diagonal
of shape [[R^-1, 0], [0, W]]. That restriction keeps the companion pairing
[I | 0] fixed, so pencil data expressed against the pair ([I|0], A)
transports through the recorded changes.

Eigenvalues are extracted exactly; a finite base field is extended
automatically when the characteristic polynomial does not split, and
SplitFailure propagates over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .fields import Field
from .matrices import Matrix
from .polynomials import char_poly, factor_squarefree_roots


@dataclass(frozen=True)
class GJNFResult:
    """Outcome of generalized_jordan_form.

    row_change @ A @ col_change == normal_form exactly, where A is the input
    lifted into `field` through `embed`. The leftmost k x k block of
    normal_form is a Jordan matrix with diagonal `eigenvalues` and
    superdiagonal `superdiagonal` (entries in {0, 1}; the boundary values
    eps_0 = eps_k = 0 are implicit). Columns right of the block are in
    column echelon form.
    """

    field: Field
    embed: object
    row_change: Matrix
    col_change: Matrix
    normal_form: Matrix
    eigenvalues: tuple
    superdiagonal: tuple

    @property
    def k(self):
        return self.normal_form.nrows

    @property
    def n(self):
        return self.normal_form.ncols

    def block_ranges(self):
        """(start, end) half-open row ranges of the Jordan blocks."""
        out = []
        start = 0
        for i, eps in enumerate(self.superdiagonal):
            if eps == 0:
                out.append((start, i + 1))
                start = i + 1
        out.append((start, self.k))
        return tuple(out)


def is_generalized_jordan(m: Matrix) -> bool:
    """Check that the leftmost square block of a wide matrix is Jordan."""
    F = m.field
    k = m.nrows
    if m.ncols < k:
        return False
    one, zero = F.one(), F.zero()
    for i in range(k):
        for j in range(k):
            v = m[i, j]
            if i == j:
                continue
            if j == i + 1:
                if v != zero and v != one:
                    return False
            elif v != zero:
                return False
    for i in range(k - 1):
        if m[i, i + 1] == one and m[i, i] != m[i + 1, i + 1]:
            return False
    return True


def jordan_matrix(field: Field, eigenvalues, superdiagonal) -> Matrix:
    """Assemble the Jordan matrix with the given diagonal and superdiagonal."""
    k = len(eigenvalues)
    z = field.zero()
    rows = [[z] * k for _ in range(k)]
    for i, lam in enumerate(eigenvalues):
        rows[i][i] = field.check(lam)
    for i, eps in enumerate(superdiagonal):
        rows[i][i + 1] = field.from_int(eps)
    return Matrix(field, rows)


def jordan_decomposition(a: Matrix):
    """Exact Jordan form of a square matrix, splitting the field if needed.

    Returns (field, embed, P, J, eigenvalues, superdiagonal) satisfying
    P^-1 (lifted A) P = J. Deterministic: eigenvalues in the field's
    canonical order, blocks within an eigenvalue largest first, chain tops
    chosen greedily from echelonized kernel bases.
    """
    if a.nrows != a.ncols:
        raise PreconditionError("jordan_decomposition needs a square matrix")
    split = factor_squarefree_roots(char_poly(a))
    F = split.field
    embed = split.embed
    lifted = a.map_scalars(F, embed) if F != a.field else a
    n = a.nrows
    columns = []
    eigenvalues = []
    superdiag = []
    for lam, alg_mult in sorted(split.roots, key=lambda rm: F.sort_key(rm[0])):
        nmat = lifted.sub(Matrix.identity(F, n).scale(lam))
        nmat_t = nmat.transpose()
        kernels = []
        power = Matrix.identity(F, n)
        while True:
            power = power.mul(nmat)
            ker = power.right_kernel()
            kernels.append(ker)
            if ker.nrows >= alg_mult:
                break
        smax = len(kernels)
        dims = [0] + [k.nrows for k in kernels]
        blocks_ge = [dims[s] - dims[s - 1] for s in range(1, smax + 1)]
        chains = []
        for s in range(smax, 0, -1):
            want = blocks_ge[s - 1] - (blocks_ge[s] if s < smax else 0)
            if want == 0:
                continue
            lower = kernels[s - 2] if s >= 2 else None
            obstructions = [list(r) for r in (lower.data if lower is not None else [])]
            for chain in chains:
                if len(chain) >= s:
                    obstructions.append(list(chain[len(chain) - s]))
            got = 0
            for cand in kernels[s - 1].data:
                if got == want:
                    break
                trial = Matrix(F, obstructions + [list(cand)])
                if trial.rank() == len(obstructions) + 1:
                    obstructions.append(list(cand))
                    chain = [tuple(cand)]
                    vec = tuple(cand)
                    for _ in range(s - 1):
                        vec = tuple(nmat_t.mul_vector(vec))
                        chain.append(vec)
                    chains.append(chain)
                    got += 1
            if got != want:
                raise AssertionError("Jordan chain extraction failed (unreachable)")
        for chain in chains:
            depth = len(chain)
            for t in range(depth - 1, -1, -1):
                columns.append(chain[t])
            eigenvalues.extend([lam] * depth)
            superdiag.extend([1] * (depth - 1) + [0])
    superdiag = superdiag[:-1] if superdiag else []
    p = Matrix(F, list(zip(*columns)))
    j = p.inverse().mul(lifted).mul(p)
    if j != jordan_matrix(F, eigenvalues, superdiag):
        raise AssertionError("Jordan assembly mismatch (unreachable)")
    return F, embed, p, j, tuple(eigenvalues), tuple(superdiag)


def generalized_jordan_form(a: Matrix) -> GJNFResult:
    """Normal form of a k x n matrix (k <= n) with Jordan leftmost block.

    The recorded changes satisfy row_change @ A @ col_change = normal_form
    with col_change = diag(row_change^-1, W), so any pairing pencil anchored
    at [I | 0] is carried along consistently. Columns beyond the block are
    reduced to column echelon form with the leftover column freedom.
    """
    k, n = a.nrows, a.ncols
    if k > n:
        raise PreconditionError("need k <= n")
    if k == 0:
        raise PreconditionError("empty matrix")
    left = a.submatrix(range(k), range(k))
    F, embed, p, j, eigenvalues, superdiag = jordan_decomposition(left)
    a_lift = a.map_scalars(F, embed) if F != a.field else a
    r = p.inverse()
    if n > k:
        right_t = r.mul(a_lift.submatrix(range(k), range(k, n)))
        w = _column_ops_for_echelon(right_t)
        normal = j.hstack(right_t.mul(w))
    else:
        w = Matrix(F, [])
        normal = j
    col_change = _block_diag(p, w)
    if r.mul(a_lift).mul(col_change) != normal:
        raise AssertionError("normal form bookkeeping failed (unreachable)")
    return GJNFResult(
        field=F,
        embed=embed,
        row_change=r,
        col_change=col_change,
        normal_form=normal,
        eigenvalues=eigenvalues,
        superdiagonal=tuple(superdiag),
    )


def _column_ops_for_echelon(m: Matrix) -> Matrix:
    """Invertible W so that m @ W is in column echelon form."""
    F = m.field
    mt = m.transpose()
    nr = mt.nrows
    aug = mt.hstack(Matrix.identity(F, nr))
    red, _, _ = aug.rref()
    wt = red.submatrix(range(nr), range(mt.ncols, mt.ncols + nr))
    return wt.transpose()


def _block_diag(a: Matrix, b: Matrix) -> Matrix:
    F = a.field
    na, nb = a.nrows, b.nrows
    z = F.zero()
    rows = []
    for i in range(na):
        rows.append(list(a.data[i]) + [z] * nb)
    for i in range(nb):
        rows.append([z] * na + list(b.data[i]))
    return Matrix(F, rows)
