"""Dense exact matrices over a Field, with the eliminations everything else uses.

Matrices are immutable (entries stored as a tuple of row tuples). All
algorithms are plain fraction-free-where-possible Gaussian elimination;
char_poly uses the division-free Samuelson-Berkowitz recurrence so it works
uniformly in every characteristic.
"""

from __future__ import annotations

from .errors import PreconditionError
from .fields import Field


class Matrix:
    __slots__ = ("field", "nrows", "ncols", "data")

    def __init__(self, field: Field, data):
        rows = tuple(tuple(field.check(x) for x in row) for row in data)
        if rows:
            w = len(rows[0])
            if any(len(r) != w for r in rows):
                raise PreconditionError("ragged rows")
        else:
            w = 0
        self.field = field
        self.nrows = len(rows)
        self.ncols = w if rows else 0
        self.data = rows

    # ---------------------------------------------------------------- basics

    @classmethod
    def zero(cls, field, nrows, ncols):
        z = field.zero()
        return cls(field, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero(), field.one()
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_rows(cls, field, rows):
        return cls(field, rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def row(self, i):
        return self.data[i]

    def col(self, j):
        return tuple(r[j] for r in self.data)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.data == other.data
            and self.ncols == other.ncols
        )

    def __hash__(self):
        return hash((self.field, self.ncols, self.data))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"Matrix({self.field}, {self.nrows}x{self.ncols}: {body})"

    def is_zero(self):
        z = self.field.zero()
        return all(x == z for row in self.data for x in row)

    def transpose(self):
        return Matrix(self.field, list(zip(*self.data)) if self.data else [])

    def add(self, other):
        F = self.field
        return Matrix(
            F,
            [
                [F.add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
        )

    def sub(self, other):
        F = self.field
        return Matrix(
            F,
            [
                [F.sub(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
        )

    def neg(self):
        F = self.field
        return Matrix(F, [[F.neg(a) for a in row] for row in self.data])

    def scale(self, c):
        F = self.field
        c = F.check(c)
        return Matrix(F, [[F.mul(c, a) for a in row] for row in self.data])

    def mul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise PreconditionError(
                f"shape mismatch {self.shape} x {other.shape}"
            )
        F = self.field
        ot = list(zip(*other.data)) if other.data else []
        out = []
        for row in self.data:
            new = []
            for colv in ot:
                acc = F.zero()
                for a, b in zip(row, colv):
                    acc = F.add(acc, F.mul(a, b))
                new.append(acc)
            out.append(new)
        if not ot:
            out = [[] for _ in range(self.nrows)]
        return Matrix(F, out)

    def __matmul__(self, other):
        return self.mul(other)

    def hstack(self, other):
        return Matrix(
            self.field, [ra + rb for ra, rb in zip(self.data, other.data)]
        )

    def vstack(self, other):
        return Matrix(self.field, self.data + other.data)

    def submatrix(self, rows, cols):
        return Matrix(
            self.field, [[self.data[i][j] for j in cols] for i in rows]
        )

    def map_scalars(self, dst_field: Field, fn) -> "Matrix":
        return Matrix(dst_field, [[fn(x) for x in row] for row in self.data])

    def mul_vector(self, v):
        """Row vector v (length nrows) times this matrix; returns a tuple."""
        F = self.field
        if len(v) != self.nrows:
            raise PreconditionError("vector length mismatch")
        out = [F.zero()] * self.ncols
        for vi, row in zip(v, self.data):
            if not F.is_zero(vi):
                for j, a in enumerate(row):
                    out[j] = F.add(out[j], F.mul(vi, a))
        return tuple(out)

    # ----------------------------------------------------------- elimination

    def rref(self):
        """Reduced row echelon form.

        Returns (reduced, rank, pivot_cols) where pivot_cols is a tuple of
        0-based column indices. Exact over any field.
        """
        F = self.field
        m = [list(row) for row in self.data]
        nr, nc = self.nrows, self.ncols
        pivots = []
        r = 0
        for c in range(nc):
            pivot_row = None
            for i in range(r, nr):
                if not F.is_zero(m[i][c]):
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            inv = F.inv(m[r][c])
            m[r] = [F.mul(inv, x) for x in m[r]]
            for i in range(nr):
                if i != r and not F.is_zero(m[i][c]):
                    f = m[i][c]
                    m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == nr:
                break
        return Matrix(F, m), r, tuple(pivots)

    def rank(self) -> int:
        return self.rref()[1]

    def right_kernel(self) -> "Matrix":
        """Echelonized basis (as rows) of {x : M x = 0}."""
        F = self.field
        red, rank, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        for fc in free:
            v = [F.zero()] * self.ncols
            v[fc] = F.one()
            for r, pc in enumerate(pivots):
                v[pc] = F.neg(red.data[r][fc])
            basis.append(v)
        if not basis:
            return Matrix(F, [])._with_cols(self.ncols)
        ker = Matrix(F, basis)
        return ker.rref()[0]

    def left_kernel(self) -> "Matrix":
        """Echelonized basis (as rows) of {v : v M = 0}."""
        ker = self.transpose().right_kernel()
        if ker.nrows == 0:
            return Matrix(self.field, [])._with_cols(self.nrows)
        return ker

    def _with_cols(self, ncols):
        # empty matrix carrying an explicit width
        m = Matrix(self.field, [])
        m.ncols = ncols
        return m

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise PreconditionError("inverse needs a square matrix")
        n = self.nrows
        aug = self.hstack(Matrix.identity(self.field, n))
        red, rank, _ = aug.rref()
        if rank < n:
            raise PreconditionError("matrix is singular")
        return red.submatrix(range(n), range(n, 2 * n))

    def det(self):
        if self.nrows != self.ncols:
            raise PreconditionError("determinant needs a square matrix")
        F = self.field
        n = self.nrows
        m = [list(row) for row in self.data]
        det = F.one()
        for c in range(n):
            pr = None
            for i in range(c, n):
                if not F.is_zero(m[i][c]):
                    pr = i
                    break
            if pr is None:
                return F.zero()
            if pr != c:
                m[c], m[pr] = m[pr], m[c]
                det = F.neg(det)
            det = F.mul(det, m[c][c])
            inv = F.inv(m[c][c])
            for i in range(c + 1, n):
                if not F.is_zero(m[i][c]):
                    f = F.mul(m[i][c], inv)
                    m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[c])]
        return det


def rref(m: Matrix):
    """Functional alias: (reduced matrix, rank, pivot columns)."""
    return m.rref()


def left_kernel(m: Matrix) -> Matrix:
    return m.left_kernel()


def char_poly_coeffs(m: Matrix):
    """Coefficients of det(xI - M), ascending, via Samuelson-Berkowitz.

    Division-free, so valid over any commutative coefficient field
    including small characteristics.
    """
    if m.nrows != m.ncols:
        raise PreconditionError("char_poly needs a square matrix")
    F = m.field
    n = m.nrows
    if n == 0:
        return (F.one(),)
    # p holds descending coefficients of the char poly of the leading r x r block
    p = [F.one(), F.neg(m[0, 0])]
    for r in range(2, n + 1):
        prev = m.submatrix(range(r - 1), range(r - 1))
        row = [m[r - 1, j] for j in range(r - 1)]
        col = [m[i, r - 1] for i in range(r - 1)]
        a = m[r - 1, r - 1]
        # first column of the Toeplitz operator: 1, -a, -row col, -row prev col, ...
        toep = [F.one(), F.neg(a)]
        vec = col
        for _ in range(r - 1):
            acc = F.zero()
            for x, y in zip(row, vec):
                acc = F.add(acc, F.mul(x, y))
            toep.append(F.neg(acc))
            vec = [
                _dot(F, prev.data[i], vec) for i in range(r - 1)
            ]
        newp = []
        for i in range(r + 1):
            acc = F.zero()
            for j in range(len(p)):
                if 0 <= i - j < len(toep):
                    acc = F.add(acc, F.mul(toep[i - j], p[j]))
            newp.append(acc)
        p = newp
    return tuple(reversed(p))


def _dot(F, xs, ys):
    acc = F.zero()
    for x, y in zip(xs, ys):
        acc = F.add(acc, F.mul(x, y))
    return acc
