"""Exact dense linear algebra over the Gaussian rationals.

Matrices are immutable and dense; all ranks, kernels and solves go through
exact Gauss-Jordan elimination in the arithmetic kernel, so there are no
tolerances anywhere.  Subspaces are kept in reduced column echelon form,
which makes equality of subspaces a structural comparison.
"""

from __future__ import annotations

from . import kernel
from .kernel import ONE, ZERO, Scalar


class LinalgError(ValueError):
    """Dimension mismatch or misuse of a linear-algebra operation."""


class Matrix:
    """Immutable rows x cols matrix of Scalars."""

    __slots__ = ("rows", "cols", "entries", "_rref", "_hash")

    def __init__(self, rows, cols, entries):
        entries = tuple(tuple(row) for row in entries)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise LinalgError("entry grid does not match %d x %d" % (rows, cols))
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self._rref = None
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols, [[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[ONE if i == j else ZERO for j in range(n)]
                          for i in range(n)])

    @classmethod
    def from_rows(cls, rows_data):
        rows_data = [list(r) for r in rows_data]
        if not rows_data:
            return cls(0, 0, [])
        return cls(len(rows_data), len(rows_data[0]), rows_data)

    @classmethod
    def from_columns(cls, cols_data, ambient_rows=None):
        cols_data = [list(c) for c in cols_data]
        if not cols_data:
            if ambient_rows is None:
                raise LinalgError("ambient row count required for empty column list")
            return cls(ambient_rows, 0, [[] for _ in range(ambient_rows)])
        n = len(cols_data[0])
        if ambient_rows is not None and ambient_rows != n:
            raise LinalgError("column length does not match ambient dimension")
        return cls(n, len(cols_data), [[c[i] for c in cols_data] for i in range(n)])

    @classmethod
    def column(cls, vec):
        vec = list(vec)
        return cls(len(vec), 1, [[v] for v in vec])

    # -- basics ------------------------------------------------------------

    def entry(self, i, j):
        return self.entries[i][j]

    def col(self, j):
        return tuple(r[j] for r in self.entries)

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def is_zero(self):
        return all(not e for row in self.entries for e in row)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __repr__(self):
        return "Matrix(%d x %d)" % (self.rows, self.cols)

    def pretty(self):
        return "\n".join("[" + "  ".join(str(e) for e in row) + "]"
                         for row in self.entries)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        self._same_shape(other)
        return Matrix(self.rows, self.cols,
                      [[a + b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._same_shape(other)
        return Matrix(self.rows, self.cols,
                      [[a - b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self):
        return Matrix(self.rows, self.cols,
                      [[-a for a in row] for row in self.entries])

    def scale(self, s):
        return Matrix(self.rows, self.cols,
                      [[s * a for a in row] for row in self.entries])

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise LinalgError("product shape mismatch: %d x %d times %d x %d"
                              % (self.rows, self.cols, other.rows, other.cols))
        data = kernel.matmul([list(r) for r in self.entries],
                             [list(r) for r in other.entries], other.cols)
        return Matrix(self.rows, other.cols, data)

    def apply(self, vec):
        """Matrix times column vector, as a tuple."""
        vec = list(vec)
        if len(vec) != self.cols:
            raise LinalgError("vector length %d does not match %d columns"
                              % (len(vec), self.cols))
        out = []
        for row in self.entries:
            acc = ZERO
            for a, v in zip(row, vec):
                if a and v:
                    acc = acc + a * v
            out.append(acc)
        return tuple(out)

    def transpose(self):
        return Matrix(self.cols, self.rows,
                      [[self.entries[i][j] for i in range(self.rows)]
                       for j in range(self.cols)])

    def conj(self):
        return Matrix(self.rows, self.cols,
                      [[a.conj() for a in row] for row in self.entries])

    def conj_transpose(self):
        return self.transpose().conj()

    def hstack(self, other):
        if self.rows != other.rows:
            raise LinalgError("hstack row mismatch")
        return Matrix(self.rows, self.cols + other.cols,
                      [list(ra) + list(rb)
                       for ra, rb in zip(self.entries, other.entries)])

    # -- elimination -------------------------------------------------------

    def rref(self):
        """(reduced row echelon Matrix, pivot column indices); cached."""
        if self._rref is None:
            data, pivots = kernel.rref([list(r) for r in self.entries], self.cols)
            self._rref = (Matrix(self.rows, self.cols, data), tuple(pivots))
        return self._rref

    def rank(self):
        return len(self.rref()[1])

    def rcef(self):
        """Reduced column echelon form with zero columns dropped.

        This is the canonical basis-of-column-space form used by Subspace.
        """
        red, pivots = self.transpose().rref()
        cols = [red.entries[k] for k in range(len(pivots))]
        return Matrix.from_columns(cols, ambient_rows=self.rows)

    def nullspace_matrix(self):
        """Matrix whose columns form the canonical kernel basis."""
        red, pivots = self.rref()
        pivset = set(pivots)
        free = [j for j in range(self.cols) if j not in pivset]
        cols = []
        for j in free:
            v = [ZERO] * self.cols
            v[j] = ONE
            for k, pc in enumerate(pivots):
                v[pc] = -red.entries[k][j]
            cols.append(v)
        return Matrix.from_columns(cols, ambient_rows=self.cols)

    def solve(self, b):
        """Some x with self @ x = b, or None when b is outside the image."""
        b = list(b)
        if len(b) != self.rows:
            raise LinalgError("rhs length %d does not match %d rows"
                              % (len(b), self.rows))
        aug = self.hstack(Matrix.column(b))
        red, pivots = aug.rref()
        if pivots and pivots[-1] == self.cols:
            return None
        x = [ZERO] * self.cols
        for k, pc in enumerate(pivots):
            x[pc] = red.entries[k][self.cols]
        return tuple(x)

    def inverse(self):
        if self.rows != self.cols:
            raise LinalgError("inverse of a non-square matrix")
        red, pivots = self.hstack(Matrix.identity(self.rows)).rref()
        if len(pivots) != self.rows or any(p >= self.rows for p in pivots):
            raise LinalgError("matrix is singular")
        data = [row[self.rows:] for row in red.entries]
        return Matrix(self.rows, self.rows, data)

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise LinalgError("shape mismatch: %d x %d vs %d x %d"
                              % (self.rows, self.cols, other.rows, other.cols))


def zero_vector(n):
    return tuple([ZERO] * n)


class Subspace:
    """A subspace of k^n given by an echelon-canonical column basis.

    Two subspaces are equal iff their canonical bases are identical, so
    `==` decides genuine equality of subspaces.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim, basis):
        if basis.rows != ambient_dim:
            raise LinalgError("basis rows do not match ambient dimension")
        self.ambient_dim = ambient_dim
        self.basis = basis

    @classmethod
    def from_matrix_columns(cls, mat):
        """Span of the columns of ``mat``, canonicalised."""
        return cls(mat.rows, mat.rcef())

    @classmethod
    def from_columns(cls, ambient_dim, cols):
        return cls.from_matrix_columns(Matrix.from_columns(cols, ambient_rows=ambient_dim))

    @classmethod
    def zero(cls, ambient_dim):
        return cls(ambient_dim, Matrix.from_columns([], ambient_rows=ambient_dim))

    @classmethod
    def full(cls, ambient_dim):
        return cls(ambient_dim, Matrix.identity(ambient_dim))

    @property
    def dim(self):
        return self.basis.cols

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return "Subspace(dim %d of k^%d)" % (self.dim, self.ambient_dim)

    def contains_vector(self, vec):
        return self.basis.solve(vec) is not None

    def contains(self, other):
        """Whether other is contained in self."""
        self._same_ambient(other)
        if other.dim == 0:
            return True
        return self.basis.hstack(other.basis).rank() == self.dim

    def __add__(self, other):
        self._same_ambient(other)
        return Subspace.from_matrix_columns(self.basis.hstack(other.basis))

    def intersect(self, other):
        """Exact intersection via the kernel of [U | -V]."""
        self._same_ambient(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        ker = self.basis.hstack(-other.basis).nullspace_matrix()
        cols = []
        for j in range(ker.cols):
            coeffs = [ker.entries[i][j] for i in range(self.dim)]
            cols.append(self.basis.apply(coeffs))
        return Subspace.from_columns(self.ambient_dim, cols)

    def quotient_dim(self, sub):
        """dim(self / sub); requires sub to be contained in self."""
        if not self.contains(sub):
            raise LinalgError("quotient by a subspace that is not contained")
        return self.dim - sub.dim

    def image_under(self, mat):
        """Span of mat(self) inside k^rows(mat)."""
        if mat.cols != self.ambient_dim:
            raise LinalgError("operator domain mismatch")
        return Subspace.from_matrix_columns(mat @ self.basis)

    def _same_ambient(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise LinalgError("ambient dimension mismatch: %d vs %d"
                              % (self.ambient_dim, other.ambient_dim))


def preimage(mat, sub):
    """{x : mat(x) in sub} as a subspace of the domain of ``mat``."""
    if mat.rows != sub.ambient_dim:
        raise LinalgError("operator codomain does not match subspace ambient")
    if sub.dim == 0:
        return Subspace.from_matrix_columns(mat.nullspace_matrix())
    ker = mat.hstack(-sub.basis).nullspace_matrix()
    cols = []
    for j in range(ker.cols):
        cols.append(tuple(ker.entries[i][j] for i in range(mat.cols)))
    return Subspace.from_columns(mat.cols, cols)


def complement_in(inner, outer):
    """A canonical complement of ``inner`` inside ``outer``.

    Requires inner to be contained in outer; picks, in order, the columns of
    outer's canonical basis that grow the span of inner's basis.  The result
    satisfies inner + result = outer and inner.intersect(result) = 0.
    """
    if not outer.contains(inner):
        raise LinalgError("complement_in: inner subspace is not contained in outer")
    combined = inner.basis.hstack(outer.basis)
    _, pivots = combined.rref()  # pivot columns = greedy independent subset
    chosen = [outer.basis.col(p - inner.dim) for p in pivots if p >= inner.dim]
    return Subspace.from_columns(outer.ambient_dim, chosen)
