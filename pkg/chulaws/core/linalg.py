"""
Exact linear algebra over prime fields F_p.

Every map, pairing and subspace in chulaws is carried by a ``Matrix`` of
residues in ``[0, p)``. Vectors are columns; a ``Subspace`` stores its basis
as the rows of a matrix in reduced row echelon form, so two subspaces are
equal exactly when their basis matrices are identical.

Row-major conventions used repo-wide:
    * ``kron(a, b)`` pairs indices as ``(i_a, i_b) -> i_a * rows(b) + i_b``.
    * ``vec(m)`` flattens row by row, and ``vec(a @ x @ b)`` equals
      ``kron(a, b.T) @ vec(x)``.
"""

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

# p * p must stay far below 2**63 while numpy accumulates matmul sums.
MAX_MODULUS = 1 << 20


class LinalgError(ValueError):
    """Base class for exact linear algebra failures."""


class NotPrime(LinalgError):
    """Raised when a field modulus is not a supported prime."""


class FieldMismatch(LinalgError):
    """Raised when operands live over different prime fields."""


class DimensionMismatch(LinalgError):
    """Raised when operand shapes are incompatible."""


class NoSolution(LinalgError):
    """Raised by ``solve`` when the linear system is inconsistent."""

    def __init__(self, column: int = 0):
        super().__init__(f"linear system has no solution (column {column})")
        self.column = column


class NotInSubspace(LinalgError):
    """Raised when coordinates are requested for a vector outside a span."""


def is_prime(candidate: int) -> bool:
    """Return True when *candidate* is prime (trial division)."""
    if candidate < 2:
        return False
    divisor = 2
    while divisor * divisor <= candidate:
        if candidate % divisor == 0:
            return False
        divisor += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """
    The prime field F_p.

    Attributes:
        p: Prime modulus, 2 <= p < MAX_MODULUS
    """

    p: int

    def __post_init__(self) -> None:
        """Reject composite or oversized moduli."""
        if not isinstance(self.p, (int, np.integer)) or not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.p >= MAX_MODULUS:
            raise NotPrime(f"modulus {self.p} exceeds {MAX_MODULUS}")
        object.__setattr__(self, "p", int(self.p))

    def inverse(self, value: int) -> int:
        """Return the multiplicative inverse of a nonzero residue."""
        residue = int(value) % self.p
        if residue == 0:
            raise ZeroDivisionError("zero has no inverse in F_p")
        return pow(residue, -1, self.p)


@dataclass(frozen=True, eq=False)
class Matrix:
    """
    An immutable rows x cols grid of residues mod p.

    Zero-row and zero-column matrices are legal values. The backing array
    is an int64 numpy array with writes disabled.
    """

    field: FieldSpec
    data: np.ndarray

    def __post_init__(self) -> None:
        """Normalize the array: int64, reduced mod p, read-only, 2-D."""
        array = np.array(self.data, dtype=np.int64)
        if array.ndim != 2:
            raise DimensionMismatch(
                f"matrix data must be 2-dimensional, got {array.ndim}"
            )
        array = np.mod(array, self.field.p)
        array.setflags(write=False)
        object.__setattr__(self, "data", array)

    # Constructors -----------------------------------------------------

    @classmethod
    def from_rows(
        cls,
        field: FieldSpec,
        rows: Sequence[Sequence[int]],
        cols: int | None = None,
    ) -> "Matrix":
        """Build a matrix from nested rows; *cols* is needed when empty."""
        if len(rows) == 0:
            return cls.zeros(field, 0, cols or 0)
        array = np.array([list(row) for row in rows], dtype=np.int64)
        if array.ndim == 1:
            array = array.reshape(len(rows), 0)
        if cols is not None and array.shape[1] != cols:
            raise DimensionMismatch(
                f"expected {cols} columns, got {array.shape[1]}"
            )
        return cls(field, array)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        """Return the rows x cols zero matrix."""
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldSpec, size: int) -> "Matrix":
        """Return the size x size identity."""
        return cls(field, np.eye(size, dtype=np.int64))

    @classmethod
    def column(cls, field: FieldSpec, values: Sequence[int]) -> "Matrix":
        """Return a column vector."""
        return cls(
            field, np.array(list(values), dtype=np.int64).reshape(-1, 1)
        )

    @classmethod
    def row(cls, field: FieldSpec, values: Sequence[int]) -> "Matrix":
        """Return a row vector."""
        return cls(
            field, np.array(list(values), dtype=np.int64).reshape(1, -1)
        )

    @classmethod
    def unit_column(cls, field: FieldSpec, size: int, index: int) -> "Matrix":
        """Return the standard basis column e_index of F_p^size."""
        array = np.zeros((size, 1), dtype=np.int64)
        array[index, 0] = 1
        return cls(field, array)

    # Shape ------------------------------------------------------------

    @property
    def rows(self) -> int:
        """Number of rows."""
        return int(self.data.shape[0])

    @property
    def cols(self) -> int:
        """Number of columns."""
        return int(self.data.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        """(rows, cols)."""
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        """True when rows == cols."""
        return self.rows == self.cols

    def entries(self) -> Tuple[int, ...]:
        """Row-major tuple of residues."""
        return tuple(int(value) for value in self.data.reshape(-1))

    def to_lists(self) -> List[List[int]]:
        """Nested list form."""
        return [[int(value) for value in row] for row in self.data]

    def entry(self, row: int, col: int) -> int:
        """Return a single residue."""
        return int(self.data[row, col])

    # Equality ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"Matrix(p={self.field.p}, {self.to_lists()!r})"

    # Arithmetic -------------------------------------------------------

    def _check_field(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise FieldMismatch(
                f"F_{self.field.p} and F_{other.field.p} do not mix"
            )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.shape} by {other.shape}"
            )
        return Matrix(self.field, (self.data @ other.data) % self.field.p)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape}, {other.shape}")
        return Matrix(self.field, self.data + other.data)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(
                f"cannot subtract {self.shape}, {other.shape}"
            )
        return Matrix(self.field, self.data - other.data)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, -self.data)

    @property
    def T(self) -> "Matrix":
        """Transpose."""
        return Matrix(self.field, self.data.T)

    def power(self, exponent: int) -> "Matrix":
        """Return the matrix raised to a nonnegative power."""
        if not self.is_square:
            raise DimensionMismatch("only square matrices have powers")
        result = Matrix.identity(self.field, self.rows)
        for _ in range(exponent):
            result = result @ self
        return result

    def is_zero(self) -> bool:
        """True when every entry is zero."""
        return not bool(self.data.any())

    @property
    def rank(self) -> int:
        """Rank over F_p."""
        return len(_row_reduce(self.data, self.field.p)[1])

    def is_invertible(self) -> bool:
        """True for square matrices of full rank."""
        return self.is_square and self.rank == self.rows

    def inverse(self) -> "Matrix":
        """Return the inverse, raising DimensionMismatch when singular."""
        if not self.is_invertible():
            raise DimensionMismatch(f"matrix {self.shape} is not invertible")
        size = self.rows
        augmented = np.hstack([self.data, np.eye(size, dtype=np.int64)])
        reduced, _ = _row_reduce(augmented, self.field.p)
        return Matrix(self.field, reduced[:size, size:])

    def select_columns(self, indices: Sequence[int]) -> "Matrix":
        """Return the submatrix on the given columns (in order)."""
        return Matrix(
            self.field, self.data[:, np.array(indices, dtype=np.intp)]
        )

    def select_rows(self, indices: Sequence[int]) -> "Matrix":
        """Return the submatrix on the given rows (in order)."""
        return Matrix(
            self.field, self.data[np.array(indices, dtype=np.intp), :]
        )

    # Serialization ----------------------------------------------------

    def to_json(self) -> dict:
        """Return ``{"p", "rows", "cols", "entries"}``."""
        return {
            "p": self.field.p,
            "rows": self.rows,
            "cols": self.cols,
            "entries": list(self.entries()),
        }

    @classmethod
    def from_json(cls, payload: dict) -> "Matrix":
        """Inverse of ``to_json``."""
        field = FieldSpec(int(payload["p"]))
        rows, cols = int(payload["rows"]), int(payload["cols"])
        entries = [int(value) for value in payload["entries"]]
        if len(entries) != rows * cols:
            raise DimensionMismatch(
                f"{len(entries)} entries cannot fill {rows}x{cols}"
            )
        return cls(
            field, np.array(entries, dtype=np.int64).reshape(rows, cols)
        )


def _row_reduce(
    data: np.ndarray, p: int
) -> Tuple[np.ndarray, Tuple[int, ...]]:
    """
    Gauss-Jordan elimination mod p.

    Returns:
        The reduced array (zero rows kept at the bottom) and pivot columns.
    """
    matrix = np.mod(np.array(data, dtype=np.int64), p)
    rows, cols = matrix.shape
    pivots: List[int] = []
    current = 0
    for col in range(cols):
        if current == rows:
            break
        nonzero = np.nonzero(matrix[current:, col])[0]
        if nonzero.size == 0:
            continue
        pivot_row = current + int(nonzero[0])
        if pivot_row != current:
            matrix[[current, pivot_row]] = matrix[[pivot_row, current]]
        inverse = pow(int(matrix[current, col]), -1, p)
        matrix[current] = (matrix[current] * inverse) % p
        factors = matrix[:, col].copy()
        factors[current] = 0
        matrix = np.mod(matrix - np.outer(factors, matrix[current]), p)
        pivots.append(col)
        current += 1
    return matrix, tuple(pivots)


def rref(m: Matrix) -> Matrix:
    """Reduced row echelon form with zero rows dropped."""
    reduced, pivots = _row_reduce(m.data, m.field.p)
    return Matrix(m.field, reduced[: len(pivots)])


@dataclass(frozen=True)
class Subspace:
    """
    A subspace of F_p^ambient_dim.

    Attributes:
        field: The prime field
        ambient_dim: Dimension of the ambient space
        basis: Basis rows in reduced row echelon form, no zero rows
    """

    field: FieldSpec
    ambient_dim: int
    basis: Matrix

    @classmethod
    def span(
        cls, field: FieldSpec, ambient_dim: int, vectors: Matrix
    ) -> "Subspace":
        """Return the row space of *vectors* in canonical form."""
        if vectors.cols != ambient_dim:
            raise DimensionMismatch(
                f"vectors of length {vectors.cols} do not live in "
                f"F_{field.p}^{ambient_dim}"
            )
        if vectors.field != field:
            raise FieldMismatch("spanning vectors over the wrong field")
        return cls(field, ambient_dim, rref(vectors))

    @classmethod
    def zero(cls, field: FieldSpec, ambient_dim: int) -> "Subspace":
        """The zero subspace."""
        return cls(field, ambient_dim, Matrix.zeros(field, 0, ambient_dim))

    @classmethod
    def full(cls, field: FieldSpec, ambient_dim: int) -> "Subspace":
        """The whole ambient space."""
        return cls(field, ambient_dim, Matrix.identity(field, ambient_dim))

    @property
    def dim(self) -> int:
        """Dimension of the subspace."""
        return self.basis.rows

    @property
    def pivots(self) -> Tuple[int, ...]:
        """Leading column of each basis row."""
        return tuple(
            int(np.nonzero(row)[0][0]) for row in self.basis.data
        )

    def contains_vector(self, vector: Sequence[int]) -> bool:
        """True when the ambient vector lies in the subspace."""
        try:
            self.coordinates(Matrix.row(self.field, vector))
        except NotInSubspace:
            return False
        return True

    def contains(self, other: "Subspace") -> bool:
        """True when *other* is a subspace of this one."""
        try:
            self.coordinates(other.basis)
        except NotInSubspace:
            return False
        return True

    def coordinates(self, vectors: Matrix) -> Matrix:
        """
        Express each row of *vectors* in the stored basis.

        Because the basis is in reduced row echelon form, the coordinates
        of a member vector are its entries at the pivot columns.

        Raises:
            NotInSubspace: when some row is not in the span
        """
        if vectors.cols != self.ambient_dim:
            raise DimensionMismatch(
                f"vectors of length {vectors.cols} vs ambient "
                f"{self.ambient_dim}"
            )
        coords = vectors.select_columns(self.pivots)
        if coords @ self.basis != vectors:
            raise NotInSubspace("vector lies outside the subspace")
        return coords


def kernel(m: Matrix) -> Subspace:
    """Return {v : m v = 0} as a canonical subspace of F_p^cols."""
    reduced, pivots = _row_reduce(m.data, m.field.p)
    free = [col for col in range(m.cols) if col not in pivots]
    vectors = np.zeros((len(free), m.cols), dtype=np.int64)
    for index, free_col in enumerate(free):
        vectors[index, free_col] = 1
        for row, pivot in enumerate(pivots):
            vectors[index, pivot] = -reduced[row, free_col]
    return Subspace.span(m.field, m.cols, Matrix(m.field, vectors))


def solve(m: Matrix, b: Matrix) -> Matrix:
    """
    Solve m v = b column by column.

    Free variables are set to zero in rref order, so the answer is
    deterministic.

    Raises:
        DimensionMismatch: when b does not have rows(m) rows
        NoSolution: when some column of b is outside the image of m
    """
    if m.field != b.field:
        raise FieldMismatch("solve over mixed fields")
    if b.rows != m.rows:
        raise DimensionMismatch(
            f"right-hand side has {b.rows} rows, expected {m.rows}"
        )
    augmented = np.hstack([m.data, b.data])
    reduced, pivots = _row_reduce(augmented, m.field.p)
    for row, pivot in enumerate(pivots):
        if pivot >= m.cols:
            raise NoSolution(pivot - m.cols)
    solution = np.zeros((m.cols, b.cols), dtype=np.int64)
    for row, pivot in enumerate(pivots):
        solution[pivot] = reduced[row, m.cols :]
    return Matrix(m.field, solution)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product with the repo-wide row-major index pairing."""
    if a.field != b.field:
        raise FieldMismatch("kron over mixed fields")
    # einsum keeps empty operands well-shaped
    product = np.einsum("ij,kl->ikjl", a.data, b.data).reshape(
        a.rows * b.rows, a.cols * b.cols
    )
    return Matrix(a.field, product)


def hstack(blocks: Sequence[Matrix]) -> Matrix:
    """Concatenate matrices side by side (all with equal row counts)."""
    field = blocks[0].field
    rows = blocks[0].rows
    for block in blocks:
        if block.field != field:
            raise FieldMismatch("hstack over mixed fields")
        if block.rows != rows:
            raise DimensionMismatch("hstack needs equal row counts")
    return Matrix(
        field,
        np.hstack([block.data for block in blocks]),
    )


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    """Stack matrices vertically (all with equal column counts)."""
    field = blocks[0].field
    cols = blocks[0].cols
    for block in blocks:
        if block.field != field:
            raise FieldMismatch("vstack over mixed fields")
        if block.cols != cols:
            raise DimensionMismatch("vstack needs equal column counts")
    return Matrix(
        field,
        np.vstack([block.data for block in blocks]),
    )


def block_diag(blocks: Sequence[Matrix], field: FieldSpec) -> Matrix:
    """Block-diagonal matrix; an empty list yields the 0 x 0 matrix."""
    rows = sum(block.rows for block in blocks)
    cols = sum(block.cols for block in blocks)
    array = np.zeros((rows, cols), dtype=np.int64)
    row_at = col_at = 0
    for block in blocks:
        array[
            row_at : row_at + block.rows, col_at : col_at + block.cols
        ] = block.data
        row_at += block.rows
        col_at += block.cols
    return Matrix(field, array)


def vec(m: Matrix) -> Matrix:
    """Row-major vectorization as a column."""
    return Matrix(m.field, m.data.reshape(-1, 1))


def unvec(column: Matrix, rows: int, cols: int) -> Matrix:
    """Inverse of ``vec`` for a rows x cols shape."""
    if column.rows * column.cols != rows * cols:
        raise DimensionMismatch(f"cannot reshape to {rows}x{cols}")
    return Matrix(column.field, column.data.reshape(rows, cols))


def transpose_permutation(field: FieldSpec, rows: int, cols: int) -> Matrix:
    """Return T with vec(m.T) = T vec(m) for every rows x cols matrix m."""
    array = np.zeros((rows * cols, rows * cols), dtype=np.int64)
    for i in range(rows):
        for j in range(cols):
            array[j * rows + i, i * cols + j] = 1
    return Matrix(field, array)


def pullback_pair(f: Matrix, g: Matrix) -> Subspace:
    """
    Return {(a, b) : f a = g b} inside A (+) B.

    Raises:
        DimensionMismatch: when f and g have different codomains
    """
    if f.rows != g.rows:
        raise DimensionMismatch(
            f"codomains differ: {f.rows} vs {g.rows}"
        )
    return kernel(hstack([f, -g]))


def quotient_map(whole: int, sub: Subspace) -> Matrix:
    """
    Surjection F_p^whole -> F_p^(whole - dim sub) with kernel exactly sub.

    The complement is spanned by the non-pivot coordinates of sub's rref
    basis; the row for non-pivot column j is e_j - sum_i basis[i][j] e_pi.
    """
    if sub.ambient_dim != whole:
        raise DimensionMismatch(
            f"subspace of F^{sub.ambient_dim} in F^{whole}"
        )
    pivots = sub.pivots
    free = [col for col in range(whole) if col not in pivots]
    array = np.zeros((len(free), whole), dtype=np.int64)
    for index, free_col in enumerate(free):
        array[index, free_col] = 1
        for row, pivot in enumerate(pivots):
            array[index, pivot] -= sub.basis.data[row, free_col]
    return Matrix(sub.field, array)


def section_map(whole: int, sub: Subspace) -> Matrix:
    """Right inverse of ``quotient_map``: columns e_j for non-pivot j."""
    pivots = sub.pivots
    free = [col for col in range(whole) if col not in pivots]
    array = np.zeros((whole, len(free)), dtype=np.int64)
    for index, free_col in enumerate(free):
        array[free_col, index] = 1
    return Matrix(sub.field, array)


@dataclass(frozen=True)
class SubspaceRelation:
    """Lattice data for a pair of subspaces."""

    meet: Subspace
    join: Subspace
    first_in_second: bool
    second_in_first: bool


def subspace_ops(u: Subspace, v: Subspace) -> SubspaceRelation:
    """Meet, join and containment flags of two subspaces."""
    if u.ambient_dim != v.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {u.ambient_dim} vs {v.ambient_dim}"
        )
    if u.field != v.field:
        raise FieldMismatch("subspaces over different fields")
    whole = u.ambient_dim
    stacked = vstack([quotient_map(whole, u), quotient_map(whole, v)])
    meet = kernel(stacked)
    join = Subspace.span(u.field, whole, vstack([u.basis, v.basis]))
    return SubspaceRelation(
        meet=meet,
        join=join,
        first_in_second=v.contains(u),
        second_in_first=u.contains(v),
    )


def image(m: Matrix) -> Subspace:
    """Column space of *m* as a subspace of F_p^rows."""
    return Subspace.span(m.field, m.rows, m.T)


def iter_vectors(field: FieldSpec, dim: int) -> Iterable[Tuple[int, ...]]:
    """Enumerate F_p^dim in lexicographic order (for brute-force oracles)."""
    if dim == 0:
        yield ()
        return
    for head in range(field.p):
        for tail in iter_vectors(field, dim - 1):
            yield (head,) + tail
