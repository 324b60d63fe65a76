"""Dense matrices over the rationals and the elimination kernels built on them."""

import logging
from fractions import Fraction
from numbers import Rational

from errors import InternalConsistencyError, ShapeMismatch

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


def rational(value):
    """
    Coerce an exact scalar to a Fraction.

    :param value: an int, a Fraction or any numbers.Rational.
    :return: the value as a Fraction in lowest terms.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or not isinstance(value, Rational):
        raise TypeError(f"Expected an exact rational, got {type(value).__name__}: {value!r}")
    return Fraction(value)


def format_rational(value):
    """Canonical text form: lowest terms, sign on the numerator, no '/1'."""
    return str(rational(value))


class ExactMatrix:
    """
    Immutable dense matrix of Fractions.

    Empty shapes (0 rows or 0 columns) are allowed, so the number of columns
    is passed explicitly whenever there are no rows to infer it from.
    """

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, entries, rows=None, cols=None):
        grid = tuple(tuple(rational(x) for x in row) for row in entries)
        if rows is None:
            rows = len(grid)
        if cols is None:
            if not grid:
                raise ShapeMismatch("Column count is required for a matrix without rows")
            cols = len(grid[0])
        if len(grid) != rows or any(len(row) != cols for row in grid):
            raise ShapeMismatch(f"Entries do not form a {rows}x{cols} grid")
        self.rows = rows
        self.cols = cols
        self._entries = grid

    # Constructors

    @classmethod
    def zeros(cls, rows, cols):
        return cls(((ZERO,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, size):
        return cls.diagonal([ONE] * size)

    @classmethod
    def diagonal(cls, values):
        values = [rational(v) for v in values]
        size = len(values)
        return cls(
            ((values[i] if i == j else ZERO for j in range(size)) for i in range(size)),
            size,
            size,
        )

    @classmethod
    def from_columns(cls, columns, rows):
        """Build a matrix whose j-th column is the j-th sequence in ``columns``."""
        columns = [tuple(col) for col in columns]
        return cls(((col[i] for col in columns) for i in range(rows)), rows, len(columns))

    @classmethod
    def hstack(cls, blocks, rows):
        blocks = list(blocks)
        for block in blocks:
            if block.rows != rows:
                raise ShapeMismatch(f"Cannot place a {block.rows}-row block in a {rows}-row strip")
        cols = sum(block.cols for block in blocks)
        return cls(
            (tuple(x for block in blocks for x in block._entries[i]) for i in range(rows)),
            rows,
            cols,
        )

    @classmethod
    def vstack(cls, blocks, cols):
        blocks = list(blocks)
        for block in blocks:
            if block.cols != cols:
                raise ShapeMismatch(f"Cannot stack a {block.cols}-column block in a {cols}-column strip")
        rows = sum(block.rows for block in blocks)
        return cls((row for block in blocks for row in block._entries), rows, cols)

    @classmethod
    def block(cls, grid, row_heights, col_widths):
        """
        Assemble a matrix from a 2-D grid of blocks.

        :param grid: list of block rows, each a list of ExactMatrix (or None for zero).
        :param row_heights: height of every block row.
        :param col_widths: width of every block column.
        """
        strips = []
        for blocks, height in zip(grid, row_heights):
            filled = [
                cls.zeros(height, width) if blk is None else blk
                for blk, width in zip(blocks, col_widths)
            ]
            for blk, width in zip(filled, col_widths):
                if blk.cols != width:
                    raise ShapeMismatch(f"Block of width {blk.cols} in a column of width {width}")
            strips.append(cls.hstack(filled, height))
        return cls.vstack(strips, sum(col_widths))

    # Access

    @property
    def shape(self):
        return self.rows, self.cols

    @property
    def entries(self):
        return self._entries

    def __getitem__(self, index):
        i, j = index
        return self._entries[i][j]

    def row(self, i):
        return self._entries[i]

    def column(self, j):
        return tuple(row[j] for row in self._entries)

    def submatrix(self, row_start, row_stop, col_start, col_stop):
        return ExactMatrix(
            (row[col_start:col_stop] for row in self._entries[row_start:row_stop]),
            row_stop - row_start,
            col_stop - col_start,
        )

    def select_rows(self, indices):
        indices = list(indices)
        return ExactMatrix((self._entries[i] for i in indices), len(indices), self.cols)

    def select_columns(self, indices):
        indices = list(indices)
        return ExactMatrix(
            (tuple(row[j] for j in indices) for row in self._entries), self.rows, len(indices)
        )

    @property
    def T(self):
        return ExactMatrix(
            ((self._entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
            self.cols,
            self.rows,
        )

    def is_zero(self):
        return not any(x for row in self._entries for x in row)

    # Arithmetic

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise ShapeMismatch(f"Shapes {self.shape} and {other.shape} differ")

    def __add__(self, other):
        self._check_same_shape(other)
        return ExactMatrix(
            (tuple(x + y for x, y in zip(r, s)) for r, s in zip(self._entries, other._entries)),
            self.rows,
            self.cols,
        )

    def __sub__(self, other):
        self._check_same_shape(other)
        return ExactMatrix(
            (tuple(x - y for x, y in zip(r, s)) for r, s in zip(self._entries, other._entries)),
            self.rows,
            self.cols,
        )

    def __neg__(self):
        return ExactMatrix((tuple(-x for x in row) for row in self._entries), self.rows, self.cols)

    def scale(self, factor):
        factor = rational(factor)
        return ExactMatrix(
            (tuple(factor * x for x in row) for row in self._entries), self.rows, self.cols
        )

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ShapeMismatch(f"Cannot multiply {self.shape} by {other.shape}")
        other_columns = other.T._entries
        result = []
        for row in self._entries:
            support = [(k, v) for k, v in enumerate(row) if v]
            if not support:
                result.append((ZERO,) * other.cols)
                continue
            result.append(tuple(sum((v * col[k] for k, v in support), ZERO) for col in other_columns))
        return ExactMatrix(result, self.rows, other.cols)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.rows, self.cols, self._entries))

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self._entries)
        return f"ExactMatrix({self.rows}x{self.cols}: [{body}])"

    def to_strings(self):
        return [[format_rational(x) for x in row] for row in self._entries]


def rref(matrix):
    """
    Reduced row-echelon form over the rationals.

    Args:
        matrix (ExactMatrix): the matrix to reduce.

    Returns:
        tuple: (reduced ExactMatrix, list of pivot columns, rank)
    """
    grid = [list(row) for row in matrix.entries]
    pivots = []
    pivot_row = 0
    for col in range(matrix.cols):
        if pivot_row == matrix.rows:
            break
        source = next((r for r in range(pivot_row, matrix.rows) if grid[r][col]), None)
        if source is None:
            continue
        grid[pivot_row], grid[source] = grid[source], grid[pivot_row]
        lead = grid[pivot_row][col]
        if lead != ONE:
            grid[pivot_row] = [x / lead for x in grid[pivot_row]]
        pivot_values = grid[pivot_row]
        for r in range(matrix.rows):
            factor = grid[r][col]
            if r != pivot_row and factor:
                grid[r] = [x - factor * y for x, y in zip(grid[r], pivot_values)]
        pivots.append(col)
        pivot_row += 1
    return ExactMatrix(grid, matrix.rows, matrix.cols), pivots, len(pivots)


def rank(matrix):
    return rref(matrix)[2]


def right_kernel_basis(matrix):
    """
    Canonical basis of {x : Mx = 0}, one column per free column of the RREF.

    Column f has a 1 in free coordinate f, zeros in the other free
    coordinates and the back-substituted values in the pivot coordinates.
    Columns are ordered by ascending free-column index.
    """
    reduced, pivots, _ = rref(matrix)
    pivot_set = set(pivots)
    free = [c for c in range(matrix.cols) if c not in pivot_set]
    columns = []
    for f in free:
        vector = [ZERO] * matrix.cols
        vector[f] = ONE
        for i, c in enumerate(pivots):
            vector[c] = -reduced[i, f]
        columns.append(vector)
    return ExactMatrix.from_columns(columns, matrix.cols)


def determinant(matrix):
    """Exact determinant by fraction elimination."""
    if matrix.rows != matrix.cols:
        raise ShapeMismatch(f"Determinant of a non-square {matrix.shape} matrix")
    grid = [list(row) for row in matrix.entries]
    size = matrix.rows
    det = ONE
    for col in range(size):
        source = next((r for r in range(col, size) if grid[r][col]), None)
        if source is None:
            return ZERO
        if source != col:
            grid[col], grid[source] = grid[source], grid[col]
            det = -det
        lead = grid[col][col]
        det *= lead
        for r in range(col + 1, size):
            factor = grid[r][col] / lead
            if factor:
                grid[r] = [x - factor * y for x, y in zip(grid[r], grid[col])]
    return det


def inverse(matrix):
    """Inverse of a square nonsingular matrix via RREF of [M | I]."""
    if matrix.rows != matrix.cols:
        raise ShapeMismatch(f"Inverse of a non-square {matrix.shape} matrix")
    size = matrix.rows
    augmented = ExactMatrix.hstack([matrix, ExactMatrix.identity(size)], size)
    reduced, pivots, _ = rref(augmented)
    if pivots[:size] != list(range(size)):
        raise InternalConsistencyError("Matrix is singular and has no inverse")
    return reduced.submatrix(0, size, size, 2 * size)


class EchelonSpan:
    """
    Span of vectors of a fixed length, kept in echelon form so that membership
    tests and rank growth are cheap.

    Stored rows are reduced against all earlier pivots, so reducing a new
    vector in insertion order clears every pivot coordinate.
    """

    def __init__(self, length):
        self.length = length
        self._rows = []

    @property
    def rank(self):
        return len(self._rows)

    def _reduce(self, vector):
        residual = [rational(x) for x in vector]
        if len(residual) != self.length:
            raise ShapeMismatch(f"Vector of length {len(residual)} in a span of length {self.length}")
        for pivot, row in self._rows:
            factor = residual[pivot]
            if factor:
                residual = [x - factor * y for x, y in zip(residual, row)]
        return residual

    def contains(self, vector):
        return not any(self._reduce(vector))

    def add(self, vector):
        """Add ``vector``; return True when it increased the rank."""
        residual = self._reduce(vector)
        pivot = next((i for i, x in enumerate(residual) if x), None)
        if pivot is None:
            return False
        lead = residual[pivot]
        self._rows.append((pivot, [x / lead for x in residual]))
        return True
