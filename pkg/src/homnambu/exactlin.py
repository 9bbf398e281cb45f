"""Exact rational linear algebra.

Everything here works over :class:`fractions.Fraction`; there is no
floating point anywhere in the package.  The elimination routine keeps a
sparse, fully reduced row basis and is therefore independent of the order
in which constraint rows arrive, which is what makes solver output
canonical.

Dense matrices are fine up to an ambient dimension of about 12 and roughly
1000 unknowns; beyond that the pure Python elimination gets slow.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .errors import DimensionError

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def scalar(x) -> Fraction:
    """Convert ``x`` to an exact rational.

    Accepts ints, Fractions and strings such as ``"3/5"``; floats are
    refused because they would silently introduce rounding.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(scalar(v) for v in values)


def unit_vector(dim: int, i: int) -> tuple[Fraction, ...]:
    return tuple(ONE if j == i else ZERO for j in range(dim))


def zero_vector(dim: int) -> tuple[Fraction, ...]:
    return (ZERO,) * dim


class Matrix:
    """Immutable dense matrix of Fractions.

    Acts on column vectors: ``M.apply(v)[i] == sum(M[i, j] * v[j])``.
    """

    __slots__ = ("_rows", "_nrows", "_ncols", "_hash")

    def __init__(self, rows: Sequence[Sequence], cols: int | None = None):
        data = tuple(vector(r) for r in rows)
        if cols is None:
            if not data:
                raise DimensionError("cannot infer column count of an empty matrix")
            cols = len(data[0])
        for r in data:
            if len(r) != cols:
                raise DimensionError("ragged matrix rows")
        self._rows = data
        self._nrows = len(data)
        self._ncols = cols
        self._hash = None

    # construction helpers
    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls([[ZERO] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([unit_vector(n, i) for i in range(n)], n)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        vals = vector(values)
        n = len(vals)
        return cls([[vals[i] if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        cols = [vector(c) for c in columns]
        if rows is None:
            if not cols:
                raise DimensionError("cannot infer row count without columns")
            rows = len(cols[0])
        return cls([[c[i] for c in cols] for i in range(rows)], len(cols))

    @classmethod
    def from_flat(cls, values: Sequence, n: int) -> "Matrix":
        """Square matrix from a row-major flat sequence of length ``n*n``."""
        vals = vector(values)
        if len(vals) != n * n:
            raise DimensionError(f"expected {n * n} entries, got {len(vals)}")
        return cls([vals[i * n:(i + 1) * n] for i in range(n)], n)

    # accessors
    @property
    def rows(self) -> int:
        return self._nrows

    @property
    def cols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return self._nrows, self._ncols

    @property
    def entries(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def __getitem__(self, key):
        i, j = key
        if not (0 <= i < self._nrows and 0 <= j < self._ncols):
            raise IndexError(f"entry {key} out of bounds for shape {self.shape}")
        return self._rows[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    def flatten(self) -> tuple[Fraction, ...]:
        return tuple(x for r in self._rows for x in r)

    def is_square(self) -> bool:
        return self._nrows == self._ncols

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    # arithmetic
    def _check_same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)],
                      self._ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)],
                      self._ncols)

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self._rows], self._ncols)

    def scale(self, c) -> "Matrix":
        c = scalar(c)
        return Matrix([[c * a for a in r] for r in self._rows], self._ncols)

    def __mul__(self, c) -> "Matrix":
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self._ncols != other._nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other._ncols)]
        return Matrix([[sum((a * b for a, b in zip(r, c) if a and b), ZERO) for c in cols]
                       for r in self._rows], other._ncols)

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        v = vector(v)
        if len(v) != self._ncols:
            raise DimensionError(f"vector of length {len(v)} for matrix with {self._ncols} columns")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in self._rows)

    def transpose(self) -> "Matrix":
        return Matrix([self.column(j) for j in range(self._ncols)], self._nrows)

    def power(self, k: int) -> "Matrix":
        if not self.is_square():
            raise DimensionError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative matrix power")
        result = Matrix.identity(self._nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def rank(self) -> int:
        return len(_reduce_rows(_sparse_rows(self), self._ncols))

    # protocol
    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, self._rows))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._rows)
        return f"Matrix([{body}])"


EndoMap = Matrix


# ---------------------------------------------------------------------------
# sparse elimination core
# ---------------------------------------------------------------------------

def _sparse_rows(m: Matrix) -> list[dict[int, Fraction]]:
    return [{j: x for j, x in enumerate(r) if x} for r in m.entries]


class RowReducer:
    """Incrementally maintained reduced row echelon basis of a row space.

    Rows are sparse ``{column: value}`` dicts.  After every insertion the
    stored rows are pivot-normalised and fully reduced, so the final set
    depends only on the row space, never on insertion order.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._pivots: dict[int, dict[int, Fraction]] = {}

    def add(self, row: dict[int, Fraction]) -> bool:
        """Insert a row; return True if it enlarged the row space."""
        r = {j: x for j, x in row.items() if x}
        for j in r:
            if not 0 <= j < self.ncols:
                raise DimensionError(f"column {j} outside [0, {self.ncols})")
        pivots = self._pivots
        # eliminate existing pivot columns; pivot rows have no other pivot
        # columns, so one pass over the current support suffices
        for p in sorted(j for j in r if j in pivots):
            c = r.get(p)
            if not c:
                continue
            for j, x in pivots[p].items():
                v = r.get(j, ZERO) - c * x
                if v:
                    r[j] = v
                else:
                    r.pop(j, None)
        if not r:
            return False
        p = min(r)
        lead = r[p]
        if lead != 1:
            r = {j: x / lead for j, x in r.items()}
        for q, prow in pivots.items():
            c = prow.get(p)
            if c:
                for j, x in r.items():
                    v = prow.get(j, ZERO) - c * x
                    if v:
                        prow[j] = v
                    else:
                        prow.pop(j, None)
        pivots[p] = r
        return True

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def pivot_rows(self) -> list[tuple[int, dict[int, Fraction]]]:
        return sorted(self._pivots.items())

    def kernel_vectors(self) -> list[tuple[Fraction, ...]]:
        """Kernel basis: one vector per free column, free variable set to 1."""
        pivots = self._pivots
        out = []
        for f in range(self.ncols):
            if f in pivots:
                continue
            v = [ZERO] * self.ncols
            v[f] = ONE
            for p, prow in pivots.items():
                c = prow.get(f)
                if c:
                    v[p] = -c
            out.append(tuple(v))
        return out


def _reduce_rows(rows: Iterable[dict[int, Fraction]], ncols: int) -> list[tuple[int, dict]]:
    red = RowReducer(ncols)
    for r in rows:
        red.add(r)
    return red.pivot_rows()


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

class Subspace:
    """Subspace of Q^n held by its canonical reduced echelon basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: Sequence[Sequence] = ()):
        self.ambient_dim = ambient_dim
        self.basis = _canonical_basis(ambient_dim, basis)

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        return cls(ambient_dim, list(vectors))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, [unit_vector(ambient_dim, i) for i in range(ambient_dim)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(v) if x) for v in self.basis)

    def contains(self, v: Sequence) -> bool:
        v = vector(v)
        if len(v) != self.ambient_dim:
            raise DimensionError("vector length does not match ambient dimension")
        rest = list(v)
        for b, p in zip(self.basis, self.pivots()):
            c = rest[p]
            if c:
                rest = [x - c * y for x, y in zip(rest, b)]
        return not any(rest)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


def _canonical_basis(ncols: int, vectors) -> tuple[tuple[Fraction, ...], ...]:
    rows = []
    for v in vectors:
        v = vector(v)
        if len(v) != ncols:
            raise DimensionError(f"vector of length {len(v)} in ambient dimension {ncols}")
        rows.append({j: x for j, x in enumerate(v) if x})
    out = []
    for _, prow in _reduce_rows(rows, ncols):
        out.append(tuple(prow.get(j, ZERO) for j in range(ncols)))
    return tuple(out)


def rref(m: Matrix) -> Matrix:
    """Unique reduced row echelon form; zero rows are moved to the bottom."""
    pivot_rows = _reduce_rows(_sparse_rows(m), m.cols)
    rows = [[prow.get(j, ZERO) for j in range(m.cols)] for _, prow in pivot_rows]
    rows.extend([[ZERO] * m.cols for _ in range(m.rows - len(rows))])
    return Matrix(rows, m.cols)


def rank(m: Matrix) -> int:
    return m.rank()


def kernel_from_rows(rows: Iterable[dict[int, Fraction]], ncols: int) -> Subspace:
    """Kernel of a system given as sparse rows over ``ncols`` unknowns."""
    red = RowReducer(ncols)
    for r in rows:
        red.add(r)
    return Subspace(ncols, red.kernel_vectors())


def kernel_basis(m: Matrix) -> Subspace:
    """Canonical basis of ``{v : M v = 0}``."""
    return kernel_from_rows(_sparse_rows(m), m.cols)


def solve_block_system(blocks: Sequence[tuple[Matrix, range]], unknowns: int) -> Subspace:
    """Kernel of a stacked system whose blocks each touch a range of unknowns.

    Each block is ``(matrix, variable_range)``; column ``j`` of the matrix
    multiplies unknown ``variable_range[j]``.
    """
    rows = []
    for m, var_range in blocks:
        var_range = range(var_range.start, var_range.stop) if isinstance(var_range, range) \
            else range(*var_range)
        if m.cols != len(var_range):
            raise DimensionError(
                f"block has {m.cols} columns but its variable range has {len(var_range)}")
        if var_range.start < 0 or var_range.stop > unknowns:
            raise DimensionError(f"variable range {var_range} outside [0, {unknowns})")
        for r in m.entries:
            rows.append({var_range[j]: x for j, x in enumerate(r) if x})
    return kernel_from_rows(rows, unknowns)
