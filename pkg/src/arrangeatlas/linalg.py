"""Exact rational linear algebra with canonical subspace representations.

Everything is computed over the field of rationals (Python ``Fraction``), so
equality questions are decided exactly, never numerically. A ``Subspace`` is
stored as the reduced row echelon basis of its row space. The reduced form is
unique, which gives the central guarantee of this module: two subspaces are
equal as point sets if and only if they are equal as values.

All types are immutable and hashable; all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from . import _kernel
from .errors import DimensionMismatchError

Rational = Fraction
RationalLike = Union[Fraction, int, str]
Vector = tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def rational(value: RationalLike) -> Fraction:
    """Coerce an int, string ('3', '-3/2') or Fraction to a Fraction.

    Floats are rejected: exactness is the point of this library.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def vector(values: Iterable[RationalLike]) -> Vector:
    """Coerce an iterable of rational-likes to a Vector."""
    return tuple(rational(v) for v in values)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatchError(
            f"dot product of lengths {len(u)} and {len(v)}"
        )
    return sum((a * b for a, b in zip(u, v)), _ZERO)


@dataclass(frozen=True)
class Matrix:
    """Dense rational matrix; ``entries`` is the row-major grid."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(
        cls, rows: Iterable[Iterable[RationalLike]], cols: int | None = None
    ) -> Matrix:
        """Build a matrix from an iterable of rows, coercing entries.

        ``cols`` is required when ``rows`` is empty and optional otherwise.
        """
        row_tuples = [vector(row) for row in rows]
        if row_tuples:
            width = len(row_tuples[0])
            if cols is not None and cols != width:
                raise DimensionMismatchError(
                    f"declared {cols} columns but rows have {width}"
                )
            if any(len(r) != width for r in row_tuples):
                raise DimensionMismatchError("ragged rows")
            cols = width
        elif cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        flat = tuple(e for row in row_tuples for e in row)
        return cls(len(row_tuples), cols, flat)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        flat = tuple(
            _ONE if i == j else _ZERO for i in range(n) for j in range(n)
        )
        return cls(n, n, flat)

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_list(self) -> list[Vector]:
        return [self.row(i) for i in range(self.rows)]

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def transpose(self) -> Matrix:
        flat = tuple(
            self.entries[i * self.cols + j]
            for j in range(self.cols)
            for i in range(self.rows)
        )
        return Matrix(self.cols, self.rows, flat)

    def stack(self, other: Matrix) -> Matrix:
        """Vertical concatenation."""
        if self.cols != other.cols:
            raise DimensionMismatchError(
                f"stacking {self.cols}-column and {other.cols}-column matrices"
            )
        return Matrix(
            self.rows + other.rows, self.cols, self.entries + other.entries
        )

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"multiplying {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        cols = [other.row(k) for k in range(other.rows)]
        flat = []
        for i in range(self.rows):
            left = self.row(i)
            acc = [_ZERO] * other.cols
            for k, coeff in enumerate(left):
                if coeff:
                    row_k = cols[k]
                    for j in range(other.cols):
                        acc[j] += coeff * row_k[j]
            flat.extend(acc)
        return Matrix(self.rows, other.cols, tuple(flat))

    def apply(self, v: Sequence[Fraction]) -> Vector:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise DimensionMismatchError(
                f"applying {self.rows}x{self.cols} matrix to length-{len(v)} vector"
            )
        return tuple(dot(self.row(i), v) for i in range(self.rows))


def _rref_with_pivots(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    reduced, pivots = _kernel.rref(m.row_list(), m.cols)
    flat = tuple(e for row in reduced for e in row)
    return Matrix(m.rows, m.cols, flat), pivots


def rref(m: Matrix) -> Matrix:
    """The unique reduced row echelon form of ``m`` (same shape)."""
    return _rref_with_pivots(m)[0]


def rank(m: Matrix) -> int:
    return len(_rref_with_pivots(m)[1])


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of Q^ambient_dim in canonical form.

    ``basis`` rows are a basis of the subspace in reduced row echelon form
    with no zero rows, so equality of subspaces is structural equality. Use
    :meth:`span` to construct one from arbitrary spanning vectors.
    """

    ambient_dim: int
    basis: Matrix

    def __post_init__(self):
        if self.basis.cols != self.ambient_dim:
            raise DimensionMismatchError(
                f"basis has {self.basis.cols} columns in ambient dimension "
                f"{self.ambient_dim}"
            )
        if not _is_canonical_basis(self.basis):
            raise ValueError(
                "subspace basis must be a reduced row echelon basis; "
                "use Subspace.span to canonicalize"
            )

    @classmethod
    def span(
        cls, ambient_dim: int, rows: Iterable[Iterable[RationalLike]]
    ) -> Subspace:
        """Subspace spanned by the given vectors."""
        m = Matrix.from_rows(rows, cols=ambient_dim)
        if m.cols != ambient_dim:
            raise DimensionMismatchError(
                f"spanning vectors of length {m.cols} in dimension {ambient_dim}"
            )
        reduced, pivots = _rref_with_pivots(m)
        kept = [reduced.row(i) for i in range(len(pivots))]
        return cls(ambient_dim, Matrix.from_rows(kept, cols=ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, Matrix(0, ambient_dim, ()))

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, Matrix.identity(ambient_dim))

    @property
    def rank(self) -> int:
        """Dimension of the subspace."""
        return self.basis.rows

    def basis_rows(self) -> list[Vector]:
        return self.basis.row_list()

    def is_zero(self) -> bool:
        return self.basis.rows == 0

    def is_full(self) -> bool:
        return self.basis.rows == self.ambient_dim


def _is_canonical_basis(m: Matrix) -> bool:
    # pivot columns strictly increase, pivots are 1 and alone in their column
    last_pivot = -1
    pivot_cols = []
    for i in range(m.rows):
        row = m.row(i)
        pivot = next((j for j, e in enumerate(row) if e), None)
        if pivot is None or pivot <= last_pivot or row[pivot] != _ONE:
            return False
        pivot_cols.append(pivot)
        last_pivot = pivot
    for i, p in enumerate(pivot_cols):
        for k in range(m.rows):
            if k != i and m.entry(k, p) != 0:
                return False
    return True


def canonical_key(s: Subspace) -> tuple[int, tuple[Fraction, ...]]:
    """Sort key ordering subspaces by rank, then basis entries."""
    return (s.rank, s.basis.entries)


def kernel(m: Matrix) -> Subspace:
    """Null space {v : m v = 0} as a subspace of Q^cols."""
    reduced, pivots = _rref_with_pivots(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    rows = []
    for f in free:
        v = [_ZERO] * m.cols
        v[f] = _ONE
        for k, p in enumerate(pivots):
            v[p] = -reduced.entry(k, f)
        rows.append(v)
    return Subspace.span(m.cols, rows)


def _normal_matrix(s: Subspace) -> Matrix:
    """Rows spanning the orthogonal complement of ``s``."""
    return kernel(s.basis).basis


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Largest subspace contained in both operands."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(
            f"intersecting subspaces of Q^{a.ambient_dim} and Q^{b.ambient_dim}"
        )
    if a == b:
        return a
    return kernel(_normal_matrix(a).stack(_normal_matrix(b)))


@dataclass(frozen=True)
class LinearMap:
    """Linear map Q^source_dim -> Q^target_dim; ``matrix`` is target x source."""

    source_dim: int
    target_dim: int
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.rows != self.target_dim or self.matrix.cols != self.source_dim:
            raise DimensionMismatchError(
                f"map Q^{self.source_dim} -> Q^{self.target_dim} needs a "
                f"{self.target_dim}x{self.source_dim} matrix, got "
                f"{self.matrix.rows}x{self.matrix.cols}"
            )

    @classmethod
    def from_rows(
        cls, source_dim: int, target_dim: int, rows: Iterable[Iterable[RationalLike]]
    ) -> LinearMap:
        return cls(source_dim, target_dim, Matrix.from_rows(rows, cols=source_dim))

    def apply(self, v: Sequence[Fraction]) -> Vector:
        return self.matrix.apply(v)

    def image(self, s: Subspace) -> Subspace:
        """Image subspace T(s) inside the target space."""
        if s.ambient_dim != self.source_dim:
            raise DimensionMismatchError(
                f"image of a subspace of Q^{s.ambient_dim} under a map from "
                f"Q^{self.source_dim}"
            )
        rows = [self.apply(row) for row in s.basis_rows()]
        return Subspace.span(self.target_dim, rows)


def preimage(t: LinearMap, s: Subspace) -> Subspace:
    """Full preimage {v : T(v) in s}; always contains the kernel of T."""
    if s.ambient_dim != t.target_dim:
        raise DimensionMismatchError(
            f"preimage of a subspace of Q^{s.ambient_dim} under a map into "
            f"Q^{t.target_dim}"
        )
    normals = _normal_matrix(s)
    if normals.rows == 0:
        return Subspace.full(t.source_dim)
    return kernel(normals @ t.matrix)


def contains_vector(s: Subspace, v: Sequence[Fraction]) -> bool:
    """Membership test v in s, by reduction against the canonical basis."""
    if len(v) != s.ambient_dim:
        raise DimensionMismatchError(
            f"length-{len(v)} vector in subspace of Q^{s.ambient_dim}"
        )
    residual = list(v)
    for i in range(s.basis.rows):
        row = s.basis.row(i)
        pivot = next(j for j, e in enumerate(row) if e)
        f = residual[pivot]
        if f:
            for j in range(pivot, s.ambient_dim):
                residual[j] -= f * row[j]
    return not any(residual)


def subspace_leq(a: Subspace, b: Subspace) -> bool:
    """Inclusion a <= b of subspaces of the same ambient space."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(
            f"comparing subspaces of Q^{a.ambient_dim} and Q^{b.ambient_dim}"
        )
    if a.rank > b.rank:
        return False
    return all(contains_vector(b, row) for row in a.basis_rows())


# A subspace's reduced basis doubles as a coordinate frame: frame coordinates
# y correspond to the ambient vector y . frame. Because the frame is in
# reduced form, lowering just reads off the pivot columns.


def frame_lift_vector(frame: Matrix, y: Sequence[Fraction]) -> Vector:
    """Frame coordinates to ambient coordinates: y . frame."""
    if len(y) != frame.rows:
        raise DimensionMismatchError(
            f"frame has {frame.rows} coordinates, got {len(y)}"
        )
    out = [_ZERO] * frame.cols
    for k, coeff in enumerate(y):
        if coeff:
            row = frame.row(k)
            for j in range(frame.cols):
                out[j] += coeff * row[j]
    return tuple(out)


def frame_pivots(frame: Matrix) -> list[int]:
    return [
        next(j for j, e in enumerate(frame.row(k)) if e)
        for k in range((frame.rows))
    ]


def frame_lower_vector(frame: Matrix, v: Sequence[Fraction]) -> Vector:
    """Ambient vector in the frame's row space back to frame coordinates."""
    if len(v) != frame.cols:
        raise DimensionMismatchError(
            f"frame is ambient dimension {frame.cols}, vector has length {len(v)}"
        )
    y = tuple(v[p] for p in frame_pivots(frame))
    if frame_lift_vector(frame, y) != tuple(v):
        raise DimensionMismatchError("vector does not lie in the frame's span")
    return y


def frame_lift_subspace(frame: Matrix, s: Subspace) -> Subspace:
    return Subspace.span(
        frame.cols, [frame_lift_vector(frame, row) for row in s.basis_rows()]
    )


def frame_lower_subspace(frame: Matrix, s: Subspace) -> Subspace:
    return Subspace.span(
        frame.rows, [frame_lower_vector(frame, row) for row in s.basis_rows()]
    )
