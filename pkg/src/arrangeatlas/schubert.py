"""Coordinate model of the compactification attached to an arrangement.

An essential arrangement with normals l_1..l_n embeds its ambient space into
n-fold projective-line coordinates via v -> (l_1(v), .., l_n(v)). Points of
the closure are stored with one entry per hyperplane, each entry either a
rational or the infinity marker. The finite support of a point (the indices
with finite entries) is always a flat, and the whole geometry of the closure
is readable from supports: orbits, stabilizers, distinguished points,
invariant neighborhoods and slices all reduce to exact linear algebra plus
support bookkeeping, which is what this module implements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .arrangement import (
    Arrangement,
    FlatLattice,
    MatroidFlat,
    Restriction,
    flats,
    intersection_subspace,
    is_essential,
    restriction,
)
from .errors import (
    DimensionMismatchError,
    InvalidMorphismError,
    NonMemberError,
    NotAFlatError,
    NotEssentialError,
)
from .linalg import (
    LinearMap,
    Matrix,
    Subspace,
    Vector,
    preimage,
    rational,
    vector,
)
from . import _kernel
from .pha import check_arrangement_morphism


class _Infinity:
    """The point at infinity of a projective line; a singleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"


INF = _Infinity()

Coord = Union[Fraction, _Infinity]


def coordinate(value) -> Coord:
    """Coerce a rational-like or the spelling 'inf' to a coordinate."""
    if isinstance(value, _Infinity):
        return INF
    if isinstance(value, str) and value.strip() == "inf":
        return INF
    return rational(value)


@dataclass(frozen=True)
class ExtendedPoint:
    """A tuple of coordinates, each a rational or infinity."""

    coords: tuple[Coord, ...]

    @classmethod
    def of(cls, values: Iterable) -> ExtendedPoint:
        return cls(tuple(coordinate(v) for v in values))

    def __len__(self) -> int:
        return len(self.coords)

    @property
    def finite_support(self) -> frozenset[int]:
        """1-based indices of the finite coordinates."""
        return frozenset(
            i for i, c in enumerate(self.coords, start=1) if c is not INF
        )

    def __repr__(self) -> str:
        inner = ",".join(
            "inf" if c is INF else str(c) for c in self.coords
        )
        return f"({inner})"


@dataclass(frozen=True)
class OrbitDescriptor:
    """Orbit invariant: support flat plus the coordinate image of the space.

    Two member points lie in the same orbit exactly when their descriptors
    are equal. ``affine_part`` is the image of the ambient space under the
    support-indexed coordinates, a subspace of Q^|flat_indices| (coordinates
    ordered by ascending hyperplane index).
    """

    flat_indices: frozenset[int]
    affine_part: Subspace


class SchubertVariety:
    """Closure of an essentially-arranged vector space in projective lines.

    The flat lattice is computed eagerly at construction; afterwards every
    query is read-only.
    """

    def __init__(self, arrangement: Arrangement):
        if not is_essential(arrangement):
            raise NotEssentialError(
                "the compactification is defined for essential arrangements only"
            )
        self.arrangement = arrangement
        self.lattice: FlatLattice = flats(arrangement)

    @property
    def ambient_dim(self) -> int:
        return self.arrangement.ambient_dim

    @property
    def n(self) -> int:
        return self.arrangement.n

    def __repr__(self) -> str:
        return (
            f"SchubertVariety(d={self.ambient_dim}, n={self.n}, "
            f"flats={len(self.lattice)})"
        )

    def flat(self, indices: Iterable[int]) -> MatroidFlat:
        return self.lattice.flat(indices)

    def _check_length(self, x: ExtendedPoint) -> None:
        if len(x) != self.n:
            raise DimensionMismatchError(
                f"point has {len(x)} coordinates, arrangement has {self.n}"
            )

    def _require_member(self, x: ExtendedPoint) -> None:
        reason = self.membership_reason(x)
        if reason is not None:
            raise NonMemberError(f"point {x!r} is not a member: {reason}")

    def embed(self, v: Sequence) -> ExtendedPoint:
        """All-finite image of an ambient vector: (l_1(v), .., l_n(v))."""
        w = vector(v)
        if len(w) != self.ambient_dim:
            raise DimensionMismatchError(
                f"length-{len(w)} vector in dimension {self.ambient_dim}"
            )
        return ExtendedPoint(
            tuple(self.arrangement.evaluate(i, w) for i in self.arrangement.ground_set)
        )

    def membership_reason(self, x: ExtendedPoint) -> str | None:
        """None for members; otherwise which half of the test failed.

        A point belongs to the closure iff its finite support is a flat and
        the finite coordinates are consistent: some ambient vector v solves
        l_i(v) = x_i for all i in the support. Consistency is one row
        reduction of the augmented system.
        """
        self._check_length(x)
        support = x.finite_support
        if not self.lattice.contains_indices(support):
            return "support-not-a-flat"
        rows = [
            list(self.arrangement.normal(i)) + [x.coords[i - 1]]
            for i in sorted(support)
        ]
        _, pivots = _kernel.rref(rows, self.ambient_dim + 1)
        if self.ambient_dim in pivots:
            return "system-inconsistent"
        return None

    def membership(self, x: ExtendedPoint) -> bool:
        return self.membership_reason(x) is None

    def translate(self, v: Sequence, x: ExtendedPoint) -> ExtendedPoint:
        """Coordinatewise action of an ambient vector on any extended point.

        Finite entries shift by l_i(v); infinite entries absorb. Defined on
        the whole product of projective lines, so membership is not required
        (and is preserved in both directions).
        """
        self._check_length(x)
        w = vector(v)
        if len(w) != self.ambient_dim:
            raise DimensionMismatchError(
                f"length-{len(w)} vector in dimension {self.ambient_dim}"
            )
        shifted = tuple(
            c if c is INF else c + self.arrangement.evaluate(i, w)
            for i, c in enumerate(x.coords, start=1)
        )
        return ExtendedPoint(shifted)

    def act(self, v: Sequence, x: ExtendedPoint) -> ExtendedPoint:
        """Group action on a member point; rejects non-members."""
        self._require_member(x)
        return self.translate(v, x)

    def orbit_descriptor(self, x: ExtendedPoint) -> OrbitDescriptor:
        """Support flat and coordinate image identifying the orbit of x."""
        self._require_member(x)
        support = sorted(x.finite_support)
        columns = Matrix.from_rows(
            [self.arrangement.normal(i) for i in support],
            cols=self.ambient_dim,
        ).transpose()
        affine = Subspace.span(len(support), columns.row_list())
        return OrbitDescriptor(frozenset(support), affine)

    def distinguished_point(self, f: MatroidFlat) -> ExtendedPoint:
        """Zero on the flat's indices, infinity elsewhere."""
        known = self.lattice.flat(f.index_set)
        if known.subspace != f.subspace:
            raise NotAFlatError(
                "flat subspace disagrees with this arrangement",
                indices=sorted(f.index_set),
            )
        zero = Fraction(0)
        return ExtendedPoint(
            tuple(
                zero if i in f.index_set else INF
                for i in self.arrangement.ground_set
            )
        )

    def stabilizer(self, x: ExtendedPoint) -> Subspace:
        """Vectors fixing x: the intersection of the support hyperplanes."""
        self._require_member(x)
        return intersection_subspace(self.arrangement, x.finite_support)

    def in_minimal_neighborhood(self, x: ExtendedPoint, q: ExtendedPoint) -> bool:
        """Whether q lies in the smallest invariant open set around x.

        In coordinates this is support containment: support(x) within
        support(q).
        """
        self._require_member(x)
        self._require_member(q)
        return x.finite_support <= q.finite_support

    def in_minimal_slice(self, x: ExtendedPoint, q: ExtendedPoint) -> bool:
        """Whether q lies on the minimal normal slice through x.

        Support containment plus agreement of the finite coordinates of x.
        """
        self._require_member(x)
        self._require_member(q)
        if not x.finite_support <= q.finite_support:
            return False
        return all(
            q.coords[i - 1] == x.coords[i - 1] for i in x.finite_support
        )

    def slice_at(self, f: MatroidFlat) -> SliceEmbedding:
        """The slice through the distinguished point of ``f``.

        Returns the compactification of the restricted arrangement together
        with the coordinate injection back into this variety.
        """
        known = self.lattice.flat(f.index_set)
        if known.subspace != f.subspace:
            raise NotAFlatError(
                "flat subspace disagrees with this arrangement",
                indices=sorted(f.index_set),
            )
        return SliceEmbedding(self, known)

    def limit(self, v: Sequence) -> ExtendedPoint:
        """Endpoint of the ray through v: the distinguished point of the
        flat of hyperplanes containing v."""
        w = vector(v)
        if len(w) != self.ambient_dim:
            raise DimensionMismatchError(
                f"length-{len(w)} vector in dimension {self.ambient_dim}"
            )
        vanishing = frozenset(
            i
            for i in self.arrangement.ground_set
            if self.arrangement.evaluate(i, w) == 0
        )
        return self.distinguished_point(self.lattice.flat(vanishing))


class SliceEmbedding:
    """Slice data at a flat: sub-variety plus the coordinate injection.

    Points of the sub-variety (one coordinate per restricted hyperplane) map
    to points of the parent with zeros on the flat's indices; a parent
    coordinate outside the flat is the scaled copy of the sub-coordinate of
    the restricted hyperplane it collapses onto.
    """

    def __init__(self, parent: SchubertVariety, flat: MatroidFlat):
        self.parent = parent
        self.flat = flat
        self.restriction: Restriction = restriction(parent.arrangement, flat)
        self.variety = SchubertVariety(self.restriction.arrangement)

    def base_point(self) -> ExtendedPoint:
        """The distinguished point of the flat, where the slice is centered."""
        return self.parent.distinguished_point(self.flat)

    def inject(self, q: ExtendedPoint) -> ExtendedPoint:
        """Map a member of the sub-variety into the parent variety."""
        self.variety._require_member(q)
        zero = Fraction(0)
        coords = []
        for i in self.parent.arrangement.ground_set:
            if i in self.flat.index_set:
                coords.append(zero)
                continue
            c = q.coords[self.restriction.target_index(i) - 1]
            coords.append(INF if c is INF else self.restriction.scale(i) * c)
        return ExtendedPoint(tuple(coords))

    def project(self, q: ExtendedPoint) -> ExtendedPoint | None:
        """Inverse of :meth:`inject` where defined, else None."""
        self.parent._check_length(q)
        if any(q.coords[i - 1] != 0 for i in self.flat.index_set):
            return None
        sub_coords: list[Coord] = []
        for j, originals in enumerate(self.restriction.sources, start=1):
            first = originals[0]
            c = q.coords[first - 1]
            sub_coords.append(
                INF if c is INF else c / self.restriction.scale(first)
            )
        candidate = ExtendedPoint(tuple(sub_coords))
        if not self.variety.membership(candidate):
            return None
        if self.inject(candidate) != q:
            return None
        return candidate


def extend_morphism(
    t: LinearMap, y1: SchubertVariety, y2: SchubertVariety, x: ExtendedPoint
) -> ExtendedPoint:
    """Value at x of the extension of a valid linear morphism.

    For each target hyperplane whose preimage is everything the output entry
    is 0; otherwise the preimage is a unique source hyperplane j and the
    output entry is a fixed nonzero multiple of x_j (infinity maps to
    infinity). The multiplier is pinned by the stored normals: it is the
    value of (target normal after t) at the first standard basis vector
    outside hyperplane j.
    """
    verdict = check_arrangement_morphism(t, y1.arrangement, y2.arrangement)
    if not verdict:
        raise InvalidMorphismError(
            "preimage of a target hyperplane is neither a source hyperplane "
            "nor the whole source",
            target_hyperplane=verdict.target_hyperplane,
            preimage=verdict.preimage,
        )
    y1._require_member(x)
    full = Subspace.full(y1.ambient_dim)
    hyperplane_index = {
        y1.arrangement.hyperplane(i): i for i in y1.arrangement.ground_set
    }
    transpose = t.matrix.transpose()
    coords: list[Coord] = []
    for k in y2.arrangement.ground_set:
        pre = preimage(t, y2.arrangement.hyperplane(k))
        if pre == full:
            coords.append(Fraction(0))
            continue
        j = hyperplane_index[pre]
        pulled = transpose.apply(y2.arrangement.normal(k))
        source_normal = y1.arrangement.normal(j)
        lead = next(p for p, e in enumerate(source_normal) if e)
        multiplier = pulled[lead] / source_normal[lead]
        xj = x.coords[j - 1]
        coords.append(INF if xj is INF else multiplier * xj)
    return ExtendedPoint(tuple(coords))
