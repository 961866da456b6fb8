"""Central hyperplane arrangements, their flats, and restriction to a flat.

An arrangement is stored as its list of normal covectors l_1..l_n; hyperplane
i is the kernel of l_i. The ground set E = {1..n} is 1-based throughout. A
flat is recorded both as a closed index set F and as the subspace obtained by
intersecting the hyperplanes it indexes (the empty intersection being the
whole space).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import (
    DimensionMismatchError,
    DuplicateHyperplaneError,
    NotAFlatError,
    ZeroNormalError,
)
from .linalg import Matrix, Subspace, Vector, dot, kernel, rank, vector


def _normalize_covector(raw: Vector) -> tuple[Vector, Fraction]:
    """Scale so the first nonzero entry is 1; returns (normalized, scale)."""
    lead = next((e for e in raw if e), None)
    if lead is None:
        raise ZeroNormalError("hyperplane normal must be nonzero")
    if lead == 1:
        return raw, Fraction(1)
    return tuple(e / lead for e in raw), lead


@dataclass(frozen=True)
class Arrangement:
    """Hyperplanes ker l_1, .., ker l_n in Q^ambient_dim.

    Normals are normalized on construction (first nonzero entry 1), which
    makes proportional input covectors structurally identical; duplicates are
    rejected rather than silently merged.
    """

    ambient_dim: int
    normals: tuple[Vector, ...]

    def __init__(self, ambient_dim: int, normals: Iterable[Iterable]):
        normalized = []
        for position, raw in enumerate(normals, start=1):
            cov = vector(raw)
            if len(cov) != ambient_dim:
                raise DimensionMismatchError(
                    f"normal {position} has length {len(cov)} in ambient "
                    f"dimension {ambient_dim}"
                )
            cov, _ = _normalize_covector(cov)
            if cov in normalized:
                raise DuplicateHyperplaneError(
                    f"normal {position} is proportional to normal "
                    f"{normalized.index(cov) + 1}",
                    first=normalized.index(cov) + 1,
                    second=position,
                )
            normalized.append(cov)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "normals", tuple(normalized))

    @property
    def n(self) -> int:
        return len(self.normals)

    @property
    def ground_set(self) -> range:
        """E = {1..n} as a range (1-based)."""
        return range(1, self.n + 1)

    def normal(self, i: int) -> Vector:
        """Covector l_i, 1-based."""
        return self.normals[i - 1]

    def normal_matrix(self) -> Matrix:
        return Matrix.from_rows(self.normals, cols=self.ambient_dim)

    def hyperplane(self, i: int) -> Subspace:
        """H_i = ker l_i as a subspace."""
        return kernel(Matrix.from_rows([self.normal(i)], cols=self.ambient_dim))

    def evaluate(self, i: int, v: Sequence[Fraction]) -> Fraction:
        """l_i(v)."""
        return dot(self.normal(i), v)


def is_essential(a: Arrangement) -> bool:
    """True when the common intersection of all hyperplanes is zero."""
    return rank(a.normal_matrix()) == a.ambient_dim


def intersection_subspace(a: Arrangement, indices: Iterable[int]) -> Subspace:
    """The subspace cut out by the hyperplanes in ``indices``."""
    rows = [a.normal(i) for i in sorted(set(indices))]
    return kernel(Matrix.from_rows(rows, cols=a.ambient_dim))


def closure(a: Arrangement, s: Iterable[int]) -> frozenset[int]:
    """Smallest flat index set containing ``s``.

    Computed as the set of hyperplanes containing the intersection of the
    hyperplanes indexed by ``s``; extensive, monotone and idempotent.
    """
    s = frozenset(s)
    bad = [i for i in s if not 1 <= i <= a.n]
    if bad:
        raise DimensionMismatchError(
            f"indices {sorted(bad)} outside the ground set 1..{a.n}"
        )
    common = intersection_subspace(a, s)
    basis = common.basis_rows()
    return frozenset(
        i
        for i in a.ground_set
        if all(dot(a.normal(i), b) == 0 for b in basis)
    )


@dataclass(frozen=True)
class MatroidFlat:
    """A closed index set together with the subspace it cuts out."""

    index_set: frozenset[int]
    subspace: Subspace

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.index_set), tuple(sorted(self.index_set)))


class FlatLattice:
    """All flats of an arrangement, in (cardinality, lexicographic) order."""

    def __init__(self, flats: Iterable[MatroidFlat]):
        self.flats: tuple[MatroidFlat, ...] = tuple(
            sorted(flats, key=MatroidFlat.sort_key)
        )
        self._by_indices = {f.index_set: f for f in self.flats}

    def __iter__(self) -> Iterator[MatroidFlat]:
        return iter(self.flats)

    def __len__(self) -> int:
        return len(self.flats)

    def __eq__(self, other) -> bool:
        return isinstance(other, FlatLattice) and self.flats == other.flats

    def __repr__(self) -> str:
        sets = [sorted(f.index_set) for f in self.flats]
        return f"FlatLattice({sets})"

    def contains_indices(self, indices: Iterable[int]) -> bool:
        return frozenset(indices) in self._by_indices

    def flat(self, indices: Iterable[int]) -> MatroidFlat:
        key = frozenset(indices)
        try:
            return self._by_indices[key]
        except KeyError:
            raise NotAFlatError(
                f"{sorted(key)} is not a flat", indices=sorted(key)
            ) from None

    def index_of(self, flat: MatroidFlat) -> int:
        return self.flats.index(flat)

    def subspaces(self) -> list[Subspace]:
        return [f.subspace for f in self.flats]


def flats(a: Arrangement) -> FlatLattice:
    """Enumerate all flats by closing under single-element extensions.

    Equivalent to closing every one of the 2^n subsets (the brute-force
    oracle the tests use), but visits each flat at most n times.
    """
    first = closure(a, ())
    seen = {first}
    queue = [first]
    while queue:
        current = queue.pop()
        for i in a.ground_set:
            if i in current:
                continue
            bigger = closure(a, current | {i})
            if bigger not in seen:
                seen.add(bigger)
                queue.append(bigger)
    return FlatLattice(
        MatroidFlat(f, intersection_subspace(a, f)) for f in seen
    )


class Restriction:
    """An arrangement restricted to one of its flats, re-coordinatized.

    The flat subspace's reduced row echelon basis is the coordinate frame:
    a point with frame coordinates y corresponds to the ambient vector
    y . frame. Hyperplanes of the restriction are the traces of the original
    hyperplanes not containing the flat, with proportional traces merged.
    ``sources[j]`` lists the original indices mapping onto restriction
    hyperplane j+1, and ``scale(i)`` is the factor relating l_i to the
    normalized restricted covector.
    """

    def __init__(
        self,
        arrangement: Arrangement,
        frame: Matrix,
        sources: tuple[tuple[int, ...], ...],
        scales: dict[int, Fraction],
        target_index: dict[int, int],
    ):
        self.arrangement = arrangement
        self.frame = frame
        self.sources = sources
        self._scales = scales
        self._target_index = target_index

    def scale(self, i: int) -> Fraction:
        """Factor s_i with l_i(y . frame) = s_i * m_{j}(y) for all y."""
        return self._scales[i]

    def target_index(self, i: int) -> int:
        """Restriction hyperplane index (1-based) that original i maps to."""
        return self._target_index[i]

    def lift_vector(self, y: Sequence[Fraction]) -> Vector:
        """Frame coordinates to ambient coordinates."""
        if len(y) != self.frame.rows:
            raise DimensionMismatchError(
                f"frame has {self.frame.rows} coordinates, got {len(y)}"
            )
        d = self.frame.cols
        out = [Fraction(0)] * d
        for k, coeff in enumerate(y):
            if coeff:
                row = self.frame.row(k)
                for j in range(d):
                    out[j] += coeff * row[j]
        return tuple(out)

    def lower_vector(self, v: Sequence[Fraction]) -> Vector:
        """Ambient vector inside the flat back to frame coordinates."""
        pivots = [
            next(j for j, e in enumerate(self.frame.row(k)) if e)
            for k in range(self.frame.rows)
        ]
        y = tuple(v[p] for p in pivots)
        if self.lift_vector(y) != tuple(v):
            raise DimensionMismatchError("vector does not lie in the flat")
        return y

    def lift_subspace(self, s: Subspace) -> Subspace:
        return Subspace.span(
            self.frame.cols, [self.lift_vector(row) for row in s.basis_rows()]
        )

    def lower_subspace(self, s: Subspace) -> Subspace:
        return Subspace.span(
            self.frame.rows, [self.lower_vector(row) for row in s.basis_rows()]
        )


def restriction(a: Arrangement, f: MatroidFlat) -> Restriction:
    """Restrict ``a`` to the flat ``f``.

    The result is an arrangement in Q^rank(f) whose flats correspond to the
    flats of ``a`` whose index sets contain f.index_set.
    """
    if closure(a, f.index_set) != f.index_set or intersection_subspace(
        a, f.index_set
    ) != f.subspace:
        raise NotAFlatError(
            f"{sorted(f.index_set)} with the given subspace is not a flat",
            indices=sorted(f.index_set),
        )
    frame = f.subspace.basis
    r = frame.rows
    covectors: list[Vector] = []
    sources: list[list[int]] = []
    scales: dict[int, Fraction] = {}
    target_index: dict[int, int] = {}
    for i in a.ground_set:
        if i in f.index_set:
            continue
        trace = tuple(dot(a.normal(i), frame.row(k)) for k in range(r))
        if not any(trace):
            # the flat lies inside H_i, impossible for i outside a flat's set
            raise NotAFlatError(
                f"hyperplane {i} contains the flat but is outside its index set",
                indices=sorted(f.index_set),
            )
        normalized, scale = _normalize_covector(trace)
        if normalized in covectors:
            j = covectors.index(normalized)
        else:
            covectors.append(normalized)
            sources.append([])
            j = len(covectors) - 1
        sources[j].append(i)
        scales[i] = scale
        target_index[i] = j + 1
    sub = Arrangement(r, covectors)
    return Restriction(
        sub,
        frame,
        tuple(tuple(s) for s in sources),
        scales,
        target_index,
    )
