"""Partial hyperplane arrangements: validation, order filters, morphisms.

A partial hyperplane arrangement (PHA) is a finite collection of subspaces
containing the zero subspace, closed under pairwise intersection, and such
that below each member the collection looks like the flat lattice of an
essential arrangement inside that member. The type is unforgeable: the only
constructors are :func:`validate` and :func:`from_order_filter`, so holding a
``PartialHyperplaneArrangement`` is proof the three axioms hold.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, Sequence

from .arrangement import Arrangement, flats, is_essential
from .errors import (
    DimensionMismatchError,
    NotAFlatError,
    NotAnOrderFilterError,
    NotEssentialError,
)
from .linalg import (
    LinearMap,
    Subspace,
    canonical_key,
    contains_vector,
    intersect,
    preimage,
    subspace_leq,
)

_CONSTRUCTION_TOKEN = object()

NOT_ESSENTIAL = "not-essential-in-F"
GENERATED_MISMATCH = "generated-flats-mismatch"


@dataclass(frozen=True)
class PartialHyperplaneArrangement:
    """Validated member list, canonically ordered (rank, then basis entries)."""

    ambient_dim: int
    members: tuple[Subspace, ...]

    def __init__(self, ambient_dim: int, members: Sequence[Subspace], *, _token=None):
        if _token is not _CONSTRUCTION_TOKEN:
            raise TypeError(
                "PartialHyperplaneArrangement cannot be built directly; "
                "use validate() or from_order_filter()"
            )
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "members", tuple(members))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Subspace]:
        return iter(self.members)

    def __contains__(self, s: Subspace) -> bool:
        return s in self.members

    def member_index(self, s: Subspace) -> int:
        return self.members.index(s)

    def down_set(self, top: Subspace) -> tuple[Subspace, ...]:
        """Members contained in ``top``, in canonical order."""
        return tuple(m for m in self.members if subspace_leq(m, top))

    def coatoms_below(self, top: Subspace) -> tuple[Subspace, ...]:
        """Members one rank below ``top`` inside it (its hyperplanes)."""
        return tuple(
            m
            for m in self.members
            if m.rank == top.rank - 1 and subspace_leq(m, top)
        )


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the three-axiom check; clean iff ``all_ok``."""

    axiom1_ok: bool
    axiom2_ok: bool
    axiom2_witness: tuple[Subspace, Subspace] | None
    axiom3_failures: tuple[tuple[Subspace, str], ...]

    @property
    def all_ok(self) -> bool:
        return self.axiom1_ok and self.axiom2_ok and not self.axiom3_failures


def _canonical_members(
    ambient_dim: int, subspaces: Iterable[Subspace]
) -> list[Subspace]:
    unique: list[Subspace] = []
    for s in subspaces:
        if s.ambient_dim != ambient_dim:
            raise DimensionMismatchError(
                f"member of Q^{s.ambient_dim} in a collection in Q^{ambient_dim}"
            )
        if s not in unique:
            unique.append(s)
    unique.sort(key=canonical_key)
    return unique


def _generated_by_coatoms(top: Subspace, coatoms: Sequence[Subspace]) -> set[Subspace]:
    """All intersections of subsets of ``coatoms`` (empty subset gives top)."""
    generated = {top, *coatoms}
    frontier = list(generated)
    while frontier:
        current = frontier.pop()
        for h in coatoms:
            smaller = intersect(current, h)
            if smaller not in generated:
                generated.add(smaller)
                frontier.append(smaller)
    return generated


def validate(
    ambient_dim: int, subspaces: Iterable[Subspace]
) -> tuple[ValidationReport, PartialHyperplaneArrangement | None]:
    """Check the three axioms; on success also return the validated PHA.

    Axiom 1: the zero subspace is a member. Axiom 2: pairwise intersections
    of members are members. Axiom 3: for each member F, the members one rank
    below F intersect to zero inside F and generate, by intersection, exactly
    the members contained in F.
    """
    members = _canonical_members(ambient_dim, subspaces)
    zero = Subspace.zero(ambient_dim)
    axiom1_ok = zero in members

    member_set = set(members)
    axiom2_witness = None
    for i, a in enumerate(members):
        if axiom2_witness:
            break
        for b in members[i + 1 :]:
            if intersect(a, b) not in member_set:
                axiom2_witness = (a, b)
                break
    axiom2_ok = axiom2_witness is None

    axiom3_failures = []
    for top in members:
        coatoms = [
            m
            for m in members
            if m.rank == top.rank - 1 and subspace_leq(m, top)
        ]
        common = reduce(intersect, coatoms, top)
        if not common.is_zero():
            axiom3_failures.append((top, NOT_ESSENTIAL))
            continue
        down = {m for m in members if subspace_leq(m, top)}
        if _generated_by_coatoms(top, coatoms) != down:
            axiom3_failures.append((top, GENERATED_MISMATCH))

    report = ValidationReport(
        axiom1_ok, axiom2_ok, axiom2_witness, tuple(axiom3_failures)
    )
    if not report.all_ok:
        return report, None
    return report, PartialHyperplaneArrangement(
        ambient_dim, members, _token=_CONSTRUCTION_TOKEN
    )


def from_order_filter(
    a: Arrangement, selected: Iterable[Subspace]
) -> PartialHyperplaneArrangement:
    """PHA from a downward-closed (under inclusion) set of flat subspaces.

    The zero subspace is always included. Every downward-closed selection of
    flats of an essential arrangement validates; a selection that is not
    downward closed is rejected with a witness pair.
    """
    if not is_essential(a):
        raise NotEssentialError(
            "order filters are taken in essential arrangements only"
        )
    flat_subspaces = sorted(
        (f.subspace for f in flats(a)), key=canonical_key
    )
    chosen = []
    for s in selected:
        if s not in flat_subspaces:
            raise NotAFlatError(
                "selected subspace is not a flat of the arrangement",
                subspace_basis=[
                    [str(e) for e in row] for row in s.basis_rows()
                ],
            )
        if s not in chosen:
            chosen.append(s)
    zero = Subspace.zero(a.ambient_dim)
    if zero not in chosen:
        chosen.append(zero)
    chosen.sort(key=canonical_key)
    chosen_set = set(chosen)
    for m in chosen:
        for g in flat_subspaces:
            if subspace_leq(g, m) and g not in chosen_set:
                raise NotAnOrderFilterError(
                    "selection is not downward closed",
                    member_rank=m.rank,
                    missing_rank=g.rank,
                    witness=(m, g),
                )
    report, pha = validate(a.ambient_dim, chosen)
    if pha is None:
        raise AssertionError(
            f"downward-closed flat selection failed validation: {report}"
        )
    return pha


@dataclass(frozen=True)
class MorphismReport:
    """Result of the two-condition PHA morphism check.

    ``condition`` is 1 or 2 when violated; the witness fields name the first
    failing members in canonical order. Condition 1 uses ``source`` only;
    condition 2 fills all three (``offender`` = preimage(target) n source,
    which is missing from the source collection).
    """

    ok: bool
    condition: int | None = None
    source: Subspace | None = None
    target: Subspace | None = None
    offender: Subspace | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_morphism(
    t: LinearMap,
    src: PartialHyperplaneArrangement,
    dst: PartialHyperplaneArrangement,
) -> MorphismReport:
    """Decide whether ``t`` is a morphism of partial hyperplane arrangements.

    Condition 1: each source member maps into some target member. Condition
    2: the preimage of each target member, intersected with each source
    member, is again a source member.
    """
    if t.source_dim != src.ambient_dim or t.target_dim != dst.ambient_dim:
        raise DimensionMismatchError(
            f"map Q^{t.source_dim} -> Q^{t.target_dim} between collections in "
            f"Q^{src.ambient_dim} and Q^{dst.ambient_dim}"
        )
    preimages = {f2: preimage(t, f2) for f2 in dst.members}
    for f1 in src.members:
        if not any(subspace_leq(f1, preimages[f2]) for f2 in dst.members):
            return MorphismReport(False, condition=1, source=f1)
    src_set = set(src.members)
    for f1 in src.members:
        for f2 in dst.members:
            inter = intersect(preimages[f2], f1)
            if inter not in src_set:
                return MorphismReport(
                    False, condition=2, source=f1, target=f2, offender=inter
                )
    return MorphismReport(True)


@dataclass(frozen=True)
class ArrangementMorphismReport:
    """Hyperplane-level morphism check result.

    When rejected, ``target_hyperplane`` is the 1-based index in the target
    arrangement whose preimage is neither a source hyperplane nor everything,
    and ``preimage`` is that offending subspace.
    """

    ok: bool
    target_hyperplane: int | None = None
    preimage: Subspace | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_arrangement_morphism(
    t: LinearMap, a1: Arrangement, a2: Arrangement
) -> ArrangementMorphismReport:
    """Morphism test between essential arrangements.

    ``t`` qualifies iff the preimage of every target hyperplane is either a
    source hyperplane or the whole source space; equivalent to
    :func:`check_morphism` on the two full flat lattices.
    """
    for a in (a1, a2):
        if not is_essential(a):
            raise NotEssentialError("morphism test requires essential arrangements")
    if t.source_dim != a1.ambient_dim or t.target_dim != a2.ambient_dim:
        raise DimensionMismatchError(
            f"map Q^{t.source_dim} -> Q^{t.target_dim} between arrangements in "
            f"Q^{a1.ambient_dim} and Q^{a2.ambient_dim}"
        )
    hyperplanes = [a1.hyperplane(i) for i in a1.ground_set]
    full = Subspace.full(a1.ambient_dim)
    for k in a2.ground_set:
        pre = preimage(t, a2.hyperplane(k))
        if pre != full and pre not in hyperplanes:
            return ArrangementMorphismReport(
                False, target_hyperplane=k, preimage=pre
            )
    return ArrangementMorphismReport(True)


def full_lattice_pha(a: Arrangement) -> PartialHyperplaneArrangement:
    """The PHA of all flat subspaces of an essential arrangement."""
    if not is_essential(a):
        raise NotEssentialError("full flat lattice PHA requires essentiality")
    report, pha = validate(a.ambient_dim, (f.subspace for f in flats(a)))
    if pha is None:
        raise AssertionError(f"flat lattice failed validation: {report}")
    return pha


def limit_flat(
    pha: PartialHyperplaneArrangement, v: Sequence[Fraction]
) -> Subspace | None:
    """Smallest member containing ``v``, or None when no member does.

    The vectors whose smallest member is F form the relative interior of F
    with respect to the collection; vectors in no member have no limit in
    the associated partial compactification.
    """
    if len(v) != pha.ambient_dim:
        raise DimensionMismatchError(
            f"length-{len(v)} vector in Q^{pha.ambient_dim}"
        )
    containing = [m for m in pha.members if contains_vector(m, v)]
    if not containing:
        return None
    smallest = reduce(intersect, containing)
    # closure under intersection makes the smallest containing member unique
    if smallest not in pha.members or not contains_vector(smallest, v):
        raise AssertionError("member collection is not intersection closed")
    return smallest
