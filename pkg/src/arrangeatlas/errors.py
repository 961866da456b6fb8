"""Exception hierarchy.

Every domain error carries a stable machine-readable ``code`` and a
``details`` dict; the CLI surfaces both verbatim so failures are scriptable.
"""

from __future__ import annotations


class ArrangeAtlasError(Exception):
    """Base class for all domain errors."""

    code = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details


class DimensionMismatchError(ArrangeAtlasError):
    """Operands have incompatible ambient dimensions or lengths."""

    code = "dimension-mismatch"


class ZeroNormalError(ArrangeAtlasError):
    """An arrangement was given the zero covector as a hyperplane normal."""

    code = "zero-normal"


class DuplicateHyperplaneError(ArrangeAtlasError):
    """Two normals of an arrangement are proportional."""

    code = "duplicate-hyperplane"


class NotEssentialError(ArrangeAtlasError):
    """Operation requires an essential arrangement."""

    code = "not-essential"


class NotAFlatError(ArrangeAtlasError):
    """The given index set or subspace is not a flat of the arrangement."""

    code = "not-a-flat"


class NotAnOrderFilterError(ArrangeAtlasError):
    """Selected flats are not downward closed under inclusion."""

    code = "not-an-order-filter"


class NonMemberError(ArrangeAtlasError):
    """Extended point lies outside the variety."""

    code = "non-member"


class InvalidMorphismError(ArrangeAtlasError):
    """Linear map fails the arrangement morphism condition."""

    code = "invalid-morphism"


class ParseError(ArrangeAtlasError):
    """Malformed input file or inline value."""

    code = "parse-error"
