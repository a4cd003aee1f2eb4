"""Exception taxonomy shared across the package."""

from __future__ import annotations


class CaError(Exception):
    """Base class for all errors raised by this package."""


class OutOfDomainError(CaError):
    """A cell required by an operation lies outside the window's domain."""


class DomainMismatchError(CaError):
    """Two window configurations do not share the same domain."""


class OutOfRangeError(CaError):
    """A numeric argument lies outside its documented range."""


class NotElementaryError(CaError):
    """The rule is not a binary radius-1 one-dimensional rule."""


class NotOneDimensionalError(CaError):
    """The operation is only defined for one-dimensional rules."""


class LatticeTooSmallError(CaError):
    """The cyclic lattice is too short to host the rule's neighborhood."""


class NeighborhoodMismatchError(CaError):
    """Two rules were expected to share a neighborhood but do not."""


class AlphabetMismatchError(CaError):
    """Two rules were expected to share an alphabet but do not."""


class CenterNotInNeighborhoodError(CaError):
    """The operation requires offset 0 to belong to the neighborhood."""


class CenterAheadError(CaError):
    """A bar-state neighbor is one tick ahead of the center."""


class CenterBehindError(CaError):
    """A bar-state neighbor is one tick behind the center."""


class ResourceCapExceededError(CaError):
    """An enumeration would exceed the configured resource cap."""


class RuleFormatError(CaError):
    """A rule document is malformed."""
