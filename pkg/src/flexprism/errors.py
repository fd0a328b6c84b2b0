"""Exception types raised by flexprism.

Everything derives from FlexprismError (itself a ValueError) so callers can
catch the whole family with one clause while tests can pin down the exact
failure mode.
"""

from __future__ import annotations

__all__ = [
    "FlexprismError",
    "SingularConstraintError",
    "InfeasibleLengthError",
    "FlexionRangeError",
    "EmptyFlexionIntervalError",
    "DegenerateGeometryError",
    "OrientationRuleError",
    "ClosureError",
    "SpecFormatError",
]


class FlexprismError(ValueError):
    """Base class for all flexprism validation and geometry errors."""


class SingularConstraintError(FlexprismError):
    """A constraint solve is singular: a dependent parameter is undetermined
    or the linear system is inconsistent."""


class InfeasibleLengthError(FlexprismError):
    """A solved edge length came out non-positive."""


class FlexionRangeError(FlexprismError):
    """The flexion parameter lies outside the range where the geometry is
    realizable (a z-step radicand is negative, or a dihedral cosine falls
    outside [-1, 1])."""


class EmptyFlexionIntervalError(FlexionRangeError):
    """No flexion parameter realizes every vertex of the structure."""


class DegenerateGeometryError(FlexprismError):
    """A face angle at 0 or pi, or an undefined dihedral wedge."""


class OrientationRuleError(FlexprismError):
    """A segment orientation repeats the previous direction or its negative."""


class ClosureError(FlexprismError):
    """A closed (toroidal) assembly fails to close."""


class SpecFormatError(FlexprismError):
    """A spec or config file is malformed."""
