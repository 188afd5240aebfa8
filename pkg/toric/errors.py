"""
Exception types raised by the toolkit.

Everything derives from ValueError so command-line entry points can catch
bad input with a single ``except ValueError``. Failed mathematical checks are
reported through CheckReport objects, never through these exceptions.
"""


class ToricError(ValueError):
    """Base class for all toolkit errors."""


class DimensionMismatchError(ToricError):
    """Vectors, constraints or divisors of incompatible length."""


class FanError(ToricError):
    """Invalid fan, or a fan lacking a required property (smooth, complete)."""


class TorsionError(ToricError):
    """The Picard quotient has torsion or the wrong rank."""


class NotStableError(ToricError):
    """A group element moves a class outside the given set."""


class BlockDecompositionError(ToricError):
    """Orbits of a stable collection do not form an ordered block structure."""


class NotConstructibleError(ToricError):
    """Catalog entry whose fan is not available from the built-in data."""


class UnknownTargetError(ToricError):
    """Name that does not resolve to a catalog variety or collection."""
