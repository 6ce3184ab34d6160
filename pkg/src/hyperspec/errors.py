"""Exception hierarchy.

Every error raised on bad input derives from :class:`HypergraphError` (a
``ValueError``), so callers and the CLI can catch one type and map it to a
usage/validation exit code.
"""


class HypergraphError(ValueError):
    """Base class for all validation and domain errors."""


class EmptyOrZeroWeightError(HypergraphError):
    pass


class BadEdgeError(HypergraphError):
    pass


class DuplicateEdgeError(HypergraphError):
    pass


class DimensionMismatchError(HypergraphError):
    pass


class BadPError(HypergraphError):
    pass


class NotPartiteError(HypergraphError):
    """An edge has two vertices in the same part.

    ``edge`` is reported 1-based, ``part`` is the offending part index (1-based).
    """

    def __init__(self, edge, part):
        self.edge = tuple(edge)
        self.part = part
        super().__init__(f"edge {list(self.edge)} has two vertices in part {part}")


class BadArityError(HypergraphError):
    pass


class WrongArityError(HypergraphError):
    pass


class BadOrderError(HypergraphError):
    pass


class BadDensityError(HypergraphError):
    pass


class ZeroVectorError(HypergraphError):
    pass


class TooLargeError(HypergraphError):
    pass


class TheoremInapplicableError(HypergraphError):
    pass


class NonFiniteError(ArithmeticError):
    """Every restart produced NaN/inf; the step policy diverged."""


class ConvergenceSuspectError(ArithmeticError):
    """An extremal estimate has the wrong sign for a non-trivial hypergraph."""
