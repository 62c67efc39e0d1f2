"""Exception hierarchy for the arc polygon boolean operations.

Every error carries a machine-readable ``code`` (the class name) and the process
``exit_code`` the command line front end returns for it:

  1. invalid input (malformed edges, polygons, files, configuration)
  2. unsupported configuration (overlaps, degenerate crossings, holed results)
  3. internal invariant violation
"""

from typing import ClassVar


class ArcBooleanError(Exception):
    """Base class for all errors raised by the package."""

    code: ClassVar[str] = "ArcBooleanError"
    exit_code: ClassVar[int] = 1

    def __init_subclass__(cls, **kwargs: object) -> None:
        """Give every subclass its own name as error code."""
        super().__init_subclass__(**kwargs)
        cls.code = cls.__name__


class InvalidInputError(ArcBooleanError):
    """Input data violates a documented precondition."""

    exit_code = 1


class UnsupportedConfigurationError(ArcBooleanError):
    """Input is valid but lies outside what the algorithm supports."""

    exit_code = 2


class InternalError(ArcBooleanError):
    """An internal invariant was violated."""

    exit_code = 3


class InvalidPoint(InvalidInputError):
    """A coordinate is NaN or infinite."""


class InvalidEdge(InvalidInputError):
    """An edge is malformed (zero length, collinear arc points, ...)."""


class OutOfSpan(InvalidInputError):
    """A coordinate lies outside the x-span of an edge."""


class PointNotOnEdge(InvalidInputError):
    """A split point does not lie strictly inside an edge."""


class UnsortedSplitPoints(InvalidInputError):
    """Split points are not strictly increasing along an edge."""


class NotSimple(InvalidInputError):
    """A polygon boundary intersects itself."""


class NotCCW(InvalidInputError):
    """A polygon is not counter-clockwise oriented."""


class BadAppendix(InvalidInputError):
    """An appendix point does not define a valid arc with its neighbours."""


class TooFewVertices(InvalidInputError):
    """A polygon has too few vertices to enclose an area."""


class DisjointInputs(InvalidInputError):
    """The bounding boxes of the two polygons do not meet."""


class ParseError(InvalidInputError):
    """A polygon file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        """Initialize the error.

        :param message: Description of the problem.
        :param line: 1-based line of the offending token, if known.
        :param column: 1-based column of the offending token, if known.
        """
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class GenerationFailed(InvalidInputError):
    """The random polygon generator gave up."""


class OverlapUnsupported(UnsupportedConfigurationError):
    """Two edges share a sub-curve of positive length."""


class DegenerateConfiguration(UnsupportedConfigurationError):
    """A crossing coincides with a vertex or with another crossing."""


class OddCrossingCount(UnsupportedConfigurationError):
    """The boundaries cross an odd number of times."""


class UnionHoleUnsupported(UnsupportedConfigurationError):
    """The union of the inputs has a hole."""


class DifferenceHoleUnsupported(UnsupportedConfigurationError):
    """The difference of the inputs has a hole."""


class InconsistentRun(InternalError):
    """A decomposed-arc run does not belong to a single arc."""


class TraversalStuck(InternalError):
    """Traversal lost its way through the linked rings."""


class MismatchedResults(InternalError):
    """Benchmark methods disagree on a result."""

    def __init__(self, message: str, seed: str):
        """Initialize the error.

        :param message: Description of the disagreement.
        :param seed: Seed that reproduces the offending input pair.
        """
        self.seed = seed
        super().__init__(f"{message} (seed {seed})")
