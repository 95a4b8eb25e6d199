"""Exception hierarchy shared by all crystalzeta modules."""


class CrystalZetaError(Exception):
    """Base class for library errors."""


class PoleError(CrystalZetaError, ValueError):
    """Evaluation requested at a pole."""


class DomainError(CrystalZetaError, ValueError):
    """Argument outside the domain of an operation."""


class DimensionError(CrystalZetaError, ValueError):
    """Dimension hypothesis of a construction fails."""


class RankError(CrystalZetaError, ArithmeticError):
    """A numerical kernel that should be non-trivial came out empty."""


class DegeneracyError(CrystalZetaError, ArithmeticError):
    """An eigenvalue could not be rounded unambiguously."""


class NoRootError(CrystalZetaError, ArithmeticError):
    """A bracketing root search found no sign change."""


class ConsistencyError(CrystalZetaError, ArithmeticError):
    """Two independent computations of the same quantity disagree."""


class BoundaryProximityError(CrystalZetaError, ArithmeticError):
    """A zero or pole lies too close to a contour."""


class DepthExhaustedError(CrystalZetaError, ArithmeticError):
    """Recursive subdivision reached its depth limit."""

    def __init__(self, message, rect=None):
        super().__init__(message)
        self.rect = rect


class ConvergenceError(CrystalZetaError, ArithmeticError):
    """An iteration failed to converge."""


class SymmetryError(CrystalZetaError, ValueError):
    """A zero list or sequence is not closed under its symmetries."""


class NearSingularityError(CrystalZetaError, ArithmeticError):
    """A denominator is numerically zero."""


class InsufficientDataError(CrystalZetaError, ValueError):
    """Stored terms do not cover the requested evaluation."""


class DocumentError(CrystalZetaError, ValueError):
    """Malformed input document."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class OrderingError(DocumentError):
    """Input values are not in ascending order."""
