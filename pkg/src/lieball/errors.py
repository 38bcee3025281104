"""Exception types shared across the library."""


class GeometryError(ValueError):
    """Base class for every domain or numerical error raised by this package."""


class DomainError(GeometryError):
    """Input lies outside the mathematical domain of an operation."""


class IsotropicConeError(GeometryError):
    """The point lies on the isotropic cone of the inversion center."""


class SingularDenominatorError(GeometryError):
    """A Moebius denominator vanished (the pole's cone passes through the input)."""


class NotInteriorError(DomainError):
    """Point is not strictly inside the Lie ball."""


class NotBoundaryError(DomainError):
    """Point is not on the Lie ball boundary."""


class ConstructionMismatchError(GeometryError):
    """A closed-form construction failed its internal consistency check."""


class StepOutError(GeometryError):
    """Numerical integration left the coordinate chart."""


class IllConditionedError(GeometryError):
    """Matrix too close to singular for a reliable result."""


class RankDeficientError(GeometryError):
    """Input data is degenerate for the requested fit."""


class NoConvergenceError(GeometryError):
    """Iteration failed to converge. Carries the best iterate found."""

    def __init__(self, message, best=None, residual=None):
        super().__init__(message)
        self.best = best
        self.residual = residual


class InternalError(GeometryError):
    """An invariant that should hold by construction was violated (caller bug)."""
