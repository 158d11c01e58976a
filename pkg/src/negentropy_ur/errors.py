"""Exception types shared across the package."""


class DomainError(ValueError):
    """A parameter lies outside the domain of an operation."""


class DegenerateStateError(DomainError):
    """The requested superposition has (numerically) vanishing norm."""


class UnsupportedFamilyError(ValueError):
    """The operation is not defined for this state family."""


class ConvergenceError(RuntimeError):
    """Range widening did not settle within the allowed number of doublings.

    The last two estimates are kept on ``estimates`` for diagnostics.
    """

    def __init__(self, message, estimates=()):
        super().__init__(message)
        self.estimates = tuple(estimates)


class CurveConstructionError(RuntimeError):
    """The reference curve is not monotone on the supplied grid."""
