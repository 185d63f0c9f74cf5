"""Exception types shared across the package."""


class ToeplitzSpectraError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(ToeplitzSpectraError):
    """Invalid configuration, CLI arguments, or input file."""


class NumericalError(ToeplitzSpectraError):
    """A numerical operation failed or could not reach its accuracy target."""


class BranchError(NumericalError):
    """Branch tracking of a complex logarithm failed (zero sample or coarse grid)."""

    def __init__(self, message, index=None, p=None):
        super().__init__(message)
        self.index = index
        self.p = p


class SingularMatrixError(NumericalError):
    """Matrix singular to working precision; carries the offending pivot index."""

    def __init__(self, message, pivot=None):
        super().__init__(message)
        self.pivot = pivot


class EigenConvergenceError(NumericalError):
    """The dense eigensolver did not converge within its iteration budget."""


class MatchingError(NumericalError):
    """Eigenvalue-to-grid matching could not produce a bijection."""


class QuadratureError(NumericalError):
    """Principal-value quadrature failed its doubling convergence check."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class DegenerateJumpError(NumericalError):
    """Jump exponent configuration where the deviation formula degenerates."""
