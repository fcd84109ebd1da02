"""Exception types raised across the package."""


class SWKBError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(SWKBError, ValueError):
    """Functions living in different variables were combined."""


class DomainError(SWKBError, ValueError):
    """A function was evaluated outside the region where it is real-valued."""


class UnsupportedFamily(SWKBError, ValueError):
    """The requested construction does not exist for this base system."""


class InvalidParameters(SWKBError, ValueError):
    """Deformation parameters violate the admissibility inequalities."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid parameters")


class SingularDeformation(SWKBError):
    """The denominator Wronskian vanishes inside the physical domain."""


class NoClassicalRegion(SWKBError):
    """No interval where the energy exceeds the (super)potential was found."""


class QuadratureNonConvergence(SWKBError):
    """Quadrature did not reach the requested tolerance within the node budget."""


class TruncationError(SWKBError):
    """Finite-difference eigenvalues are sensitive to the domain truncation."""
