"""Exception types raised across the package."""

from __future__ import annotations


class SemiHilbertError(Exception):
    """Base class for all package-specific errors."""


class NotHermitian(SemiHilbertError):
    """Input matrix is not Hermitian within tolerance."""


class NotPSD(SemiHilbertError):
    """Input matrix is not positive semidefinite within tolerance."""


class ConvergenceFailure(SemiHilbertError):
    """An iterative eigenvalue computation failed to converge."""


class DimensionMismatch(SemiHilbertError):
    """Operands have incompatible shapes."""


class NotInBA(SemiHilbertError):
    """Operator is not compatible with the semi-inner product.

    Raised when the adjoint-compatibility test fails, i.e. the conjugate
    transpose does not map the range of the weight into itself.  Carries
    the measured residual when available.
    """

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class ZeroOperator(SemiHilbertError):
    """The weight matrix is numerically zero, so no context can be built."""


class UnknownKind(SemiHilbertError):
    """Unrecognized structured-operator kind requested from a generator."""


class DegenerateSample(SemiHilbertError):
    """A random draw failed a structural requirement and cannot be used."""


class ConditionNotMet(SemiHilbertError):
    """A check's algebraic precondition fails; the check is skipped, not failed."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual
