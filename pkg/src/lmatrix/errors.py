"""Exception hierarchy shared by all modules."""


class LMatrixError(Exception):
    """Base class for errors raised by :mod:`lmatrix`."""


class DomainError(LMatrixError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class PoleError(DomainError):
    """Argument is (within tolerance) a pole of the function."""


class RegionError(DomainError):
    """A representation was requested outside its region of validity."""


class SingularSequenceError(DomainError):
    """Consecutive parameters coincide, so the L-matrix is singular."""


class SingularError(LMatrixError, ArithmeticError):
    """A matrix that must be inverted is singular."""


class DivergentError(LMatrixError, ArithmeticError):
    """A series or sum does not converge."""


class ConvergenceError(LMatrixError, ArithmeticError):
    """An iterative method exhausted its budget before reaching tolerance."""


class QuadratureError(ConvergenceError):
    """Adaptive quadrature could not meet the requested tolerance."""
