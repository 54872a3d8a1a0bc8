"""
jacobi_poly: Jacobi polynomials with complex parameters.

Recurrence evaluation, an extended-precision series oracle and the
derivative identity, all vectorized over the argument.
"""

__version__ = "0.1.0"

from .exceptions import JacobiDegreeTooLarge, JacobiDomainError, JacobiError
from .jacobi import (
    SERIES_MAX_DEGREE,
    JacobiParams,
    jacobi_derivative,
    jacobi_eval,
    jacobi_eval_series,
)

__all__ = [
    "JacobiParams",
    "jacobi_eval",
    "jacobi_eval_series",
    "jacobi_derivative",
    "SERIES_MAX_DEGREE",
    "JacobiError",
    "JacobiDomainError",
    "JacobiDegreeTooLarge",
]
