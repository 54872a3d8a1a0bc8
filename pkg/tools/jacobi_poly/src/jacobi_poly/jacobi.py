"""
Jacobi polynomials P_n^(alpha, beta)(z) for complex parameters and arguments.

The production path is the three-term recurrence in n. The explicit
terminating sum is kept as an independent oracle and is evaluated with
mpmath at extended working precision so that cancellation between its
terms does not limit the comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import overload

import mpmath
import numpy as np
import numpy.typing as npt

from .exceptions import JacobiDegreeTooLarge, JacobiDomainError

SERIES_MAX_DEGREE = 30
SERIES_WORKING_DPS = 50

# Relative size below which a recurrence leading coefficient is treated as zero.
_DEGENERATE_LEADING = 1e-8

ComplexArray = npt.NDArray[np.complex128]


@dataclass(frozen=True)
class JacobiParams:
    """
    Degree and parameters of a Jacobi polynomial.

    Example:
        >>> params = JacobiParams(n=1, alpha=2, beta=1)
        >>> jacobi_eval(params, 1.0)
        (3+0j)
    """

    n: int
    alpha: complex
    beta: complex

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, int | np.integer):
            raise JacobiDomainError("n", self.n)
        if self.n < 0:
            raise JacobiDomainError("n", self.n)
        for field in ("alpha", "beta"):
            value = complex(getattr(self, field))
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise JacobiDomainError(field, value)
            object.__setattr__(self, field, value)
        object.__setattr__(self, "n", int(self.n))

    def shifted(self) -> JacobiParams:
        """Parameters of the polynomial that appears in the derivative identity."""
        return JacobiParams(n=self.n - 1, alpha=self.alpha + 1, beta=self.beta + 1)


def _as_points(z: complex | npt.ArrayLike) -> ComplexArray:
    points = np.asarray(z, dtype=np.complex128)
    if not np.all(np.isfinite(points)):
        raise JacobiDomainError("z", z)
    return points


def _restore_shape(values: ComplexArray) -> complex | ComplexArray:
    if values.ndim == 0:
        return complex(values)
    return values


def _leading(n: int, alpha: complex, beta: complex) -> complex:
    return 2 * n * (n + alpha + beta) * (2 * n + alpha + beta - 2)


def _terminating_sum(params: JacobiParams, points: ComplexArray) -> ComplexArray:
    """Double-precision explicit sum, used when the recurrence degenerates."""
    n, alpha, beta = params.n, params.alpha, params.beta
    w = (points - 1) / 2
    total = np.zeros_like(points)
    for s in range(n + 1):
        coeff = complex(1.0)
        for j in range(s + 1, n + 1):
            coeff *= alpha + j
        for j in range(s):
            coeff *= n + alpha + beta + 1 + j
        coeff /= math.factorial(n - s) * math.factorial(s)
        total = total + coeff * w**s
    return total


@overload
def jacobi_eval(params: JacobiParams, z: complex) -> complex: ...


@overload
def jacobi_eval(params: JacobiParams, z: npt.ArrayLike) -> complex | ComplexArray: ...


def jacobi_eval(params: JacobiParams, z: complex | npt.ArrayLike) -> complex | ComplexArray:
    """
    Evaluate P_n^(alpha, beta)(z) by the three-term recurrence in n.

    Args:
        params: Degree and parameters.
        z: A complex point or an array of points.

    Returns:
        The polynomial value, with the same shape as ``z``.

    Raises:
        JacobiDomainError: If ``z`` contains NaN or infinite entries.

    Example:
        >>> jacobi_eval(JacobiParams(n=0, alpha=1j, beta=2), 0.7 + 0.2j)
        (1+0j)
    """
    points = _as_points(z)
    n, alpha, beta = params.n, params.alpha, params.beta

    if n == 0:
        return _restore_shape(np.ones_like(points))

    p_prev = np.ones_like(points)
    p_curr = (alpha + 1) + (alpha + beta + 2) * (points - 1) / 2

    for k in range(2, n + 1):
        a_k = _leading(k, alpha, beta)
        c_k = (2 * k + alpha + beta - 1) * (2 * k + alpha + beta) * (2 * k + alpha + beta - 2)
        if abs(a_k) <= _DEGENERATE_LEADING * max(1.0, abs(c_k)):
            return _restore_shape(_terminating_sum(params, points))
        b_k = (2 * k + alpha + beta - 1) * (alpha**2 - beta**2)
        d_k = 2 * (k + alpha - 1) * (k + beta - 1) * (2 * k + alpha + beta)
        p_next = ((c_k * points + b_k) * p_curr - d_k * p_prev) / a_k
        p_prev, p_curr = p_curr, p_next

    return _restore_shape(p_curr)


def jacobi_eval_series(
    params: JacobiParams, z: complex | npt.ArrayLike
) -> complex | ComplexArray:
    """
    Evaluate P_n^(alpha, beta)(z) from the explicit terminating sum.

    Pochhammer factors are formed as rising factorials, which have no
    poles, and the sum runs at ``SERIES_WORKING_DPS`` decimal digits.

    Raises:
        JacobiDegreeTooLarge: If ``params.n`` exceeds ``SERIES_MAX_DEGREE``.
        JacobiDomainError: If ``z`` contains NaN or infinite entries.
    """
    if params.n > SERIES_MAX_DEGREE:
        raise JacobiDegreeTooLarge(params.n, SERIES_MAX_DEGREE)
    points = _as_points(z)
    n = params.n

    with mpmath.workdps(SERIES_WORKING_DPS):
        alpha = mpmath.mpc(params.alpha)
        beta = mpmath.mpc(params.beta)
        coeffs = [
            mpmath.rf(alpha + s + 1, n - s)
            * mpmath.rf(n + alpha + beta + 1, s)
            / (mpmath.factorial(n - s) * mpmath.factorial(s))
            for s in range(n + 1)
        ]
        flat = np.empty(points.size, dtype=np.complex128)
        for idx, point in enumerate(points.ravel()):
            w = (mpmath.mpc(point) - 1) / 2
            flat[idx] = complex(mpmath.fsum(c * w**s for s, c in enumerate(coeffs)))

    return _restore_shape(flat.reshape(points.shape))


def jacobi_derivative(
    params: JacobiParams, z: complex | npt.ArrayLike
) -> complex | ComplexArray:
    """
    Evaluate d/dz P_n^(alpha, beta)(z).

    Uses (n + alpha + beta + 1)/2 * P_(n-1)^(alpha+1, beta+1)(z); the
    derivative of P_0 is zero everywhere.
    """
    points = _as_points(z)
    if params.n == 0:
        return _restore_shape(np.zeros_like(points))
    scale = (params.n + params.alpha + params.beta + 1) / 2
    return _restore_shape(scale * np.asarray(jacobi_eval(params.shifted(), points)))
