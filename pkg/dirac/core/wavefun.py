"""
Analytic upper-component eigenfunctions and their numeric normalization.

Complex powers are exp(s * Log w) with the principal logarithm. The
families' contours keep the bases away from the negative real axis; points
where that fails are logged as ``branch_flag``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
import structlog
from scipy.integrate import trapezoid

from config import get_settings
from jacobi_poly import JacobiParams, jacobi_derivative, jacobi_eval

from . import hyperbolic as hyp
from .exceptions import (
    BranchCutError,
    DivergentNormError,
    InadmissibleLevelError,
    SpectraError,
    UnsupportedFamilyError,
)
from .potentials import (
    AnySpec,
    EckartSpec,
    PoschlTellerSpec,
    RosenMorseIISpec,
    ScarfSpec,
)
from .sampling import SampledFunction
from .spectra import BoundLevel, poschl_teller_roots

if TYPE_CHECKING:
    from dirac.verify.grid import ContourGrid

logger = structlog.get_logger(__name__)

_SINGULAR_DISTANCE = 1e-12
_TAIL_PROBE = 0.1


@dataclass(frozen=True)
class EckartExponents:
    """Exponents of (coth z - 1)^mu (coth z + 1)^nu; Re(2 mu) = eta - n."""

    mu: complex
    nu: complex


def eckart_exponents(spec: EckartSpec, level: BoundLevel) -> EckartExponents:
    k = spec.eta - level.n
    if abs(k) < 1e-9:
        raise InadmissibleLevelError(level.n, spec.family, "eta - n vanishes")
    b = spec.gamma(level.energy) / 2
    return EckartExponents(mu=(k - 1j * b / k) / 2, nu=(k + 1j * b / k) / 2)


def _flag_branch(family: str, bases: np.ndarray) -> None:
    crossing = int(np.count_nonzero((bases.real <= 0) & (np.abs(bases.imag) < 1e-12)))
    if crossing:
        logger.warning("branch_flag", family=family, points=crossing)


def _scarf(spec: ScarfSpec, n: int, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    q = spec.zeta + 0.5
    eta = spec.eta
    params = JacobiParams(n=n, alpha=-q + 1j * eta, beta=-q - 1j * eta)
    u = 1j * np.sinh(z)
    envelope = np.exp(-spec.zeta * np.asarray(hyp.log_cosh(z)) + eta * np.asarray(hyp.gd(z)))
    poly = np.asarray(jacobi_eval(params, u))
    slope = -spec.zeta * np.asarray(hyp.tanh(z)) + eta * np.asarray(hyp.sech(z))
    derivative = envelope * (slope * poly + np.asarray(jacobi_derivative(params, u)) * 1j * np.cosh(z))
    return envelope * poly, derivative


def _eckart(spec: EckartSpec, level: BoundLevel, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    exps = eckart_exponents(spec, level)
    # coth z -/+ 1 without cancellation for Re z > 0
    y_minus = 2 / np.expm1(2 * z)
    y_plus = 2 / -np.expm1(-2 * z)
    y = y_minus + 1
    _flag_branch(spec.family, y_minus)
    params = JacobiParams(n=level.n - 1, alpha=2 * exps.mu, beta=2 * exps.nu)
    prefactor = np.exp(exps.mu * np.log(y_minus) + exps.nu * np.log(y_plus))
    poly = np.asarray(jacobi_eval(params, y))
    log_slope = -exps.mu * y_plus - exps.nu * y_minus
    derivative = prefactor * (log_slope * poly - np.asarray(jacobi_derivative(params, y)) * y_minus * y_plus)
    return prefactor * poly, derivative


def poschl_teller_indices(spec: PoschlTellerSpec, level: BoundLevel) -> tuple[float, float, int]:
    """
    Root pair (a, b) and Jacobi degree reproducing a level's reference energy.

    Raises:
        InadmissibleLevelError: If no decaying root pair gives the level.
    """
    a_roots, b_roots = poschl_teller_roots(spec, "closed_form")
    c = spec.sigma * spec.zeta + spec.tau * spec.eta + (spec.tau - spec.sigma) / 2
    target = 2 * level.n + c
    for a in a_roots:
        for b in b_roots:
            degree = (target - a - b) / 2
            rounded = round(degree)
            if rounded >= 0 and abs(degree - rounded) < 1e-9 and a + b + 2 * rounded < 0:
                return a, b, rounded
    raise InadmissibleLevelError(level.n, spec.family, "no decaying root pair reproduces this level")


def _poschl_teller(spec: PoschlTellerSpec, level: BoundLevel, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a, b, degree = poschl_teller_indices(spec, level)
    params = JacobiParams(n=degree, alpha=a - 0.5, beta=b - 0.5)
    envelope = np.exp(a * np.asarray(hyp.log_sinh(t)) + b * np.asarray(hyp.log_cosh(t)))
    u = np.cosh(2 * t)
    poly = np.asarray(jacobi_eval(params, u))
    slope = a * np.asarray(hyp.coth(t)) + b * np.asarray(hyp.tanh(t))
    derivative = envelope * (slope * poly + np.asarray(jacobi_derivative(params, u)) * 2 * np.sinh(2 * t))
    return envelope * poly, derivative


def eigenfunction(spec: AnySpec, level: BoundLevel, grid: ContourGrid) -> SampledFunction:
    """
    Sample the analytic upper component of an admissible level.

    Returns:
        Unnormalized samples with their analytic derivative.

    Raises:
        UnsupportedFamilyError: For Rosen-Morse II.
        InadmissibleLevelError: If the level is outside its window.
        BranchCutError: If the contour passes through a singular point.
    """
    if isinstance(spec, RosenMorseIISpec):
        raise UnsupportedFamilyError(spec.family, "eigenfunction")
    if not level.admissible:
        raise InadmissibleLevelError(level.n, spec.family, "outside the normalizability window")

    z = np.asarray(grid.points, dtype=np.complex128)
    if isinstance(spec, EckartSpec | PoschlTellerSpec):
        nearest = float(np.min(np.abs(z)))
        if nearest < _SINGULAR_DISTANCE:
            raise BranchCutError(
                "contour passes through the singular point z = 0", spec.family, point=0j
            )
    if isinstance(spec, EckartSpec) and float(np.min(z.real)) <= 0:
        raise BranchCutError("Eckart eigenfunctions need a contour with Re z > 0", spec.family)

    if isinstance(spec, ScarfSpec):
        values, derivative = _scarf(spec, level.n, z)
    elif isinstance(spec, EckartSpec):
        values, derivative = _eckart(spec, level, z)
    else:
        values, derivative = _poschl_teller(spec, level, z)
    return SampledFunction(points=z, values=values, derivative=derivative)


def norm_squared(f: SampledFunction) -> float:
    """Trapezoid integral of |f|^2 along the real-part parametrization."""
    return float(trapezoid(np.abs(f.values) ** 2, x=f.points.real))


def _check_tails(f: SampledFunction) -> None:
    magnitude = np.abs(f.values)
    peak = float(np.max(magnitude))
    probe = max(1, int(_TAIL_PROBE * magnitude.size))
    floor = get_settings().tolerances.tail_fraction * peak
    for tail_index, inner_index in ((0, probe), (-1, -1 - probe)):
        tail, inner = float(magnitude[tail_index]), float(magnitude[inner_index])
        if tail > floor and tail > inner:
            raise DivergentNormError(tail=tail, reference=inner)


def normalization_factor(f: SampledFunction) -> float:
    """
    Positive scale that gives f unit norm.

    Raises:
        DivergentNormError: If the samples grow towards either grid end.
    """
    _check_tails(f)
    squared = norm_squared(f)
    if squared <= 0:
        raise SpectraError("cannot normalize an identically zero function", error_code="ZERO_NORM")
    return 1.0 / float(np.sqrt(squared))


def normalize(f: SampledFunction) -> SampledFunction:
    """Scale f so that its trapezoid norm is one; the phase is untouched."""
    return f.scaled(normalization_factor(f), normalized=True)
