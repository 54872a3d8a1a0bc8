"""
Unitary rotation of the radial spinor and the two effective-potential
constructions.

The radial Dirac pair is reduced to a Schrödinger-like equation for the
upper component either through a scalar potential tied to the vector
potential by the gauge condition eV = (iS/C)(eA + kappa/r), or, when the
scalar potential vanishes, through the superpotential W = eA + kappa/r,
giving V_eff = W**2 - W'.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np
import structlog

from .exceptions import (
    DegenerateDenominatorError,
    DomainError,
    GaugeConditionError,
    InvalidSpecError,
)
from .sampling import SampledFunction

logger = structlog.get_logger(__name__)

ComplexFn = Callable[[np.ndarray], np.ndarray]

UNIT_TOLERANCE = 1e-12
NORMALIZE_TOLERANCE = 1e-6
DERIVATIVE_STEP = 1e-3
_DENOMINATOR_FLOOR = 1e-14


def _as_array(z: complex | Sequence[complex] | np.ndarray) -> np.ndarray:
    return np.asarray(z, dtype=np.complex128)


def holomorphic_derivative(f: ComplexFn, z: complex | np.ndarray, step: float = DERIVATIVE_STEP) -> np.ndarray:
    """
    Fourth-order central difference of a holomorphic function along Re z.

    Used for potentials without an analytic derivative; complex-step
    differentiation does not apply once the argument is already complex.
    """
    z = _as_array(z)
    return (f(z - 2 * step) - 8 * f(z - step) + 8 * f(z + step) - f(z + 2 * step)) / (12 * step)


def finite_difference(values: np.ndarray, h: float) -> np.ndarray:
    """First derivative of uniform samples: 4th order inside, 2nd order at the edges."""
    values = _as_array(values)
    derivative = np.gradient(values, h, edge_order=2)
    if values.size >= 5:
        derivative[2:-2] = (values[:-4] - 8 * values[1:-3] + 8 * values[3:-1] - values[4:]) / (12 * h)
    return derivative


@dataclass(frozen=True)
class TransformParams:
    """
    Global rotation (a, b) of the two radial components, a**2 + b**2 = 1.

    Example:
        >>> tp = TransformParams.from_angle(math.pi / 12)
        >>> round(tp.S, 12), round(tp.C**2, 12)
        (0.5, 0.75)
    """

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise InvalidSpecError("transform parameters must be finite", "a")
        if abs(self.a**2 + self.b**2 - 1) > UNIT_TOLERANCE:
            raise InvalidSpecError(
                f"a**2 + b**2 must equal 1 (got {self.a**2 + self.b**2!r})", "a"
            )

    @classmethod
    def normalized(cls, a: float, b: float) -> TransformParams:
        """
        Build from a nearly unit pair, rescaling it onto the unit circle.

        Raises:
            InvalidSpecError: If sqrt(a**2 + b**2) is off by NORMALIZE_TOLERANCE or more.
        """
        norm = math.hypot(a, b)
        deviation = abs(norm - 1)
        if deviation >= NORMALIZE_TOLERANCE:
            raise InvalidSpecError(
                f"(a, b) = ({a}, {b}) is not a unit pair: |sqrt(a^2+b^2) - 1| = {deviation:.3e}",
                "a",
            )
        if deviation > 0:
            logger.warning("transform_normalized", a=a, b=b, deviation=deviation)
        return cls(a=a / norm, b=b / norm)

    @classmethod
    def from_angle(cls, theta: float) -> TransformParams:
        return cls(a=math.cos(theta), b=math.sin(theta))

    @property
    def S(self) -> float:  # noqa: N802
        return 2 * self.a * self.b

    @property
    def C(self) -> float:  # noqa: N802
        return self.a**2 - self.b**2

    @property
    def contrast(self) -> float:
        """S**2 - C**2, the factor every scalar-potential term carries."""
        return self.S**2 - self.C**2


@dataclass(frozen=True)
class FourVectorPotential:
    """
    Scalar and radial vector parts of a static four-potential.

    Both parts are functions of the contour coordinate. ``superpotential``
    is the analytic eA + kappa/r when a family supplies it with the
    counter-term cancelled; otherwise it is assembled from ``vector_part``.
    """

    scalar_part: ComplexFn
    vector_part: ComplexFn
    kappa: int
    scalar_derivative: ComplexFn | None = None
    vector_derivative: ComplexFn | None = None
    analytic_superpotential: ComplexFn | None = field(default=None, repr=False)
    analytic_superpotential_derivative: ComplexFn | None = field(default=None, repr=False)
    contour_shift: float = 0.0

    def superpotential(self, z: complex | np.ndarray) -> np.ndarray:
        z = _as_array(z)
        if self.analytic_superpotential is not None:
            return self.analytic_superpotential(z)
        return self.vector_part(z) + self.kappa / z

    def superpotential_derivative(self, z: complex | np.ndarray) -> np.ndarray:
        z = _as_array(z)
        if self.analytic_superpotential_derivative is not None:
            return self.analytic_superpotential_derivative(z)
        if self.vector_derivative is not None:
            return self.vector_derivative(z) - self.kappa / z**2
        return holomorphic_derivative(self.superpotential, z)

    def scalar_slope(self, z: complex | np.ndarray) -> np.ndarray:
        z = _as_array(z)
        if self.scalar_derivative is not None:
            return self.scalar_derivative(z)
        return holomorphic_derivative(self.scalar_part, z)


@dataclass(frozen=True)
class EffectivePotential:
    """
    Potential of the second-order equation for the upper component.

    The reduced equation reads -phi'' + value_at(z) phi = (E**2 - m**2) phi,
    and the reference Schrödinger problem is value_at - constant_shift.
    """

    value_at: ComplexFn
    constant_shift: complex = 0.0
    energy_dependent: bool = False
    family: str | None = None
    closed_form_deviation: dict[str, float] = field(default_factory=dict, compare=False)

    def __call__(self, z: complex | np.ndarray) -> np.ndarray:
        return self.value_at(_as_array(z))

    def reference_at(self, z: complex | np.ndarray) -> np.ndarray:
        return self.value_at(_as_array(z)) - self.constant_shift


def gauge_fix_check(
    tp: TransformParams, fv: FourVectorPotential, samples: Sequence[complex] | np.ndarray
) -> float:
    """
    Largest violation of eV = (iS/C)(eA + kappa/r) over the sample points.

    Raises:
        DomainError: If S vanishes.
        GaugeConditionError: If C vanishes.
    """
    if tp.S == 0:
        raise DomainError("gauge condition needs S != 0", S=tp.S)
    if tp.C == 0:
        raise GaugeConditionError(tp.S, tp.C)
    z = _as_array(samples)
    expected = (1j * tp.S / tp.C) * (fv.vector_part(z) + fv.kappa / z)
    return float(np.max(np.abs(fv.scalar_part(z) - expected)))


def effective_potential_scalar(
    tp: TransformParams,
    eV: ComplexFn,
    energy: float,
    eV_derivative: ComplexFn | None = None,
) -> EffectivePotential:
    """
    Effective potential from a gauge-fixed scalar potential.

    V_eff = -D**2 eV**2 + 2E (S**2 - C**2) eV - i D eV' with
    D = (S**2 - C**2)/S. Without ``eV_derivative`` the slope is taken by
    holomorphic_derivative.

    Raises:
        DomainError: If S vanishes.
    """
    if tp.S == 0:
        raise DomainError("scalar construction divides by S", S=tp.S)
    contrast = tp.contrast
    d = contrast / tp.S
    slope = eV_derivative or (lambda z: holomorphic_derivative(eV, z))

    def value_at(z: np.ndarray) -> np.ndarray:
        z = _as_array(z)
        v = eV(z)
        return -(d**2) * v**2 + 2 * energy * contrast * v - 1j * d * slope(z)

    return EffectivePotential(value_at=value_at, energy_dependent=True)


def superpotential_form(w: ComplexFn, w_prime: ComplexFn) -> EffectivePotential:
    """V_eff = W**2 - W' for a given superpotential and its derivative."""

    def value_at(z: np.ndarray) -> np.ndarray:
        z = _as_array(z)
        return w(z) ** 2 - w_prime(z)

    return EffectivePotential(value_at=value_at)


def effective_potential_vector(
    eA: ComplexFn, kappa: int, eA_derivative: ComplexFn | None = None
) -> EffectivePotential:
    """Effective potential W**2 - W' with W = eA + kappa/r."""
    fv = FourVectorPotential(
        scalar_part=np.zeros_like,
        vector_part=eA,
        kappa=kappa,
        vector_derivative=eA_derivative,
    )
    return superpotential_form(fv.superpotential, fv.superpotential_derivative)


def _upper_slope(upper: SampledFunction) -> np.ndarray:
    if upper.derivative is not None:
        return upper.derivative
    return finite_difference(upper.values, upper.h)


def _scalar_coupling(tp: TransformParams, fv: FourVectorPotential, energy: float, z: np.ndarray) -> np.ndarray:
    return 1j * (tp.contrast / tp.S) * fv.scalar_part(z) - 1j * tp.S * energy


def lower_component(
    upper: SampledFunction,
    fv: FourVectorPotential,
    tp: TransformParams | None,
    energy: float,
    m: float,
) -> SampledFunction:
    """
    Lower spinor component from the upper one.

    With ``tp`` None (no scalar potential) the lower component is
    (d/dr + W) upper / (m + E). With a rotation it is
    (X + d/dr) upper / (m + E*C), X = i D eV - i S E.

    Raises:
        DegenerateDenominatorError: If the relevant denominator vanishes.
    """
    z = upper.points
    slope = _upper_slope(upper)
    if tp is None:
        denominator = m + energy
        coupling = fv.superpotential(z)
    else:
        if tp.S == 0:
            raise DomainError("rotated lower component divides by S", S=tp.S)
        denominator = m + energy * tp.C
        coupling = _scalar_coupling(tp, fv, energy, z)
    if abs(denominator) < _DENOMINATOR_FLOOR:
        raise DegenerateDenominatorError(
            "lower component denominator vanishes", denominator=denominator
        )
    lower = (slope + coupling * upper.values) / denominator
    return SampledFunction(points=z, values=lower)


def first_order_residual(
    upper: SampledFunction,
    lower: SampledFunction,
    fv: FourVectorPotential,
    tp: TransformParams | None,
    energy: float,
    m: float,
    margin: int = 2,
) -> float:
    """
    Sup-norm residual of the first-order radial pair on interior points.

    Both equations of the pair are evaluated with 4th-order differences
    of the samples and the larger defect relative to max|upper| is
    returned.
    """
    z = upper.points
    h = upper.h
    du = finite_difference(upper.values, h)
    dl = finite_difference(lower.values, h)
    u, l = upper.values, lower.values
    if tp is None:
        w = fv.superpotential(z)
        first = (m - energy) * u - (dl - w * l)
        second = (m + energy) * l - (du + w * u)
    else:
        x = _scalar_coupling(tp, fv, energy, z)
        first = (m - energy * tp.C) * u + (x * l - dl)
        second = (m + energy * tp.C) * l - (x * u + du)
    inner = slice(margin, -margin)
    scale = float(np.max(np.abs(u)))
    if scale == 0.0:
        return 0.0
    return float(max(np.max(np.abs(first[inner])), np.max(np.abs(second[inner]))) / scale)
