"""
The four complex potential families.

Each family is a pydantic spec that serializes to a flat JSON object with a
``family`` tag. From a spec this module builds the four-vector potential,
the effective potential of the upper component (closed form, cross-checked
against the constructive reduction in ``transform``) and the parameters of
the reference Schrödinger problem the effective potential maps onto.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Annotated, Any, Literal, Union

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError, model_validator

from config import get_settings

from . import hyperbolic as hyp
from .exceptions import DomainError, InvalidSpecError, MissingEnergyError
from .transform import (
    NORMALIZE_TOLERANCE,
    EffectivePotential,
    FourVectorPotential,
    TransformParams,
    effective_potential_scalar,
    superpotential_form,
)

logger = structlog.get_logger(__name__)

ComplexFn = Callable[[np.ndarray], np.ndarray]

ECKART = "eckart"
ROSEN_MORSE_II = "rosen-morse2"
SCARF = "scarf"
POSCHL_TELLER = "poschl-teller"
FAMILIES = (ECKART, ROSEN_MORSE_II, SCARF, POSCHL_TELLER)

CROSS_CHECK_POINTS = 8


class _SpecBase(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True, allow_inf_nan=False)

    m: float = Field(gt=0, description="Mass (energy units)")
    kappa: int = Field(-1, description="Spin-orbit quantum number")


class EckartSpec(_SpecBase):
    """Complex Dirac-Eckart: eV = i zeta coth r, eA = (C zeta / S) coth r - kappa/r."""

    family: Literal["eckart"] = ECKART
    zeta: float
    a: float
    b: float

    @model_validator(mode="before")
    @classmethod
    def _unit_pair(cls, data: Any) -> Any:
        if isinstance(data, dict) and "a" in data and "b" in data:
            try:
                a, b = float(data["a"]), float(data["b"])
            except (TypeError, ValueError):
                return data
            norm = math.hypot(a, b)
            if abs(norm - 1) >= NORMALIZE_TOLERANCE:
                raise ValueError(f"a**2 + b**2 must be 1 (|sqrt(a^2+b^2) - 1| = {abs(norm - 1):.3e})")
            tp = TransformParams.normalized(a, b)
            data = {**data, "a": tp.a, "b": tp.b}
        return data

    @property
    def transform(self) -> TransformParams:
        return TransformParams(a=self.a, b=self.b)

    @property
    def eta(self) -> float:
        tp = self.transform
        if tp.S == 0:
            raise DomainError("eta = zeta (S^2 - C^2)/S is undefined for S = 0", S=tp.S)
        return self.zeta * tp.contrast / tp.S

    def gamma(self, energy: float) -> float:
        tp = self.transform
        return 2 * energy * (tp.C**2 - tp.S**2) * self.zeta


class _HyperbolicSpec(_SpecBase):
    zeta: float = Field(gt=0)
    eta_r: float = 0.0
    eta_i: float = 0.0

    @property
    def eta(self) -> complex:
        return complex(self.eta_r, self.eta_i)


class RosenMorseIISpec(_HyperbolicSpec):
    """Complex Dirac-Rosen-Morse II: eA = zeta coth r - eta csch r - kappa/r."""

    family: Literal["rosen-morse2"] = ROSEN_MORSE_II


class ScarfSpec(_HyperbolicSpec):
    """Complex Dirac-Scarf: eA = zeta tanh r - eta sech r - kappa/r."""

    family: Literal["scarf"] = SCARF


class PoschlTellerSpec(_SpecBase):
    """Complex Dirac-Pöschl-Teller on t = r - i epsilon: eA = zeta tanh t - eta coth t - kappa/t."""

    family: Literal["poschl-teller"] = POSCHL_TELLER
    zeta: float
    eta: float
    epsilon: float = Field(gt=0, lt=math.pi / 2)
    sigma: Literal[-1, 1] = -1
    tau: Literal[-1, 1] = -1


PotentialSpec = Annotated[
    Union[EckartSpec, RosenMorseIISpec, ScarfSpec, PoschlTellerSpec],
    Field(discriminator="family"),
]
_SPEC_ADAPTER: TypeAdapter[Any] = TypeAdapter(PotentialSpec)

AnySpec = EckartSpec | RosenMorseIISpec | ScarfSpec | PoschlTellerSpec


def _describe(error: ValidationError) -> tuple[str, str | None]:
    first = error.errors()[0]
    field = ".".join(str(part) for part in first.get("loc", ()) if part not in FAMILIES) or None
    return f"{field or 'spec'}: {first.get('msg')}", field


def parse_spec(data: dict[str, Any]) -> AnySpec:
    """
    Validate a flat JSON-like mapping into a family spec.

    Raises:
        InvalidSpecError: Naming the first violated field.
    """
    try:
        return _SPEC_ADAPTER.validate_python(data)
    except ValidationError as e:
        message, field = _describe(e)
        raise InvalidSpecError(message, field) from e


def spec_to_dict(spec: AnySpec) -> dict[str, Any]:
    return spec.model_dump(mode="json")


# Reference Schrödinger problems


@dataclass(frozen=True)
class EckartReference:
    """A(A-1) csch^2 x - 2iB coth x; B depends on the energy through gamma."""

    A: float
    B: float | None
    energy_dependent: bool = True


@dataclass(frozen=True)
class HyperbolicReference:
    """Shared parameters of the Rosen-Morse II and Scarf reference potentials."""

    family: str
    q: float
    b_R: float  # noqa: N815
    b_I: float  # noqa: N815

    @property
    def b(self) -> complex:
        return complex(self.b_R, self.b_I)


@dataclass(frozen=True)
class PoschlTellerReference:
    """
    M(M-1) csch^2 t - N(N+1) sech^2 t.

    ``M`` and ``N`` are the direct substitutions eta and zeta used by the
    published spectrum; ``m_roots`` and ``n_roots`` solve the coefficient
    equations M(M-1) = eta(eta+1) and N(N+1) = zeta(zeta+1).
    """

    M: float
    N: float
    sigma: int
    tau: int
    m_roots: tuple[float, float]
    n_roots: tuple[float, float]


ReferenceParams = EckartReference | HyperbolicReference | PoschlTellerReference


def to_reference(spec: AnySpec, energy: float | None = None) -> ReferenceParams:
    """
    Map a Dirac spec onto its reference Schrödinger parameters.

    Args:
        spec: Family spec.
        energy: Relativistic energy; only Eckart uses it (B = gamma(E)/2).
    """
    if isinstance(spec, EckartSpec):
        b = None if energy is None else spec.gamma(energy) / 2
        return EckartReference(A=spec.eta, B=b)
    if isinstance(spec, RosenMorseIISpec | ScarfSpec):
        return HyperbolicReference(family=spec.family, q=spec.zeta + 0.5, b_R=spec.eta_r, b_I=spec.eta_i)
    return PoschlTellerReference(
        M=spec.eta,
        N=spec.zeta,
        sigma=spec.sigma,
        tau=spec.tau,
        m_roots=(spec.eta + 1, -spec.eta),
        n_roots=(spec.zeta, -spec.zeta - 1),
    )


def reference_potential(ref: ReferenceParams, root: int = 0) -> ComplexFn:
    """
    Reference Schrödinger potential as a function of the contour coordinate.

    Args:
        ref: Reference parameters.
        root: For Pöschl-Teller, which coefficient root pair to use (0 or 1).

    Raises:
        MissingEnergyError: For an Eckart reference built without an energy.
    """
    if isinstance(ref, EckartReference):
        if ref.B is None:
            raise MissingEnergyError(ECKART)
        a, b = ref.A, ref.B
        return lambda z: a * (a - 1) * np.asarray(hyp.csch(z)) ** 2 - 2j * b * np.asarray(hyp.coth(z))
    if isinstance(ref, HyperbolicReference):
        q, bb = ref.q, ref.b
        if ref.family == ROSEN_MORSE_II:
            return lambda z: (bb**2 + q**2 - 0.25) * np.asarray(hyp.csch(z)) ** 2 - 2 * q * bb * np.asarray(
                hyp.csch(z)
            ) * np.asarray(hyp.coth(z))
        return lambda z: (bb**2 - q**2 + 0.25) * np.asarray(hyp.sech(z)) ** 2 - 2 * q * bb * np.asarray(
            hyp.sech(z)
        ) * np.asarray(hyp.tanh(z))
    big_m, big_n = ref.m_roots[root], ref.n_roots[root]
    return lambda z: big_m * (big_m - 1) * np.asarray(hyp.csch(z)) ** 2 - big_n * (big_n + 1) * np.asarray(
        hyp.sech(z)
    ) ** 2


# Four-vector potentials


def _superpotential(spec: AnySpec) -> tuple[ComplexFn, ComplexFn]:
    if isinstance(spec, EckartSpec):
        ratio = spec.transform.C * spec.zeta / spec.transform.S

        def w(z: np.ndarray) -> np.ndarray:
            return ratio * np.asarray(hyp.coth(z))

        def w_prime(z: np.ndarray) -> np.ndarray:
            return -ratio * np.asarray(hyp.csch(z)) ** 2

    elif isinstance(spec, RosenMorseIISpec):
        zeta, eta = spec.zeta, spec.eta

        def w(z: np.ndarray) -> np.ndarray:
            return zeta * np.asarray(hyp.coth(z)) - eta * np.asarray(hyp.csch(z))

        def w_prime(z: np.ndarray) -> np.ndarray:
            csch = np.asarray(hyp.csch(z))
            return -zeta * csch**2 + eta * csch * np.asarray(hyp.coth(z))

    elif isinstance(spec, ScarfSpec):
        zeta, eta = spec.zeta, spec.eta

        def w(z: np.ndarray) -> np.ndarray:
            return zeta * np.asarray(hyp.tanh(z)) - eta * np.asarray(hyp.sech(z))

        def w_prime(z: np.ndarray) -> np.ndarray:
            sech = np.asarray(hyp.sech(z))
            return zeta * sech**2 + eta * sech * np.asarray(hyp.tanh(z))

    else:
        zeta_pt, eta_pt = spec.zeta, spec.eta

        def w(z: np.ndarray) -> np.ndarray:
            return zeta_pt * np.asarray(hyp.tanh(z)) - eta_pt * np.asarray(hyp.coth(z))

        def w_prime(z: np.ndarray) -> np.ndarray:
            return zeta_pt * np.asarray(hyp.sech(z)) ** 2 + eta_pt * np.asarray(hyp.csch(z)) ** 2

    return w, w_prime


def build_four_vector(spec: AnySpec) -> FourVectorPotential:
    """
    The (eV, eA) pair of a family, kappa counter-term included.

    Functions take the contour coordinate; for Pöschl-Teller that is
    t = r - i*epsilon, recorded as ``contour_shift``.
    """
    w, w_prime = _superpotential(spec)
    kappa = spec.kappa

    def vector_part(z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=np.complex128)
        return w(z) - kappa / z

    def vector_derivative(z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=np.complex128)
        return w_prime(z) + kappa / z**2

    if isinstance(spec, EckartSpec):
        zeta = spec.zeta

        def scalar_part(z: np.ndarray) -> np.ndarray:
            return 1j * zeta * np.asarray(hyp.coth(z))

        def scalar_derivative(z: np.ndarray) -> np.ndarray:
            return -1j * zeta * np.asarray(hyp.csch(z)) ** 2

    else:

        def scalar_part(z: np.ndarray) -> np.ndarray:
            return np.zeros_like(np.asarray(z, dtype=np.complex128))

        scalar_derivative = scalar_part

    return FourVectorPotential(
        scalar_part=scalar_part,
        vector_part=vector_part,
        kappa=kappa,
        scalar_derivative=scalar_derivative,
        vector_derivative=vector_derivative,
        analytic_superpotential=w,
        analytic_superpotential_derivative=w_prime,
        contour_shift=spec.epsilon if isinstance(spec, PoschlTellerSpec) else 0.0,
    )


# Effective potentials


def constant_shift(spec: AnySpec) -> float:
    """The additive constant separating V_eff from its reference potential."""
    if isinstance(spec, EckartSpec):
        return spec.eta**2
    if isinstance(spec, PoschlTellerSpec):
        return (spec.zeta - spec.eta) ** 2
    return spec.zeta**2


def energy_offset(spec: AnySpec) -> float:
    """
    Signed constant c of the closed-form bridge E^2 = m^2 + c + lambda.

    Scarf and Rosen-Morse II add zeta^2. The Pöschl-Teller and Eckart
    closed forms subtract (zeta - eta)^2 and eta^2, the opposite sign of
    the constant the constructed V_eff carries, so numeric eigenvalues are
    mapped to energies with this offset rather than with constant_shift.
    """
    if isinstance(spec, EckartSpec):
        return -(spec.eta**2)
    if isinstance(spec, PoschlTellerSpec):
        return -((spec.zeta - spec.eta) ** 2)
    return spec.zeta**2


def contour_shift(spec: AnySpec) -> float:
    """Imaginary offset of the default verification contour."""
    if isinstance(spec, PoschlTellerSpec):
        return spec.epsilon
    configured = get_settings().family_contour(spec.family).shift
    return 0.0 if configured is None else configured


def cross_check_points(spec: AnySpec) -> np.ndarray:
    if isinstance(spec, EckartSpec):
        x = np.linspace(0.5, 3.0, CROSS_CHECK_POINTS)
    else:
        x = np.linspace(-3.0, 3.0, CROSS_CHECK_POINTS)
    return x - 1j * contour_shift(spec)


def _closed_forms(spec: AnySpec, energy: float | None) -> dict[str, ComplexFn]:
    if isinstance(spec, EckartSpec):
        eta, shift = spec.eta, spec.eta**2
        gamma = spec.gamma(energy or 0.0)
        return {
            "csch_squared": lambda z: eta * (eta - 1) * np.asarray(hyp.csch(z)) ** 2
            - 1j * gamma * np.asarray(hyp.coth(z))
            + shift,
            "tanh_squared": lambda z: eta * (eta - 1) * np.asarray(hyp.tanh(z)) ** 2
            - 1j * gamma * np.asarray(hyp.coth(z))
            - shift,
        }
    if isinstance(spec, RosenMorseIISpec):
        zeta, eta = spec.zeta, spec.eta
        half = zeta + 0.5
        return {
            "closed_form": lambda z: (eta**2 + half**2 - 0.25) * np.asarray(hyp.csch(z)) ** 2
            - 2 * half * eta * np.asarray(hyp.csch(z)) * np.asarray(hyp.coth(z))
            + zeta**2
        }
    if isinstance(spec, ScarfSpec):
        zeta, eta = spec.zeta, spec.eta
        half = zeta + 0.5
        return {
            "closed_form": lambda z: (eta**2 - half**2 + 0.25) * np.asarray(hyp.sech(z)) ** 2
            - 2 * half * eta * np.asarray(hyp.sech(z)) * np.asarray(hyp.tanh(z))
            + zeta**2
        }
    zeta_pt, eta_pt = spec.zeta, spec.eta
    return {
        "closed_form": lambda z: -zeta_pt * (zeta_pt + 1) * np.asarray(hyp.sech(z)) ** 2
        + eta_pt * (eta_pt + 1) * np.asarray(hyp.csch(z)) ** 2
        + (zeta_pt - eta_pt) ** 2
    }


def constructive_effective(spec: AnySpec, energy: float | None = None) -> EffectivePotential:
    """Effective potential obtained mechanically from the four-vector."""
    fv = build_four_vector(spec)
    if isinstance(spec, EckartSpec):
        if energy is None:
            raise MissingEnergyError(ECKART)
        built = effective_potential_scalar(spec.transform, fv.scalar_part, energy, fv.scalar_derivative)
    else:
        built = superpotential_form(fv.superpotential, fv.superpotential_derivative)
    return EffectivePotential(
        value_at=built.value_at,
        constant_shift=constant_shift(spec),
        energy_dependent=isinstance(spec, EckartSpec),
        family=spec.family,
    )


def build_effective(
    spec: AnySpec,
    energy: float | None = None,
    source: Literal["closed_form", "constructive"] = "closed_form",
) -> EffectivePotential:
    """
    Effective potential of a family, cross-checked against the constructive path.

    Every closed form is compared with the constructive reduction at
    ``CROSS_CHECK_POINTS`` contour points; deviations above the configured
    cross-check tolerance are logged as ``closed_form_mismatch``. For
    Eckart the constructive expansion is authoritative: the closed form
    returned is its csch**2 reading, and the tanh**2 reading is recorded
    as a candidate.

    Raises:
        MissingEnergyError: For Eckart without ``energy``.
    """
    if isinstance(spec, EckartSpec) and energy is None:
        raise MissingEnergyError(ECKART)

    constructive = constructive_effective(spec, energy)
    forms = _closed_forms(spec, energy)
    points = cross_check_points(spec)
    reference = constructive(points)
    tolerance = get_settings().tolerances.cross_check

    deviations: dict[str, float] = {}
    for name, form in forms.items():
        deviation = float(np.max(np.abs(form(points) - reference)))
        deviations[name] = deviation
        if deviation > tolerance:
            logger.warning(
                "closed_form_mismatch", family=spec.family, form=name, max_deviation=deviation
            )

    if source == "constructive":
        chosen = constructive.value_at
    else:
        chosen = forms["csch_squared"] if isinstance(spec, EckartSpec) else forms["closed_form"]

    return EffectivePotential(
        value_at=chosen,
        constant_shift=constant_shift(spec),
        energy_dependent=isinstance(spec, EckartSpec),
        family=spec.family,
        closed_form_deviation=deviations,
    )
