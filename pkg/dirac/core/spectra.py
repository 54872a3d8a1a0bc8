"""
Closed-form relativistic spectra of the four families.

Energies are formed in square space first and square-rooted last. A level
is emitted when its energy is real and positive; ``admissible`` further
requires the reference eigenfunction to be normalizable.
"""

from __future__ import annotations

import math
from typing import Literal

import structlog
from pydantic import BaseModel, ConfigDict

from .exceptions import DomainError, MissingEnergyError
from .potentials import (
    AnySpec,
    EckartReference,
    EckartSpec,
    HyperbolicReference,
    PoschlTellerReference,
    PoschlTellerSpec,
    ReferenceParams,
    energy_offset,
)

logger = structlog.get_logger(__name__)

_MATCH_RTOL = 1e-9
_ZERO_TOL = 1e-9


class BoundLevel(BaseModel):
    """One closed-form level; serializes to the spectrum JSON array entry."""

    model_config = ConfigDict(frozen=True)

    n: int
    energy: float
    schrodinger_energy: float
    admissible: bool
    admissibility_margin: float


class EckartRootCandidates(BaseModel):
    """Squared energies of one Eckart level under the competing algebraic forms."""

    model_config = ConfigDict(frozen=True)

    n: int
    published: float
    shift_subtracted: float
    shift_added: float
    matches_published: list[str]


class QuasiParityLevel(BaseModel):
    """A Pöschl-Teller level obtained directly from the coefficient roots (a, b)."""

    model_config = ConfigDict(frozen=True)

    a: float
    b: float
    n: int
    schrodinger_energy: float
    energy: float | None


def _vanishes(value: float) -> bool:
    return abs(value) < _ZERO_TOL


def _pt_offset(spec: PoschlTellerSpec) -> float:
    return spec.sigma * spec.zeta + spec.tau * spec.eta + (spec.tau - spec.sigma) / 2


def _hyperbolic_levels(spec: AnySpec) -> list[BoundLevel]:
    zeta, m = spec.zeta, spec.m
    radius = math.sqrt(m**2 + zeta**2)
    levels = []
    n = 0
    while n - zeta < radius:
        if abs(n - zeta) < radius:
            e2 = m**2 + zeta**2 - (zeta - n) ** 2
            if e2 > 0:
                levels.append(
                    BoundLevel(
                        n=n,
                        energy=math.sqrt(e2),
                        schrodinger_energy=-((zeta - n) ** 2),
                        admissible=n < zeta,
                        admissibility_margin=min(zeta - n, radius - abs(n - zeta)),
                    )
                )
        n += 1
    return levels


def _eckart_denominator(spec: EckartSpec, n: int, factor: float) -> float:
    eta, s = spec.eta, spec.transform.S
    return ((1 - factor * s) * eta - n) * ((1 + factor * s) * eta - n)


def eckart_published_energy_squared(spec: EckartSpec, n: int) -> float:
    """E**2 = [m^2 - eta^2 - (eta-n)^2](eta-n)^2 / ([(1-2S)eta - n][(1+2S)eta - n])."""
    k = spec.eta - n
    denominator = _eckart_denominator(spec, n, 2.0)
    if _vanishes(denominator):
        raise DomainError("Eckart energy denominator vanishes", n=n)
    return (spec.m**2 - spec.eta**2 - k**2) * k**2 / denominator


def _eckart_levels(spec: EckartSpec) -> list[BoundLevel]:
    eta, m = spec.eta, spec.m
    radius_sq = eta**2 - m**2
    if radius_sq <= 0:
        return []
    radius = math.sqrt(radius_sq)
    levels = []
    n = 1
    while n - eta < radius:
        k = eta - n
        if abs(n - eta) < radius and not _vanishes(k) and not _vanishes(_eckart_denominator(spec, n, 2.0)):
            e2 = eckart_published_energy_squared(spec, n)
            if e2 > 0:
                energy = math.sqrt(e2)
                b = spec.gamma(energy) / 2
                levels.append(
                    BoundLevel(
                        n=n,
                        energy=energy,
                        schrodinger_energy=b**2 / k**2 - k**2,
                        admissible=eta - n > _ZERO_TOL,
                        admissibility_margin=min(radius - abs(n - eta), eta - n),
                    )
                )
        n += 1
    return levels


def _poschl_teller_levels(spec: PoschlTellerSpec) -> list[BoundLevel]:
    c = _pt_offset(spec)
    delta_sq = spec.m**2 - (spec.zeta - spec.eta) ** 2
    if delta_sq <= 0:
        return []
    delta = math.sqrt(delta_sq)
    levels = []
    n = 1
    while 2 * n < delta - c:
        k = 2 * n + c
        e2 = delta_sq - k**2
        if e2 > 0:
            # k = 0 sits on the reference threshold and has no normalizable state
            levels.append(
                BoundLevel(
                    n=n,
                    energy=math.sqrt(e2),
                    schrodinger_energy=-(k**2),
                    admissible=k < 0 and not _vanishes(k),
                    admissibility_margin=min((delta - c) / 2 - n, -c / 2 - n),
                )
            )
        n += 1
    return levels


def spectrum(spec: AnySpec) -> list[BoundLevel]:
    """
    Closed-form bound levels of a family, ordered by n.

    Raises:
        DomainError: For Eckart with S = 0.
    """
    if isinstance(spec, EckartSpec):
        levels = _eckart_levels(spec)
    elif isinstance(spec, PoschlTellerSpec):
        levels = _poschl_teller_levels(spec)
    else:
        levels = _hyperbolic_levels(spec)
    logger.debug(
        "spectrum_computed",
        family=spec.family,
        emitted=len(levels),
        admissible=sum(level.admissible for level in levels),
    )
    return levels


def admissible_levels(levels: list[BoundLevel]) -> list[BoundLevel]:
    return [level for level in levels if level.admissible]


def _eckart_implicit_defect(spec: EckartSpec, n: int, energy_sq: float) -> float:
    k = spec.eta - n
    gamma_sq = (2 * (spec.transform.C**2 - spec.transform.S**2) * spec.zeta) ** 2 * energy_sq
    return abs(energy_sq + spec.eta**2 - spec.m**2 - (gamma_sq / (4 * k**2) - k**2))


def eckart_self_consistency(spec: EckartSpec, level: BoundLevel) -> float:
    """
    Residual of the implicit Eckart equation at the level's energy.

    |E^2 + eta^2 - m^2 - [gamma(E)^2 / 4(eta-n)^2 - (eta-n)^2]|; zero means
    the level's energy is an exact root.
    """
    if _vanishes(spec.eta - level.n):
        return 0.0
    return _eckart_implicit_defect(spec, level.n, level.energy**2)


def eckart_root_candidates(spec: EckartSpec, n: int) -> EckartRootCandidates:
    """
    Squared energies of level n from the published formula and from both
    signs of the constant shift in the implicit equation.

    ``shift_added`` is the energy at which the reduced second-order equation
    holds for the Eckart eigenfunction; ``shift_subtracted`` is the root of
    the implicit equation checked by eckart_self_consistency.
    """
    k = spec.eta - n
    published = eckart_published_energy_squared(spec, n)
    denominator = _eckart_denominator(spec, n, 1.0)
    if _vanishes(denominator):
        raise DomainError("implicit Eckart equation is degenerate for this level", n=n)
    candidates = {
        "shift_subtracted": (spec.m**2 - spec.eta**2 - k**2) * k**2 / denominator,
        "shift_added": (spec.m**2 + spec.eta**2 - k**2) * k**2 / denominator,
    }
    matches = [
        name
        for name, value in candidates.items()
        if math.isclose(value, published, rel_tol=_MATCH_RTOL, abs_tol=1e-12)
    ]
    return EckartRootCandidates(n=n, published=published, matches_published=matches, **candidates)


def reference_spectrum(ref: ReferenceParams) -> list[float]:
    """
    Energies of the reference Schrödinger problem inside its normalizability window.

    Raises:
        MissingEnergyError: For an Eckart reference without B.
    """
    if isinstance(ref, HyperbolicReference):
        values = []
        n = 0
        while n < ref.q - 0.5:
            values.append(-((ref.q - n - 0.5) ** 2))
            n += 1
        return values
    if isinstance(ref, EckartReference):
        if ref.B is None:
            raise MissingEnergyError("eckart")
        values = []
        n = 1
        while n < ref.A:
            k = ref.A - n
            values.append(ref.B**2 / k**2 - k**2)
            n += 1
        return values
    return _poschl_teller_reference_spectrum(ref)


def _poschl_teller_reference_spectrum(ref: PoschlTellerReference) -> list[float]:
    c = ref.sigma * ref.N + ref.tau * ref.M + (ref.tau - ref.sigma) / 2
    values = []
    n = 1
    while n < -c / 2:
        values.append(-((2 * n + c) ** 2))
        n += 1
    return values


def poschl_teller_roots(
    spec: PoschlTellerSpec, source: Literal["closed_form", "constructive"] = "closed_form"
) -> tuple[tuple[float, float], tuple[float, float]]:
    """
    Exponent roots (a, b) of sinh^a cosh^b for the csch^2 and sech^2 coefficients.

    a solves a(a-1) = P for the csch^2 coefficient P (eta(eta+1) in the
    closed form, eta(eta-1) constructively); b solves b(b-1) = zeta(zeta+1).
    """
    eta, zeta = spec.eta, spec.zeta
    a_roots = (eta + 1, -eta) if source == "closed_form" else (eta, 1 - eta)
    return a_roots, (zeta + 1, -zeta)


def quasi_parity_spectrum(
    spec: PoschlTellerSpec, source: Literal["closed_form", "constructive"] = "closed_form"
) -> list[QuasiParityLevel]:
    """
    Pöschl-Teller levels implied by the coefficient roots, both quasi-parities.

    Every root pair (a, b) contributes lambda = -(a + b + 2n)^2 for n >= 0
    while a + b + 2n < 0; energies follow the closed-form bridge
    E^2 = m^2 + energy_offset + lambda.
    Levels are ordered by lambda.
    """
    a_roots, b_roots = poschl_teller_roots(spec, source)
    offset = energy_offset(spec)
    levels = []
    for a in sorted(set(a_roots)):
        for b in sorted(set(b_roots)):
            n = 0
            while a + b + 2 * n < 0:
                lam = -((a + b + 2 * n) ** 2)
                e2 = spec.m**2 + offset + lam
                levels.append(
                    QuasiParityLevel(
                        a=a,
                        b=b,
                        n=n,
                        schrodinger_energy=lam,
                        energy=math.sqrt(e2) if e2 > 0 else None,
                    )
                )
                n += 1
    return sorted(levels, key=lambda level: (level.schrodinger_energy, level.a))


def all_normalizable_real(spec: AnySpec) -> bool:
    """Whether every n inside the normalizability window has E^2 > 0."""
    if isinstance(spec, EckartSpec):
        n = 1
        while spec.eta - n > _ZERO_TOL:
            if not _vanishes(_eckart_denominator(spec, n, 2.0)):
                if eckart_published_energy_squared(spec, n) <= 0:
                    return False
            n += 1
        return True
    if isinstance(spec, PoschlTellerSpec):
        c = _pt_offset(spec)
        delta_sq = spec.m**2 - (spec.zeta - spec.eta) ** 2
        n = 1
        while 2 * n + c < 0:
            if delta_sq - (2 * n + c) ** 2 <= 0:
                return False
            n += 1
        return True
    n = 0
    while n < spec.zeta:
        if spec.m**2 + spec.zeta**2 - (spec.zeta - n) ** 2 <= 0:
            return False
        n += 1
    return True
