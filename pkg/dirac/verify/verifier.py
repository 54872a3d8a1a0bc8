"""
Numeric oracle for the closed-form spectra.

The effective potential is discretized on a contour, its dense eigenvalue
problem is solved, and eigenvalues are mapped to relativistic energies
through the closed-form bridge E = sqrt(m^2 + energy_offset + lambda).
Closed-form levels are matched greedily in energy and eigenfunctions are
checked through their discrete residual. The energy-dependent Eckart
operator is solved self-consistently by fixed-point iteration, which
follows the operator's own constant_shift.
"""

from __future__ import annotations

import math
from typing import Any

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, Field

from config import get_settings
from dirac.core.exceptions import (
    DegenerateStudyError,
    MissingEnergyError,
    NonConvergenceError,
    SpectraError,
)
from dirac.core.potentials import (
    AnySpec,
    EckartSpec,
    PoschlTellerSpec,
    RosenMorseIISpec,
    build_effective,
    energy_offset,
    spec_to_dict,
)
from dirac.core.spectra import (
    BoundLevel,
    admissible_levels,
    eckart_root_candidates,
    eckart_self_consistency,
    quasi_parity_spectrum,
    spectrum,
)
from dirac.core.wavefun import eigenfunction

from .discretize import discretize, eigenvalues, residual_norm
from .grid import ContourGrid, default_grid

logger = structlog.get_logger(__name__)

_CONTRACTION_WINDOW = 5


class LevelCheck(BaseModel):
    """Comparison of one closed-form level with its numeric partner."""

    model_config = ConfigDict(frozen=True)

    n: int
    closed_form: float
    numeric_re: float | None = None
    numeric_im: float | None = None
    abs_error: float | None = None
    rel_error: float | None = None
    residual: float | None = None
    bridge_residual: float | None = None
    matched: bool = False

    @property
    def numeric_energy(self) -> complex | None:
        if self.numeric_re is None or self.numeric_im is None:
            return None
        return complex(self.numeric_re, self.numeric_im)


class FixedPointResult(BaseModel):
    """Outcome of the self-consistent Eckart energy iteration."""

    model_config = ConfigDict(frozen=True)

    seed: float
    energy_re: float
    energy_im: float
    iterations: int
    converged: bool
    contraction: bool
    steps: list[float] = Field(default_factory=list)


class VerificationReport(BaseModel):
    """Machine-readable verification outcome of one family run."""

    family: str
    params: dict[str, Any]
    grid: dict[str, float]
    boundary_convention: str
    levels: list[LevelCheck]
    spurious_count: int
    max_imag_eigenvalue: float | None = None
    adjudication: dict[str, Any] | None = None
    errors: list[dict[str, Any]] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.levels) and all(level.matched for level in self.levels) and self.spurious_count == 0


class ConvergenceStudy(BaseModel):
    """Worst relative error per grid and the empirical orders between grids."""

    rows: list[tuple[float, float]]
    orders: list[float]
    order_ok: bool


def energies_from_eigenvalues(
    spec: AnySpec, lambdas: np.ndarray, offset: complex | None = None
) -> np.ndarray:
    """Map eigenvalues to energies, by default through the closed-form bridge."""
    offset = energy_offset(spec) if offset is None else offset
    return np.sqrt(spec.m**2 + offset + np.asarray(lambdas, dtype=np.complex128))


def _operator_eigenvalues(spec: AnySpec, grid: ContourGrid, energy: float | None = None) -> tuple[np.ndarray, complex]:
    veff = build_effective(spec, energy)
    return eigenvalues(discretize(veff, grid)), veff.constant_shift


def eckart_fixed_point(spec: EckartSpec, grid: ContourGrid, seed: float) -> FixedPointResult:
    """
    Iterate E -> nearest eigenvalue of the operator built at E -> new E.

    The eigenvalue nearest to E^2 - m^2 - eta^2 is taken at each step and
    mapped back through E = sqrt(m^2 + eta^2 + lambda).

    Raises:
        NonConvergenceError: If the step never drops below the tolerance.
    """
    settings = get_settings().fixed_point
    energy: complex = complex(seed)
    history: list[complex] = [energy]
    steps: list[float] = []
    for iteration in range(1, settings.max_iterations + 1):
        lambdas, shift = _operator_eigenvalues(spec, grid, energy.real)
        target = energy**2 - spec.m**2 - shift
        nearest = lambdas[int(np.argmin(np.abs(lambdas - target)))]
        updated = complex(np.sqrt(spec.m**2 + shift + nearest))
        step = abs(updated - energy)
        steps.append(step)
        history.append(updated)
        logger.debug("fixed_point_step", iteration=iteration, energy=str(updated), step=step)
        energy = updated
        if step < settings.tolerance:
            tail = steps[-_CONTRACTION_WINDOW:]
            return FixedPointResult(
                seed=seed,
                energy_re=energy.real,
                energy_im=energy.imag,
                iterations=iteration,
                converged=True,
                contraction=all(b <= a for a, b in zip(tail, tail[1:], strict=False)),
                steps=steps,
            )
    raise NonConvergenceError(last_iterate=energy, history=history)


def numeric_levels(
    spec: AnySpec, grid: ContourGrid, energy_hint: float | None = None
) -> list[complex]:
    """
    Numeric bound-state energies (Re lambda < 0), ascending by real part.

    For Eckart the operator depends on the energy; it is first made
    self-consistent starting from ``energy_hint`` and the energies of the
    converged operator are returned.

    Raises:
        MissingEnergyError: For Eckart without a hint.
        NonConvergenceError: If the Eckart iteration does not settle.
    """
    if isinstance(spec, EckartSpec):
        if energy_hint is None:
            raise MissingEnergyError(spec.family)
        result = eckart_fixed_point(spec, grid, energy_hint)
        lambdas, shift = _operator_eigenvalues(spec, grid, result.energy_re)
        bound = lambdas[lambdas.real < 0]
        energies = energies_from_eigenvalues(spec, bound, shift)
    else:
        lambdas, _ = _operator_eigenvalues(spec, grid)
        energies = energies_from_eigenvalues(spec, lambdas[lambdas.real < 0])
    return sorted((complex(e) for e in energies), key=lambda e: (e.real, e.imag))


def _match(
    closed: list[BoundLevel], energies: np.ndarray, tol_rel: float, tol_imag: float
) -> tuple[list[tuple[BoundLevel, int | None]], set[int]]:
    used: set[int] = set()
    pairs = []
    for level in sorted(closed, key=lambda lv: lv.n):
        best, best_distance = None, math.inf
        for index, energy in enumerate(energies):
            if index in used:
                continue
            distance = abs(energy - level.energy)
            if distance < best_distance:
                best, best_distance = index, distance
        if best is not None:
            used.add(best)
        pairs.append((level, best))
    return pairs, used


def _check(level: BoundLevel, energy: complex | None, tol_rel: float, tol_imag: float) -> LevelCheck:
    if energy is None:
        return LevelCheck(n=level.n, closed_form=level.energy)
    rel_error = abs(energy.real - level.energy) / level.energy
    return LevelCheck(
        n=level.n,
        closed_form=level.energy,
        numeric_re=energy.real,
        numeric_im=energy.imag,
        abs_error=abs(energy - level.energy),
        rel_error=rel_error,
        matched=rel_error <= tol_rel and abs(energy.imag) <= tol_imag,
    )


def level_residuals(spec: AnySpec, level: BoundLevel, grid: ContourGrid) -> tuple[float, float]:
    """
    Residuals of the sampled eigenfunction at two eigenvalues.

    The first uses the level's reference eigenvalue. The second uses the
    eigenvalue the closed-form bridge implies for the level's energy,
    E^2 - m^2 - energy_offset. The two coincide for Scarf and Pöschl-Teller;
    for Eckart they differ by the self-consistency defect.

    Raises:
        SpectraError: Whatever eigenfunction sampling raises.
    """
    veff = build_effective(spec, level.energy)
    sampled = eigenfunction(spec, level, grid)
    implied = level.energy**2 - spec.m**2 - energy_offset(spec)
    return (
        residual_norm(veff, sampled, level.schrodinger_energy),
        residual_norm(veff, sampled, implied),
    )


def _with_residual(
    check: LevelCheck, spec: AnySpec, level: BoundLevel, grid: ContourGrid, errors: list[dict[str, Any]]
) -> LevelCheck:
    if isinstance(spec, RosenMorseIISpec):
        return check
    try:
        residual, bridge_residual = level_residuals(spec, level, grid)
    except SpectraError as e:
        errors.append({"n": level.n, **e.to_dict()})
        return check
    return check.model_copy(update={"residual": residual, "bridge_residual": bridge_residual})


def _lambda_agreement(predicted: list[float], numeric: np.ndarray, tol_rel: float, window: float) -> dict[str, Any]:
    used: set[int] = set()
    worst = 0.0
    for value in predicted:
        candidates = [i for i in range(numeric.size) if i not in used]
        if not candidates:
            worst = math.inf
            break
        best = min(candidates, key=lambda i: abs(numeric[i] - value))
        used.add(best)
        worst = max(worst, abs(numeric[best] - value) / abs(value))
    unexplained = sum(
        1 for i in range(numeric.size) if i not in used and numeric[i].real < -window
    )
    return {
        "predicted": predicted,
        "max_rel_error": worst if predicted else None,
        "matched": bool(predicted) and worst <= tol_rel,
        "unexplained": unexplained,
    }


def _poschl_teller_adjudication(
    spec: PoschlTellerSpec, closed: list[BoundLevel], lambdas: np.ndarray, tol_rel: float, window: float
) -> dict[str, Any]:
    bound = lambdas[lambdas.real < 0]
    published = _lambda_agreement([lv.schrodinger_energy for lv in closed], bound, tol_rel, window)
    quasi = _lambda_agreement(
        [lv.schrodinger_energy for lv in quasi_parity_spectrum(spec)], bound, tol_rel, window
    )
    complete = [
        name
        for name, outcome in (("published", published), ("quasi_parity", quasi))
        if outcome["matched"] and outcome["unexplained"] == 0
    ]
    return {
        "published": published,
        "quasi_parity": quasi,
        "numeric_lambda_re": [float(v.real) for v in bound],
        "preferred": complete[0] if len(complete) == 1 else None,
    }


def _verify_eckart(
    spec: EckartSpec, closed: list[BoundLevel], grid: ContourGrid, tol_rel: float, tol_imag: float,
    errors: list[dict[str, Any]],
) -> tuple[list[LevelCheck], dict[str, Any]]:
    checks = []
    per_level = []
    for level in closed:
        record: dict[str, Any] = {
            "n": level.n,
            "defect": eckart_self_consistency(spec, level),
            "candidates": eckart_root_candidates(spec, level.n).model_dump(),
        }
        try:
            result = eckart_fixed_point(spec, grid, level.energy)
        except NonConvergenceError as e:
            errors.append({"n": level.n, **e.to_dict()})
            record["fixed_point"] = None
            checks.append(_with_residual(_check(level, None, tol_rel, tol_imag), spec, level, grid, errors))
        else:
            record["fixed_point"] = result.model_dump()
            energy = complex(result.energy_re, result.energy_im)
            checks.append(_with_residual(_check(level, energy, tol_rel, tol_imag), spec, level, grid, errors))
        per_level.append(record)
    return checks, {"eckart": per_level}


def verify_family(
    spec: AnySpec,
    grid: ContourGrid | None = None,
    tol_rel: float | None = None,
    tol_imag: float | None = None,
) -> VerificationReport:
    """
    Compare closed-form levels with the numeric oracle.

    Child failures are recorded in ``errors`` and leave the affected levels
    unmatched; a report is always produced.
    """
    tolerances = get_settings().tolerances
    tol_rel = tolerances.rel if tol_rel is None else tol_rel
    tol_imag = tolerances.imag if tol_imag is None else tol_imag
    grid = grid or default_grid(spec)
    contour = get_settings().family_contour(spec.family)
    closed = admissible_levels(spectrum(spec))
    errors: list[dict[str, Any]] = []
    adjudication: dict[str, Any] | None = None
    spurious = 0
    max_imag: float | None = None

    if isinstance(spec, EckartSpec):
        checks, adjudication = _verify_eckart(spec, closed, grid, tol_rel, tol_imag, errors)
    else:
        lambdas, _ = _operator_eigenvalues(spec, grid)
        bound_mask = lambdas.real < 0
        bound = lambdas[bound_mask]
        max_imag = float(np.max(np.abs(bound.imag))) if bound.size else None
        energies = energies_from_eigenvalues(spec, bound)
        pairs, used = _match(closed, energies, tol_rel, tol_imag)
        checks = [
            _with_residual(
                _check(level, None if index is None else complex(energies[index]), tol_rel, tol_imag),
                spec,
                level,
                grid,
                errors,
            )
            for level, index in pairs
        ]
        spurious = sum(
            1
            for i in range(bound.size)
            if i not in used and bound[i].real < -tolerances.spurious_window
        )
        if isinstance(spec, PoschlTellerSpec):
            adjudication = _poschl_teller_adjudication(
                spec, closed, lambdas, tol_rel, tolerances.spurious_window
            )

    report = VerificationReport(
        family=spec.family,
        params=spec_to_dict(spec),
        grid=grid.describe(),
        boundary_convention=f"dirichlet:{contour.domain}",
        levels=checks,
        spurious_count=spurious,
        max_imag_eigenvalue=max_imag,
        adjudication=adjudication,
        errors=errors,
    )
    logger.info(
        "verification_done",
        family=spec.family,
        levels=len(checks),
        matched=sum(c.matched for c in checks),
        spurious=spurious,
    )
    return report


def convergence_study(spec: AnySpec, grids: list[ContourGrid]) -> ConvergenceStudy:
    """
    Worst relative error per grid and empirical orders log2(err(h)/err(h/2)).

    Raises:
        DegenerateStudyError: For fewer than two grids or non-decreasing h.
    """
    if len(grids) < 2:
        raise DegenerateStudyError("a convergence study needs at least two grids")
    if any(later.h >= earlier.h for earlier, later in zip(grids, grids[1:], strict=False)):
        raise DegenerateStudyError("grid spacings must strictly decrease")

    rows = []
    for grid in grids:
        report = verify_family(spec, grid, tol_rel=math.inf, tol_imag=math.inf)
        errors = [c.rel_error for c in report.levels if c.rel_error is not None]
        rows.append((grid.h, max(errors) if errors else math.nan))

    orders = []
    for (h_coarse, e_coarse), (h_fine, e_fine) in zip(rows, rows[1:], strict=False):
        if e_coarse > 0 and e_fine > 0:
            orders.append(math.log(e_coarse / e_fine) / math.log(h_coarse / h_fine))
        else:
            orders.append(math.nan)
    order_ok = bool(orders) and all(1.5 <= p <= 2.5 for p in orders)
    return ConvergenceStudy(rows=rows, orders=orders, order_ok=order_ok)
