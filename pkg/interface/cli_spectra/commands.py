"""
Click command group for complex Dirac spectra.

Payloads (JSON, CSV, tables) go to standard output or ``--output``; logs
and error panels go to standard error.
"""

import functools
import json
import logging
import sys
import time
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import click
import numpy as np
import structlog
from rich.console import Console
from rich.panel import Panel

import dirac
from config import ConfigurationError, get_settings, set_profile
from dirac.core.exceptions import (
    ErrorFormatter,
    InadmissibleLevelError,
    InvalidSpecError,
    SpectraError,
    UnsupportedFamilyError,
)
from dirac.core.potentials import (
    FAMILIES,
    AnySpec,
    EckartSpec,
    RosenMorseIISpec,
    parse_spec,
    spec_to_dict,
)
from dirac.core.spectra import (
    admissible_levels,
    all_normalizable_real,
    eckart_root_candidates,
    eckart_self_consistency,
    spectrum,
)
from dirac.core.wavefun import eigenfunction, normalize
from dirac.diagnostics import get_operation_log, track_operation
from dirac.verify.grid import default_grid
from dirac.verify.verifier import convergence_study, verify_family

from .output import emit, report_table, spectrum_table, sweep_csv, to_json

EXIT_EMPTY = 3
EXIT_VERIFY_FAILED = 5

SPEC_FLAGS = ("zeta", "m", "kappa", "a", "b", "eta_r", "eta_i", "eta", "epsilon", "sigma", "tau")
_NOT_SWEEPABLE = {"a", "b"}

error_console = Console(stderr=True)
logger = structlog.get_logger(__name__)


def configure_logging(level: str) -> None:
    """Route structlog through stdlib logging on standard error."""
    logging.basicConfig(level=getattr(logging, level), stream=sys.stderr, format="%(message)s", force=True)
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )


def handles_errors(command: Callable[..., None]) -> Callable[..., None]:
    """Turn library errors into an error panel and their exit code."""

    @functools.wraps(command)
    def wrapper(*args: Any, **kwargs: Any) -> None:
        ctx = click.get_current_context()
        try:
            command(*args, **kwargs)
        except SpectraError as e:
            verbose = bool(ctx.obj and ctx.obj.get("verbose"))
            text = ErrorFormatter.format_error_for_debug(e) if verbose else ErrorFormatter.format_error_for_user(e)
            error_console.print(Panel(text.rstrip(), title=e.error_code, border_style="red"))
            logger.debug("command_failed", **e.to_dict())
            ctx.exit(e.exit_code)
        except ConfigurationError as e:
            error_console.print(Panel(str(e), title="CONFIGURATION", border_style="red"))
            ctx.exit(2)

    return wrapper


def spec_options(command: Callable[..., None]) -> Callable[..., None]:
    """Family selection, --config and the potential parameter flags."""
    options = [
        click.option("--family", type=click.Choice(FAMILIES), help="Potential family"),
        click.option(
            "--config",
            "config_path",
            type=click.Path(exists=True, dir_okay=False, path_type=Path),
            help="JSON spec, bare or inside a spectrum envelope",
        ),
        click.option("--zeta", type=float, help="Coupling zeta"),
        click.option("--m", type=float, help="Mass"),
        click.option("--kappa", type=int, help="Spin-orbit quantum number"),
        click.option("--a", type=float, help="Eckart transformation parameter a"),
        click.option("--b", type=float, help="Eckart transformation parameter b"),
        click.option("--eta-r", type=float, help="Real part of eta (Scarf, Rosen-Morse II)"),
        click.option("--eta-i", type=float, help="Imaginary part of eta (Scarf, Rosen-Morse II)"),
        click.option("--eta", type=float, help="Pöschl-Teller eta"),
        click.option("--epsilon", type=float, help="Pöschl-Teller contour shift"),
        click.option("--sigma", type=int, help="Pöschl-Teller sign sigma (+1 or -1)"),
        click.option("--tau", type=int, help="Pöschl-Teller sign tau (+1 or -1)"),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def grid_options(command: Callable[..., None]) -> Callable[..., None]:
    options = [
        click.option("--h", type=float, help="Grid spacing"),
        click.option("--L", "half_width", type=float, help="Grid half width"),
        click.option("--shift", type=float, help="Imaginary contour shift"),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def spec_data(config_path: Path | None, family: str | None, flags: dict[str, Any]) -> dict[str, Any]:
    """
    Merge the --config document with the command-line flags; flags win.

    Raises:
        InvalidSpecError: If the config file is not a JSON object.
    """
    data: dict[str, Any] = {}
    if config_path is not None:
        try:
            loaded = json.loads(config_path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise InvalidSpecError(f"config: {config_path} is not valid JSON ({e.msg})", "config") from e
        if not isinstance(loaded, dict):
            raise InvalidSpecError("config: expected a JSON object", "config")
        data = dict(loaded.get("spec", loaded))
    if family is not None:
        data["family"] = family
    data.update({key: value for key, value in flags.items() if value is not None})
    return data


def _spec_from(kwargs: dict[str, Any]) -> AnySpec:
    flags = {key: kwargs.pop(key) for key in SPEC_FLAGS}
    return parse_spec(spec_data(kwargs.pop("config_path"), kwargs.pop("family"), flags))


def _metadata(ctx: click.Context) -> dict[str, Any]:
    summary = get_operation_log().summary()
    return {
        "version": dirac.__version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "runtime_seconds": time.perf_counter() - ctx.obj["started"],
        "profile": get_settings().profile,
        "operations": summary.get("operations", {}),
        "peak_memory_mb": summary.get("peak_memory_mb"),
    }


def _envelope(ctx: click.Context, payload: dict[str, Any], stable: bool) -> dict[str, Any]:
    if not stable:
        payload["metadata"] = _metadata(ctx)
    return payload


@click.group()
@click.option("--profile", help="Settings profile from config/defaults.yaml")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging and detailed errors")
@click.version_option(dirac.__version__, prog_name="dirac-spectra")
@click.pass_context
def cli(ctx: click.Context, profile: str | None, verbose: bool) -> None:
    """Bound-state spectra of the complex Dirac families and their numeric verification."""
    ctx.ensure_object(dict)
    ctx.obj["started"] = time.perf_counter()
    ctx.obj["verbose"] = verbose
    get_operation_log().clear()
    try:
        if profile:
            set_profile(profile)
        level = "DEBUG" if verbose else get_settings().log_level
    except ConfigurationError as e:
        error_console.print(Panel(str(e), title="CONFIGURATION", border_style="red"))
        ctx.exit(2)
    configure_logging(level)


@cli.command(name="spectrum")
@spec_options
@click.option("--all-levels", is_flag=True, help="Include levels outside the normalizability window")
@click.option("--format", "output_format", type=click.Choice(["json", "table"]), default="json")
@click.option("--stable-output", is_flag=True, help="Omit the metadata block")
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), help="Write here instead of stdout")
@click.pass_context
@handles_errors
def spectrum_command(
    ctx: click.Context,
    all_levels: bool,
    output_format: str,
    stable_output: bool,
    output: Path | None,
    **kwargs: Any,
) -> None:
    """Closed-form bound levels of a potential."""
    spec = _spec_from(kwargs)
    with track_operation("spectrum", family=spec.family):
        levels = spectrum(spec)
    admissible = admissible_levels(levels)
    shown = levels if all_levels else admissible

    if output_format == "table":
        emit(spectrum_table(spec.family, shown), output)
    else:
        payload: dict[str, Any] = {
            "spec": spec_to_dict(spec),
            "levels": [level.model_dump() for level in shown],
        }
        if isinstance(spec, EckartSpec):
            payload["eckart_consistency"] = _eckart_consistency(spec, shown)
        emit(to_json(_envelope(ctx, payload, stable_output)), output)

    if not admissible:
        ctx.exit(EXIT_EMPTY)


def _eckart_consistency(spec: EckartSpec, levels: list[Any]) -> list[dict[str, Any]]:
    records = []
    for level in levels:
        try:
            candidates: dict[str, Any] | None = eckart_root_candidates(spec, level.n).model_dump()
        except SpectraError:
            candidates = None
        records.append(
            {"n": level.n, "defect": eckart_self_consistency(spec, level), "candidates": candidates}
        )
    return records


@cli.command(name="wavefunction")
@spec_options
@grid_options
@click.option("--n", "level_index", type=int, required=True, help="Level index")
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), help="Write here instead of stdout")
@click.pass_context
@handles_errors
def wavefunction_command(
    ctx: click.Context,
    level_index: int,
    output: Path | None,
    h: float | None,
    half_width: float | None,
    shift: float | None,
    **kwargs: Any,
) -> None:
    """Normalized upper-component eigenfunction sampled on the contour, as CSV."""
    spec = _spec_from(kwargs)
    if isinstance(spec, RosenMorseIISpec):
        raise UnsupportedFamilyError(spec.family, "wavefunction")
    level = next((lv for lv in spectrum(spec) if lv.n == level_index), None)
    if level is None:
        raise InadmissibleLevelError(level_index, spec.family, "no bound level with this index")
    grid = default_grid(spec, h=h, half_width=half_width, shift=shift)
    with track_operation("wavefunction", family=spec.family, n=level_index, points=grid.n_points):
        sampled = normalize(eigenfunction(spec, level, grid))
    emit(sampled.to_csv(), output)


@cli.command(name="verify")
@spec_options
@grid_options
@click.option("--tol-rel", type=float, help="Relative energy tolerance")
@click.option("--tol-imag", type=float, help="Tolerance on Im E")
@click.option("--refinements", type=click.IntRange(min=0), default=0, help="Halvings of h for a convergence study")
@click.option("--format", "output_format", type=click.Choice(["json", "table"]), default="json")
@click.option("--stable-output", is_flag=True, help="Omit the metadata block")
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), help="Write here instead of stdout")
@click.pass_context
@handles_errors
def verify_command(
    ctx: click.Context,
    h: float | None,
    half_width: float | None,
    shift: float | None,
    tol_rel: float | None,
    tol_imag: float | None,
    refinements: int,
    output_format: str,
    stable_output: bool,
    output: Path | None,
    **kwargs: Any,
) -> None:
    """Compare the closed-form spectrum with the contour eigensolver."""
    spec = _spec_from(kwargs)
    grid = default_grid(spec, h=h, half_width=half_width, shift=shift)
    if not admissible_levels(spectrum(spec)):
        error_console.print("[yellow]No admissible closed-form level to verify.[/yellow]")
        ctx.exit(EXIT_EMPTY)

    with track_operation("verify", family=spec.family, points=grid.n_points):
        report = verify_family(spec, grid, tol_rel=tol_rel, tol_imag=tol_imag)

    if output_format == "table":
        emit(report_table(report), output)
    else:
        payload: dict[str, Any] = {"report": report.model_dump(mode="json")}
        if refinements:
            grids = [grid]
            for _ in range(refinements):
                grids.append(grids[-1].refined())
            with track_operation("convergence_study", family=spec.family, grids=len(grids)):
                payload["convergence"] = convergence_study(spec, grids).model_dump()
        emit(to_json(_envelope(ctx, payload, stable_output)), output)

    if not report.passed:
        ctx.exit(EXIT_VERIFY_FAILED)


def _sweep_row(base: dict[str, Any], field: str, value: float) -> dict[str, Any]:
    spec = parse_spec({**base, field: value})
    levels = admissible_levels(spectrum(spec))
    energies = [level.energy for level in levels]
    return {
        "value": value,
        "level_count": len(levels),
        "min_energy": min(energies) if energies else None,
        "max_energy": max(energies) if energies else None,
        "all_real": all_normalizable_real(spec),
    }


@cli.command(name="sweep")
@spec_options
@click.option("--param", required=True, help="Parameter to sweep, e.g. zeta or eta-i")
@click.option("--from", "start", type=float, required=True)
@click.option("--to", "stop", type=float, required=True)
@click.option("--steps", type=click.IntRange(min=1), required=True, help="Intervals; steps + 1 rows")
@click.option("--workers", type=click.IntRange(min=1), help="Worker threads (default from settings)")
@click.option("--format", "output_format", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), help="Write here instead of stdout")
@click.pass_context
@handles_errors
def sweep_command(
    ctx: click.Context,
    param: str,
    start: float,
    stop: float,
    steps: int,
    workers: int | None,
    output_format: str,
    output: Path | None,
    **kwargs: Any,
) -> None:
    """Level count and energy range of the spectrum while one parameter varies."""
    flags = {key: kwargs.pop(key) for key in SPEC_FLAGS}
    base = spec_data(kwargs.pop("config_path"), kwargs.pop("family"), flags)
    spec = parse_spec(base)
    field = param.replace("-", "_")
    field_info = type(spec).model_fields.get(field)
    if field_info is None or field_info.annotation is not float or field in _NOT_SWEEPABLE:
        raise InvalidSpecError(f"{param} is not a sweepable parameter of {spec.family}", param)

    values = [float(v) for v in np.linspace(start, stop, steps + 1)]
    with track_operation("sweep", family=spec.family, param=field, rows=len(values)):
        with ThreadPoolExecutor(max_workers=workers or get_settings().sweep_workers) as pool:
            rows = list(pool.map(functools.partial(_sweep_row, base, field), values))

    if output_format == "json":
        emit(to_json({"param": field, "rows": rows}), output)
    else:
        emit(sweep_csv(rows), output)
