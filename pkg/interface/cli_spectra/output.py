"""
Payload rendering for the spectra CLI: sorted JSON, CSV and rich tables.
"""

import csv
import io
import json
from pathlib import Path
from typing import Any

import click
from rich.console import Console
from rich.table import Table

from dirac.core.spectra import BoundLevel
from dirac.verify.verifier import VerificationReport

SWEEP_HEADER = ("value", "level_count", "min_energy", "max_energy", "all_real")


def to_json(payload: dict[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def emit(text: str, output: Path | None) -> None:
    """Write a payload to ``output`` or to standard output."""
    if output is None:
        click.echo(text, nl=False)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _render(table: Table) -> str:
    console = Console(file=io.StringIO(), record=True, width=120)
    console.print(table)
    return console.export_text()


def _fmt(value: float | None, digits: int = 9) -> str:
    return "-" if value is None else f"{value:.{digits}g}"


def spectrum_table(family: str, levels: list[BoundLevel]) -> str:
    table = Table(title=f"Bound levels - {family}")
    table.add_column("n", style="cyan", justify="right")
    table.add_column("E", style="green")
    table.add_column("lambda", style="green")
    table.add_column("admissible", style="yellow")
    table.add_column("margin")
    for level in levels:
        table.add_row(
            str(level.n),
            _fmt(level.energy),
            _fmt(level.schrodinger_energy),
            "yes" if level.admissible else "no",
            _fmt(level.admissibility_margin, 4),
        )
    return _render(table)


def report_table(report: VerificationReport) -> str:
    table = Table(title=f"Verification - {report.family} ({report.boundary_convention})")
    table.add_column("n", style="cyan", justify="right")
    table.add_column("closed form", style="green")
    table.add_column("numeric")
    table.add_column("rel. error")
    table.add_column("residual")
    table.add_column("bridge residual")
    table.add_column("matched", style="yellow")
    for check in report.levels:
        numeric = check.numeric_energy
        table.add_row(
            str(check.n),
            _fmt(check.closed_form),
            "-" if numeric is None else f"{numeric.real:.9g}{numeric.imag:+.2e}j",
            _fmt(check.rel_error, 3),
            _fmt(check.residual, 3),
            _fmt(check.bridge_residual, 3),
            "yes" if check.matched else "no",
        )
    text = _render(table)
    text += f"spurious eigenvalues: {report.spurious_count}\n"
    if report.adjudication and "preferred" in report.adjudication:
        text += f"preferred Pöschl-Teller form: {report.adjudication['preferred'] or 'undecided'}\n"
    for error in report.errors:
        text += f"level {error.get('n')}: {error.get('message')}\n"
    return text


def sweep_csv(rows: list[dict[str, Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for row in rows:
        writer.writerow(
            (
                repr(row["value"]),
                row["level_count"],
                "" if row["min_energy"] is None else repr(row["min_energy"]),
                "" if row["max_energy"] is None else repr(row["max_energy"]),
                "true" if row["all_real"] else "false",
            )
        )
    return buffer.getvalue()
