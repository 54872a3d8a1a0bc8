"""
cli_spectra: command-line interface for complex Dirac spectra.
"""

from .commands import cli


def main() -> None:
    """Main entry point for the dirac-spectra command."""
    cli(prog_name="dirac-spectra")


__all__ = ["cli", "main"]
