"""
Complex Dirac spectra for exactly solvable hyperbolic four-vector potentials.

The core package builds potentials, closed-form spectra and eigenfunctions;
the verify package checks them numerically on complex contours.
"""

from .core.potentials import FAMILIES, AnySpec, parse_spec
from .core.spectra import BoundLevel, spectrum

__version__ = "0.1.0"

__all__ = ["FAMILIES", "AnySpec", "BoundLevel", "parse_spec", "spectrum", "__version__"]
