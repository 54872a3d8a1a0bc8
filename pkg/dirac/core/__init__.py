"""
Potentials, transformation, closed-form spectra and eigenfunctions.
"""

from .exceptions import ErrorFormatter, SpectraError
from .potentials import (
    EckartSpec,
    PoschlTellerSpec,
    RosenMorseIISpec,
    ScarfSpec,
    build_effective,
    build_four_vector,
    parse_spec,
)
from .spectra import BoundLevel, admissible_levels, spectrum
from .transform import TransformParams

__all__ = [
    "BoundLevel",
    "EckartSpec",
    "ErrorFormatter",
    "PoschlTellerSpec",
    "RosenMorseIISpec",
    "ScarfSpec",
    "SpectraError",
    "TransformParams",
    "admissible_levels",
    "build_effective",
    "build_four_vector",
    "parse_spec",
    "spectrum",
]
