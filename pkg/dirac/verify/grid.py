"""
Uniform grids on the shifted contour z_j = x_j - i*shift.
"""

from __future__ import annotations

import math
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from config import get_settings
from dirac.core.exceptions import InvalidGridError
from dirac.core.potentials import AnySpec, PoschlTellerSpec

MIN_POINTS = 50


class ContourGrid(BaseModel):
    """
    Contour grid description.

    Example:
        >>> grid = ContourGrid(x_min=-12, x_max=12, h=0.01, shift=0.0)
        >>> grid.n_points
        2401
    """

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    x_min: float
    x_max: float
    h: float = Field(gt=0)
    shift: float = Field(0.0, ge=0, lt=math.pi / 2)

    @model_validator(mode="after")
    def _enough_points(self) -> ContourGrid:
        if self.x_max <= self.x_min:
            raise ValueError("x_max must exceed x_min")
        if self.n_points < MIN_POINTS:
            raise ValueError(f"grid has {self.n_points} points, at least {MIN_POINTS} are needed")
        return self

    @property
    def n_points(self) -> int:
        return round((self.x_max - self.x_min) / self.h) + 1

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.h * np.arange(self.n_points)

    @property
    def points(self) -> np.ndarray:
        return self.x - 1j * self.shift

    @property
    def interior(self) -> np.ndarray:
        return self.points[1:-1]

    def refined(self) -> ContourGrid:
        """Same contour with half the spacing."""
        return self.model_copy(update={"h": self.h / 2})

    def describe(self) -> dict[str, float]:
        return {"x_min": self.x_min, "x_max": self.x_max, "h": self.h, "shift": self.shift}


def make_grid(**fields: Any) -> ContourGrid:
    """
    Validate grid fields into a ContourGrid.

    Raises:
        InvalidGridError: Naming the violated field.
    """
    try:
        return ContourGrid(**fields)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first.get("loc", ())) or None
        raise InvalidGridError(f"{field or 'grid'}: {first.get('msg')}", field) from e


def default_grid(
    spec: AnySpec,
    h: float | None = None,
    half_width: float | None = None,
    shift: float | None = None,
) -> ContourGrid:
    """
    Grid for a family from the configured defaults.

    Full-line families run on [-L, L]; Eckart runs on [x_min, L]. The
    Pöschl-Teller shift is the spec's own epsilon unless overridden.
    """
    settings = get_settings()
    defaults = settings.grid
    contour = settings.family_contour(spec.family)
    width = half_width if half_width is not None else defaults.half_width
    if shift is None:
        if contour.shift is None and isinstance(spec, PoschlTellerSpec):
            shift = spec.epsilon
        else:
            shift = contour.shift or 0.0
    return make_grid(
        x_min=-width if contour.x_min is None else contour.x_min,
        x_max=width,
        h=h if h is not None else defaults.h,
        shift=shift,
    )
