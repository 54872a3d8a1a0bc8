"""
Sampled complex functions on a contour grid.
"""

import csv
import io
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import TextIO

import numpy as np

from .exceptions import InvalidGridError, SpectraError

CSV_HEADER = ("x_re", "x_im", "phi_re", "phi_im")


@dataclass(frozen=True)
class SampledFunction:
    """
    Values of a complex function at ordered contour points.

    ``derivative`` holds the analytic d/dz samples when the function came
    from a closed form; it is None for purely numeric samples.
    """

    points: np.ndarray
    values: np.ndarray
    normalized: bool = False
    derivative: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        points = np.asarray(self.points, dtype=np.complex128)
        values = np.asarray(self.values, dtype=np.complex128)
        if points.ndim != 1 or points.shape != values.shape or points.size < 3:
            raise InvalidGridError("points and values must be 1-D arrays of equal length >= 3")
        steps = np.diff(points.real)
        if np.any(steps <= 0):
            raise InvalidGridError("points must be strictly ordered by real part", "points")
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
            raise InvalidGridError("points must have uniform real-part spacing", "points")
        if not np.all(np.isfinite(values)):
            raise SpectraError("sampled values must be finite", error_code="NON_FINITE_SAMPLES")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "values", values)
        if self.derivative is not None:
            object.__setattr__(
                self, "derivative", np.asarray(self.derivative, dtype=np.complex128)
            )

    @property
    def h(self) -> float:
        return float(self.points[1].real - self.points[0].real)

    def __len__(self) -> int:
        return int(self.points.size)

    def scaled(self, factor: float, normalized: bool | None = None) -> "SampledFunction":
        """Return a copy multiplied by ``factor`` (derivative included)."""
        return replace(
            self,
            values=self.values * factor,
            derivative=None if self.derivative is None else self.derivative * factor,
            normalized=self.normalized if normalized is None else normalized,
        )

    def write_csv(self, stream: TextIO) -> None:
        """Write one row per point; floats use their shortest round-trip repr."""
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for point, value in zip(self.points, self.values, strict=True):
            writer.writerow(
                (repr(float(point.real)), repr(float(point.imag)),
                 repr(float(value.real)), repr(float(value.imag)))
            )

    def to_csv(self, path: Path | None = None) -> str:
        """
        Export as CSV text, optionally also writing it to ``path``.

        Returns:
            The CSV document, header included.
        """
        buffer = io.StringIO()
        self.write_csv(buffer)
        text = buffer.getvalue()
        if path is not None:
            Path(path).write_text(text, encoding="utf-8")
        return text
