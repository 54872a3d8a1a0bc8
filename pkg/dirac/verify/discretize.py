"""
Three-point discretization of -d^2/dx^2 + V along a contour.

Grid endpoints carry the Dirichlet boundary values, so the matrix acts on
the interior points only. Its potential is the reference potential
V_eff - constant_shift, which makes eigenvalues directly comparable with
the reference Schrödinger energies.
"""

import time

import numpy as np
import structlog
from scipy import linalg

from config import get_settings
from dirac.core.exceptions import SingularityError
from dirac.core.sampling import SampledFunction
from dirac.core.transform import EffectivePotential

from .grid import ContourGrid

logger = structlog.get_logger(__name__)


def stencil_matrix(potential: np.ndarray, h: float) -> np.ndarray:
    """Dense (1, -2, 1)/h^2 Laplacian with the potential samples on the diagonal."""
    potential = np.asarray(potential, dtype=np.complex128)
    size = potential.size
    off = np.full(size - 1, -1.0 / h**2, dtype=np.complex128)
    return np.diag(2.0 / h**2 + potential) + np.diag(off, 1) + np.diag(off, -1)


def sample_reference(veff: EffectivePotential, points: np.ndarray) -> np.ndarray:
    """
    Reference potential at the given points.

    Raises:
        SingularityError: If any sample is non-finite or exceeds the configured magnitude.
    """
    values = np.asarray(veff.reference_at(points), dtype=np.complex128)
    limit = get_settings().tolerances.singular_magnitude
    magnitude = np.where(np.isfinite(values), np.abs(values), np.inf)
    worst = int(np.argmax(magnitude))
    if magnitude[worst] > limit:
        raise SingularityError(float(magnitude[worst]), complex(points[worst]))
    return values


def discretize(veff: EffectivePotential, grid: ContourGrid) -> np.ndarray:
    """Matrix of -D2 + V_eff - constant_shift on the interior grid points."""
    return stencil_matrix(sample_reference(veff, grid.interior), grid.h)


def eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """All eigenvalues of a dense complex matrix, sorted by real part."""
    started = time.perf_counter()
    values = linalg.eigvals(matrix, check_finite=False)
    logger.debug("eigen_solve", size=matrix.shape[0], duration=time.perf_counter() - started)
    return np.sort_complex(values)


def residual_norm(veff: EffectivePotential, f: SampledFunction, eigenvalue: complex) -> float:
    """
    Interior sup-norm of (-D2 + V_eff - constant_shift - eigenvalue) f over max|f|.
    """
    values = f.values
    h = f.h
    second = (values[:-2] - 2 * values[1:-1] + values[2:]) / h**2
    potential = np.asarray(veff.reference_at(f.points[1:-1]), dtype=np.complex128)
    defect = -second + (potential - eigenvalue) * values[1:-1]
    scale = float(np.max(np.abs(values)))
    return float(np.max(np.abs(defect)) / scale) if scale else 0.0
