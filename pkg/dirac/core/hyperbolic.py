"""
Hyperbolic functions of complex argument that stay finite for large |Re z|.

Every function reflects z into the right half-plane and works with
exp(-2w), which never overflows there. Principal logarithms of sinh and
cosh are assembled from a stable modulus and an explicit phase so that
complex powers such as sech(z)**zeta can be written exp(zeta * log).
"""

import numpy as np
import numpy.typing as npt

ComplexLike = complex | npt.ArrayLike

_LOG2 = float(np.log(2.0))


def _reflect(z: ComplexLike) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    z_arr = np.asarray(z, dtype=np.complex128)
    sign = np.where(z_arr.real < 0, -1.0, 1.0)
    return sign, sign * z_arr, np.exp(-2 * sign * z_arr)


def _out(values: np.ndarray) -> complex | np.ndarray:
    return complex(values) if values.ndim == 0 else values


def tanh(z: ComplexLike) -> complex | np.ndarray:
    sign, w, e = _reflect(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        return _out(sign * (-np.expm1(-2 * w)) / (1 + e))


def coth(z: ComplexLike) -> complex | np.ndarray:
    sign, w, e = _reflect(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        return _out(sign * (1 + e) / (-np.expm1(-2 * w)))


def sech(z: ComplexLike) -> complex | np.ndarray:
    _, w, e = _reflect(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        return _out(2 * np.exp(-w) / (1 + e))


def csch(z: ComplexLike) -> complex | np.ndarray:
    sign, w, _ = _reflect(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        return _out(sign * 2 * np.exp(-w) / (-np.expm1(-2 * w)))


def sinh(z: ComplexLike) -> complex | np.ndarray:
    return _out(np.sinh(np.asarray(z, dtype=np.complex128)))


def cosh(z: ComplexLike) -> complex | np.ndarray:
    return _out(np.cosh(np.asarray(z, dtype=np.complex128)))


def log_cosh(z: ComplexLike) -> complex | np.ndarray:
    """Principal logarithm of cosh(z)."""
    _, w, e = _reflect(z)
    factor = 1 + e
    modulus = w.real + np.log(np.abs(factor)) - _LOG2
    phase = np.angle(np.exp(1j * w.imag) * factor)
    return _out(modulus + 1j * phase)


def log_sinh(z: ComplexLike) -> complex | np.ndarray:
    """Principal logarithm of sinh(z); -inf real part at z = 0."""
    sign, w, _ = _reflect(z)
    factor = -np.expm1(-2 * w)
    with np.errstate(divide="ignore"):
        modulus = w.real + np.log(np.abs(factor)) - _LOG2
    phase = np.angle(sign * np.exp(1j * w.imag) * factor)
    return _out(modulus + 1j * phase)


def gd(z: ComplexLike) -> complex | np.ndarray:
    """Gudermannian 2*arctan(tanh(z/2)); equals arctan(sinh z) on the real line."""
    half = np.asarray(tanh(np.asarray(z, dtype=np.complex128) / 2))
    return _out(2 * np.arctan(half))


def principal_power(log_base: ComplexLike, exponent: complex) -> complex | np.ndarray:
    """base**exponent on the principal branch, given Log(base)."""
    return _out(np.exp(exponent * np.asarray(log_base, dtype=np.complex128)))
