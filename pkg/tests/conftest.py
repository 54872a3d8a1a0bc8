"""
Test configuration and utilities for the complex Dirac spectra test suite.

This module provides the reference specs, coarse grids, and assertion
helpers shared by all test modules.
"""

import math

import numpy as np
import pytest

from config import reset_settings
from dirac.core.potentials import EckartSpec, PoschlTellerSpec, RosenMorseIISpec, ScarfSpec
from dirac.verify.grid import ContourGrid, make_grid


class TestConfig:
    """Test configuration constants."""

    __test__ = False

    # Worked examples
    SCARF_ENERGIES = (1.0, math.sqrt(6.0), 3.0)
    ECKART_ANGLE = math.pi / 12
    ECKART_PUBLISHED_N2 = 16.875
    ECKART_SHIFT_ADDED_N2 = 20 * 9 / 2.75
    ECKART_SHIFT_SUBTRACTED_N2 = -30 * 9 / 2.75
    PT_CLOSED_FORM_LAMBDAS = (-16.0, -4.0, -1.0)
    PT_CONSTRUCTIVE_LAMBDAS = (-9.0, -4.0, -1.0)

    # Tolerances
    EXACT = 1e-12
    NORMALIZATION = 1e-8
    ORACLE_REL = 1e-3
    COARSE_REL = 1e-2


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Every test starts from the default profile of the repository config."""
    monkeypatch.delenv("DIRAC_PROFILE", raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def scarf_spec() -> ScarfSpec:
    return ScarfSpec(zeta=3, m=1, eta_r=0, eta_i=0.5)


@pytest.fixture
def rmii_spec() -> RosenMorseIISpec:
    return RosenMorseIISpec(zeta=3, m=1, eta_r=1, eta_i=0.5)


@pytest.fixture
def pt_spec() -> PoschlTellerSpec:
    return PoschlTellerSpec(zeta=3, eta=1, m=3, epsilon=math.pi / 4, sigma=-1, tau=-1)


@pytest.fixture
def eckart_spec() -> EckartSpec:
    """S = 1/2, C = sqrt(3)/2, eta = 5; admissible levels n = 1..4 for m = 2."""
    return EckartSpec(
        zeta=-5, m=2, a=math.cos(TestConfig.ECKART_ANGLE), b=math.sin(TestConfig.ECKART_ANGLE)
    )


@pytest.fixture
def scarf_grid() -> ContourGrid:
    return make_grid(x_min=-12, x_max=12, h=0.01, shift=0.0)


@pytest.fixture
def coarse_grid() -> ContourGrid:
    return make_grid(x_min=-10, x_max=10, h=0.02, shift=0.0)


@pytest.fixture
def pt_grid() -> ContourGrid:
    return make_grid(x_min=-10, x_max=10, h=0.02, shift=math.pi / 4)


def assert_close(actual: complex, expected: complex, rel: float = 1e-9, abs_tol: float = 1e-12) -> None:
    """Assert two numbers agree, reporting both on failure."""
    assert abs(actual - expected) <= max(abs_tol, rel * abs(expected)), f"{actual!r} != {expected!r}"


def assert_all_close(actual, expected, rel: float = 1e-9, abs_tol: float = 1e-12) -> None:
    actual = np.asarray(actual, dtype=np.complex128)
    expected = np.asarray(expected, dtype=np.complex128)
    assert actual.shape == expected.shape, f"shape {actual.shape} != {expected.shape}"
    worst = float(np.max(np.abs(actual - expected) - np.maximum(abs_tol, rel * np.abs(expected))))
    assert worst <= 0, f"arrays differ beyond tolerance (excess {worst:.3e})"


def assert_sorted_energies(energies, expected, rel: float = 1e-9) -> None:
    assert len(energies) == len(expected), f"{len(energies)} levels, expected {len(expected)}"
    for got, want in zip(sorted(energies), sorted(expected), strict=True):
        assert_close(got, want, rel=rel)
