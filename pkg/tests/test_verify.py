import math
from types import SimpleNamespace

import numpy as np
import pytest

from config import FixedPointSettings
from dirac.core.exceptions import (
    DegenerateStudyError,
    InvalidGridError,
    MissingEnergyError,
    NonConvergenceError,
    SingularityError,
)
from dirac.core.potentials import PoschlTellerSpec, ScarfSpec, build_effective
from dirac.core.spectra import admissible_levels, eckart_self_consistency, spectrum
from dirac.core.transform import EffectivePotential
from dirac.core.wavefun import eigenfunction
from dirac.verify import verifier
from dirac.verify.discretize import eigenvalues, residual_norm, sample_reference, stencil_matrix
from dirac.verify.grid import default_grid, make_grid
from dirac.verify.verifier import (
    LevelCheck,
    VerificationReport,
    convergence_study,
    eckart_fixed_point,
    energies_from_eigenvalues,
    level_residuals,
    numeric_levels,
    verify_family,
)
from tests.conftest import TestConfig, assert_all_close, assert_close


@pytest.fixture
def eckart_grid():
    return make_grid(x_min=0.05, x_max=10.0, h=0.05, shift=0.1)


class TestGrid:
    """Contour grid validation and defaults."""

    def test_point_count(self, scarf_grid):
        assert scarf_grid.n_points == 2401
        assert scarf_grid.interior.size == 2399
        assert_close(scarf_grid.x[-1], 12.0)

    def test_points_lie_below_real_axis(self, pt_grid):
        assert np.all(pt_grid.points.imag == -math.pi / 4)

    def test_refined(self, coarse_grid):
        fine = coarse_grid.refined()
        assert fine.h == 0.01
        assert fine.n_points == 2 * coarse_grid.n_points - 1

    @pytest.mark.parametrize(
        ("fields", "field"),
        [
            ({"x_min": 0, "x_max": 1, "h": -0.01}, "h"),
            ({"x_min": 0, "x_max": 1, "h": 0.01, "shift": 2.0}, "shift"),
            ({"x_min": 0, "x_max": 1, "h": 0.01, "shift": -0.1}, "shift"),
        ],
    )
    def test_field_errors(self, fields, field):
        with pytest.raises(InvalidGridError) as excinfo:
            make_grid(**fields)
        assert excinfo.value.context["field"] == field

    def test_too_few_points(self):
        with pytest.raises(InvalidGridError, match="at least 50"):
            make_grid(x_min=0, x_max=1, h=0.1)

    def test_reversed_interval(self):
        with pytest.raises(InvalidGridError):
            make_grid(x_min=1, x_max=-1, h=0.01)

    def test_default_full_line(self, scarf_spec):
        grid = default_grid(scarf_spec)
        assert (grid.x_min, grid.x_max, grid.h, grid.shift) == (-12.0, 12.0, 0.01, 0.0)

    def test_default_shifts(self, rmii_spec, pt_spec, eckart_spec):
        assert default_grid(rmii_spec).shift == 1.5
        assert default_grid(pt_spec).shift == pt_spec.epsilon
        eckart = default_grid(eckart_spec)
        assert (eckart.x_min, eckart.shift) == (0.05, 0.1)

    def test_default_overrides(self, pt_spec):
        grid = default_grid(pt_spec, h=0.02, half_width=8.0, shift=0.3)
        assert (grid.x_min, grid.x_max, grid.h, grid.shift) == (-8.0, 8.0, 0.02, 0.3)


class TestDiscretize:
    def test_stencil(self):
        matrix = stencil_matrix(np.zeros(3), 1.0)
        assert_all_close(matrix, [[2, -1, 0], [-1, 2, -1], [0, -1, 2]])

    def test_free_particle_eigenvalues(self):
        size, h = 6, 0.5
        values = eigenvalues(stencil_matrix(np.zeros(size), h))
        k = np.arange(1, size + 1)
        expected = 4 / h**2 * np.sin(k * np.pi / (2 * (size + 1))) ** 2
        assert_all_close(values, expected, rel=1e-10)

    def test_eigenvalues_sorted_by_real_part(self):
        values = eigenvalues(stencil_matrix(np.array([3.0, -1.0, 0.5, 2.0]), 1.0))
        assert np.all(np.diff(values.real) >= 0)

    def test_singular_sample(self):
        veff = EffectivePotential(value_at=lambda z: 1 / z**2, constant_shift=0.0)
        with pytest.raises(SingularityError) as excinfo:
            sample_reference(veff, np.array([1.0, 1e-7, 2.0]))
        assert excinfo.value.error_code == "SINGULAR_POTENTIAL"


class TestReportModels:
    def test_numeric_energy(self):
        check = LevelCheck(n=0, closed_form=1.0, numeric_re=1.001, numeric_im=-1e-7)
        assert check.numeric_energy == complex(1.001, -1e-7)
        assert LevelCheck(n=0, closed_form=1.0).numeric_energy is None

    def test_empty_report_does_not_pass(self):
        report = VerificationReport(
            family="scarf", params={}, grid={}, boundary_convention="dirichlet:full_line",
            levels=[], spurious_count=0,
        )
        assert not report.passed

    def test_spurious_fails_report(self):
        report = VerificationReport(
            family="scarf", params={}, grid={}, boundary_convention="dirichlet:full_line",
            levels=[LevelCheck(n=0, closed_form=1.0, matched=True)], spurious_count=1,
        )
        assert not report.passed


class TestEnergyBridge:
    """Reference eigenvalues map back to closed-form energies."""

    @pytest.mark.parametrize("fixture", ["scarf_spec", "rmii_spec", "pt_spec"])
    def test_reference_eigenvalue_maps_to_energy(self, request, fixture):
        spec = request.getfixturevalue(fixture)
        levels = admissible_levels(spectrum(spec))
        energies = energies_from_eigenvalues(spec, np.array([level.schrodinger_energy for level in levels]))
        assert_all_close(energies, [level.energy for level in levels])

    def test_poschl_teller_level_maps_to_its_energy(self):
        spec = PoschlTellerSpec(zeta=3, eta=1, m=3, epsilon=0.3)
        (level,) = admissible_levels(spectrum(spec))
        (energy,) = energies_from_eigenvalues(spec, np.array([level.schrodinger_energy]))
        assert_close(energy, 1.0)

    def test_eckart_gap_is_self_consistency_defect(self, eckart_spec):
        for level in admissible_levels(spectrum(eckart_spec)):
            (energy,) = energies_from_eigenvalues(eckart_spec, np.array([level.schrodinger_energy]))
            gap = abs(level.energy**2 - energy**2)
            assert_close(gap, eckart_self_consistency(eckart_spec, level), rel=1e-9, abs_tol=1e-9)

    def test_explicit_offset(self, scarf_spec):
        (energy,) = energies_from_eigenvalues(scarf_spec, np.array([-1.0]), offset=0.0)
        assert energy == 0j


class TestLevelResiduals:
    def test_scarf_residuals_coincide(self, scarf_spec, scarf_grid):
        level = admissible_levels(spectrum(scarf_spec))[1]
        residual, bridge_residual = level_residuals(scarf_spec, level, scarf_grid)
        assert residual < 5e-3
        assert_close(bridge_residual, residual, rel=1e-6)

    def test_eckart_bridge_residual_exposes_defect(self, eckart_spec):
        heavy = eckart_spec.model_copy(update={"m": 3.0})
        level = next(level for level in spectrum(heavy) if level.n == 2)
        assert_close(level.energy, 3.75)
        grid = make_grid(x_min=1.0, x_max=8.0, h=0.005, shift=0.1)
        residual, bridge_residual = level_residuals(heavy, level, grid)
        assert residual < 1e-2
        assert eckart_self_consistency(heavy, level) > 29.0
        assert bridge_residual > 10.0


class TestResidualOrder:
    """Halving h divides the eigenfunction residual by four."""

    @staticmethod
    def ratio(spec, level, grid) -> float:
        veff = build_effective(spec, level.energy)
        coarse, fine = (
            residual_norm(veff, eigenfunction(spec, level, g), level.schrodinger_energy)
            for g in (grid, grid.refined())
        )
        return coarse / fine

    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_scarf(self, scarf_spec, coarse_grid, n):
        level = admissible_levels(spectrum(scarf_spec))[n]
        assert 3.5 <= self.ratio(scarf_spec, level, coarse_grid) <= 4.5

    def test_poschl_teller(self, pt_spec, pt_grid):
        (level,) = admissible_levels(spectrum(pt_spec))
        assert 3.5 <= self.ratio(pt_spec, level, pt_grid) <= 4.5


class TestEckartFixedPoint:
    def test_numeric_levels_need_hint(self, eckart_spec, eckart_grid):
        with pytest.raises(MissingEnergyError):
            numeric_levels(eckart_spec, eckart_grid)

    def test_non_convergence(self, eckart_spec, eckart_grid, monkeypatch):
        strict = SimpleNamespace(fixed_point=FixedPointSettings(max_iterations=1, tolerance=1e-300))
        monkeypatch.setattr(verifier, "get_settings", lambda: strict)
        with pytest.raises(NonConvergenceError) as excinfo:
            eckart_fixed_point(eckart_spec, eckart_grid, seed=4.0)
        assert excinfo.value.context["iterations"] == 2
        assert excinfo.value.exit_code == 5

    @pytest.mark.slow
    def test_report_records_every_level(self, eckart_spec, eckart_grid):
        report = verify_family(eckart_spec, eckart_grid)
        per_level = report.adjudication["eckart"]
        assert [record["n"] for record in per_level] == [1, 2, 3, 4]
        assert all(record["defect"] > 0 for record in per_level)
        assert report.boundary_convention == "dirichlet:half_line_shifted"
        assert report.spurious_count == 0
        assert report.max_imag_eigenvalue is None


class TestVerifyFamily:
    @pytest.mark.slow
    def test_scarf_levels_match(self, scarf_spec, scarf_grid):
        report = verify_family(scarf_spec, scarf_grid)
        assert [check.n for check in report.levels] == [0, 1, 2]
        assert all(check.matched for check in report.levels)
        assert report.spurious_count == 0
        assert report.passed
        assert all(check.residual < 5e-3 for check in report.levels)
        assert report.boundary_convention == "dirichlet:full_line"
        assert report.params["family"] == "scarf"

    @pytest.mark.slow
    def test_scarf_numeric_levels(self, scarf_spec, coarse_grid):
        energies = numeric_levels(scarf_spec, coarse_grid)
        for got, want in zip(energies[:3], TestConfig.SCARF_ENERGIES, strict=True):
            assert_close(got.real, want, rel=TestConfig.COARSE_REL)

    @pytest.mark.slow
    def test_rmii_on_shifted_contour(self, rmii_spec):
        grid = make_grid(x_min=-10, x_max=10, h=0.02, shift=1.5)
        report = verify_family(rmii_spec, grid, tol_rel=TestConfig.COARSE_REL, tol_imag=TestConfig.COARSE_REL)
        assert [check.n for check in report.levels] == [0, 1, 2]
        assert all(check.matched for check in report.levels)
        assert all(check.residual is None for check in report.levels)

    @pytest.mark.slow
    def test_scarf_with_real_eta(self, scarf_grid):
        spec = ScarfSpec(zeta=3, m=1, eta_r=1, eta_i=0.5)
        report = verify_family(spec, scarf_grid)
        assert [check.n for check in report.levels] == [0, 1, 2]
        assert all(check.matched for check in report.levels)
        assert report.max_imag_eigenvalue < 1e-4
        assert report.spurious_count == 0

    def test_rmii_real_axis_hits_pole(self, rmii_spec):
        with pytest.raises(SingularityError):
            numeric_levels(rmii_spec, make_grid(x_min=-10, x_max=10, h=0.02))

    @pytest.mark.slow
    def test_poschl_teller_adjudication(self, pt_spec, pt_grid):
        report = verify_family(
            pt_spec, pt_grid, tol_rel=TestConfig.COARSE_REL, tol_imag=TestConfig.COARSE_REL
        )
        assert [check.n for check in report.levels] == [1]
        assert all(check.matched for check in report.levels)
        assert_close(report.levels[0].numeric_re, 1.0, rel=TestConfig.COARSE_REL)
        assert report.spurious_count == report.adjudication["published"]["unexplained"]
        adjudication = report.adjudication
        assert adjudication["preferred"] == "quasi_parity"
        assert adjudication["quasi_parity"]["matched"]
        assert adjudication["published"]["unexplained"] > 0

    @pytest.mark.slow
    def test_poschl_teller_closer_to_the_pole(self, pt_spec):
        spec = pt_spec.model_copy(update={"epsilon": 0.3})
        grid = make_grid(x_min=-10, x_max=10, h=0.01, shift=0.3)
        report = verify_family(spec, grid, tol_rel=TestConfig.COARSE_REL, tol_imag=TestConfig.COARSE_REL)
        assert [check.n for check in report.levels] == [1]
        assert all(check.matched for check in report.levels)
        assert report.adjudication["quasi_parity"]["matched"]

    def test_unmatched_tolerance_is_reported(self, scarf_spec):
        grid = make_grid(x_min=-8, x_max=8, h=0.1)
        report = verify_family(scarf_spec, grid, tol_rel=1e-12)
        assert not report.passed
        assert all(check.rel_error is not None for check in report.levels)


class TestConvergenceStudy:
    def test_needs_two_grids(self, coarse_grid, scarf_spec):
        with pytest.raises(DegenerateStudyError):
            convergence_study(scarf_spec, [coarse_grid])

    def test_needs_decreasing_spacing(self, coarse_grid, scarf_spec):
        with pytest.raises(DegenerateStudyError):
            convergence_study(scarf_spec, [coarse_grid, coarse_grid])

    @pytest.mark.slow
    def test_second_order(self, scarf_spec):
        grid = make_grid(x_min=-10, x_max=10, h=0.04)
        study = convergence_study(scarf_spec, [grid, grid.refined()])
        assert [row[0] for row in study.rows] == [0.04, 0.02]
        assert study.rows[1][1] < study.rows[0][1]
        assert study.order_ok
