"""
Command-line tests for dirac-spectra.

Payloads are written through --output so that log lines on standard error
never mix into what the assertions read.
"""

import json
import logging

import pytest
import structlog
from click.testing import CliRunner

from interface.cli_spectra import cli
from interface.cli_spectra.output import SWEEP_HEADER
from tests.conftest import TestConfig, assert_close

SCARF = ["--family", "scarf", "--zeta", "3", "--m", "1", "--eta-i", "0.5"]
ECKART = ["--family", "eckart", "--zeta", "-5", "--m", "2", "--a", "0.9659258262890683", "--b", "0.25881904510252074"]


@pytest.fixture(autouse=True)
def restore_logging():
    yield
    structlog.reset_defaults()
    logging.getLogger().handlers.clear()


@pytest.fixture
def runner():
    return CliRunner()


def run(runner, tmp_path, *args, name="out.txt"):
    target = tmp_path / name
    result = runner.invoke(cli, [*args, "--output", str(target)])
    text = target.read_text(encoding="utf-8") if target.exists() else None
    return result, text


class TestSpectrumCommand:
    def test_scarf_energies(self, runner, tmp_path):
        result, text = run(runner, tmp_path, "spectrum", *SCARF)
        assert result.exit_code == 0
        payload = json.loads(text)
        energies = [level["energy"] for level in payload["levels"]]
        for got, want in zip(energies, TestConfig.SCARF_ENERGIES, strict=True):
            assert_close(got, want)
        assert payload["spec"]["family"] == "scarf"
        assert payload["metadata"]["version"] == "0.1.0"
        assert "spectrum" in payload["metadata"]["operations"]

    def test_all_levels(self, runner, tmp_path):
        _, text = run(runner, tmp_path, "spectrum", *SCARF, "--all-levels", "--stable-output")
        payload = json.loads(text)
        assert [level["n"] for level in payload["levels"]] == list(range(7))
        assert "metadata" not in payload

    def test_config_round_trip(self, runner, tmp_path):
        _, first = run(runner, tmp_path, "spectrum", *SCARF, "--stable-output", name="first.json")
        _, second = run(
            runner, tmp_path, "spectrum", "--config", str(tmp_path / "first.json"), "--stable-output",
            name="second.json",
        )
        assert first == second

    def test_flags_override_config(self, runner, tmp_path):
        config = tmp_path / "spec.json"
        config.write_text(json.dumps({"family": "scarf", "zeta": 3, "m": 1}), encoding="utf-8")
        _, text = run(runner, tmp_path, "spectrum", "--config", str(config), "--m", "2", "--stable-output")
        assert_close(json.loads(text)["levels"][0]["energy"], 2.0)

    def test_missing_mass(self, runner, tmp_path):
        result, text = run(runner, tmp_path, "spectrum", "--family", "scarf", "--zeta", "3")
        assert result.exit_code == 2
        assert text is None

    def test_invalid_config_json(self, runner, tmp_path):
        config = tmp_path / "broken.json"
        config.write_text("{not json", encoding="utf-8")
        result, _ = run(runner, tmp_path, "spectrum", "--config", str(config))
        assert result.exit_code == 2

    def test_eckart_consistency_block(self, runner, tmp_path):
        result, text = run(runner, tmp_path, "spectrum", *ECKART, "--stable-output")
        assert result.exit_code == 0
        records = json.loads(text)["eckart_consistency"]
        assert [record["n"] for record in records] == [1, 2, 3, 4]
        assert_close(records[1]["candidates"]["published"], TestConfig.ECKART_PUBLISHED_N2)

    def test_empty_spectrum_exit(self, runner, tmp_path):
        result, text = run(
            runner, tmp_path, "spectrum", "--family", "poschl-teller", "--zeta", "3", "--eta", "1",
            "--m", "1.5", "--epsilon", "0.5", "--stable-output",
        )
        assert result.exit_code == 3
        assert json.loads(text)["levels"] == []

    def test_table_format(self, runner, tmp_path):
        result, text = run(runner, tmp_path, "spectrum", *SCARF, "--format", "table")
        assert result.exit_code == 0
        assert "Bound levels - scarf" in text
        assert "2.44948974" in text


class TestWavefunctionCommand:
    def test_scarf_ground_state_csv(self, runner, tmp_path):
        result, text = run(runner, tmp_path, "wavefunction", *SCARF, "--n", "0", name="phi.csv")
        assert result.exit_code == 0
        lines = text.splitlines()
        assert lines[0] == "x_re,x_im,phi_re,phi_im"
        assert len(lines) == 2402

    def test_coarser_grid(self, runner, tmp_path):
        _, text = run(runner, tmp_path, "wavefunction", *SCARF, "--n", "1", "--h", "0.1", "--L", "8")
        assert len(text.splitlines()) == 162

    def test_missing_level(self, runner, tmp_path):
        result, _ = run(runner, tmp_path, "wavefunction", *SCARF, "--n", "7")
        assert result.exit_code == 2

    def test_inadmissible_level(self, runner, tmp_path):
        result, _ = run(runner, tmp_path, "wavefunction", *SCARF, "--n", "4")
        assert result.exit_code == 2

    def test_rmii_unsupported(self, runner, tmp_path):
        result, text = run(
            runner, tmp_path, "wavefunction", "--family", "rosen-morse2", "--zeta", "3", "--m", "1",
            "--eta-r", "1", "--eta-i", "0.5", "--n", "0",
        )
        assert result.exit_code == 4
        assert text is None


class TestVerifyCommand:
    @pytest.mark.slow
    def test_scarf_passes(self, runner, tmp_path):
        result, text = run(
            runner, tmp_path, "verify", *SCARF, "--h", "0.02", "--L", "10",
            "--tol-rel", str(TestConfig.COARSE_REL), "--stable-output",
        )
        assert result.exit_code == 0
        report = json.loads(text)["report"]
        assert report["spurious_count"] == 0
        assert all(level["matched"] for level in report["levels"])
        assert report["grid"] == {"x_min": -10.0, "x_max": 10.0, "h": 0.02, "shift": 0.0}

    def test_tight_tolerance_fails(self, runner, tmp_path):
        result, text = run(
            runner, tmp_path, "verify", *SCARF, "--h", "0.1", "--L", "8", "--tol-rel", "1e-12",
        )
        assert result.exit_code == 5
        payload = json.loads(text)
        assert not all(level["matched"] for level in payload["report"]["levels"])
        assert "verify" in payload["metadata"]["operations"]

    def test_convergence_block(self, runner, tmp_path):
        _, text = run(
            runner, tmp_path, "verify", *SCARF, "--h", "0.1", "--L", "8", "--refinements", "1",
            "--stable-output",
        )
        convergence = json.loads(text)["convergence"]
        assert [row[0] for row in convergence["rows"]] == [0.1, 0.05]
        assert len(convergence["orders"]) == 1

    def test_empty_spectrum_exit(self, runner, tmp_path):
        result, text = run(
            runner, tmp_path, "verify", "--family", "poschl-teller", "--zeta", "3", "--eta", "1",
            "--m", "1.5", "--epsilon", "0.5",
        )
        assert result.exit_code == 3
        assert text is None

    def test_table_format(self, runner, tmp_path):
        _, text = run(runner, tmp_path, "verify", *SCARF, "--h", "0.1", "--L", "8", "--format", "table")
        assert "Verification - scarf (dirichlet:full_line)" in text
        assert "spurious eigenvalues:" in text


class TestSweepCommand:
    def test_zeta_sweep(self, runner, tmp_path):
        result, text = run(
            runner, tmp_path, "sweep", *SCARF, "--param", "zeta", "--from", "0.6", "--to", "6",
            "--steps", "28", "--workers", "2", name="sweep.csv",
        )
        assert result.exit_code == 0
        lines = text.splitlines()
        assert lines[0] == ",".join(SWEEP_HEADER)
        counts = [int(line.split(",")[1]) for line in lines[1:]]
        assert len(counts) == 29
        assert counts == sorted(counts)
        assert counts[0] == 1
        assert counts[-1] == 6
        assert all(line.endswith(",true") for line in lines[1:])

    def test_json_rows(self, runner, tmp_path):
        _, text = run(
            runner, tmp_path, "sweep", *SCARF, "--param", "eta-i", "--from", "0", "--to", "1",
            "--steps", "4", "--format", "json",
        )
        payload = json.loads(text)
        assert payload["param"] == "eta_i"
        assert [row["value"] for row in payload["rows"]] == [0.0, 0.25, 0.5, 0.75, 1.0]
        assert all(row["level_count"] == 3 for row in payload["rows"])

    def test_zero_steps_rejected(self, runner, tmp_path):
        result, _ = run(runner, tmp_path, "sweep", *SCARF, "--param", "zeta", "--from", "1", "--to", "2", "--steps", "0")
        assert result.exit_code == 2

    @pytest.mark.parametrize("param", ["kappa", "a", "epsilon"])
    def test_unsweepable_param(self, runner, tmp_path, param):
        result, text = run(runner, tmp_path, "sweep", *SCARF, "--param", param, "--from", "1", "--to", "2", "--steps", "2")
        assert result.exit_code == 2
        assert text is None


class TestGlobalOptions:
    def test_unknown_profile(self, runner, tmp_path):
        target = tmp_path / "out.json"
        result = runner.invoke(cli, ["--profile", "nosuch", "spectrum", *SCARF, "--output", str(target)])
        assert result.exit_code == 2
        assert not target.exists()

    def test_version(self, runner):
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert "0.1.0" in result.output

    def test_profile_in_metadata(self, runner, tmp_path):
        target = tmp_path / "out.json"
        runner.invoke(cli, ["--profile", "quick", "spectrum", *SCARF, "--output", str(target)])
        assert json.loads(target.read_text(encoding="utf-8"))["metadata"]["profile"] == "quick"

    @pytest.mark.parametrize(
        "args",
        [
            ["spectrum", *ECKART],
            ["verify", *SCARF, "--h", "0.1", "--L", "8"],
        ],
        ids=["spectrum", "verify"],
    )
    def test_stable_output_is_byte_identical(self, runner, tmp_path, args):
        _, first = run(runner, tmp_path, *args, "--stable-output", name="first.json")
        _, second = run(runner, tmp_path, *args, "--stable-output", name="second.json")
        assert first is not None
        assert first == second
