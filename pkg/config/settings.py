"""
Numerical settings for spectrum computation and verification.

Loads grid defaults, tolerances and iteration limits from a YAML file with
environment variable substitution, and applies named profiles on top of
the base sections.
"""

import copy
import os
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import yaml

from .exceptions import ConfigurationError, InvalidSettingError, ProfileNotFoundError

DEFAULT_PROFILE = "default"
PROFILE_ENV_VAR = "DIRAC_PROFILE"


@dataclass(frozen=True)
class GridDefaults:
    """Uniform grid spacing and half-width used when the caller gives none."""

    h: float
    half_width: float


@dataclass(frozen=True)
class FamilyContour:
    """
    Contour placement for one potential family.

    ``x_min`` of None means the full line; ``shift`` of None means the
    family supplies its own imaginary offset.
    """

    x_min: float | None
    shift: float | None
    domain: str


@dataclass(frozen=True)
class Tolerances:
    """Matching, cross-check and guard thresholds."""

    rel: float
    imag: float
    cross_check: float
    spurious_window: float
    singular_magnitude: float
    tail_fraction: float


@dataclass(frozen=True)
class FixedPointSettings:
    """Limits of the self-consistent energy iteration."""

    max_iterations: int
    tolerance: float


def _deep_merge(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


class Settings:
    """
    Central manager for numerical settings.

    Reads ``config/defaults.yaml`` (or an explicit file), substitutes
    environment variables and merges the active profile over the base
    sections.

    Example:
        >>> settings = Settings(profile="quick")
        >>> settings.grid.h
        0.02
    """

    def __init__(self, config_path: Path | None = None, profile: str | None = None) -> None:
        """
        Initialize settings.

        Args:
            config_path: Path to the settings YAML file.
                        If None, looks for config/defaults.yaml from the
                        working directory upwards.
            profile: Profile name to apply. If None, uses DIRAC_PROFILE
                    or 'default' (no overrides).
        """
        self.config_path = config_path or self._find_config_path()
        self.profile = profile or os.getenv(PROFILE_ENV_VAR, DEFAULT_PROFILE)
        self.raw_data: dict[str, Any] = {}
        self.data: dict[str, Any] = {}

        self._load_config()
        self._apply_profile()
        self._validate_config()

    def _find_config_path(self) -> Path:
        """Find the settings file in the project structure."""
        current = Path.cwd()

        for parent in [current, *current.parents]:
            config_file = parent / "config" / "defaults.yaml"
            if config_file.exists():
                return config_file

        return Path(__file__).parent / "defaults.yaml"

    def _load_config(self) -> None:
        """Load settings from YAML with environment variable substitution."""
        try:
            raw_text = Path(self.config_path).read_text(encoding="utf-8")
            loaded = yaml.safe_load(self._substitute_env_vars(raw_text))
        except FileNotFoundError as e:
            raise ConfigurationError(
                f"Settings file not found: {self.config_path}", str(self.config_path)
            ) from e
        except yaml.YAMLError as e:
            raise ConfigurationError(
                f"Invalid YAML in settings file: {e}", str(self.config_path)
            ) from e

        if not isinstance(loaded, dict):
            raise ConfigurationError("Settings file must contain a mapping", str(self.config_path))
        self.raw_data = loaded

    def _substitute_env_vars(self, config_text: str) -> str:
        """
        Substitute environment variables in settings text.

        Supports ${VAR_NAME} and ${VAR_NAME:-default_value} syntax; unset
        variables without a default are left as written.
        """

        def replace_var(match: re.Match[str]) -> str:
            var_expr = match.group(1)
            if ":-" in var_expr:
                var_name, default = var_expr.split(":-", 1)
                return os.getenv(var_name, default)
            value = os.getenv(var_expr)
            return match.group(0) if value is None else value

        return re.sub(r"\$\{([^}]+)\}", replace_var, config_text)

    def _apply_profile(self) -> None:
        """Merge the active profile over the base sections."""
        base = {key: value for key, value in self.raw_data.items() if key != "profiles"}
        if self.profile == DEFAULT_PROFILE:
            self.data = base
            return

        profiles = self.raw_data.get("profiles") or {}
        if self.profile not in profiles:
            raise ProfileNotFoundError(self.profile, self.get_available_profiles())
        self.data = _deep_merge(base, profiles[self.profile] or {})

    def _section(self, name: str) -> dict[str, Any]:
        section = self.data.get(name)
        if not isinstance(section, dict):
            raise InvalidSettingError(name, section, "section is missing")
        return section

    def _positive(self, key: str, value: Any) -> float:
        try:
            number = float(value)
        except (TypeError, ValueError) as e:
            raise InvalidSettingError(key, value, "must be a number") from e
        if not number > 0:
            raise InvalidSettingError(key, value, "must be positive")
        return number

    def _validate_config(self) -> None:
        """Validate the merged settings by building every typed view once."""
        _ = (self.grid, self.tolerances, self.fixed_point, self.sweep_workers, self.log_level)
        for family in self._section("families"):
            self.family_contour(family)

    @property
    def grid(self) -> GridDefaults:
        section = self._section("grid")
        return GridDefaults(
            h=self._positive("grid.h", section.get("h")),
            half_width=self._positive("grid.half_width", section.get("half_width")),
        )

    @property
    def tolerances(self) -> Tolerances:
        section = self._section("tolerances")
        return Tolerances(
            **{
                key: self._positive(f"tolerances.{key}", section.get(key))
                for key in (
                    "rel",
                    "imag",
                    "cross_check",
                    "spurious_window",
                    "singular_magnitude",
                    "tail_fraction",
                )
            }
        )

    @property
    def fixed_point(self) -> FixedPointSettings:
        section = self._section("fixed_point")
        return FixedPointSettings(
            max_iterations=int(
                self._positive("fixed_point.max_iterations", section.get("max_iterations"))
            ),
            tolerance=self._positive("fixed_point.tolerance", section.get("tolerance")),
        )

    @property
    def sweep_workers(self) -> int:
        return int(self._positive("sweep.workers", self._section("sweep").get("workers")))

    @property
    def log_level(self) -> str:
        level = str(self._section("logging").get("level", "INFO")).upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise InvalidSettingError("logging.level", level, "must be a logging level name")
        return level

    def family_contour(self, family: str) -> FamilyContour:
        """
        Get the contour placement for a family tag.

        Raises:
            InvalidSettingError: If the family has no contour section.
        """
        families = self._section("families")
        if family not in families:
            raise InvalidSettingError(f"families.{family}", None, "family is not configured")
        entry = families[family] or {}
        x_min = entry.get("x_min")
        shift = entry.get("shift")
        if shift is not None and float(shift) < 0:
            raise InvalidSettingError(f"families.{family}.shift", shift, "must be >= 0")
        return FamilyContour(
            x_min=None if x_min is None else float(x_min),
            shift=None if shift is None else float(shift),
            domain=str(entry.get("domain", "full_line")),
        )

    def get_available_profiles(self) -> list[str]:
        """Get list of all defined profiles, 'default' included."""
        return [DEFAULT_PROFILE, *(self.raw_data.get("profiles") or {})]

    def set_profile(self, profile: str) -> None:
        """
        Change the active profile and re-merge the settings.

        Args:
            profile: New profile name
        """
        previous = self.profile
        self.profile = profile
        try:
            self._apply_profile()
            self._validate_config()
        except ConfigurationError:
            self.profile = previous
            self._apply_profile()
            raise

    def get_config_info(self) -> dict[str, Any]:
        """Get settings summary for diagnostics and report metadata."""
        return {
            "profile": self.profile,
            "config_path": str(self.config_path),
            "profiles": self.get_available_profiles(),
            "grid": self.data.get("grid", {}),
            "tolerances": self.data.get("tolerances", {}),
        }
