"""
Numerical settings for complex Dirac spectra.

This module provides the YAML-backed settings manager, its typed views and
a lazily created global instance shared by the library and the CLI.
"""

__version__ = "0.1.0"

from .exceptions import ConfigurationError, InvalidSettingError, ProfileNotFoundError
from .settings import (
    FamilyContour,
    FixedPointSettings,
    GridDefaults,
    Settings,
    Tolerances,
)

# Global settings instance - lazy loaded
_global_settings: Settings | None = None


def get_settings() -> Settings:
    """
    Get the global settings instance.

    Lazy-loads the settings on first access so importing the library never
    touches the file system.

    Returns:
        Global Settings instance
    """
    global _global_settings
    if _global_settings is None:
        _global_settings = Settings()
    return _global_settings


def set_profile(profile: str) -> None:
    """
    Set the active settings profile.

    Args:
        profile: Profile name defined under 'profiles' in defaults.yaml,
                or 'default'
    """
    get_settings().set_profile(profile)


def reset_settings() -> None:
    """Drop the global instance so the next access reloads from disk."""
    global _global_settings
    _global_settings = None


__all__ = [
    "Settings",
    "GridDefaults",
    "FamilyContour",
    "Tolerances",
    "FixedPointSettings",
    "ConfigurationError",
    "ProfileNotFoundError",
    "InvalidSettingError",
    "get_settings",
    "set_profile",
    "reset_settings",
]
