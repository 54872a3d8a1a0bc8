"""
Configuration exceptions for the numerical settings system.

Provides specific exception types for configuration-related errors,
allowing precise error handling and user-friendly error messages.
"""


class ConfigurationError(Exception):
    """Base exception for all configuration-related errors."""

    def __init__(self, message: str, config_path: str | None = None) -> None:
        """
        Initialize configuration error.

        Args:
            message: Error description
            config_path: Path to the configuration file that caused the error
        """
        self.message = message
        self.config_path = config_path
        super().__init__(self._format_message())

    def _format_message(self) -> str:
        """Format the error message with optional config path."""
        if self.config_path:
            return f"{self.message} (config: {self.config_path})"
        return self.message


class ProfileNotFoundError(ConfigurationError):
    """Raised when a requested settings profile is not defined."""

    def __init__(self, profile: str, available_profiles: list[str] | None = None) -> None:
        """
        Initialize profile not found error.

        Args:
            profile: Name of the missing profile
            available_profiles: List of defined profiles for suggestions
        """
        self.profile = profile
        self.available_profiles = available_profiles or []

        message = f"Profile '{profile}' not found"
        if self.available_profiles:
            message += f". Available profiles: {', '.join(self.available_profiles)}"

        super().__init__(message)


class InvalidSettingError(ConfigurationError):
    """Raised when a setting is missing or has an unusable value."""

    def __init__(self, key: str, value: object, reason: str) -> None:
        """
        Initialize invalid setting error.

        Args:
            key: Dotted key of the offending setting, e.g. 'grid.h'
            value: The rejected value
            reason: What the value must satisfy
        """
        self.key = key
        self.value = value

        super().__init__(f"Invalid setting '{key}' = {value!r}: {reason}")
