"""
Custom exceptions for the jacobi_poly package.

All exceptions inherit from JacobiError so callers can catch a single
type while still telling parameter problems from degree guards.
"""


class JacobiError(Exception):
    """Base exception for Jacobi polynomial evaluation errors."""

    def __init__(self, message: str, params: object | None = None) -> None:
        """Initialize error with message and optional offending parameters."""
        super().__init__(message)
        self.message = message
        self.params = params

    def __str__(self) -> str:
        """Return formatted error message with parameter context if available."""
        if self.params is not None:
            return f"{self.message} (params: {self.params})"
        return self.message


class JacobiDomainError(JacobiError):
    """Raised when degree, parameters or argument are not finite numbers."""

    def __init__(self, field: str, value: object) -> None:
        """Initialize domain error naming the rejected field."""
        message = f"Invalid value for '{field}': {value!r}"
        super().__init__(message)
        self.field = field
        self.value = value


class JacobiDegreeTooLarge(JacobiError):
    """Raised when the explicit-sum oracle is asked for a degree beyond its guard."""

    def __init__(self, n: int, limit: int) -> None:
        """Initialize degree guard error with requested degree and limit."""
        message = f"Degree {n} exceeds the explicit-sum limit of {limit}"
        super().__init__(message)
        self.n = n
        self.limit = limit
