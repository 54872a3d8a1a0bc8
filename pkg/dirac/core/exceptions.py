"""
Spectra-specific exceptions with exit codes and recovery hints.

Every error the library raises carries a machine-readable code, a list of
actionable suggestions and a context dict, and maps onto one CLI exit code.
"""

from typing import Any


class SpectraError(Exception):
    """Base exception for all spectrum, wavefunction and verification errors."""

    exit_code: int = 2

    def __init__(
        self,
        message: str,
        error_code: str | None = None,
        recovery_suggestions: list[str] | None = None,
        context: dict[str, Any] | None = None,
    ) -> None:
        """
        Initialize spectra error with enhanced context.

        Args:
            message: Human-readable error description
            error_code: Machine-readable error code for categorization
            recovery_suggestions: List of actionable recovery steps
            context: Additional context for debugging
        """
        super().__init__(message)
        self.message = message
        self.error_code = error_code or self.__class__.__name__
        self.recovery_suggestions = recovery_suggestions or []
        self.context = context or {}

    def to_dict(self) -> dict[str, Any]:
        """Convert error to dictionary for structured logging and reports."""
        return {
            "error_type": self.__class__.__name__,
            "error_code": self.error_code,
            "message": self.message,
            "recovery_suggestions": self.recovery_suggestions,
            "context": self.context,
        }


class InvalidSpecError(SpectraError):
    """Raised when potential parameters violate their invariants."""

    def __init__(self, message: str, field: str | None = None) -> None:
        context = {"field": field} if field else {}
        super().__init__(
            message=message,
            error_code="INVALID_SPEC",
            recovery_suggestions=[
                "Check the family tag and its parameter names",
                "Mass m must be positive",
                "Pöschl-Teller epsilon must lie strictly inside (0, pi/2)",
            ],
            context=context,
        )


class InvalidGridError(SpectraError):
    """Raised when a contour grid is malformed."""

    def __init__(self, message: str, field: str | None = None) -> None:
        context = {"field": field} if field else {}
        super().__init__(
            message=message,
            error_code="INVALID_GRID",
            recovery_suggestions=[
                "Use x_max > x_min and a positive spacing h",
                "The grid needs at least 50 points",
                "Keep the contour shift in [0, pi/2)",
            ],
            context=context,
        )


class DomainError(SpectraError):
    """Raised when a closed-form formula is evaluated outside its domain."""

    def __init__(self, message: str, **context: Any) -> None:
        super().__init__(
            message=message,
            error_code="DOMAIN_ERROR",
            recovery_suggestions=["Choose transform parameters with S != 0 and C != 0"],
            context=context,
        )


class GaugeConditionError(SpectraError):
    """Raised when the gauge-fixing condition cannot be formed (C = 0)."""

    def __init__(self, s: float, c: float) -> None:
        super().__init__(
            message="Gauge condition divides by C, which vanishes for these transform parameters",
            error_code="GAUGE_CONDITION",
            recovery_suggestions=["Use (a, b) with a^2 != b^2"],
            context={"S": s, "C": c},
        )


class DegenerateDenominatorError(SpectraError):
    """Raised when a division in the first-order system hits zero."""

    def __init__(self, message: str, denominator: complex) -> None:
        super().__init__(
            message=message,
            error_code="DEGENERATE_DENOMINATOR",
            recovery_suggestions=["Pick an energy with m + E*C != 0 (or m + E != 0)"],
            context={"denominator": str(denominator)},
        )


class MissingEnergyError(SpectraError):
    """Raised when an energy-dependent potential is built without an energy."""

    def __init__(self, family: str) -> None:
        super().__init__(
            message=f"Family '{family}' needs an energy to build its effective potential",
            error_code="MISSING_ENERGY",
            recovery_suggestions=["Pass the relativistic energy of the level"],
            context={"family": family},
        )


class InadmissibleLevelError(SpectraError):
    """Raised when a wavefunction is requested for a level outside its window."""

    def __init__(self, n: int, family: str, reason: str) -> None:
        super().__init__(
            message=f"Level n={n} is not admissible for {family}: {reason}",
            error_code="INADMISSIBLE_LEVEL",
            recovery_suggestions=["Run the spectrum command to list admissible levels"],
            context={"n": n, "family": family},
        )


class UnsupportedFamilyError(SpectraError):
    """Raised for operations a family has no analytic form for."""

    exit_code = 4

    def __init__(self, family: str, operation: str) -> None:
        super().__init__(
            message=(
                f"No analytic {operation} is available for '{family}'; "
                "its eigenfunctions were never given in closed form"
            ),
            error_code="UNSUPPORTED_FAMILY",
            recovery_suggestions=[
                "Use the verify command for a numeric check of the energies",
            ],
            context={"family": family, "operation": operation},
        )


class BranchCutError(SpectraError):
    """Raised when a contour collides with a singular point or branch cut."""

    def __init__(self, message: str, family: str, point: complex | None = None) -> None:
        context: dict[str, Any] = {"family": family}
        if point is not None:
            context["point"] = str(point)
        super().__init__(
            message=message,
            error_code="BRANCH_CUT",
            recovery_suggestions=[
                "Shift the contour off the real axis",
                "Start the half-line grid away from r = 0",
            ],
            context=context,
        )


class DivergentNormError(SpectraError):
    """Raised when a sampled function grows towards the grid ends."""

    def __init__(self, tail: float, reference: float) -> None:
        super().__init__(
            message="Sampled function grows towards the grid ends and cannot be normalized",
            error_code="DIVERGENT_NORM",
            recovery_suggestions=["Check that the level is admissible before normalizing"],
            context={"tail": tail, "reference": reference},
        )


class SingularityError(SpectraError):
    """Raised when the effective potential blows up on the grid."""

    def __init__(self, magnitude: float, point: complex) -> None:
        super().__init__(
            message=f"Effective potential reaches |V| = {magnitude:.3e} at {point}",
            error_code="SINGULAR_POTENTIAL",
            recovery_suggestions=["Increase the contour shift or move the grid start"],
            context={"magnitude": magnitude, "point": str(point)},
        )


class DegenerateStudyError(SpectraError):
    """Raised when a convergence study cannot estimate an order."""

    def __init__(self, message: str) -> None:
        super().__init__(
            message=message,
            error_code="DEGENERATE_STUDY",
            recovery_suggestions=["Pass at least two grids with strictly decreasing h"],
        )


class NonConvergenceError(SpectraError):
    """Raised when the self-consistent energy iteration does not settle."""

    exit_code = 5

    def __init__(self, last_iterate: complex, history: list[complex]) -> None:
        super().__init__(
            message=f"Fixed-point iteration stopped after {len(history)} steps at E = {last_iterate}",
            error_code="NON_CONVERGENCE",
            recovery_suggestions=[
                "Seed the iteration with the closed-form energy",
                "Refine the grid or raise fixed_point.max_iterations",
            ],
            context={"iterations": len(history)},
        )
        self.last_iterate = last_iterate
        self.history = history


class ErrorFormatter:
    """Formats errors for terminal display."""

    @staticmethod
    def format_error_for_user(error: SpectraError) -> str:
        """Format error with recovery suggestions."""
        formatted = f"Error: {error.message}\n"
        if error.recovery_suggestions:
            formatted += "\nSuggestions:\n"
            for i, suggestion in enumerate(error.recovery_suggestions, 1):
                formatted += f"   {i}. {suggestion}\n"
        return formatted

    @staticmethod
    def format_error_for_debug(error: SpectraError) -> str:
        """Format error with code, type and full context."""
        formatted = ErrorFormatter.format_error_for_user(error)
        formatted += f"\nCode: {error.error_code} ({error.__class__.__name__})\n"
        for key, value in error.context.items():
            formatted += f"   - {key}: {value}\n"
        return formatted
