"""Exception types shared across the package.

Every failure mode that callers are expected to branch on gets its own
class; the CLI maps them onto exit codes.
"""


class FanoMediumError(Exception):
    """Base class for all package errors."""


class DomainError(FanoMediumError):
    """Argument outside the mathematical domain of an operation."""


class SupportError(FanoMediumError):
    """Tabulated spectrum queried outside its support (no silent extrapolation)."""


class DivergentTailError(FanoMediumError):
    """A required frequency integral does not converge for this spectrum."""


class TruncationError(FanoMediumError):
    """Grid too narrow for the requested transform; carries the measured leakage."""

    def __init__(self, message, leakage=None):
        super().__init__(message)
        self.leakage = leakage


class PoleProximityError(FanoMediumError):
    """Mode-kernel denominator vanishes; input is effectively lossless."""


class PassivityError(FanoMediumError):
    """Negative imaginary part where passivity requires Im chi >= 0."""


class AssumptionViolationError(FanoMediumError):
    """Coupling spectrum vanishes somewhere it must not (assumption (ii))."""


class NearResonanceError(FanoMediumError):
    """Coefficient denominator below threshold; densify the grid locally."""


class DegenerateBranchError(FanoMediumError):
    """Minus branch undefined for identical reservoir couplings."""


class InstabilityError(FanoMediumError):
    """Truncated quadratic Hamiltonian is not positive definite."""


class RootFindingError(FanoMediumError):
    """Argument-principle count does not match the converged roots."""


class BathMismatchError(FanoMediumError):
    """Oracle Hamiltonian and coefficient tables built from different inputs."""


class ConfigError(FanoMediumError):
    """Run configuration failed to parse or validate."""
