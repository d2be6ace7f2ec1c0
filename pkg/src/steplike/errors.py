"""Exception hierarchy.

Three families are distinguished because the CLI maps them to exit codes:
``ConfigError`` (bad user input, exit 2), ``DomainError`` (a quantity is not
defined at the requested parameters, exit 3) and ``NumericalError`` (a
computation broke down, exit 3).
"""


class SteplikeError(Exception):
    """Base class for every error raised by the package."""


class ConfigError(SteplikeError, ValueError):
    """Invalid configuration, flag value or config-file line."""


class DomainError(SteplikeError, ValueError):
    """The requested quantity is undefined for the given parameters."""


class NumericalError(SteplikeError, ArithmeticError):
    """A numerical procedure failed or hit a singularity."""


class SpectrumPoint(NumericalError):
    """The spectral parameter lies on one of the spectral rays."""


class EigenvalueHit(NumericalError):
    """The spectral parameter coincides with the point-interaction eigenvalue."""


class NoConvergence(NumericalError):
    """An iterative method did not reach its tolerance."""


class DegenerateDelta(DomainError):
    """Im z equals Im V+ or Im V-, so the asymptotic sign is undefined."""


class DegenerateImV(DomainError):
    """Im V+ equals Im V-, so the strip and the optimal pseudomode collapse."""


class DeltaOutsideStrip(DomainError):
    """Im z is not strictly between Im V+ and Im V-."""


class WrongModel(DomainError):
    """The operation is only available for the model V+ = i, V- = -i."""


class NotInOmega(DomainError):
    """The coupling does not produce a discrete eigenvalue."""


class QuadratureDomain(DomainError):
    """The sampled function does not vanish at the ends of its grid."""


class GridMismatch(DomainError):
    """Sampled functions live on a grid other than the discretization's."""


class ResolutionError(DomainError):
    """Grid spacing or half-width is too coarse for the requested points."""
