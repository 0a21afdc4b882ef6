"""
Exception classes used throughout the package.

Every error raised on purpose by hyperjet derives from HyperjetError. The two branches map to the exit codes of
the command line programs: ConfigError (malformed input, exit code 2) and DomainError (values outside the domain
where the formulas are defined, exit code 3).
"""


class HyperjetError(Exception):
    """Base class of all hyperjet errors."""
    exit_code = 1


class ConfigError(HyperjetError, ValueError):
    """A config file, point file or command line value could not be parsed or validated."""
    exit_code = 2


class DomainError(HyperjetError, ValueError):
    """An argument lies outside the domain of the requested operation."""
    exit_code = 3


class PoleError(DomainError):
    """The evaluation point coincides with a pole."""


class DegeneratePairError(DomainError):
    """A point pair with z = w was given where distinct points are required."""


class DiscretenessError(DomainError):
    """Two group words give elements that are neither clearly equal nor clearly distinct."""


class DivergenceError(DomainError):
    """A series was requested whose parameters make it divergent."""


class OverflowGuardError(DomainError):
    """Sampled function values exceed the overflow guard."""


class StepSizeError(DomainError):
    """A finite difference step is too small to give a meaningful result."""


class SeriesSaturationWarning(UserWarning):
    """A series hit its term cap before the tail estimate dropped below the requested tolerance."""
