"""Exception types raised by the library.

Every error carries a stable ``name`` so the command line can report it in a
machine-readable way.
"""


class PTLindbladError(Exception):
    """Base class for all library errors."""

    @property
    def name(self) -> str:
        return type(self).__name__


class PhaseBoundary(PTLindbladError):
    """Parameters sit on (or beyond) the PT-symmetric phase boundary."""


class UnsupportedPhase(PTLindbladError):
    """The requested construction is only defined for a zero off-diagonal phase."""


class TooManyOperators(PTLindbladError):
    """More than three Lindblad operators were supplied for a two-level system."""


class StepTooLarge(PTLindbladError):
    """The fixed-step integrator was asked to take steps that are too coarse."""


class OutOfDomain(PTLindbladError):
    """A closed-form formula was evaluated outside its parameter domain."""


class NonRealProbability(PTLindbladError):
    """A transition probability came out with a sizeable imaginary part."""


class ConfigError(PTLindbladError):
    """A scenario configuration could not be read or failed validation."""
