"""Exception hierarchy shared by every module."""


class HardClockError(Exception):
    """Base class for all errors raised by :mod:`hardclock`."""


class RegimeError(HardClockError, ValueError):
    """Raw coefficients are outside the hard-excitation regime."""


class InputDomainError(HardClockError, ValueError):
    """The constant input is outside the domain an operation accepts."""


class DomainError(HardClockError, ValueError):
    """A closed-form expression has no real value for the given parameters."""


class DegenerateError(HardClockError, ValueError):
    """Degenerate algebraic object (zero polynomial, singular point, ...)."""


class NumericalFailure(HardClockError, RuntimeError):
    """Base class for failures of simulation-based procedures."""


class BlowupError(NumericalFailure):
    """Trajectory left the ball of radius 1e6."""


class NoCycleError(NumericalFailure):
    """No limit cycle could be identified from the simulation."""


class BracketError(NumericalFailure):
    """The bracket handed to a bisection does not enclose a transition."""
