"""Bifurcation analysis of a hard-excitation radial isochron clock under
constant input: equilibria, Hopf/saddle-node/Bogdanov-Takens structure and
simulation-based limit-cycle analysis."""
from .errors import (
    BlowupError,
    BracketError,
    DegenerateError,
    DomainError,
    HardClockError,
    InputDomainError,
    NoCycleError,
    NumericalFailure,
    RegimeError,
)
from .model import NormParams, RawParams, State, g_radial, normalize, vector_field

__version__ = "0.1.0"

__all__ = [
    "BlowupError",
    "BracketError",
    "DegenerateError",
    "DomainError",
    "HardClockError",
    "InputDomainError",
    "NoCycleError",
    "NormParams",
    "NumericalFailure",
    "RawParams",
    "RegimeError",
    "State",
    "g_radial",
    "normalize",
    "vector_field",
]
