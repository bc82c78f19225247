"""Parameters and vector field of the forced hard-excitation oscillator.

The normalized planar system is

    dx/dt = g(r) x - omega y + input
    dy/dt = g(r) y + omega x,        g(r) = -1 + alpha r - r**2,  r = |(x, y)|

obtained from the complex model
``dz/dt = (sigma0 + j Omega0) z + sigma1 |z| z + sigma2 |z|^2 z + I0``
by the rescaling ``z -> sqrt(|sigma0/sigma2|) z``, ``t -> t/|sigma0|``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import RegimeError


@dataclass(frozen=True)
class RawParams:
    """Coefficients of the complex model before rescaling."""

    sigma0: float
    sigma1: float
    sigma2: float
    Omega0: float
    I0: float = 0.0

    @property
    def hard_excitation(self) -> bool:
        """True when a stable equilibrium coexists with a stable cycle."""
        return (
            self.sigma1**2 - 4.0 * self.sigma0 * self.sigma2 > 0.0
            and self.sigma1 > 0.0
            and self.sigma2 < 0.0
            and self.sigma0 < 0.0
        )


@dataclass(frozen=True)
class NormParams:
    """Rescaled parameter triple (alpha, omega, input)."""

    alpha: float
    omega: float
    input: float = 0.0

    def with_input(self, value: float) -> "NormParams":
        return NormParams(self.alpha, self.omega, value)


@dataclass(frozen=True)
class State:
    x: float
    y: float

    def __iter__(self):
        yield self.x
        yield self.y

    @property
    def radius(self) -> float:
        return math.hypot(self.x, self.y)


def normalize(raw: RawParams) -> NormParams:
    """Rescale raw coefficients to the normalized triple.

    A negative ``I0`` is folded onto ``|I0|`` through the symmetry
    ``z -> -z, I0 -> -I0``; callers that need the original orientation
    reflect states with :func:`reflect`.

    Raises
    ------
    RegimeError
        If the coefficients do not describe hard excitation
        (``sigma0 < 0``, ``sigma2 < 0``, ``sigma1 > 0`` and
        ``sigma1**2 - 4 sigma0 sigma2 > 0``).
    """
    if not raw.hard_excitation:
        raise RegimeError(
            "hard excitation requires sigma0<0, sigma2<0, sigma1>0 and "
            f"sigma1^2-4*sigma0*sigma2>0; got {raw}"
        )
    s0 = abs(raw.sigma0)
    s2 = abs(raw.sigma2)
    alpha = raw.sigma1 / math.sqrt(s0 * s2)
    omega = raw.Omega0 / s0
    inp = math.sqrt(s2 / s0) * abs(raw.I0) / s0
    return NormParams(alpha, omega, inp)


def reflect(s: State) -> State:
    """Image of a state under ``z -> -z``."""
    return State(-s.x, -s.y)


def g_radial(alpha: float, r: float) -> float:
    """Radial growth factor ``-1 + alpha r - r**2``."""
    return -1.0 + alpha * r - r * r


def vector_field(p: NormParams, s: State) -> tuple[float, float]:
    x, y = s.x, s.y
    g = g_radial(p.alpha, math.hypot(x, y))
    return g * x - p.omega * y + p.input, g * y + p.omega * x
