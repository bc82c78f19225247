"""Equilibria of the forced oscillator through the radius polynomial.

Every equilibrium has ``x**2 + y**2 = (input/omega) y``, so its radius
``zeta`` satisfies

    zeta**2 * (g(zeta)**2 + omega**2) = input**2,

a degree-six polynomial in ``zeta``.  A positive root maps back to the plane
through ``y = omega zeta**2 / input`` and ``x = -g(zeta) y / omega``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import poly
from .errors import DegenerateError, InputDomainError
from .model import NormParams, g_radial

ZETA_MIN = 1e-9
IMAG_TOL = 1e-7
HYPERBOLIC_TOL = 1e-9


class StabilityKind(str, enum.Enum):
    STABLE_NODE = "StableNode"
    STABLE_FOCUS = "StableFocus"
    UNSTABLE_NODE = "UnstableNode"
    UNSTABLE_FOCUS = "UnstableFocus"
    SADDLE = "Saddle"
    NON_HYPERBOLIC = "NonHyperbolic"

    def __str__(self) -> str:
        return self.value

    @property
    def stable(self) -> bool:
        return self in (StabilityKind.STABLE_NODE, StabilityKind.STABLE_FOCUS)


@dataclass(frozen=True)
class Equilibrium:
    x: float
    y: float
    zeta: float
    trace: float
    det: float
    eig: tuple[complex, complex]
    kind: StabilityKind


def equilibrium_polynomial(p: NormParams) -> poly.RealPolynomial:
    if not p.input > 0.0:
        raise InputDomainError(
            "the radius polynomial needs input > 0; use the autonomous analysis for input = 0"
        )
    a, w, i = p.alpha, p.omega, p.input
    return poly.RealPolynomial([-i * i, 0.0, 1.0 + w * w, -2.0 * a, a * a + 2.0, -2.0 * a, 1.0])


def _residual(p: NormParams, z: float) -> tuple[float, float]:
    g = g_radial(p.alpha, z)
    f = z * z * (g * g + p.omega**2) - p.input**2
    # d/dz [z^2 (g^2 + w^2)] with g' = alpha - 2z
    df = 2.0 * z * (g * g + p.omega**2) + 2.0 * z * z * g * (p.alpha - 2.0 * z)
    return f, df


def _polish(p: NormParams, z: float, steps: int = 4) -> float:
    for _ in range(steps):
        f, df = _residual(p, z)
        if df == 0.0:
            break
        dz = f / df
        # near a double root Newton may overshoot; only accept improvements
        if abs(_residual(p, z - dz)[0]) >= abs(f):
            break
        z -= dz
    return z


def positive_roots(p: NormParams) -> list[float]:
    """Positive real radii of all equilibria, ascending, Newton-polished."""
    r = poly.roots(equilibrium_polynomial(p))
    keep = [float(v.real) for v in r if abs(v.imag) <= IMAG_TOL and v.real > ZETA_MIN]
    return sorted(_polish(p, z) for z in keep)


def location(p: NormParams, zeta: float) -> tuple[float, float]:
    """Phase-plane point of the equilibrium with radius ``zeta``."""
    y = p.omega * zeta * zeta / p.input
    x = -g_radial(p.alpha, zeta) * y / p.omega
    return x, y


def jacobian_at(p: NormParams, x: float, y: float) -> np.ndarray:
    r = math.hypot(x, y)
    if r == 0.0:
        raise DegenerateError("Jacobian is not defined at the origin")
    g = g_radial(p.alpha, r)
    h = p.alpha / r - 2.0
    w = p.omega
    return np.array([[g + x * x * h, x * y * h - w], [x * y * h + w, g + y * y * h]])


def jacobian(p: NormParams, e: Equilibrium) -> np.ndarray:
    return jacobian_at(p, e.x, e.y)


def trace_zeta(alpha: float, zeta: float) -> float:
    return -4.0 * zeta * zeta + 3.0 * alpha * zeta - 2.0


def det_zeta(p: NormParams, zeta: float) -> float:
    """Jacobian determinant at an equilibrium of radius ``zeta``.

    ``input**2/zeta**2 + zeta g(zeta) (alpha - 2 zeta)``; on a root of the
    radius polynomial this equals :func:`det_zeta_reduced`.
    """
    if zeta == 0.0:
        raise DegenerateError("det_zeta is singular at zeta = 0")
    a = p.alpha
    return p.input**2 / zeta**2 + zeta * g_radial(a, zeta) * (a - 2.0 * zeta)


def det_zeta_reduced(alpha: float, omega: float, zeta: float) -> float:
    a, z = alpha, zeta
    return 3 * z**4 - 5 * a * z**3 + 2 * (a * a + 2) * z**2 - 3 * a * z + (1 + omega**2)


def classify_td(trace: float, det: float) -> StabilityKind:
    if abs(det) <= HYPERBOLIC_TOL or (abs(trace) <= HYPERBOLIC_TOL and det > 0.0):
        return StabilityKind.NON_HYPERBOLIC
    if det < 0.0:
        return StabilityKind.SADDLE
    focus = trace * trace - 4.0 * det < 0.0
    if trace < 0.0:
        return StabilityKind.STABLE_FOCUS if focus else StabilityKind.STABLE_NODE
    return StabilityKind.UNSTABLE_FOCUS if focus else StabilityKind.UNSTABLE_NODE


def classify(e: Equilibrium) -> StabilityKind:
    return classify_td(e.trace, e.det)


def make_equilibrium(p: NormParams, zeta: float) -> Equilibrium:
    x, y = location(p, zeta)
    j = jacobian_at(p, x, y)
    tr = float(j[0, 0] + j[1, 1])
    det = float(j[0, 0] * j[1, 1] - j[0, 1] * j[1, 0])
    disc = complex(tr * tr - 4.0 * det)
    sq = disc**0.5
    eig = (0.5 * (tr - sq), 0.5 * (tr + sq))
    return Equilibrium(x, y, zeta, tr, det, eig, classify_td(tr, det))


def find_equilibria(p: NormParams) -> list[Equilibrium]:
    """All equilibria for ``input > 0``, sorted by radius."""
    return [make_equilibrium(p, z) for z in positive_roots(p)]


def count_equilibria(p: NormParams, zeta_lo: float = 0.0, zeta_hi: float = math.inf) -> int:
    return sum(1 for z in positive_roots(p) if zeta_lo <= z <= zeta_hi)
