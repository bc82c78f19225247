"""Dense real polynomials: roots, derivative, resultant and discriminant.

Coefficients are stored in ascending order, ``coeffs[k]`` multiplies
``x**k``.  The resultant follows the Sylvester convention with the rows of
the first argument on top, which gives

    Res(p, q) = a_p**deg(q) * prod(q(s_i))   over the roots s_i of p.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateError

TRIM_TOL = 1e-14
ROOT_RESIDUAL_TOL = 1e-8
CONJUGATE_TOL = 1e-10


def _trim(coeffs: Sequence[float]) -> tuple[float, ...]:
    c = [float(v) for v in coeffs]
    while c and abs(c[-1]) <= TRIM_TOL:
        c.pop()
    return tuple(c)


@dataclass(frozen=True, init=False)
class RealPolynomial:
    coeffs: tuple[float, ...]

    def __init__(self, coeffs: Iterable[float]):
        object.__setattr__(self, "coeffs", _trim(list(coeffs)))

    @classmethod
    def from_roots(cls, roots: Sequence[complex], lead: float = 1.0) -> "RealPolynomial":
        c = np.polynomial.polynomial.polyfromroots(roots) * lead
        return cls(np.real_if_close(c, tol=1e6).real)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> float:
        if self.is_zero:
            raise DegenerateError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __call__(self, x):
        if self.is_zero:
            return 0.0 * np.asarray(x)
        return np.polynomial.polynomial.polyval(x, self.coeffs)

    def __repr__(self) -> str:
        return f"RealPolynomial({list(self.coeffs)!r})"


def roots(p: RealPolynomial) -> np.ndarray:
    """All ``degree`` roots, as complex numbers, via companion eigenvalues.

    LAPACK balances the companion matrix before the QR iteration.  Roots are
    returned sorted by real part, then imaginary part; conjugate pairs are
    made exactly symmetric.
    """
    if p.degree < 1:
        raise DegenerateError(f"roots need degree >= 1, got {p.degree}")
    c = np.asarray(p.coeffs, dtype=float)
    n = p.degree
    if n == 1:
        found = np.array([-c[0] / c[1]], dtype=complex)
    else:
        comp = np.zeros((n, n))
        comp[1:, :-1] = np.eye(n - 1)
        comp[:, -1] = -c[:-1] / c[-1]
        found = np.linalg.eigvals(comp).astype(complex)
    return _symmetrize(found)


def _symmetrize(r: np.ndarray) -> np.ndarray:
    r = r.copy()
    small = np.abs(r.imag) <= CONJUGATE_TOL * (1.0 + np.abs(r.real))
    r[small] = r[small].real
    upper = np.flatnonzero(r.imag > 0)
    lower = list(np.flatnonzero(r.imag < 0))
    for i in upper:
        j = min(lower, key=lambda k: abs(r[k] - np.conj(r[i])))
        lower.remove(j)
        mid = 0.5 * (r[i] + np.conj(r[j]))
        r[i], r[j] = mid, np.conj(mid)
    return r[np.lexsort((r.imag, r.real))]


def derivative(p: RealPolynomial) -> RealPolynomial:
    if p.degree < 1:
        return RealPolynomial([])
    return RealPolynomial([k * c for k, c in enumerate(p.coeffs) if k > 0])


def sylvester_matrix(p: RealPolynomial, q: RealPolynomial) -> np.ndarray:
    """Sylvester matrix with the ``deg q`` rows of ``p`` first."""
    if p.is_zero or q.is_zero:
        raise DegenerateError("resultant of the zero polynomial")
    return _sylvester(np.asarray(p.coeffs)[None, :], np.asarray(q.coeffs)[None, :])[0]


def _sylvester(pc: np.ndarray, qc: np.ndarray) -> np.ndarray:
    # pc, qc: (batch, deg+1) ascending; returns (batch, m+n, m+n)
    m = pc.shape[1] - 1
    n = qc.shape[1] - 1
    size = m + n
    out = np.zeros((pc.shape[0], size, size))
    pdesc = pc[:, ::-1]
    qdesc = qc[:, ::-1]
    for i in range(n):
        out[:, i, i : i + m + 1] = pdesc
    for i in range(m):
        out[:, n + i, i : i + n + 1] = qdesc
    return out


def resultant(p: RealPolynomial, q: RealPolynomial) -> float:
    if p.is_zero or q.is_zero:
        raise DegenerateError("resultant of the zero polynomial")
    if p.degree == 0 and q.degree == 0:
        return 1.0
    return float(np.linalg.det(sylvester_matrix(p, q)))


def discriminant(p: RealPolynomial) -> float:
    """``a_n**(2n-2) * prod_{i<j} (s_i - s_j)**2`` through ``Res(p, p')``."""
    n = p.degree
    if n < 2:
        raise DegenerateError(f"discriminant needs degree >= 2, got {n}")
    sign = -1.0 if (n * (n - 1) // 2) % 2 else 1.0
    return sign * resultant(p, derivative(p)) / p.lead


def batch_discriminant(coeffs: np.ndarray) -> np.ndarray:
    """Discriminants of many polynomials sharing one degree.

    ``coeffs`` has shape ``(batch, n+1)`` in ascending order with nonzero
    last column.
    """
    coeffs = np.atleast_2d(np.asarray(coeffs, dtype=float))
    n = coeffs.shape[1] - 1
    if n < 2:
        raise DegenerateError(f"discriminant needs degree >= 2, got {n}")
    dcoeffs = coeffs[:, 1:] * np.arange(1, n + 1)
    sign = -1.0 if (n * (n - 1) // 2) % 2 else 1.0
    return sign * np.linalg.det(_sylvester(coeffs, dcoeffs)) / coeffs[:, -1]
