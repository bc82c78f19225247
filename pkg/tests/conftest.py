import numpy as np
import pytest


def sign_change_roots(alpha, omega, inp, zmax=None, h=1e-4):
    """Radii where zeta**2 (g**2 + omega**2) - inp**2 changes sign.

    Independent of the polynomial machinery: a uniform scan followed by
    bisection on every bracketing cell.
    """
    zmax = alpha + 1.0 if zmax is None else zmax

    def f(z):
        g = -1.0 + alpha * z - z * z
        return z * z * (g * g + omega * omega) - inp * inp

    z = np.arange(h, zmax, h)
    v = f(z)
    out = []
    for k in np.flatnonzero(np.sign(v[:-1]) != np.sign(v[1:])):
        lo, hi = z[k], z[k + 1]
        flo = v[k]
        for _ in range(60):
            m = 0.5 * (lo + hi)
            fm = f(m)
            if np.sign(fm) == np.sign(flo):
                lo, flo = m, fm
            else:
                hi = m
        out.append(0.5 * (lo + hi))
    return out


@pytest.fixture(scope="session")
def oracle_roots():
    return sign_change_roots


# filled by test_acceptance.py, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
