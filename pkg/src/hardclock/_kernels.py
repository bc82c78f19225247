"""Compiled integration loops for the normalized oscillator.

All kernels take the parameters as scalars plus ``sgn`` (+1 forward,
-1 backward) and report failures through an integer status instead of
raising, so the Python wrappers own the error policy.
"""
import math

import numpy as np
from numba import njit

OK = 0
BLOWUP = 1
STEP_LIMIT = 2
STEP_UNDERFLOW = 3
CAPTURED = 4

BLOWUP_NORM = 1e6

# Dormand-Prince 5(4) tableau (nodes unused: the field is autonomous)
A21 = 1 / 5
A31, A32 = 3 / 40, 9 / 40
A41, A42, A43 = 44 / 45, -56 / 15, 32 / 9
A51, A52, A53, A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
A61, A62, A63, A64, A65 = 9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656
B1, B3, B4, B5, B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
# fifth minus fourth order weights
E1, E3, E4, E5, E6, E7 = (
    71 / 57600,
    -71 / 16695,
    71 / 1920,
    -17253 / 339200,
    22 / 525,
    -1 / 40,
)


@njit(cache=True)
def rhs(a, w, inp, sgn, x, y):
    r = math.hypot(x, y)
    g = -1.0 + a * r - r * r
    return sgn * (g * x - w * y + inp), sgn * (g * y + w * x)


@njit(cache=True)
def rk4_path(a, w, inp, sgn, x0, y0, dt, n):
    """Classical RK4 with ``n`` steps; returns (states, status)."""
    out = np.empty((n + 1, 2))
    out[0, 0] = x0
    out[0, 1] = y0
    x, y = x0, y0
    h2 = 0.5 * dt
    for k in range(n):
        k1x, k1y = rhs(a, w, inp, sgn, x, y)
        k2x, k2y = rhs(a, w, inp, sgn, x + h2 * k1x, y + h2 * k1y)
        k3x, k3y = rhs(a, w, inp, sgn, x + h2 * k2x, y + h2 * k2y)
        k4x, k4y = rhs(a, w, inp, sgn, x + dt * k3x, y + dt * k3y)
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        y += dt / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        out[k + 1, 0] = x
        out[k + 1, 1] = y
        if not (math.hypot(x, y) < BLOWUP_NORM):
            return out[: k + 2], BLOWUP
    return out, OK


@njit(cache=True)
def _dopri_step(a, w, inp, sgn, x, y, k1x, k1y, h):
    k2x, k2y = rhs(a, w, inp, sgn, x + h * A21 * k1x, y + h * A21 * k1y)
    k3x, k3y = rhs(
        a, w, inp, sgn, x + h * (A31 * k1x + A32 * k2x), y + h * (A31 * k1y + A32 * k2y)
    )
    k4x, k4y = rhs(
        a,
        w,
        inp,
        sgn,
        x + h * (A41 * k1x + A42 * k2x + A43 * k3x),
        y + h * (A41 * k1y + A42 * k2y + A43 * k3y),
    )
    k5x, k5y = rhs(
        a,
        w,
        inp,
        sgn,
        x + h * (A51 * k1x + A52 * k2x + A53 * k3x + A54 * k4x),
        y + h * (A51 * k1y + A52 * k2y + A53 * k3y + A54 * k4y),
    )
    k6x, k6y = rhs(
        a,
        w,
        inp,
        sgn,
        x + h * (A61 * k1x + A62 * k2x + A63 * k3x + A64 * k4x + A65 * k5x),
        y + h * (A61 * k1y + A62 * k2y + A63 * k3y + A64 * k4y + A65 * k5y),
    )
    xn = x + h * (B1 * k1x + B3 * k3x + B4 * k4x + B5 * k5x + B6 * k6x)
    yn = y + h * (B1 * k1y + B3 * k3y + B4 * k4y + B5 * k5y + B6 * k6y)
    k7x, k7y = rhs(a, w, inp, sgn, xn, yn)
    ex = h * (E1 * k1x + E3 * k3x + E4 * k4x + E5 * k5x + E6 * k6x + E7 * k7x)
    ey = h * (E1 * k1y + E3 * k3y + E4 * k4y + E5 * k5y + E6 * k6y + E7 * k7y)
    return xn, yn, k7x, k7y, ex, ey


@njit(cache=True)
def _err_norm(x, y, xn, yn, ex, ey, rtol, atol):
    sx = atol + rtol * max(abs(x), abs(xn))
    sy = atol + rtol * max(abs(y), abs(yn))
    return math.sqrt(0.5 * ((ex / sx) ** 2 + (ey / sy) ** 2))


@njit(cache=True)
def _initial_step(fx, fy, t_span):
    # small first step; the controller grows it by up to 5x per step
    return min(1e-3 / max(1.0, math.hypot(fx, fy)), t_span)


@njit(cache=True)
def _next_h(h, err):
    if err == 0.0:
        return h * 5.0
    return h * min(5.0, max(0.2, 0.9 * err ** (-0.2)))


@njit(cache=True)
def dopri_path(a, w, inp, sgn, x0, y0, t_final, rtol, atol, max_steps):
    """Adaptive run storing every accepted step: (t, states, status)."""
    ts = np.empty(max_steps + 1)
    xs = np.empty((max_steps + 1, 2))
    ts[0] = 0.0
    xs[0, 0] = x0
    xs[0, 1] = y0
    x, y, t = x0, y0, 0.0
    fx, fy = rhs(a, w, inp, sgn, x, y)
    h = _initial_step(fx, fy, t_final)
    n = 0
    while t < t_final:
        if n >= max_steps:
            return ts[: n + 1], xs[: n + 1], STEP_LIMIT
        h = min(h, t_final - t)
        if h < 1e-14 * max(1.0, abs(t)):
            return ts[: n + 1], xs[: n + 1], STEP_UNDERFLOW
        xn, yn, gx, gy, ex, ey = _dopri_step(a, w, inp, sgn, x, y, fx, fy, h)
        err = _err_norm(x, y, xn, yn, ex, ey, rtol, atol)
        if err <= 1.0:
            t = t_final if t_final - (t + h) < 1e-12 * h else t + h
            x, y, fx, fy = xn, yn, gx, gy
            n += 1
            ts[n] = t
            xs[n, 0] = x
            xs[n, 1] = y
            if not (math.hypot(x, y) < BLOWUP_NORM):
                return ts[: n + 1], xs[: n + 1], BLOWUP
        h = _next_h(h, err)
    return ts[: n + 1], xs[: n + 1], OK


@njit(cache=True)
def _hermite(p0, p1, d0, d1, h, s):
    s2 = s * s
    s3 = s2 * s
    return (
        (2 * s3 - 3 * s2 + 1) * p0
        + (s3 - 2 * s2 + s) * h * d0
        + (-2 * s3 + 3 * s2) * p1
        + (s3 - s2) * h * d1
    )


@njit(cache=True)
def dopri_section(
    a, w, inp, sgn, x0, y0, t_final, rtol, atol, x_ref, cross_sign, max_cross, max_steps,
    speed_stop,
):
    """Adaptive run that records crossings of the line ``x = x_ref``.

    A crossing counts when ``cross_sign * (x - x_ref)`` goes from negative to
    non-negative; its time is located on the cubic Hermite interpolant of the
    step.  For each loop between consecutive crossings the bounding-box
    diameter and the radius range are kept.  Stops after ``max_cross``
    crossings, at ``t_final``, or with status CAPTURED once the speed drops
below ``speed_stop``.

    Returns (cross_t, cross_xy, diam, rmin, rmax, n_cross, t, x, y, speed,
    status).
    """
    cross_t = np.empty(max_cross)
    cross_xy = np.empty((max_cross, 2))
    diam = np.empty(max_cross)
    rmin = np.empty(max_cross)
    rmax = np.empty(max_cross)
    nc = 0
    x, y, t = x0, y0, 0.0
    fx, fy = rhs(a, w, inp, sgn, x, y)
    h = _initial_step(fx, fy, t_final)
    bx0 = bx1 = x
    by0 = by1 = y
    r0 = r1 = math.hypot(x, y)
    steps = 0
    status = OK
    while t < t_final and nc < max_cross:
        if steps >= max_steps:
            status = STEP_LIMIT
            break
        h = min(h, t_final - t)
        if h < 1e-14 * max(1.0, abs(t)):
            status = STEP_UNDERFLOW
            break
        xn, yn, gx, gy, ex, ey = _dopri_step(a, w, inp, sgn, x, y, fx, fy, h)
        err = _err_norm(x, y, xn, yn, ex, ey, rtol, atol)
        if err <= 1.0:
            steps += 1
            ua = cross_sign * (x - x_ref)
            ub = cross_sign * (xn - x_ref)
            if ua < 0.0 <= ub:
                lo, hi = 0.0, 1.0
                for _ in range(60):
                    m = 0.5 * (lo + hi)
                    if cross_sign * (_hermite(x, xn, fx, gx, h, m) - x_ref) < 0.0:
                        lo = m
                    else:
                        hi = m
                s = 0.5 * (lo + hi)
                cross_t[nc] = t + s * h
                cross_xy[nc, 0] = _hermite(x, xn, fx, gx, h, s)
                cross_xy[nc, 1] = _hermite(y, yn, fy, gy, h, s)
                diam[nc] = math.hypot(bx1 - bx0, by1 - by0)
                rmin[nc] = r0
                rmax[nc] = r1
                nc += 1
                bx0 = bx1 = xn
                by0 = by1 = yn
                r0 = r1 = math.hypot(xn, yn)
            t = t_final if t_final - (t + h) < 1e-12 * h else t + h
            x, y, fx, fy = xn, yn, gx, gy
            bx0 = min(bx0, x)
            bx1 = max(bx1, x)
            by0 = min(by0, y)
            by1 = max(by1, y)
            r = math.hypot(x, y)
            r0 = min(r0, r)
            r1 = max(r1, r)
            if not (r < BLOWUP_NORM):
                status = BLOWUP
                break
            if math.hypot(fx, fy) < speed_stop:
                status = CAPTURED
                break
        h = _next_h(h, err)
    speed = math.hypot(fx, fy)
    return (
        cross_t[:nc],
        cross_xy[:nc],
        diam[:nc],
        rmin[:nc],
        rmax[:nc],
        nc,
        t,
        x,
        y,
        speed,
        status,
    )
