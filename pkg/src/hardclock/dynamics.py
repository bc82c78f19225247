"""Time-domain simulation, limit-cycle periods and SNLC detection.

Stable cycles are reached forward in time; unstable cycles backward, where
the negated field turns them into attractors.  Periods come from return
times to a vertical Poincare line through the centroid of late-time states.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from . import _kernels as K
from .bifurcation import BifurcationKind, BifurcationPoint
from .equilibria import count_equilibria, find_equilibria, location, positive_roots
from .errors import (
    BlowupError,
    BracketError,
    DegenerateError,
    NoCycleError,
    NumericalFailure,
)
from .model import NormParams, State

Direction = Literal["forward", "backward"]
Which = Literal["stable", "unstable"]

RTOL = 1e-9
ATOL = 1e-12
HIST_DT = 0.01
T_FINAL = 1500.0
N_RETURNS = 8
SPREAD_TOL = 1e-5
CAPTURE_DIAM = 1e-6
SNLC_TOL = 1e-4
SNLC_PERIOD_FACTOR = 10.0
UNSTABLE_RETRIES = 3
CHUNK_STEPS = 200_000
MAX_STEPS = 50_000_000
CAPTURE_SPEED = 1e-10
BUDGET_GROWTH = 4.0
MAX_BUDGET = 4e6


class _TooFewReturns(NoCycleError):
    """The budget ran out before enough returns; a longer run may succeed."""


@dataclass(frozen=True)
class Adaptive:
    rtol: float = RTOL
    atol: float = ATOL


@dataclass(frozen=True)
class FixedStep:
    dt: float = HIST_DT


Stepper = Adaptive | FixedStep


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution; ``times`` run from 0 in the integration direction."""

    times: np.ndarray
    xy: np.ndarray
    direction: Direction
    integrator: dict = field(default_factory=dict)

    def __post_init__(self):
        self.times.flags.writeable = False
        self.xy.flags.writeable = False

    def __len__(self) -> int:
        return len(self.times)

    @property
    def states(self) -> list[State]:
        return [State(float(x), float(y)) for x, y in self.xy]

    @property
    def final(self) -> State:
        return State(float(self.xy[-1, 0]), float(self.xy[-1, 1]))


@dataclass(frozen=True)
class CycleEstimate:
    period: float
    stability: Which
    returns_used: int
    period_spread: float
    section_point: State
    converged: bool
    radius_range: tuple[float, float]
    final_state: State


@dataclass(frozen=True)
class OccupancyHistogram:
    component: Literal["x", "y"]
    bin_edges: np.ndarray
    counts: np.ndarray
    total_samples: int

    @property
    def modal_bin(self) -> tuple[float, float]:
        k = int(np.argmax(self.counts))
        return float(self.bin_edges[k]), float(self.bin_edges[k + 1])


def _sign(direction: Direction) -> float:
    if direction == "forward":
        return 1.0
    if direction == "backward":
        return -1.0
    raise ValueError(f"direction must be 'forward' or 'backward', got {direction!r}")


def _check(status: int, where: str) -> None:
    if status == K.BLOWUP:
        raise BlowupError(f"{where}: state norm exceeded {K.BLOWUP_NORM:g}")
    if status == K.STEP_UNDERFLOW:
        raise NumericalFailure(f"{where}: step size underflow")
    if status == K.STEP_LIMIT:
        raise NumericalFailure(f"{where}: step limit reached")


def integrate(
    p: NormParams,
    s0: State,
    t_final: float,
    direction: Direction = "forward",
    stepper: Stepper = Adaptive(),
) -> Trajectory:
    """Solve the normalized system from ``s0`` over ``[0, t_final]``.

    ``direction="backward"`` integrates the negated field.  A fixed-step
    run keeps every RK4 step (the last one shortened so the run ends at
    ``t_final`` exactly); an adaptive run keeps every accepted step.
    """
    if not t_final > 0.0:
        raise ValueError(f"t_final must be positive, got {t_final}")
    sgn = _sign(direction)
    a, w, i = float(p.alpha), float(p.omega), float(p.input)
    if isinstance(stepper, FixedStep):
        n = max(1, math.ceil(t_final / stepper.dt - 1e-9))
        dt = t_final / n
        xy, status = K.rk4_path(a, w, i, sgn, float(s0.x), float(s0.y), dt, n)
        _check(status, "integrate")
        times = dt * np.arange(len(xy))
        meta = {"method": "rk4", "dt": dt}
    else:
        ts_parts, xy_parts = [], []
        t0, x0, y0 = 0.0, float(s0.x), float(s0.y)
        while True:
            ts, xy, status = K.dopri_path(
                a, w, i, sgn, x0, y0, t_final - t0, stepper.rtol, stepper.atol, CHUNK_STEPS
            )
            ts_parts.append(ts[1:] + t0 if ts_parts else ts + t0)
            xy_parts.append(xy[1:] if xy_parts else xy)
            if status != K.STEP_LIMIT:
                break
            t0 += ts[-1]
            x0, y0 = xy[-1]
            if sum(len(t) for t in ts_parts) > MAX_STEPS:
                break
        _check(status, "integrate")
        times = np.concatenate(ts_parts)
        xy = np.concatenate(xy_parts)
        meta = {"method": "dopri5", "rtol": stepper.rtol, "atol": stepper.atol}
    return Trajectory(times, np.ascontiguousarray(xy), direction, meta)


# ------------------------------------------------------------------- cycles


def outer_radius(alpha: float) -> float:
    """Radius of the stable cycle of the unforced system."""
    return 0.5 * (alpha + math.sqrt(alpha * alpha - 4.0))


def default_seed(p: NormParams, which: Which) -> State:
    """Starting point that lies in the basin of the requested cycle."""
    r_out = outer_radius(p.alpha)
    if which == "stable":
        return State(0.0, 1.1 * r_out)
    r_eq = 0.0
    if p.input > 0.0:
        stable = [e.zeta for e in find_equilibria(p) if e.kind.stable]
        r_eq = stable[0] if stable else 0.0
    return State(0.0, 1.05 * 0.5 * (r_eq + r_out))


def default_transient(omega: float) -> float:
    return max(50.0, 20.0 * 2.0 * math.pi / omega)


def _section(p, sgn, s, t_budget, x_ref, cross_sign, max_cross, rtol, atol):
    out = K.dopri_section(
        float(p.alpha), float(p.omega), float(p.input), sgn, float(s.x), float(s.y),
        float(t_budget), rtol, atol, float(x_ref), float(cross_sign), int(max_cross),
        MAX_STEPS, CAPTURE_SPEED,
    )
    if out[-1] == K.CAPTURED:
        raise NoCycleError(f"captured by an equilibrium near ({out[7]:.6g}, {out[8]:.6g})")
    _check(out[-1], "find_cycle")
    return out


def _centroid(traj: Trajectory) -> tuple[float, float]:
    t = traj.times
    if t[-1] <= t[0]:
        return float(traj.xy[-1, 0]), float(traj.xy[-1, 1])
    span = t[-1] - t[0]
    return (
        float(np.trapezoid(traj.xy[:, 0], t) / span),
        float(np.trapezoid(traj.xy[:, 1], t) / span),
    )


def _captured(diam: np.ndarray, k: int) -> bool:
    if diam[-1] < CAPTURE_DIAM:
        return True
    tail = diam[-k:]
    return bool(np.all(np.diff(tail) < 0.0) and tail[-1] < (1.0 - 1e-3) * tail[0])


def find_cycle(
    p: NormParams,
    s0: State | None = None,
    direction: Direction = "forward",
    *,
    k: int = N_RETURNS,
    t_final: float = T_FINAL,
    transient: float | None = None,
    rtol: float = RTOL,
    atol: float = ATOL,
) -> CycleEstimate:
    """Estimate the period of the cycle attracting ``s0`` in ``direction``.

    After the transient the centroid of a short window fixes the section
    ``x = x_ref``; return times are collected in batches of ``k + 2``
    crossings until the last ``k`` agree to ``1e-5`` relative or the time
    budget ``t_final`` runs out.  Forward runs report stable cycles and
    backward runs unstable ones.
    """
    sgn = _sign(direction)
    which: Which = "stable" if sgn > 0 else "unstable"
    if s0 is None:
        s0 = default_seed(p, which)
    if transient is None:
        transient = default_transient(p.omega)
    if t_final <= transient:
        raise ValueError("t_final must exceed the transient")
    out = _section(p, sgn, s0, transient, math.inf, 1.0, 1, rtol, atol)
    s = State(out[7], out[8])
    window = min(max(2.0 * math.pi / p.omega, 50.0), 0.5 * (t_final - transient))
    late = integrate(p, s, window, direction, Adaptive(rtol, atol))
    x_ref, _ = _centroid(late)
    s = late.final
    remaining = t_final - transient - window

    times = np.empty(0)
    diam = np.empty(0)
    rmin = np.empty(0)
    rmax = np.empty(0)
    section = s
    elapsed = 0.0
    while remaining > 0.0:
        ct, cxy, d, r0, r1, nc, t_end, x, y, _, _ = _section(
            p, sgn, s, remaining, x_ref, 1.0, k + 2, rtol, atol
        )
        times = np.r_[times, ct + elapsed]
        # the first entry of each batch measures a partial loop
        diam = np.r_[diam, d[1:]]
        rmin = np.r_[rmin, r0[1:]]
        rmax = np.r_[rmax, r1[1:]]
        if nc:
            section = State(float(cxy[-1, 0]), float(cxy[-1, 1]))
        elapsed += t_end
        remaining -= t_end
        s = State(x, y)
        if nc < k + 2:
            break
        if len(diam) and _captured(diam, k):
            raise NoCycleError("return map contracts to a point")
        returns = np.diff(times[-(k + 1):])
        period = float(returns.mean())
        spread = float(returns.max() - returns.min())
        if spread <= SPREAD_TOL * period:
            break
    if len(times) < k + 2:
        raise _TooFewReturns(
            f"only {len(times)} section crossings within t_final={t_final:g}"
        )
    returns = np.diff(times[-(k + 1):])
    period = float(returns.mean())
    spread = float(returns.max() - returns.min())
    tail = slice(-k, None)
    return CycleEstimate(
        period=period,
        stability=which,
        returns_used=k,
        period_spread=spread,
        section_point=section,
        converged=spread <= SPREAD_TOL * period,
        radius_range=(float(rmin[tail].min()), float(rmax[tail].max())),
        final_state=s,
    )


def _grow(p: NormParams, seed: State | None, direction: Direction, t_final: float):
    """find_cycle, lengthening the run while it ends for lack of returns."""
    while True:
        try:
            return find_cycle(p, seed, direction, t_final=t_final)
        except _TooFewReturns:
            if t_final * BUDGET_GROWTH > MAX_BUDGET:
                raise
            t_final *= BUDGET_GROWTH


def _find(p: NormParams, which: Which, seed: State | None, t_final: float):
    """find_cycle with budget growth and, for unstable cycles, the inward
    retry from shrinking seeds after a blowup."""
    direction: Direction = "forward" if which == "stable" else "backward"
    try:
        return _grow(p, seed, direction, t_final)
    except BlowupError:
        if which == "stable":
            raise
    base = default_seed(p, which) if seed is None else seed
    err: Exception | None = None
    for n in range(1, UNSTABLE_RETRIES + 1):
        try:
            return _grow(p, State(base.x * 0.7**n, base.y * 0.7**n), direction, t_final)
        except BlowupError as exc:
            err = exc
    raise err


def cycle(
    p: NormParams, which: Which = "stable", seed: State | None = None, t_final: float | None = None
) -> CycleEstimate:
    """The requested cycle from the default seed (or ``seed``)."""
    budget = t_final if t_final is not None else default_transient(p.omega) + T_FINAL
    return _find(p, which, seed, budget)


def first_return(
    p: NormParams, s: State, direction: Direction = "forward", t_max: float = 1e4,
    rtol: float = RTOL, atol: float = ATOL,
) -> float:
    """Time to come back to the vertical line through ``s`` with the same
    orientation, with no transient and no averaging."""
    sgn = _sign(direction)
    vx = sgn * (
        (-1.0 + p.alpha * s.radius - s.radius**2) * s.x - p.omega * s.y + p.input
    )
    if vx == 0.0:
        raise DegenerateError("the flow is tangent to the section at s")
    # leave the line first so the start does not count as a crossing
    cs = 1.0 if vx > 0 else -1.0
    ct, *_ = _section(p, sgn, s, t_max, s.x, cs, 1, rtol, atol)
    if len(ct) == 0:
        raise NoCycleError(f"no return within t_max={t_max:g}")
    return float(ct[0])


def period_sweep(
    alpha: float,
    omega: float,
    input_values: Sequence[float],
    which_cycle: Which = "stable",
) -> list[tuple[float, CycleEstimate | None]]:
    """Periods along ascending inputs, each run seeded by the previous one.

    The time budget follows the last period found, so long periods near a
    cycle's disappearance still get enough returns.  An input where no cycle
    can be identified yields ``None``.
    """
    values = [float(v) for v in input_values]
    if any(b < a for a, b in zip(values, values[1:])):
        raise ValueError("input_values must be sorted ascending")
    transient = default_transient(omega)
    out: list[tuple[float, CycleEstimate | None]] = []
    seed: State | None = None
    last_period = 2.0 * math.pi / omega
    for v in values:
        p = NormParams(alpha, omega, v)
        budget = transient + max(1000.0, 40.0 * last_period)
        est = None
        for s in ([seed, None] if seed is not None else [None]):
            try:
                est = _find(p, which_cycle, s, budget)
                break
            except NumericalFailure:
                continue
        out.append((v, est))
        if est is not None:
            seed = est.final_state
            last_period = est.period
    return out


# --------------------------------------------------------------------- SNLC


def _annulus_count(p: NormParams, band: tuple[float, float]) -> int:
    return count_equilibria(p, band[0], band[1])


def detect_snlc(
    alpha: float,
    omega: float,
    input_bracket: tuple[float, float],
    which_cycle: Which = "stable",
    *,
    tol: float = SNLC_TOL,
) -> BifurcationPoint:
    """Locate the saddle-node on the cycle that exists at the lower input.

    The equilibrium count inside the cycle's annulus is bisected to ``tol``;
    the last input below the change must show a period at least ten times
    the period at the lower end, otherwise the bisection continues on a
    finer tolerance.  Once both hold, the count change is pinned down to
    machine precision and the saddle-node point is the midpoint of the
    closest pair of roots just past it.
    """
    lo, hi = map(float, input_bracket)
    if not 0.0 <= lo < hi:
        raise ValueError(f"bad bracket {input_bracket}")
    p_lo = NormParams(alpha, omega, lo)
    try:
        base = cycle(p_lo, which_cycle)
    except NumericalFailure as exc:
        raise BracketError(f"no {which_cycle} cycle at input {lo:g}: {exc}") from exc
    r0, r1 = base.radius_range
    margin = 0.25 * (r1 - r0) + 1e-3
    band = (max(r0 - margin, 0.0), r1 + margin)
    c_lo = _annulus_count(p_lo, band) if lo > 0.0 else 0
    c_hi = _annulus_count(NormParams(alpha, omega, hi), band)
    if c_lo == c_hi:
        raise BracketError(
            f"equilibrium count in radius band {band} is {c_lo} at both ends"
        )

    def past(v: float) -> bool:
        return _annulus_count(NormParams(alpha, omega, v), band) != c_lo

    transient = default_transient(omega)
    step_tol = tol
    while True:
        while hi - lo > step_tol:
            m = 0.5 * (lo + hi)
            if past(m):
                hi = m
            else:
                lo = m
        budget = transient + max(1000.0, 4.0 * SNLC_PERIOD_FACTOR * base.period)
        try:
            near = _find(NormParams(alpha, omega, lo), which_cycle, base.final_state, budget)
            if near.period > SNLC_PERIOD_FACTOR * base.period:
                break
        except NoCycleError:
            pass
        step_tol /= 10.0
        if step_tol < 1e-12:
            raise BracketError(
                "equilibrium count changes but the period does not diverge; "
                "the saddle-node is not on the cycle"
            )
    while hi - lo > 1e-13 * max(1.0, hi):
        m = 0.5 * (lo + hi)
        if m <= lo or m >= hi:
            break
        if past(m):
            hi = m
        else:
            lo = m
    p_hi = NormParams(alpha, omega, hi)
    zs = [z for z in positive_roots(p_hi) if band[0] <= z <= band[1]]
    if len(zs) < 2:
        raise NumericalFailure("coalescing root pair not found past the transition")
    gaps = np.diff(zs)
    j = int(np.argmin(gaps))
    z_sn = 0.5 * (zs[j] + zs[j + 1])
    x, y = location(NormParams(alpha, omega, 0.5 * (lo + hi)), z_sn)
    return BifurcationPoint(BifurcationKind.SNLC, omega, 0.5 * (lo + hi), State(x, y), z_sn)


# -------------------------------------------------------------- histograms


def uniform_samples(traj: Trajectory, dt: float | None = None) -> np.ndarray:
    """States on a uniform time grid (fixed-step runs are returned as is)."""
    if traj.integrator.get("method") == "rk4" and dt is None:
        return traj.xy
    dt = HIST_DT if dt is None else dt
    t = np.arange(0.0, traj.times[-1] + 1e-12, dt)
    return np.column_stack(
        [np.interp(t, traj.times, traj.xy[:, 0]), np.interp(t, traj.times, traj.xy[:, 1])]
    )


def occupancy_histogram(
    traj: Trajectory,
    component: Literal["x", "y"] = "x",
    n_bins: int = 60,
    *,
    transient: float = 0.0,
    dt: float | None = None,
) -> OccupancyHistogram:
    """Counts of uniformly spaced samples in equal bins over the observed range.

    Samples before ``transient`` are dropped.  Adaptive runs are first
    interpolated onto a grid of spacing ``dt`` (default 0.01).
    """
    if component not in ("x", "y"):
        raise ValueError(f"component must be 'x' or 'y', got {component!r}")
    if n_bins < 1:
        raise ValueError("n_bins must be positive")
    xy = uniform_samples(traj, dt)
    step = traj.integrator.get("dt", HIST_DT) if dt is None else dt
    start = int(math.ceil(transient / step - 1e-9)) if transient > 0 else 0
    v = xy[start:, 0 if component == "x" else 1]
    lo, hi = float(v.min()), float(v.max())
    if not hi - lo > 1e-12 * max(1.0, abs(lo), abs(hi)):
        raise DegenerateError("trajectory has no spatial extent in this component")
    counts, edges = np.histogram(v, bins=n_bins, range=(lo, hi))
    return OccupancyHistogram(component, edges, counts, int(len(v)))


def cycle_run(
    p: NormParams, which: Which = "stable", t_final: float = T_FINAL, dt: float = HIST_DT
) -> Trajectory:
    """Fixed-step run of ``t_final`` starting on the requested cycle."""
    est = cycle(p, which)
    direction: Direction = "forward" if which == "stable" else "backward"
    return integrate(p, est.section_point, t_final, direction, FixedStep(dt))


def waveform(
    p: NormParams, which_cycle: Which = "stable", t_final: float = 200.0, dt: float = HIST_DT
) -> Trajectory:
    """A whole number of periods of the cycle, sampled with fixed-step RK4.

    The run starts on the section point and covers ``max(1, floor(t_final/T))``
    periods; the step is shortened slightly so the run ends after exactly
    that many periods.
    """
    est = cycle(p, which_cycle)
    n = max(1, int(t_final // est.period))
    direction: Direction = "forward" if which_cycle == "stable" else "backward"
    traj = integrate(p, est.section_point, n * est.period, direction, FixedStep(dt))
    meta = dict(traj.integrator, period=est.period, periods=n)
    return Trajectory(traj.times, traj.xy, direction, meta)
