"""Acceptance criteria 1-11, one reported line per criterion.

Every line goes into the terminal summary, so a plain ``pytest`` run shows
the PASS/FAIL table. Run with ``-s`` to also see each line as it is produced.
"""
import math
import time

import numpy as np
import pytest

from hardclock.bifurcation import (
    autonomous_regime,
    bogdanov_takens,
    clip_curves,
    discriminant_locus,
    first_lyapunov,
    hausdorff,
    hopf_curves,
    hopf_points,
    hopf_validity_threshold,
    hopf_zetas,
    saddle_node_locus,
)
from hardclock.dynamics import (
    cycle,
    cycle_run,
    detect_snlc,
    find_cycle,
    occupancy_histogram,
    period_sweep,
)
from hardclock.equilibria import det_zeta, det_zeta_reduced, find_equilibria, trace_zeta
from hardclock.model import NormParams, RawParams, State, g_radial, vector_field

from conftest import ACCEPTANCE_LINES

SN1 = (0.1081, 0.3284)
SN2 = (-0.1368, 2.6066)


def report(label, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def snlc_points():
    t0 = time.perf_counter()
    b1 = detect_snlc(3, 0.25, (0.05, 0.12), "unstable")
    b2 = detect_snlc(3, 0.25, (0.5, 0.8), "stable")
    return b1, b2, time.perf_counter() - t0


def test_criterion_01_hopf_zetas():
    z = hopf_zetas(3)
    err = max(abs(z[0] - 0.25), abs(z[1] - 2))
    report("1", err <= 1e-12, f"hopf_zetas(3) = ({z[0]!r}, {z[1]!r}), max error {err:.1e}")


def test_criterion_02_hopf_curves():
    t0 = time.perf_counter()
    lo, hi = hopf_curves(3, (0.35, 2), 50)
    _, hi = hopf_curves(3, (1.05, 2), 50)
    e1 = np.max(np.abs(4096 * lo.input**2 - (25 + 256 * lo.omega**2)))
    e2 = np.max(np.abs(hi.input**2 - 4 * (1 + hi.omega**2)))
    dt = time.perf_counter() - t0
    ok = len(lo) == len(hi) == 50 and e1 <= 1e-9 and e2 <= 1e-9 and dt < 1
    report("2", ok, f"closed-form residuals {e1:.1e}, {e2:.1e} over 50 samples each, {dt:.3f} s")


def test_criterion_03_thresholds_and_counts():
    t1 = hopf_validity_threshold(3, "minus")
    t2 = hopf_validity_threshold(3, "plus")
    n1, n2 = len(hopf_points(3, 0.75)), len(hopf_points(3, 1.5))
    ok = abs(t1 - 5 / 16) <= 1e-10 and abs(t2 - 1) <= 1e-10 and (n1, n2) == (1, 2)
    report("3", ok, f"thresholds ({t1!r}, {t2!r}); Hopf points at 0.75 and 1.5: {n1}, {n2}")


CRIT_ALPHAS = (2.1, 2.5, 3, 4, 6)


def test_criterion_04_criticality():
    a1, a2 = first_lyapunov(3, 0.25), first_lyapunov(3, 2)
    ok = abs(a1 - 1.25) <= 1e-12 and abs(a2 + 0.71875) <= 1e-12
    signs = []
    for alpha in CRIT_ALPHAS:
        zm, zp = hopf_zetas(alpha)
        if alpha != 2.1:
            signs.append(first_lyapunov(alpha, zm) > 0)
        signs.append(first_lyapunov(alpha, zp) < 0)
    ok = ok and all(signs)
    report(
        "4", ok,
        f"a(3,1/4)={a1!r}, a(3,2)={a2!r}; {sum(signs)}/{len(signs)} branch signs as claimed "
        "(alpha=2.1 minus branch reported separately)",
    )


@pytest.mark.xfail(
    strict=True,
    reason="a > 0 on the minus branch needs alpha > sqrt(128/27) ~ 2.1773; see the decisions ledger",
)
def test_criterion_04_minus_branch_at_alpha_2_1():
    zm, _ = hopf_zetas(2.1)
    a = first_lyapunov(2.1, zm)
    report("4 (alpha=2.1, minus)", a > 0, f"a(2.1, {zm:.6f}) = {a:.6f}, expected positive")


def test_criterion_05_bogdanov_takens():
    a, b = bogdanov_takens(3)
    want = [(0.3125, 5 * math.sqrt(2) / 64), (1, 2 * math.sqrt(2))]
    err = max(
        abs(a.omega - want[0][0]), abs(a.input - want[0][1]),
        abs(b.omega - want[1][0]), abs(b.input - want[1][1]),
    )
    report("5", err <= 1e-9, f"({a.omega:.10f}, {a.input:.10f}), ({b.omega:.10f}, {b.input:.10f}); error {err:.1e}")


def test_criterion_06_snlc_first(snlc_points):
    b1, _, dt = snlc_points
    d = math.hypot(b1.location.x - SN1[0], b1.location.y - SN1[1])
    ok = 0.090 <= b1.input <= 0.092 and d <= 1e-2 and dt < 60
    report("6a", ok, f"I_c1={b1.input:.10f}, location ({b1.location.x:.5f}, {b1.location.y:.5f}) at {d:.4f} from SN1")


def test_criterion_06_snlc_second_input(snlc_points):
    _, b2, dt = snlc_points
    ok = 0.653 <= b2.input <= 0.655 and dt < 60
    report("6b", ok, f"I_c2={b2.input:.10f}; both detections took {dt:.1f} s")


@pytest.mark.xfail(
    strict=True,
    reason="the published second fold point is 0.025 from the computed fold; see the decisions ledger",
)
def test_criterion_06_snlc_second_location(snlc_points):
    _, b2, _ = snlc_points
    d = math.hypot(b2.location.x - SN2[0], b2.location.y - SN2[1])
    report("6c", d <= 1e-2, f"location ({b2.location.x:.5f}, {b2.location.y:.5f}) at {d:.4f} from SN2 (tol 1e-2)")


def tail_ok(sweep):
    t = [e.period for _, e in sweep if e is not None]
    return t, len(t) >= 5 and bool(np.all(np.diff(t[-5:]) > 0)) and t[-1] / t[0] >= 5


def test_criterion_07_period_divergence():
    t0 = time.perf_counter()
    tu, oku = tail_ok(period_sweep(3, 0.25, np.linspace(0, 0.09, 46), "unstable"))
    ts, oks = tail_ok(period_sweep(3, 0.25, np.linspace(0, 0.6535, 50), "stable"))
    dt = time.perf_counter() - t0
    report(
        "7", oku and oks and dt < 120,
        f"unstable T {tu[0]:.2f} -> {tu[-1]:.2f} (x{tu[-1] / tu[0]:.1f}), "
        f"stable T {ts[0]:.2f} -> {ts[-1]:.2f} (x{ts[-1] / ts[0]:.1f}), {dt:.1f} s",
    )


def modal_bin(inp, which):
    h = occupancy_histogram(cycle_run(NormParams(3, 0.25, inp), which, 1500, 0.01), "x", 60)
    return h.modal_bin, h


def test_criterion_08_histogram_dwell(snlc_points):
    b1, b2, _ = snlc_points
    (s_lo, s_hi), _ = modal_bin(0.653, "stable")
    (u_lo, u_hi), _ = modal_bin(0.090, "unstable")
    _, h0 = modal_bin(0.0, "stable")
    c = h0.counts
    ok = (
        s_lo <= b2.location.x <= s_hi
        and u_lo <= b1.location.x <= u_hi
        and c[0] > c[1] and c[-1] > c[-2]
    )
    report(
        "8", ok,
        f"stable modal [{s_lo:.4f}, {s_hi:.4f}] holds SN x {b2.location.x:.4f}; "
        f"unstable modal [{u_lo:.4f}, {u_hi:.4f}] holds SN x {b1.location.x:.4f}; "
        f"I=0 edge bins {c[0]}, {c[-1]} are maxima",
    )


def test_criterion_08_published_stable_coordinate():
    (lo, hi), _ = modal_bin(0.653, "stable")
    report("8 (published x=-0.1368)", lo <= SN2[0] <= hi, f"stable modal bin [{lo:.4f}, {hi:.4f}]")


@pytest.mark.xfail(
    strict=True,
    reason="the published first fold x-coordinate lies one bin left of the modal bin; see the decisions ledger",
)
def test_criterion_08_published_unstable_coordinate():
    (lo, hi), _ = modal_bin(0.090, "unstable")
    report("8 (published x=0.1081)", lo <= SN1[0] <= hi, f"unstable modal bin [{lo:.4f}, {hi:.4f}]")


def test_criterion_09_locus_equivalence():
    t0 = time.perf_counter()
    w = np.linspace(0.05, 2, 391)
    i = np.linspace(0.01, 3, 1197)
    dl = discriminant_locus(3, w, i)
    sn = clip_curves(saddle_node_locus(3), (0.05, 2), (0.01, 3))
    d = hausdorff(sn, dl)
    dt = time.perf_counter() - t0
    report("9", d <= 1e-3 and dt < 30, f"Hausdorff distance {d:.2e} on a 391x1197 grid, {dt:.1f} s")


def test_criterion_10_autonomous_oracle():
    rep = autonomous_regime(RawParams(-1, 3, -1, 1))
    (r1, _), (r2, _) = rep.cycles
    err = max(abs(r1 - (3 - math.sqrt(5)) / 2), abs(r2 - (3 + math.sqrt(5)) / 2))
    est = find_cycle(NormParams(3, 1, 0), State(0.5, 0))
    rmax = est.radius_range[1]
    perr = abs(est.period - 2 * math.pi)
    slow = cycle(NormParams(3, 0.25, 0))
    perr2 = abs(slow.period - 2 * math.pi / 0.25)
    ok = err <= 1e-12 and abs(rmax - 2.6180) <= 1e-3 and perr <= 1e-4 and perr2 <= 1e-4
    report(
        "10", ok,
        f"radii error {err:.1e}; simulated radius {rmax:.6f}; period errors {perr:.1e} (Omega=1), {perr2:.1e} (Omega=0.25)",
    )


def test_criterion_11_structural_invariants():
    worst = {"poly": 0.0, "radius": 0.0, "field": 0.0, "dual": 0.0}
    n = 0
    for w in np.linspace(0.1, 2, 20):
        for inp in np.linspace(0.05, 3, 20):
            p = NormParams(3, float(w), float(inp))
            for e in find_equilibria(p):
                n += 1
                g = g_radial(3, e.zeta)
                worst["poly"] = max(worst["poly"], abs(e.zeta**2 * (g * g + w * w) - inp * inp))
                worst["radius"] = max(worst["radius"], abs(e.x**2 + e.y**2 - e.zeta**2))
                worst["field"] = max(worst["field"], max(map(abs, vector_field(p, State(e.x, e.y)))))
                worst["dual"] = max(
                    worst["dual"],
                    abs(e.trace - trace_zeta(3, e.zeta)),
                    abs(e.det - det_zeta(p, e.zeta)),
                    abs(e.det - det_zeta_reduced(3, w, e.zeta)),
                )
    ok = all(v <= 1e-9 for v in worst.values())
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    report("11", ok, f"{n} equilibria on a 20x20 grid; worst residuals {detail}")
