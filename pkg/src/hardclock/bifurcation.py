"""Local bifurcation structure in the (omega, input) plane.

Hopf points sit on the two trace-zero radii; saddle-nodes on the critical
values of ``F(zeta) = zeta**2 (g**2 + omega**2)``; Bogdanov-Takens points
where both conditions meet.  The discriminant locus is traced numerically
and must coincide with the saddle-node locus.
"""
from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np
from scipy.spatial import cKDTree

from . import poly
from .equilibria import (
    count_equilibria,
    equilibrium_polynomial,
    location,
)
from .errors import DegenerateError, DomainError, InputDomainError
from .model import NormParams, RawParams, State

Branch = Literal["minus", "plus"]

REGIME_TOL = 1e-12
HOPF_ALPHA_MIN = 4.0 * math.sqrt(2.0) / 3.0


class BifurcationKind(str, enum.Enum):
    HOPF_SUB = "HopfSub"
    HOPF_SUPER = "HopfSuper"
    SADDLE_NODE = "SaddleNode"
    BOGDANOV_TAKENS = "BogdanovTakens"
    SNLC = "SNLC"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class BifurcationPoint:
    kind: BifurcationKind
    omega: float
    input: float
    location: State
    zeta: float


@dataclass
class CurveSample:
    """One traced branch; arrays share a length and follow the trace order."""

    omega: np.ndarray
    input: np.ndarray
    zeta: np.ndarray
    kind: BifurcationKind
    branch_id: int = 0
    x: np.ndarray | None = None
    y: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.omega)

    def points(self) -> np.ndarray:
        return np.column_stack([self.omega, self.input])


@dataclass
class RegimeReport:
    label: str
    origin_stable: bool | None
    cycles: list[tuple[float, str]]
    flags: dict[str, str | bool] = field(default_factory=dict)


def _workers() -> int:
    env = os.environ.get("HARDCLOCK_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


# --------------------------------------------------------------------- Hopf


def hopf_zetas(alpha: float) -> tuple[float, float]:
    """Both roots of ``-4 zeta**2 + 3 alpha zeta - 2``, smaller first."""
    disc = 9.0 * alpha * alpha - 32.0
    if disc < 0.0:
        raise DomainError(f"trace never vanishes for alpha < 4*sqrt(2)/3 (alpha={alpha})")
    sq = math.sqrt(disc)
    return (3.0 * alpha - sq) / 8.0, (3.0 * alpha + sq) / 8.0


def _zeta_for(alpha: float, which: Branch) -> float:
    if which not in ("minus", "plus"):
        raise ValueError(f"branch must be 'minus' or 'plus', got {which!r}")
    lo, hi = hopf_zetas(alpha)
    return lo if which == "minus" else hi


def _F(alpha: float, omega: float, zeta: float) -> float:
    g = -1.0 + alpha * zeta - zeta * zeta
    return zeta * zeta * (g * g + omega * omega)


def hopf_input(alpha: float, omega: float, zeta_i: float) -> float:
    i2 = _F(alpha, omega, zeta_i)
    if i2 < 0.0:
        raise DomainError("negative squared input on the Hopf curve")
    return math.sqrt(i2)


def hopf_validity_threshold(alpha: float, which: Branch) -> float:
    """Smallest omega for which the trace-zero equilibrium has det > 0.

    Below it the trace-zero point is a neutral saddle.  Returns 0 when the
    determinant is positive for every omega > 0.
    """
    if alpha <= HOPF_ALPHA_MIN:
        raise DomainError(f"alpha must exceed 4*sqrt(2)/3, got {alpha}")
    sq = math.sqrt(9.0 * alpha * alpha - 32.0)
    base = 9.0 / 512.0 * alpha**4 + 0.25 - alpha * alpha / 8.0
    slope = (3.0 / 512.0 * alpha**3 - alpha / 32.0) * sq
    w2 = base - slope if _zeta_for(alpha, which) < 3.0 * alpha / 8.0 else base + slope
    return math.sqrt(w2) if w2 > 0.0 else 0.0


def first_lyapunov(alpha: float, zeta_i: float) -> float:
    """Normal-form cubic coefficient; positive means subcritical."""
    if zeta_i == 0.0:
        raise DegenerateError("zeta_i must be nonzero")
    return (-16.0 + 3.0 * alpha / zeta_i) / 16.0


def _hopf_kind(alpha: float, zeta: float) -> BifurcationKind:
    return BifurcationKind.HOPF_SUB if first_lyapunov(alpha, zeta) > 0 else BifurcationKind.HOPF_SUPER


def hopf_points(alpha: float, omega: float) -> list[BifurcationPoint]:
    """Genuine Hopf points (det > 0) met when sweeping the input at fixed omega."""
    out = []
    for which in ("minus", "plus"):
        if omega <= hopf_validity_threshold(alpha, which):
            continue
        z = _zeta_for(alpha, which)
        i = hopf_input(alpha, omega, z)
        x, y = location(NormParams(alpha, omega, i), z)
        out.append(BifurcationPoint(_hopf_kind(alpha, z), omega, i, State(x, y), z))
    return out


def hopf_curves(
    alpha: float, omega_range: tuple[float, float], n_samples: int = 200
) -> tuple[CurveSample, CurveSample]:
    """Minus- and plus-branch Hopf curves restricted to their validity range."""
    if alpha <= 2.0:
        raise DomainError(f"hard excitation needs alpha > 2, got {alpha}")
    grid = np.linspace(omega_range[0], omega_range[1], n_samples)
    curves = []
    for bid, which in enumerate(("minus", "plus")):
        z = _zeta_for(alpha, which)
        w = grid[grid > hopf_validity_threshold(alpha, which)]
        i = np.array([hopf_input(alpha, om, z) for om in w])
        xs = np.empty_like(w)
        ys = np.empty_like(w)
        for k, (om, ii) in enumerate(zip(w, i)):
            xs[k], ys[k] = location(NormParams(alpha, om, ii), z)
        curves.append(
            CurveSample(w, i, np.full_like(w, z), _hopf_kind(alpha, z), bid, xs, ys)
        )
    return curves[0], curves[1]


# ------------------------------------------------------------- saddle-node


def sn_omega2(alpha: float, zeta):
    """Squared omega at which ``zeta`` is a double equilibrium radius."""
    a, z = alpha, np.asarray(zeta, dtype=float)
    return -3 * z**4 + 5 * a * z**3 - 2 * (2 + a * a) * z**2 + 3 * a * z - 1


def sn_input2(alpha: float, zeta):
    """Squared input at which the determinant vanishes on radius ``zeta``."""
    a, z = alpha, np.asarray(zeta, dtype=float)
    return -2 * z**6 + 3 * a * z**5 - (2 + a * a) * z**4 + a * z**3


def saddle_node_locus(
    alpha: float, zeta_range: tuple[float, float] | None = None, n_samples: int = 20001
) -> list[CurveSample]:
    """Parametric saddle-node curves, one per run of admissible ``zeta``.

    Runs of ``zeta`` where both squared parameters are positive are located
    on a uniform grid, their ends bisected, and each run is resampled at
    ``n_samples`` points evenly spaced in arc length of the (omega, input)
    curve, which keeps the sampling dense where omega -> 0 like a square root.
    """
    if alpha <= 2.0:
        raise DomainError(f"hard excitation needs alpha > 2, got {alpha}")
    lo, hi = zeta_range if zeta_range is not None else (0.0, float(alpha))
    lo = max(lo, 0.0)
    z = np.linspace(lo, hi, max(n_samples, 1001))

    def admissible(v):
        return np.minimum(sn_omega2(alpha, v), sn_input2(alpha, v))

    ok = (admissible(z) > 0) & (z > 0)
    out = []
    edges = np.flatnonzero(np.diff(np.r_[0, ok.astype(int), 0]))
    for bid, (a, b) in enumerate(zip(edges[::2], edges[1::2])):
        zl = _edge(admissible, z[a - 1], z[a]) if a > 0 else z[a]
        zr = _edge(admissible, z[b], z[b - 1]) if b < len(z) else z[b - 1]
        t = np.linspace(0.0, 1.0, 8 * n_samples)
        dense = zl + (zr - zl) * 0.5 * (1.0 - np.cos(np.pi * t))
        w = np.sqrt(np.maximum(sn_omega2(alpha, dense), 0.0))
        i = np.sqrt(np.maximum(sn_input2(alpha, dense), 0.0))
        s = np.r_[0.0, np.cumsum(np.hypot(np.diff(w), np.diff(i)))]
        zz = np.interp(np.linspace(0.0, s[-1], n_samples), s, dense)
        w = np.sqrt(np.maximum(sn_omega2(alpha, zz), 0.0))
        i = np.sqrt(np.maximum(sn_input2(alpha, zz), 0.0))
        keep = (w > 0) & (i > 0)
        zz, w, i = zz[keep], w[keep], i[keep]
        xs = np.empty_like(zz)
        ys = np.empty_like(zz)
        for k in range(len(zz)):
            xs[k], ys[k] = location(NormParams(alpha, w[k], i[k]), zz[k])
        out.append(CurveSample(w, i, zz, BifurcationKind.SADDLE_NODE, bid, xs, ys))
    return out


def _edge(f, bad: float, good: float) -> float:
    """Bisect to the last admissible point between ``good`` and ``bad``."""
    for _ in range(80):
        m = 0.5 * (bad + good)
        if f(m) > 0:
            good = m
        else:
            bad = m
    return good


def saddle_node_inputs(alpha: float, omega: float, n_grid: int = 4001) -> list[tuple[float, float]]:
    """All (input, zeta) saddle-node crossings of the vertical line at ``omega``."""
    z = np.linspace(1e-6, alpha, n_grid)
    target = omega * omega

    def f(v):
        return float(sn_omega2(alpha, v)) - target

    out = []
    vals = sn_omega2(alpha, z) - target
    for k in np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0):
        a, b = z[k], z[k + 1]
        fa = f(a)
        for _ in range(200):
            m = 0.5 * (a + b)
            fm = f(m)
            if (fm < 0) == (fa < 0):
                a, fa = m, fm
            else:
                b = m
            if b - a < 1e-15:
                break
        zc = 0.5 * (a + b)
        i2 = float(sn_input2(alpha, zc))
        if i2 > 0:
            out.append((math.sqrt(i2), zc))
    return sorted(out)


# -------------------------------------------------------- Bogdanov-Takens


def bogdanov_takens(alpha: float) -> tuple[BifurcationPoint, BifurcationPoint]:
    pts = []
    for which in ("minus", "plus"):
        z = _zeta_for(alpha, which)
        w = hopf_validity_threshold(alpha, which)
        if w <= 0.0:
            raise DomainError(f"no Bogdanov-Takens point with omega > 0 on the {which} branch")
        i = hopf_input(alpha, w, z)
        x, y = location(NormParams(alpha, w, i), z)
        pts.append(BifurcationPoint(BifurcationKind.BOGDANOV_TAKENS, w, i, State(x, y), z))
    return pts[0], pts[1]


# ------------------------------------------------------ discriminant locus


def _coeff_rows(alpha: float, omega: np.ndarray, inp: np.ndarray) -> np.ndarray:
    n = omega.size
    c = np.empty((n, 7))
    c[:, 0] = -(inp**2)
    c[:, 1] = 0.0
    c[:, 2] = 1.0 + omega**2
    c[:, 3] = -2.0 * alpha
    c[:, 4] = alpha * alpha + 2.0
    c[:, 5] = -2.0 * alpha
    c[:, 6] = 1.0
    return c


def discriminant_grid(alpha: float, omega_grid, input_grid) -> np.ndarray:
    """Sign-reliable discriminant values, shape ``(len(omega), len(input))``."""
    w = np.asarray(omega_grid, dtype=float)
    i = np.asarray(input_grid, dtype=float)
    W, I = np.meshgrid(w, i, indexing="ij")
    flat = np.empty(W.size)
    chunk = 20000
    wf, if_ = W.ravel(), I.ravel()

    def fill(s: int) -> None:
        flat[s : s + chunk] = poly.batch_discriminant(
            _coeff_rows(alpha, wf[s : s + chunk], if_[s : s + chunk])
        )

    starts = range(0, W.size, chunk)
    workers = min(_workers(), len(starts))
    if workers > 1:
        # LAPACK releases the GIL, so threads overlap the determinants
        with ThreadPoolExecutor(workers) as pool:
            list(pool.map(fill, starts))
    else:
        for s in starts:
            fill(s)
    return flat.reshape(W.shape)


def _disc(alpha: float, omega: float, inp: float) -> float:
    return poly.discriminant(equilibrium_polynomial(NormParams(alpha, omega, inp)))


def _bisect_edge(alpha, p0, p1, d0, tol):
    """Zero of the discriminant on the segment p0-p1 (endpoints have opposite signs)."""
    a = np.asarray(p0, dtype=float)
    b = np.asarray(p1, dtype=float)
    length = float(np.hypot(*(b - a)))
    ta, tb = 0.0, 1.0
    sa = d0 > 0
    while (tb - ta) * length > tol:
        tm = 0.5 * (ta + tb)
        pm = a + tm * (b - a)
        if (_disc(alpha, pm[0], pm[1]) > 0) == sa:
            ta = tm
        else:
            tb = tm
    return tuple(a + 0.5 * (ta + tb) * (b - a))


def _march(alpha, w, i, D, tol):
    """Marching squares on one rectilinear grid; segments keyed by cell."""
    s = D > 0
    cells: dict[tuple[int, int], list] = {}
    cache: dict[tuple, tuple] = {}

    def cross(n0, n1):
        key = (n0, n1)
        if key not in cache:
            cache[key] = _bisect_edge(
                alpha, (w[n0[0]], i[n0[1]]), (w[n1[0]], i[n1[1]]), D[n0], tol
            )
        return cache[key]

    change = (s[:-1, :-1] != s[1:, :-1]) | (s[:-1, :-1] != s[:-1, 1:]) | (s[:-1, :-1] != s[1:, 1:])
    for a, b in sorted(map(tuple, np.argwhere(change))):
        corners = [(a, b), (a + 1, b), (a + 1, b + 1), (a, b + 1)]
        pts = []
        for k in range(4):
            n0, n1 = corners[k], corners[(k + 1) % 4]
            if s[n0] != s[n1]:
                pts.append(cross(min(n0, n1), max(n0, n1)))
        if len(pts) == 2:
            cells[(a, b)] = [(pts[0], pts[1])]
        elif len(pts) == 4:
            # saddle cell: decide the pairing from the sign at the centre
            wc, ic = 0.5 * (w[a] + w[a + 1]), 0.5 * (i[b] + i[b + 1])
            if (_disc(alpha, wc, ic) > 0) == s[corners[0]]:
                cells[(a, b)] = [(pts[0], pts[1]), (pts[2], pts[3])]
            else:
                cells[(a, b)] = [(pts[0], pts[3]), (pts[1], pts[2])]
    return cells


SHARP_TURN_COS = 0.5


def _suspect_points(lines, bounds, edge_tol):
    """Polyline vertices where the locus is unresolved on the current grid.

    A cusp whose two branches fall inside one cell shows up either as an
    interior dangling end or as a polyline turning back by more than 60
    degrees between consecutive segments.
    """
    w0, w1, i0, i1 = bounds
    out = []
    for line in lines:
        arr = np.asarray(line)
        closed = len(arr) > 2 and np.allclose(arr[0], arr[-1])
        if not closed:
            for e in (arr[0], arr[-1]):
                if min(e[0] - w0, w1 - e[0], e[1] - i0, i1 - e[1]) > edge_tol:
                    out.append(tuple(e))
        if len(arr) < 3:
            continue
        d = np.diff(arr, axis=0)
        n = np.linalg.norm(d, axis=1)
        n[n == 0] = 1.0
        d /= n[:, None]
        cos = np.einsum("ij,ij->i", d[:-1], d[1:])
        out += [tuple(arr[k + 1]) for k in np.flatnonzero(cos < SHARP_TURN_COS)]
    return out


def _boxes(points, w, i, pad, shape):
    """Grid-aligned cell boxes around ``points``, overlapping boxes merged."""
    boxes = []
    for x, y in points:
        a = int(np.clip(np.searchsorted(w, x) - 1, 0, shape[0] - 1))
        b = int(np.clip(np.searchsorted(i, y) - 1, 0, shape[1] - 1))
        boxes.append([max(a - pad, 0), min(a + pad + 1, shape[0]), max(b - pad, 0), min(b + pad + 1, shape[1])])
    merged = True
    while merged:
        merged = False
        out: list[list[int]] = []
        for bx in boxes:
            for ob in out:
                if bx[0] <= ob[1] and ob[0] <= bx[1] and bx[2] <= ob[3] and ob[2] <= bx[3]:
                    ob[:] = [min(bx[0], ob[0]), max(bx[1], ob[1]), min(bx[2], ob[2]), max(bx[3], ob[3])]
                    merged = True
                    break
            else:
                out.append(bx)
        boxes = out
    return sorted(map(tuple, boxes))


def _trace(alpha, w, i, tol, snap, level, max_level, factor, bounds, pad=6):
    cells = _march(alpha, w, i, discriminant_grid(alpha, w, i), tol)
    segs = [s for k in sorted(cells) for s in cells[k]]
    if level >= max_level:
        return segs
    edge_tol = 1e-6 * min(np.min(np.diff(w)), np.min(np.diff(i)))
    suspects = _suspect_points(_chain(segs, snap), bounds, edge_tol)
    if not suspects:
        return segs
    boxes = _boxes(suspects, w, i, pad, (len(w) - 1, len(i) - 1))
    inside = set()
    finer = []
    for a0, a1, b0, b1 in boxes:
        inside.update((a, b) for a in range(a0, a1) for b in range(b0, b1))
        sw = np.linspace(w[a0], w[a1], (a1 - a0) * factor + 1)
        si = np.linspace(i[b0], i[b1], (b1 - b0) * factor + 1)
        # the unresolved tail of a cusp shrinks slower than the cells
        finer += _trace(alpha, sw, si, tol, snap, level + 1, max_level, factor, bounds, 2 * pad)
    return [s for k in sorted(cells) if k not in inside for s in cells[k]] + finer


def _chain(segs, snap):
    """Join segments whose endpoints coincide within ``snap`` into polylines."""
    if not segs:
        return []
    pts = np.array([p for s in segs for p in s])
    parent = list(range(len(pts)))

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for a, b in sorted(cKDTree(pts).query_pairs(snap)):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    node = [find(k) for k in range(len(pts))]
    adj: dict[int, list[int]] = {}
    for k in range(len(segs)):
        if node[2 * k] == node[2 * k + 1]:
            continue
        adj.setdefault(node[2 * k], []).append(k)
        adj.setdefault(node[2 * k + 1], []).append(k)
    used = [node[2 * k] == node[2 * k + 1] for k in range(len(segs))]

    def walk(start, k):
        line = [tuple(pts[start])]
        cur = node[start]
        while k is not None:
            used[k] = True
            nxt = 2 * k + 1 if node[2 * k] == cur else 2 * k
            line.append(tuple(pts[nxt]))
            cur = node[nxt]
            k = next((j for j in adj[cur] if not used[j]), None)
        return line

    order = sorted(range(len(segs)), key=lambda k: segs[k])
    lines = []
    for k in order:
        if used[k]:
            continue
        for end in (2 * k, 2 * k + 1):
            if len(adj[node[end]]) == 1:
                lines.append(walk(end, k))
                break
    for k in order:
        if not used[k]:
            lines.append(walk(2 * k, k))
    return lines


def _double_root_zeta(alpha: float, omega: float, inp: float) -> float:
    r = poly.roots(equilibrium_polynomial(NormParams(alpha, omega, inp)))
    r = r[r.real > 0]
    if len(r) < 2:
        return float("nan")
    best = min(
        ((abs(r[a] - r[b]), a, b) for a in range(len(r)) for b in range(a + 1, len(r))),
        key=lambda t: t[0],
    )
    return float(0.5 * (r[best[1]].real + r[best[2]].real))


def discriminant_locus(
    alpha: float,
    omega_grid: Sequence[float],
    input_grid: Sequence[float],
    *,
    tol: float = 1e-10,
    refine_levels: int = 2,
    refine_factor: int = 8,
) -> list[CurveSample]:
    """Zero set of the radius-polynomial discriminant over a parameter grid.

    Sign changes along grid edges are bisected to ``tol`` and joined into
    polylines by marching squares.  Near a cusp both branches fall inside
    one cell and the march either stops or turns back early; such spots are
    re-marched on a ``refine_factor``-times finer local grid, up to
    ``refine_levels`` times.
    """
    w = np.asarray(omega_grid, dtype=float)
    i = np.asarray(input_grid, dtype=float)
    if w.size < 2 or i.size < 2:
        raise ValueError("grids need at least two nodes")
    if i.min() <= 0.0:
        raise InputDomainError("discriminant locus needs input > 0")
    h_min = min(np.min(np.diff(w)), np.min(np.diff(i))) / refine_factor**refine_levels
    snap = max(100 * tol, 1e-3 * h_min)
    bounds = (w[0], w[-1], i[0], i[-1])
    segs = _trace(alpha, w, i, tol, snap, 0, refine_levels, refine_factor, bounds)
    out = []
    # inside a cusp wedge narrower than the finest cell the two branches can
    # pair up as cell-sized rings; they still lie on the zero set
    for bid, line in enumerate(_chain(segs, snap)):
        arr = np.asarray(line)
        zs = np.array([_double_root_zeta(alpha, a, b) for a, b in arr])
        out.append(CurveSample(arr[:, 0], arr[:, 1], zs, BifurcationKind.SADDLE_NODE, bid))
    return out


def hausdorff(a: Sequence[CurveSample], b: Sequence[CurveSample]) -> float:
    """Symmetric Hausdorff distance between two sets of polylines.

    Vertices of one set are measured against the segments of the other.
    """
    return max(_directed(a, b), _directed(b, a))


def _directed(src: Sequence[CurveSample], dst: Sequence[CurveSample]) -> float:
    pts = np.vstack([c.points() for c in src if len(c)])
    seg_a = []
    seg_b = []
    for c in dst:
        q = c.points()
        if len(q) == 1:
            seg_a.append(q)
            seg_b.append(q)
        else:
            seg_a.append(q[:-1])
            seg_b.append(q[1:])
    A = np.vstack(seg_a)
    B = np.vstack(seg_b)
    d = B - A
    L2 = np.einsum("ij,ij->i", d, d)
    L2[L2 == 0] = 1.0
    # a segment closer than the nearest midpoint has its midpoint within
    # that distance plus half the longest segment
    tree = cKDTree(0.5 * (A + B))
    near, _ = tree.query(pts)
    half = 0.5 * float(np.sqrt(L2.max()))
    worst = 0.0
    for p, cand in zip(pts, tree.query_ball_point(pts, near + half)):
        k = np.asarray(cand)
        t = np.clip(((p - A[k]) * d[k]).sum(1) / L2[k], 0.0, 1.0)
        proj = A[k] + t[:, None] * d[k]
        worst = max(worst, float(np.sqrt(((p - proj) ** 2).sum(1)).min()))
    return worst


def clip_curves(curves: Sequence[CurveSample], omega_lim, input_lim) -> list[CurveSample]:
    """Split curves into the pieces lying inside a parameter window."""
    out = []
    for c in curves:
        ok = (
            (c.omega >= omega_lim[0]) & (c.omega <= omega_lim[1])
            & (c.input >= input_lim[0]) & (c.input <= input_lim[1])
        )
        edges = np.flatnonzero(np.diff(np.r_[0, ok.astype(int), 0]))
        for a, b in zip(edges[::2], edges[1::2]):
            sl = slice(a, b)
            out.append(
                CurveSample(
                    c.omega[sl], c.input[sl], c.zeta[sl], c.kind, len(out),
                    None if c.x is None else c.x[sl], None if c.y is None else c.y[sl],
                )
            )
    return out


# --------------------------------------------------------------- autonomous


def autonomous_regime(raw: RawParams) -> RegimeReport:
    """Cycles and codimension flags of the input-free radial dynamics."""
    if raw.I0 != 0.0:
        raise InputDomainError("the autonomous analysis requires I0 = 0")
    s0, s1, s2 = raw.sigma0, raw.sigma1, raw.sigma2
    cycles = []
    if abs(s2) > REGIME_TOL:
        disc = s1 * s1 - 4.0 * s0 * s2
        if disc >= -REGIME_TOL:
            sq = math.sqrt(max(disc, 0.0))
            radii = sorted({(-s1 - sq) / (2 * s2), (-s1 + sq) / (2 * s2)})
        else:
            radii = []
    elif abs(s1) > REGIME_TOL:
        radii = [-s0 / s1]
    else:
        radii = []
    for r in radii:
        if r > REGIME_TOL:
            slope = s0 + 2 * s1 * r + 3 * s2 * r * r
            cycles.append((r, "stable" if slope < 0 else "unstable" if slope > 0 else "neutral"))

    flags: dict[str, str | bool] = {}
    if abs(s0) <= REGIME_TOL:
        flags["hopf"] = "subcritical" if s1 > 0 else "supercritical"
        if abs(s1) <= REGIME_TOL and abs(s2) > REGIME_TOL:
            flags["bautin"] = "supercritical" if s2 < 0 else "subcritical"
    if abs(s1 * s1 - 4 * s0 * s2) <= REGIME_TOL and s1 >= 0:
        flags["double_cycle"] = True

    origin_stable = None if abs(s0) <= REGIME_TOL else s0 < 0
    n_stable = sum(1 for _, st in cycles if st == "stable")
    if origin_stable and n_stable and len(cycles) >= 2:
        label = "hard excitation"
    elif origin_stable is False and n_stable:
        label = "soft excitation"
    elif origin_stable and not cycles:
        label = "stable equilibrium"
    elif flags:
        label = "degenerate"
    else:
        label = "other"
    return RegimeReport(label, origin_stable, cycles, flags)


def count_at(alpha: float, omega: float, inp: float) -> int:
    return count_equilibria(NormParams(alpha, omega, inp))
