"""Command-line front end: every analysis as a subcommand emitting CSV or JSON.

Exit codes: 0 success, 2 usage error (bad flags or parameters outside an
operation's domain), 3 numerical failure (details as JSON on stderr).
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict
from typing import Any, Sequence

import numpy as np

from . import __version__
from . import bifurcation as bif
from . import dynamics as dyn
from .equilibria import find_equilibria
from .errors import HardClockError, NumericalFailure
from .model import NormParams, RawParams, State, normalize

EXIT_USAGE = 2
EXIT_NUMERICAL = 3


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ parsing


def parse_range(text: str) -> np.ndarray:
    """``lo:hi:count`` with inclusive ends and linear spacing."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected lo:hi:count, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad range {text!r}: {exc}") from None
    if n < 2 or not lo < hi:
        raise argparse.ArgumentTypeError(f"range needs lo < hi and count >= 2, got {text!r}")
    return np.linspace(lo, hi, n)


def parse_bracket(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad bracket {text!r}: {exc}") from None
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"bracket needs lo < hi, got {text!r}")
    return lo, hi


def positive(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


# ------------------------------------------------------------------- output


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.17g" % v
    if isinstance(v, (list, tuple, np.ndarray)):
        if len(v) > 4:
            return f"{_cell(v[0])}:{_cell(v[-1])}:{len(v)}"
        return ";".join(_cell(u) for u in v)
    return str(v)


def _json_value(v: Any) -> Any:
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    if isinstance(v, np.ndarray):
        return [_json_value(u) for u in v.tolist()]
    if isinstance(v, State):
        return [v.x, v.y]
    if isinstance(v, (list, tuple)):
        return [_json_value(u) for u in v]
    if isinstance(v, dict):
        return {k: _json_value(u) for k, u in v.items()}
    if hasattr(v, "value"):
        return v.value
    return v


def render(
    command: str,
    params: dict,
    columns: Sequence[str],
    rows: Sequence[Sequence[Any]],
    fmt: str,
    meta: bool,
) -> str:
    if fmt == "json":
        doc = {
            "params": _json_value(dict(params, command=command)),
            "columns": list(columns),
            "rows": [[_json_value(v) for v in r] for r in rows],
        }
        return json.dumps(doc, indent=None, separators=(",", ":")) + "\n"
    lines = []
    if meta:
        lines.append(f"# hardclock {__version__} {command}")
        lines += [f"# {k}={_cell(v)}" for k, v in params.items()]
    lines.append(",".join(columns))
    lines += [",".join(_cell(v) for v in r) for r in rows]
    return "\n".join(lines) + "\n"


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# ----------------------------------------------------------------- commands


def _inputs(args) -> np.ndarray:
    if getattr(args, "input_range", None) is not None:
        vals = args.input_range
    elif getattr(args, "input", None) is not None:
        vals = np.array([args.input])
    else:
        raise UsageError("give --input or --input-range")
    return vals


def _omegas(args) -> np.ndarray:
    if getattr(args, "omega_range", None) is not None:
        return args.omega_range
    if getattr(args, "omega", None) is not None:
        return np.array([args.omega])
    raise UsageError("give --omega or --omega-range")


def cmd_equilibria(args):
    omegas, inputs = _omegas(args), _inputs(args)
    if np.any(inputs <= 0.0):
        raise UsageError(
            "--input must be > 0; the unforced system is handled by `hardclock autonomous`"
        )
    rows = []
    for w in np.sort(omegas):
        for i in np.sort(inputs):
            for e in find_equilibria(NormParams(args.alpha, float(w), float(i))):
                rows.append([w, i, e.zeta, e.x, e.y, e.trace, e.det, e.kind.value])
    cols = ["omega", "input", "zeta", "x", "y", "trace", "det", "kind"]
    params = {"alpha": args.alpha, "omega": omegas, "input": inputs}
    return cols, rows, params


CURVE_COLUMNS = ["branch_id", "omega", "input", "zeta", "kind"]


def _curve_rows(curves) -> list:
    rows = []
    for c in curves:
        for w, i, z in zip(c.omega, c.input, c.zeta):
            rows.append([c.branch_id, w, i, z, c.kind.value])
    return rows


def cmd_bifurcation(args):
    a = args.alpha
    what = args.curve
    params: dict = {"alpha": a, "curve": what}
    if what == "hopf":
        w = args.omega_range if args.omega_range is not None else parse_range("0.05:2:200")
        curves = bif.hopf_curves(a, (float(w[0]), float(w[-1])), len(w))
        params["omega_range"] = w
        return CURVE_COLUMNS, _curve_rows(curves), params
    if what == "snlocus":
        curves = bif.saddle_node_locus(a, n_samples=args.samples)
        params["samples"] = args.samples
        return CURVE_COLUMNS, _curve_rows(curves), params
    if what == "bt":
        rows = [
            [k, b.omega, b.input, b.zeta, b.kind.value]
            for k, b in enumerate(bif.bogdanov_takens(a))
        ]
        return CURVE_COLUMNS, rows, params
    w = args.omega_range if args.omega_range is not None else parse_range("0.05:2:391")
    i = args.input_range if args.input_range is not None else parse_range("0.01:3:1197")
    if np.any(i <= 0.0):
        raise UsageError("--input-range must stay above 0")
    curves = bif.discriminant_locus(a, w, i, tol=args.tol)
    params.update(omega_range=w, input_range=i, tol=args.tol)
    return CURVE_COLUMNS, _curve_rows(curves), params


def _direction(args) -> str:
    return "backward" if args.backward else "forward"


def cmd_simulate(args):
    p = NormParams(args.alpha, args.omega, args.input)
    s0 = State(args.x0, args.y0)
    if args.dt is not None:
        stepper: dyn.Stepper = dyn.FixedStep(args.dt)
    else:
        stepper = dyn.Adaptive(args.tol, args.tol * 1e-3)
    traj = dyn.integrate(p, s0, args.t_final, _direction(args), stepper)
    rows = [[t, x, y] for t, (x, y) in zip(traj.times, traj.xy)]
    params = {
        "alpha": p.alpha, "omega": p.omega, "input": p.input, "x0": s0.x, "y0": s0.y,
        "t_final": args.t_final, "direction": traj.direction, **traj.integrator,
    }
    return ["t", "x", "y"], rows, params


def cmd_period_sweep(args):
    inputs = _inputs(args)
    res = dyn.period_sweep(args.alpha, args.omega, inputs, args.branch)
    rows = []
    for i, est in res:
        if est is None:
            rows.append([i, None, None, None, None])
        else:
            rows.append([i, est.period, est.period_spread, est.converged, est.returns_used])
    params = {"alpha": args.alpha, "omega": args.omega, "branch": args.branch, "input": inputs}
    return ["input", "period", "spread", "converged", "returns"], rows, params


def cmd_snlc(args):
    if args.bracket is None:
        raise UsageError("give --bracket lo:hi")
    tol = args.tol if args.tol is not None else dyn.SNLC_TOL
    b = dyn.detect_snlc(args.alpha, args.omega, args.bracket, args.branch, tol=tol)
    rows = [[b.kind.value, b.omega, b.input, b.location.x, b.location.y, b.zeta]]
    params = {"alpha": args.alpha, "omega": args.omega, "branch": args.branch,
              "bracket": list(args.bracket), "tol": tol}
    return ["kind", "omega", "input", "x", "y", "zeta"], rows, params


def cmd_histogram(args):
    p = NormParams(args.alpha, args.omega, args.input)
    traj = dyn.cycle_run(p, args.branch, args.t_final, args.dt)
    h = dyn.occupancy_histogram(traj, args.component, args.bins)
    rows = [[lo, hi, c] for lo, hi, c in zip(h.bin_edges[:-1], h.bin_edges[1:], h.counts)]
    params = {"alpha": p.alpha, "omega": p.omega, "input": p.input, "branch": args.branch,
              "component": args.component, "bins": args.bins, "t_final": args.t_final,
              "dt": args.dt, "total_samples": h.total_samples}
    return ["bin_lo", "bin_hi", "count"], rows, params


def cmd_waveform(args):
    p = NormParams(args.alpha, args.omega, args.input)
    traj = dyn.waveform(p, args.branch, args.t_final, args.dt)
    rows = [[t, x, y] for t, (x, y) in zip(traj.times, traj.xy)]
    params = {"alpha": p.alpha, "omega": p.omega, "input": p.input, "branch": args.branch,
              **traj.integrator}
    return ["t", "x", "y"], rows, params


def _raw(args) -> RawParams:
    return RawParams(args.sigma0, args.sigma1, args.sigma2, args.Omega0, args.I0)


def cmd_autonomous(args):
    raw = _raw(args)
    if raw.I0 != 0.0:
        raise UsageError("autonomous analysis needs --I0 0")
    rep = bif.autonomous_regime(raw)
    doc = {"params": _json_value(asdict(raw)), **_json_value(asdict(rep))}
    return json.dumps(doc, separators=(",", ":")) + "\n"


def cmd_normalize(args):
    p = normalize(_raw(args))
    return ["alpha", "omega", "input"], [[p.alpha, p.omega, p.input]], asdict(_raw(args))


COMMANDS = {
    "equilibria": cmd_equilibria,
    "bifurcation": cmd_bifurcation,
    "simulate": cmd_simulate,
    "period-sweep": cmd_period_sweep,
    "snlc": cmd_snlc,
    "histogram": cmd_histogram,
    "waveform": cmd_waveform,
    "autonomous": cmd_autonomous,
    "normalize": cmd_normalize,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--output", default=None, help="file path (default: stdout)")
    common.add_argument("--no-meta", action="store_true", help="omit '#' metadata lines")

    norm = argparse.ArgumentParser(add_help=False)
    norm.add_argument("--alpha", type=float, default=3.0)
    norm.add_argument("--omega", type=positive, default=None)

    raw = argparse.ArgumentParser(add_help=False)
    raw.add_argument("--sigma0", type=float, default=-1.0)
    raw.add_argument("--sigma1", type=float, default=3.0)
    raw.add_argument("--sigma2", type=float, default=-1.0)
    raw.add_argument("--Omega0", type=positive, default=1.0)
    raw.add_argument("--I0", type=float, default=0.0)

    ap = argparse.ArgumentParser(
        prog="hardclock",
        description="Bifurcation analysis of the forced hard-excitation oscillator.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("equilibria", parents=[common, norm], help="equilibria and stability")
    p.add_argument("--omega-range", type=parse_range)
    p.add_argument("--input", type=float)
    p.add_argument("--input-range", type=parse_range)

    p = sub.add_parser("bifurcation", parents=[common, norm], help="bifurcation curves")
    p.add_argument("curve", choices=["hopf", "snlocus", "bt", "discriminant"])
    p.add_argument("--omega-range", type=parse_range)
    p.add_argument("--input-range", type=parse_range)
    p.add_argument("--samples", type=int, default=20001, help="snlocus samples per branch")
    p.add_argument("--tol", type=positive, default=1e-10, help="edge bisection tolerance")

    p = sub.add_parser("simulate", parents=[common, norm], help="integrate one trajectory")
    p.add_argument("--input", type=float, default=0.0)
    p.add_argument("--x0", type=float, default=0.1)
    p.add_argument("--y0", type=float, default=0.0)
    p.add_argument("--t-final", type=positive, default=100.0)
    p.add_argument("--dt", type=positive, default=None, help="fixed RK4 step (default: adaptive)")
    p.add_argument("--tol", type=positive, default=dyn.RTOL, help="adaptive relative tolerance")
    p.add_argument("--backward", action="store_true")

    p = sub.add_parser("period-sweep", parents=[common, norm], help="cycle period versus input")
    p.add_argument("--branch", choices=["stable", "unstable"], default="stable")
    p.add_argument("--input", type=float)
    p.add_argument("--input-range", type=parse_range)

    p = sub.add_parser("snlc", parents=[common, norm], help="saddle-node on the cycle")
    p.add_argument("--branch", choices=["stable", "unstable"], default="stable")
    p.add_argument("--bracket", type=parse_bracket)
    p.add_argument("--tol", type=positive, default=None, help="bisection tolerance in input")

    p = sub.add_parser("histogram", parents=[common, norm], help="occupancy histogram on a cycle")
    p.add_argument("--input", type=float, default=0.0)
    p.add_argument("--branch", choices=["stable", "unstable"], default="stable")
    p.add_argument("--component", choices=["x", "y"], default="x")
    p.add_argument("--bins", type=int, default=60)
    p.add_argument("--t-final", type=positive, default=dyn.T_FINAL)
    p.add_argument("--dt", type=positive, default=dyn.HIST_DT)

    p = sub.add_parser("waveform", parents=[common, norm], help="whole periods of a cycle")
    p.add_argument("--input", type=float, default=0.0)
    p.add_argument("--branch", choices=["stable", "unstable"], default="stable")
    p.add_argument("--t-final", type=positive, default=200.0)
    p.add_argument("--dt", type=positive, default=dyn.HIST_DT)

    sub.add_parser("autonomous", parents=[raw], help="regime of the unforced system (JSON)")
    sub.add_parser("normalize", parents=[common, raw], help="rescale raw coefficients")
    return ap


NEEDS_OMEGA = {"equilibria", "simulate", "period-sweep", "snlc", "histogram", "waveform"}


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command in NEEDS_OMEGA and args.omega is None and not (
            args.command == "equilibria" and args.omega_range is not None
        ):
            raise UsageError("--omega is required")
        if getattr(args, "bins", 1) < 1:
            raise UsageError("--bins must be positive")
        result = COMMANDS[args.command](args)
        if isinstance(result, str):
            text = result
        else:
            cols, rows, params = result
            text = render(args.command, params, cols, rows, args.format, not args.no_meta)
        _write(text, getattr(args, "output", None))
        return 0
    except UsageError as exc:
        ap.error(str(exc))
    except NumericalFailure as exc:
        _fail(exc)
    except (HardClockError, ValueError) as exc:
        ap.error(f"{type(exc).__name__}: {exc}")
    except Exception as exc:  # noqa: BLE001 - the exit-code contract has no other code
        _fail(exc)
    return EXIT_NUMERICAL


def _fail(exc: BaseException) -> None:
    err = {"error": type(exc).__name__, "message": str(exc)}
    sys.stderr.write(json.dumps(err) + "\n")
    sys.exit(EXIT_NUMERICAL)


if __name__ == "__main__":
    sys.exit(main())
