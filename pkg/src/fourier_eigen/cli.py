"""Command-line frontend: evaluation tables, verification suites, transforms
and thermal-lens sweeps with machine-readable CSV/JSON output.

Exit status: 0 success, 1 verification failure, 2 usage error, 3 numerical
failure.  Output files are byte-deterministic for identical configurations;
set FOURIER_EIGEN_THREADS to cap grid-evaluation parallelism (0 or unset
picks an automatic value).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .eigenfunctions import RadialEigenfunction, RegularizedFunction, f_d, f_d_alpha, phi_d
from .errors import (
    ConvergenceError,
    DivergenceError,
    DomainError,
    PreconditionError,
    UnsupportedOrderError,
)
from .expint import ei_delta, g_delta, h_delta
from .radial_fourier import (
    RadialTransformPlan,
    f_alpha_profile,
    f_profile,
    gaussian_profile,
    gaussian_transform,
    limit_f_hat,
    phi_profile,
    radial_fourier,
)
from .report import SCHEMA_VERSION, fmt, report_from_dict
from .thermal_lens import LensState, e_s, e_th, fourier_consistency
from .verification import run_verify_suite

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

_USAGE_ERRORS = (DomainError, DivergenceError, PreconditionError, UnsupportedOrderError)


class UsageError(Exception):
    pass


@dataclass
class GridSpec:
    lo: float
    hi: float
    count: int
    spacing: str = "linear"

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise UsageError(f"grid must be MIN:MAX:COUNT[:log], got {text!r}")
        try:
            lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise UsageError(f"bad grid {text!r}: {exc}") from None
        spacing = parts[3] if len(parts) == 4 else "linear"
        if spacing not in ("linear", "log"):
            raise UsageError(f"grid spacing must be 'linear' or 'log', got {spacing!r}")
        if count < 1:
            raise UsageError("grid count must be >= 1")
        if not (lo < hi) and count > 1:
            raise UsageError("grid needs min < max")
        return cls(lo=lo, hi=hi, count=count, spacing=spacing)

    def points(self) -> list[float]:
        if self.count == 1:
            return [self.lo]
        if self.spacing == "log":
            if self.lo <= 0.0:
                raise UsageError("log grid needs min > 0")
            return [float(x) for x in np.geomspace(self.lo, self.hi, self.count)]
        return [float(x) for x in np.linspace(self.lo, self.hi, self.count)]


@dataclass
class RunConfig:
    command: str
    d: int | None = None
    fn: str | None = None
    delta: float | None = None
    alpha: float | None = None
    a: float | None = None
    t: float | None = None
    tol: float | None = None
    grid: GridSpec | None = None
    fmt: str = "csv"
    out: str | None = None
    compare: bool = False
    timings: bool = False
    report_path: str | None = None
    extra: dict = field(default_factory=dict)


def _worker_count() -> int:
    raw = os.environ.get("FOURIER_EIGEN_THREADS", "").strip()
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise UsageError(f"FOURIER_EIGEN_THREADS must be an integer, got {raw!r}")
        if n > 0:
            return n
    return min(8, os.cpu_count() or 1)


def _map_ordered(func, items):
    workers = _worker_count()
    if workers <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_csv(header: tuple[str, ...], rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def _rows_json(command: str, meta: dict, header: tuple[str, ...], rows) -> str:
    doc = {"schema_version": SCHEMA_VERSION, "command": command, **meta,
           "columns": list(header),
           "rows": [[v for v in row] for row in rows]}
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

def _eval_callable(cfg: RunConfig):
    fn_name = cfg.fn
    need = lambda flag, val: UsageError(f"--{flag} is required for --fn {fn_name}")
    if fn_name in ("ei_delta", "g_delta", "h_delta"):
        if cfg.delta is None:
            raise need("delta", None)
        base = {"ei_delta": ei_delta, "g_delta": g_delta, "h_delta": h_delta}[fn_name]
        return lambda x: base(cfg.delta, x)
    if fn_name in ("phi_d", "f_d"):
        if cfg.d is None:
            raise need("d", None)
        fn = RadialEigenfunction(cfg.d)
        return (lambda x: phi_d(fn, x)) if fn_name == "phi_d" else (lambda x: f_d(fn, x))
    if fn_name == "f_d_alpha":
        if cfg.d is None or cfg.alpha is None:
            raise UsageError("--d and --alpha are required for --fn f_d_alpha")
        rf = RegularizedFunction(RadialEigenfunction(cfg.d), cfg.alpha)
        return lambda x: f_d_alpha(rf, x)
    if fn_name in ("e_th", "e_s"):
        if cfg.t is None:
            raise need("t", None)
        state = LensState(cfg.t)
        return (lambda x: e_th(state, x)) if fn_name == "e_th" else (lambda x: e_s(state, x))
    raise UsageError(f"unknown function {fn_name!r} for eval")


def cmd_eval(cfg: RunConfig) -> int:
    if cfg.fn is None:
        raise UsageError("eval requires --fn")
    if cfg.grid is None:
        raise UsageError("eval requires --grid")
    func = _eval_callable(cfg)
    args = cfg.grid.points()
    values = _map_ordered(func, args)
    rows = list(zip(args, values))
    header = ("arg", "value")
    if cfg.fmt == "json":
        text = _rows_json("eval", {"fn": cfg.fn}, header, rows)
    else:
        text = _rows_csv(header, rows)
    _emit(text, cfg.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(cfg: RunConfig) -> int:
    if cfg.d is None:
        raise UsageError("verify requires --d")
    report = run_verify_suite(cfg.d)
    if cfg.fmt == "json":
        text = report.to_json(include_timings=cfg.timings)
    else:
        text = report.to_csv(include_timings=cfg.timings)
    _emit(text, cfg.out)
    if cfg.out:
        sys.stdout.write(report.render_console() + "\n")
    return EXIT_OK if report.all_passed else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# transform
# ---------------------------------------------------------------------------

def cmd_transform(cfg: RunConfig) -> int:
    if cfg.fn is None or cfg.grid is None or cfg.d is None:
        raise UsageError("transform requires --fn, --d and --grid")
    plan = RadialTransformPlan(d=cfg.d)
    compare_fn = None
    if cfg.fn == "f_d":
        profile = f_profile(RadialEigenfunction(cfg.d))
        compare_fn = lambda rho: limit_f_hat(cfg.d, rho)
    elif cfg.fn == "phi_d":
        profile = phi_profile(RadialEigenfunction(cfg.d))
        lam = -(2.0 * math.pi) ** (0.5 * cfg.d)
        fn_obj = RadialEigenfunction(cfg.d)
        compare_fn = lambda rho: lam * phi_d(fn_obj, rho)
    elif cfg.fn == "f_d_alpha":
        if cfg.alpha is None:
            raise UsageError("--alpha is required for --fn f_d_alpha")
        profile = f_alpha_profile(RegularizedFunction(RadialEigenfunction(cfg.d), cfg.alpha))
    elif cfg.fn == "gaussian":
        width = cfg.a if cfg.a is not None else 1.0
        profile = gaussian_profile(width)
        compare_fn = lambda rho: gaussian_transform(width, cfg.d, rho)
    else:
        raise UsageError(f"unknown profile {cfg.fn!r} for transform")
    if cfg.compare and compare_fn is None:
        raise UsageError(f"--compare is not available for --fn {cfg.fn}")

    rhos = cfg.grid.points()
    values = _map_ordered(lambda rho: radial_fourier(plan, profile, rho), rhos)
    if cfg.compare:
        refs = [compare_fn(rho) for rho in rhos]
        rows = [(rho, val, ref, abs(val - ref))
                for rho, val, ref in zip(rhos, values, refs)]
        header = ("rho", "transform", "reference", "residual")
    else:
        rows = list(zip(rhos, values))
        header = ("rho", "transform")
    meta = {"fn": cfg.fn, "d": cfg.d}
    text = _rows_json("transform", meta, header, rows) if cfg.fmt == "json" \
        else _rows_csv(header, rows)
    _emit(text, cfg.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# thermal
# ---------------------------------------------------------------------------

_THERMAL_COLUMNS = ("r", "e_th", "e_s", "fit_amplitude", "fit_scale", "fit_residual")


def cmd_thermal(cfg: RunConfig) -> int:
    if cfg.t is None:
        raise UsageError("thermal requires --t")
    if cfg.t == 0.0:
        raise UsageError("thermal fields vanish identically at t = 0")
    state = LensState(cfg.t)
    grid = cfg.grid if cfg.grid is not None else GridSpec(0.1, 5.0, 50)
    args = grid.points()
    fit_grid = [float(x) for x in np.geomspace(0.2, 4.0, 12)]
    fit = fourier_consistency(state, fit_grid)
    th_vals = _map_ordered(lambda r: e_th(state, r), args)
    s_vals = _map_ordered(lambda r: e_s(state, r), args)
    if cfg.fmt == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": "thermal",
            "t": cfg.t,
            "fit": {"amplitude": fit.amplitude, "scale": fit.scale,
                    "residual": fit.residual},
            "profiles": {
                "r": args,
                "e_th": th_vals,
                "e_s": s_vals,
            },
        }
        text = json.dumps(doc, indent=2) + "\n"
    else:
        rows = [(r, th, s, fit.amplitude, fit.scale, fit.residual)
                for r, th, s in zip(args, th_vals, s_vals)]
        text = _rows_csv(_THERMAL_COLUMNS, rows)
    _emit(text, cfg.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

def cmd_report(cfg: RunConfig) -> int:
    if not cfg.report_path:
        raise UsageError("report requires a JSON report path")
    with open(cfg.report_path) as fh:
        data = json.load(fh)
    rep = report_from_dict(data)
    sys.stdout.write(rep.render_console() + "\n")
    return EXIT_OK if rep.all_passed else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fourier-eigen",
        description="Radial Fourier eigenfunction toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("--out", default=None)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--config", default=None, help="JSON config file; flags win")

    p_eval = sub.add_parser("eval", help="tabulate a named function on a grid")
    common(p_eval)
    p_eval.add_argument("--fn", default=None)
    p_eval.add_argument("--grid", default=None)
    p_eval.add_argument("--d", type=int, default=None)
    p_eval.add_argument("--delta", type=float, default=None)
    p_eval.add_argument("--alpha", type=float, default=None)
    p_eval.add_argument("--t", type=float, default=None)

    p_ver = sub.add_parser("verify", help="run the verification suite for one dimension")
    common(p_ver)
    p_ver.add_argument("--d", type=int, default=None)
    p_ver.add_argument("--timings", action="store_true",
                       help="include wall-clock timings in the output file")

    p_tr = sub.add_parser("transform", help="radial Fourier transform on a rho grid")
    common(p_tr)
    p_tr.add_argument("--fn", default=None)
    p_tr.add_argument("--d", type=int, default=None)
    p_tr.add_argument("--grid", default=None)
    p_tr.add_argument("--alpha", type=float, default=None)
    p_tr.add_argument("--a", type=float, default=None)
    p_tr.add_argument("--compare", action="store_true")

    p_th = sub.add_parser("thermal", help="thermal-lens profiles and consistency fit")
    common(p_th)
    p_th.add_argument("--t", type=float, default=None)
    p_th.add_argument("--grid", default=None)

    p_rep = sub.add_parser("report", help="render a stored JSON verification report")
    p_rep.add_argument("path")
    return parser


_CONFIG_KEYS = ("fn", "d", "delta", "alpha", "a", "t", "tol", "grid", "format", "out")


def _merge_config(args: argparse.Namespace) -> RunConfig:
    file_cfg: dict = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            file_cfg = json.load(fh)
        unknown = set(file_cfg) - set(_CONFIG_KEYS)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")

    def pick(name, default=None):
        flag = getattr(args, name, None)
        if flag is not None:
            return flag
        if name in file_cfg:
            return file_cfg[name]
        return default

    grid_raw = pick("grid")
    fmt_val = getattr(args, "format", None) or file_cfg.get("format") or "csv"
    return RunConfig(
        command=args.command,
        d=pick("d"),
        fn=pick("fn"),
        delta=pick("delta"),
        alpha=pick("alpha"),
        a=pick("a"),
        t=pick("t"),
        tol=pick("tol"),
        grid=GridSpec.parse(grid_raw) if grid_raw else None,
        fmt=fmt_val,
        out=pick("out"),
        compare=bool(getattr(args, "compare", False)),
        timings=bool(getattr(args, "timings", False)),
        report_path=getattr(args, "path", None),
    )


_DISPATCH = {
    "eval": cmd_eval,
    "verify": cmd_verify,
    "transform": cmd_transform,
    "thermal": cmd_thermal,
    "report": cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge_config(args)
        return _DISPATCH[args.command](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _USAGE_ERRORS as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
