"""Command-line interface.

Subcommands:

    solve     solve one initial value problem and tabulate y against the
              closed-form reference on an equispaced mesh
    diagnose  matrix-property report (bandwidth, spectral radius,
              extreme singular values) over a (function, M) grid
    bench     accuracy table: max relative error per function for each
              expansion order, plus the adaptive Runge-Kutta baseline
    spectrum  dump all eigenvalues of one coefficient matrix

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
csv/json output carries 17 significant digits so results re-parse
bit-exactly.
"""

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import functions
from .coeffs import coefficient_matrix
from .basis import LegendreBasis
from .diagnostics import matrix_diagnostics, spectrum
from .errors import ConfigurationError, NumericalError
from .functions import FunctionSpec
from .reference import reference_solution, rk_baseline
from .solver import evaluate_solution, solve_ode

__all__ = ["main", "ProblemConfig"]

_DEFAULT_ORDERS = (25, 100, 500)
_BENCH_ORDERS = (25, 100)


@dataclass
class ProblemConfig:
    fun: FunctionSpec
    order: int = 100
    interval_end: float = 1.0
    mesh_points: int = 100
    threshold_mode: str = "relative"
    output_format: str = "table"
    zero_margin: int = 0
    quad_points: int | None = None

    def __post_init__(self):
        if self.order < 2:
            raise ConfigurationError(f"M must be >= 2, got {self.order}")
        if self.mesh_points < 2:
            raise ConfigurationError(f"mesh_points must be >= 2, got {self.mesh_points}")
        if not self.interval_end > 0:
            raise ConfigurationError(f"T must be positive, got {self.interval_end}")
        if self.threshold_mode not in ("relative", "absolute"):
            raise ConfigurationError(f"unknown threshold mode {self.threshold_mode!r}")
        if self.output_format not in ("csv", "json", "table"):
            raise ConfigurationError(f"unknown output format {self.output_format!r}")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _json_text(obj) -> str:
    """JSON serialization with floats at full 17-digit precision."""
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(str(k))}: {_json_text(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_json_text(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if obj is None:
        return "null"
    return json.dumps(obj)


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _parse_int_list(raw: str, what: str) -> list[int]:
    try:
        values = [int(tok) for tok in raw.split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigurationError(f"bad {what} list {raw!r}: {exc}") from exc
    if not values:
        raise ConfigurationError(f"{what} list is empty")
    return values


def _parse_functions(raw: str) -> dict[str, FunctionSpec]:
    specs = {}
    for tok in raw.split(","):
        tok = tok.strip()
        if not tok:
            continue
        fun = functions.resolve(tok)
        specs[fun.label or tok] = fun
    if not specs:
        raise ConfigurationError("function list is empty")
    return specs


def _load_config(args) -> ProblemConfig:
    raw = {}
    if args.config:
        with open(args.config) as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise ConfigurationError("config file must hold a JSON object")
    fun_field = args.function if args.function is not None else raw.get("function")
    if fun_field is None:
        raise ConfigurationError("no function given (use --function or a config file)")
    return ProblemConfig(
        fun=functions.resolve(fun_field),
        order=args.M if args.M is not None else int(raw.get("M", 100)),
        interval_end=args.T if args.T is not None else float(raw.get("T", 1.0)),
        mesh_points=(
            args.mesh_points
            if args.mesh_points is not None
            else int(raw.get("mesh_points", 100))
        ),
        threshold_mode=args.threshold_mode or raw.get("threshold_mode", "relative"),
        output_format=args.format or raw.get("format", "table"),
        zero_margin=(
            args.zero_margin if args.zero_margin is not None else int(raw.get("zero_margin", 0))
        ),
        quad_points=args.quad_points or raw.get("quad_points"),
    )


def _solve_rows(cfg: ProblemConfig):
    result = solve_ode(
        cfg.fun,
        cfg.order,
        interval_end=cfg.interval_end,
        num_points=cfg.quad_points,
        threshold_mode=cfg.threshold_mode,
        zero_margin=cfg.zero_margin,
        compute_diagnostics=False,
    )
    mesh = np.linspace(0.0, cfg.interval_end, cfg.mesh_points)
    y = evaluate_solution(result, mesh)
    if cfg.fun.antiderivative_known:
        ref = reference_solution(cfg.fun, mesh)
    else:
        ref = rk_baseline(cfg.fun, mesh, rel_tol=1e-13, abs_tol=1e-13).y
    rel_err = np.abs(y - ref) / np.abs(ref)
    return mesh, y, ref, rel_err


def cmd_solve(args) -> int:
    cfg = _load_config(args)
    mesh, y, ref, rel_err = _solve_rows(cfg)
    max_err = float(rel_err.max())

    if cfg.output_format == "json":
        doc = {
            "function": cfg.fun.label,
            "M": cfg.order,
            "T": cfg.interval_end,
            "mesh_points": cfg.mesh_points,
            "rows": [
                {"t": t, "y": v, "y_ref": r, "rel_err": e}
                for t, v, r, e in zip(mesh, y, ref, rel_err)
            ],
            "max_rel_err": max_err,
        }
        _emit(_json_text(doc), args.out)
    elif cfg.output_format == "csv":
        lines = ["t,y,y_ref,rel_err"]
        lines += [
            f"{_fmt(t)},{_fmt(v)},{_fmt(r)},{_fmt(e)}"
            for t, v, r, e in zip(mesh, y, ref, rel_err)
        ]
        lines.append(f"# max_rel_err = {_fmt(max_err)}")
        _emit("\n".join(lines), args.out)
    else:
        lines = [f"{'t':>10s} {'y':>24s} {'y_ref':>24s} {'rel_err':>12s}"]
        lines += [
            f"{t:10.6f} {v:24.16e} {r:24.16e} {e:12.3e}"
            for t, v, r, e in zip(mesh, y, ref, rel_err)
        ]
        lines.append(f"max relative error: {max_err:.3e}")
        _emit("\n".join(lines), args.out)
    return 0


def cmd_diagnose(args) -> int:
    orders = _parse_int_list(args.M, "M")
    if any(m < 2 for m in orders):
        raise ConfigurationError("every M must be >= 2")
    specs = _parse_functions(args.functions)

    records = []
    for m in orders:
        basis = LegendreBasis(order=m, interval_end=args.T or 1.0)
        for label, fun in specs.items():
            diag = matrix_diagnostics(
                coefficient_matrix(fun, basis, num_points=args.quad_points),
                threshold_mode=args.threshold_mode or "relative",
            )
            records.append({"function": label, "M": m, **diag.to_dict()})

    fmt = args.format or "table"
    if fmt == "json":
        _emit(_json_text(records), args.out)
    elif fmt == "csv":
        lines = ["function,M,bandwidth,spectral_radius,sigma_min,sigma_max,sigma_min_trusted"]
        for r in records:
            lines.append(
                f"{r['function']},{r['M']},{r['bandwidth']},"
                f"{_fmt(r['spectral_radius'])},{_fmt(r['sigma_min'])},"
                f"{_fmt(r['sigma_max'])},{r['sigma_min_trusted']}"
            )
        _emit("\n".join(lines), args.out)
    else:
        labels = list(specs)
        lines = []
        for m in orders:
            block = [r for r in records if r["M"] == m]
            lines.append(f"M = {m}")
            lines.append(" " * 16 + "".join(f"{lab:>12s}" for lab in labels))
            lines.append(
                f"{'bandwidth':16s}" + "".join(f"{r['bandwidth']:>12d}" for r in block)
            )
            lines.append(
                f"{'spectral radius':16s}"
                + "".join(f"{r['spectral_radius']:>12.4f}" for r in block)
            )
            lines.append(
                f"{'sigma_min':16s}" + "".join(f"{r['sigma_min']:>12.2e}" for r in block)
            )
            lines.append(
                f"{'sigma_max':16s}" + "".join(f"{r['sigma_max']:>12.4f}" for r in block)
            )
            lines.append("")
        _emit("\n".join(lines).rstrip(), args.out)
    return 0


def cmd_bench(args) -> int:
    orders = _parse_int_list(args.M, "M")
    if any(m < 2 for m in orders):
        raise ConfigurationError("every M must be >= 2")
    specs = _parse_functions(args.functions)
    T = args.T or 1.0
    mesh = np.linspace(0.0, T, args.mesh_points)

    rows = []
    for m in orders:
        errors = {}
        for label, fun in specs.items():
            result = solve_ode(
                fun,
                m,
                interval_end=T,
                num_points=args.quad_points,
                threshold_mode=args.threshold_mode or "relative",
                compute_diagnostics=False,
            )
            ref = reference_solution(fun, mesh)
            err = np.abs(evaluate_solution(result, mesh) - ref) / np.abs(ref)
            errors[label] = float(err.max())
        rows.append({"method": f"y_{m}", "errors": errors})

    rk_errors = {}
    for label, fun in specs.items():
        ref = reference_solution(fun, mesh)
        baseline = rk_baseline(fun, mesh, rel_tol=1e-15, abs_tol=1e-15)
        rk_errors[label] = float(np.max(np.abs(baseline.y - ref) / np.abs(ref)))
    rows.append({"method": "rk_dp54", "errors": rk_errors})

    fmt = args.format or "table"
    labels = list(specs)
    if fmt == "json":
        _emit(_json_text({"mesh_points": args.mesh_points, "rows": rows}), args.out)
    elif fmt == "csv":
        lines = ["method," + ",".join(labels)]
        for row in rows:
            lines.append(row["method"] + "," + ",".join(_fmt(row["errors"][l]) for l in labels))
        _emit("\n".join(lines), args.out)
    else:
        lines = ["max relative error on the mesh",
                 f"{'':10s}" + "".join(f"{lab:>12s}" for lab in labels)]
        for row in rows:
            lines.append(
                f"{row['method']:10s}"
                + "".join(f"{row['errors'][l]:>12.2e}" for l in labels)
            )
        _emit("\n".join(lines), args.out)
    return 0


def cmd_spectrum(args) -> int:
    if args.M < 2:
        raise ConfigurationError("M must be >= 2")
    fun = functions.resolve(args.function)
    basis = LegendreBasis(order=args.M, interval_end=args.T or 1.0)
    eigs = spectrum(coefficient_matrix(fun, basis, num_points=args.quad_points))

    fmt = args.format or "csv"
    if fmt == "json":
        _emit(_json_text([{"re": z.real, "im": z.imag} for z in eigs]), args.out)
    else:
        lines = ["re,im"] + [f"{_fmt(z.real)},{_fmt(z.imag)}" for z in eigs]
        _emit("\n".join(lines), args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="volspec",
        description="Spectral solver for y' = f(t) y via Legendre kernel expansion",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format=None):
        p.add_argument("--format", choices=("csv", "json", "table"), default=default_format)
        p.add_argument("--out", help="write output to this path instead of stdout")
        p.add_argument("--T", type=float, default=None, help="interval end (default 1)")
        p.add_argument("--threshold-mode", dest="threshold_mode",
                       choices=("relative", "absolute"), default=None)
        p.add_argument("--quad-points", dest="quad_points", type=int, default=None,
                       help="override the coefficient-quadrature point count")

    p = sub.add_parser("solve", help="solve one problem and compare to the reference")
    p.add_argument("--config", help="JSON file with the problem configuration")
    p.add_argument("--function", help="catalog name or inline function JSON")
    p.add_argument("--M", type=int, default=None, help="expansion order")
    p.add_argument("--mesh-points", dest="mesh_points", type=int, default=None)
    p.add_argument("--zero-margin", dest="zero_margin", type=int, default=None,
                   help="extra rows to zero beyond the measured bandwidth")
    common(p)
    p.set_defaults(run=cmd_solve)

    p = sub.add_parser("diagnose", help="matrix-property table over a (function, M) grid")
    p.add_argument("--M", default=",".join(map(str, _DEFAULT_ORDERS)),
                   help="comma-separated list of expansion orders")
    p.add_argument("--functions", default="1,t,t^3,cos,log1p")
    common(p)
    p.set_defaults(run=cmd_diagnose)

    p = sub.add_parser("bench", help="accuracy table incl. the Runge-Kutta baseline")
    p.add_argument("--M", default=",".join(map(str, _BENCH_ORDERS)))
    p.add_argument("--functions", default="1,t,t^3,cos,log1p")
    p.add_argument("--mesh-points", dest="mesh_points", type=int, default=100)
    common(p)
    p.set_defaults(run=cmd_bench)

    p = sub.add_parser("spectrum", help="all eigenvalues of one coefficient matrix")
    p.add_argument("--function", required=True)
    p.add_argument("--M", type=int, required=True)
    common(p, default_format="csv")
    p.set_defaults(run=cmd_spectrum)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (ConfigurationError, json.JSONDecodeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
