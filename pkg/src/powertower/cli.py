"""``powertower`` command line: each subcommand prints a value or writes a
deterministic CSV/SVG file reproducing one of the tower plots.

Exit codes: 0 success, 2 domain or usage error, 3 numerical non-convergence.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import analysis, core, dynamics, lambertw, series
from .errors import ConvergenceError, DomainError, PreconditionError
from .output import SvgCanvas, csv_text, format_number

EXIT_OK, EXIT_DOMAIN, EXIT_NONCONVERGENCE = 0, 2, 3

_BUILTIN = {
    "out": "-",
    "format": "csv",
    "precision": 17,
    "tol": dynamics.DEFAULT_CONFIG.tolerance,
    "max_iter": dynamics.DEFAULT_CONFIG.max_iterations,
    "div_threshold": dynamics.DEFAULT_CONFIG.divergence_threshold,
}
_CONVERTERS = {"out": str, "format": str, "precision": int, "tol": float,
               "max_iter": int, "div_threshold": float}

CURVE_SAMPLES = 512


class UsageError(Exception):
    pass


def load_config(path: str) -> dict:
    """Read ``key=value`` lines; ``#`` starts a comment. Keys as the long flags."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in _CONVERTERS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _CONVERTERS[key](value)
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return values


def _resolve(args: argparse.Namespace) -> None:
    # CLI flag > config file > built-in default
    file_values = load_config(args.config) if args.config else {}
    for key, default in _BUILTIN.items():
        if getattr(args, key) is None:
            setattr(args, key, file_values.get(key, default))
    if not 6 <= args.precision <= 17:
        raise UsageError("--precision must be in [6, 17]")
    if args.format not in ("csv", "svg"):
        raise UsageError("--format must be csv or svg")


def _config(args) -> dynamics.IterationConfig:
    return dynamics.IterationConfig(args.tol, args.max_iter, args.div_threshold)


def _num(args, v: float) -> str:
    return format_number(v, args.precision)


def _emit(args, text: str) -> None:
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _line(args, *fields) -> None:
    _emit(args, " ".join(_num(args, f) if isinstance(f, float) else str(f) for f in fields) + "\n")


# --- scalar subcommands -------------------------------------------------------

def cmd_eval(args):
    _line(args, core.finite_tower(args.x, args.height))


def _attractor(x: float, regime: analysis.ConvergenceClass, config) -> tuple[float, ...]:
    if regime is analysis.ConvergenceClass.DivergesToInfinity:
        return ()
    if regime is analysis.ConvergenceClass.TwoCycleRegime:
        c = analysis.cycle_for_x(x, config)
        return (c.y_low, c.y_high)
    return (lambertw.tower_fixed_point(x),)


def cmd_classify(args):
    regime = analysis.classify(args.x)
    _line(args, regime.value, *_attractor(args.x, regime, _config(args)))


def cmd_fixedpoint(args):
    if args.repulsive:
        _line(args, lambertw.tower_fixed_point_repulsive(args.x))
    else:
        _line(args, lambertw.tower_fixed_point(args.x))


def cmd_iterate(args):
    config = _config(args)
    if args.double:
        trace = dynamics.iterate_double_step(args.x, args.y0 if args.y0 is not None else args.x, config)
    else:
        trace = dynamics.iterate_tower(args.x, config)
    if args.trace:
        _emit(args, csv_text(["n", "y"], ((n, float(v)) for n, v in enumerate(trace.values)), args.precision))
        return
    vals = list(trace.outcome.values) + [""] * (2 - len(trace.outcome.values))
    _emit(args, csv_text(["outcome", "steps", "value1", "value2"],
                         [[trace.outcome.kind.value, trace.steps, *vals]], args.precision))


def cmd_cycle(args):
    if (args.p is None) == (args.x is None):
        raise UsageError("give exactly one of --p or --x")
    c = analysis.cycle_from_p(args.p) if args.p is not None else analysis.cycle_for_x(args.x, _config(args))
    _emit(args, csv_text(["y_low", "y_high", "p", "x"], [[c.y_low, c.y_high, c.p, c.x]], args.precision))


def cmd_lambertw(args):
    branch = {"principal": lambertw.Branch.PRINCIPAL, "secondary": lambertw.Branch.SECONDARY}[args.branch]
    _line(args, lambertw.lambert_w(args.z, branch))


def cmd_revert(args):
    try:
        coeffs = [float(c) for c in args.coefficients.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad coefficient list {args.coefficients!r}") from exc
    inv = series.revert(series.PowerSeries(coeffs), args.order)
    _emit(args, csv_text(["power", "coefficient"],
                         [[k, c] for k, c in enumerate(inv.coefficients, 1)], args.precision))


# --- figure subcommands -------------------------------------------------------

def cmd_curve(args):
    ys = np.linspace(args.y_min, args.y_max, args.samples)
    if not args.y_min > 0:
        raise DomainError("g(y) needs y > 0")
    pts = [(float(y), core.g(float(y))) for y in ys]
    if args.format == "csv":
        _emit(args, csv_text(["y", "x"], pts, args.precision))
        return
    top = max(p[1] for p in pts)
    canvas = SvgCanvas((args.y_min, args.y_max), (0.0, top * 1.05), "x = g(y) = y**(1/y)")
    canvas.polyline(pts, "black", 1.5)
    infl = core.g_inflections()
    canvas.dots([(core.E, core.E_TO_INV_E)], "red", 3)
    canvas.dots([tuple(p) for p in infl if args.y_min <= p.y <= args.y_max], "blue", 3)
    _emit(args, canvas.render())


def cmd_cobweb(args):
    y0 = args.y0 if args.y0 is not None else args.x
    web = dynamics.cobweb_trace(args.x, y0, args.steps)
    top = args.ymax
    if top is None:
        top = 1.05 * max(2.0, max(max(p) for p in web))
    curve = [(float(y), core.tower_step(args.x, float(y))) for y in np.linspace(0.0, top, CURVE_SAMPLES)]
    ident = [(0.0, 0.0), (top, top)]
    if args.format == "csv":
        rows = ([["cobweb", y, z] for y, z in web] + [["curve", y, z] for y, z in curve]
                + [["identity", y, z] for y, z in ident])
        _emit(args, csv_text(["section", "y", "z"], rows, args.precision))
        return
    canvas = SvgCanvas((0.0, top), (0.0, top), f"cobweb of y -> x**y at x={args.x!r}")
    canvas.polyline(ident, "gray")
    canvas.polyline([(y, z) for y, z in curve if z <= top], "black", 1.5)
    canvas.polyline([(y, min(z, top)) for y, z in web], "red")
    _emit(args, canvas.render())


def cmd_bifurcation(args):
    rows = analysis.bifurcation_scan(args.x_min, args.x_max, args.samples, _config(args))
    if args.format == "csv":
        out = [[r.x, r.regime.value, *(list(r.values) + [""] * (2 - len(r.values)))] for r in rows]
        _emit(args, csv_text(["x", "class", "value1", "value2"], out, args.precision))
        return
    canvas = SvgCanvas((args.x_min, args.x_max), (0.0, math.e * 1.05), "attractor values of the tower")
    canvas.dots([(r.x, v) for r in rows for v in r.values], "black")
    _emit(args, canvas.render())


def cmd_towers(args):
    xs = np.linspace(args.x_min, args.x_max, args.samples)
    rows = [[float(x)] + [core.finite_tower(float(x), h) for h in args.heights] for x in xs]
    if args.format == "csv":
        _emit(args, csv_text(["x"] + [f"f{h}" for h in args.heights], rows, args.precision))
        return
    top = max(v for r in rows for v in r[1:] if math.isfinite(v))
    canvas = SvgCanvas((args.x_min, args.x_max), (0.0, max(top, 1.0) * 1.05),
                       "finite towers of heights " + ", ".join(map(str, args.heights)))
    for k, colour in zip(range(len(args.heights)), ("black", "red", "blue", "green")):
        canvas.dots([(r[0], r[k + 1]) for r in rows], colour)
    _emit(args, canvas.render())


def cmd_region(args):
    grid = (args.nx, args.ny)
    xs, ys = analysis.region_axes((args.x_min, args.x_max), (args.y_min, args.y_max), grid)
    cells = analysis.region_scan((args.x_min, args.x_max), (args.y_min, args.y_max), grid)
    if args.format == "csv":
        header = ["x"] + [format_number(float(y), args.precision) for y in ys]
        rows = [[float(xs[i])] + [int(c) for c in cells[i]] for i in range(len(xs))]
        _emit(args, csv_text(header, rows, args.precision))
        return
    dx = (args.x_max - args.x_min) / (args.nx - 1)
    dy = (args.y_max - args.y_min) / (args.ny - 1)
    canvas = SvgCanvas((args.x_min - dx / 2, args.x_max + dx / 2),
                       (args.y_min - dy / 2, args.y_max + dy / 2),
                       "|x**(x**y + y) ln(x)**2| < 1")
    for i in range(len(xs)):
        j = 0
        while j < len(ys):
            if not cells[i, j]:
                j += 1
                continue
            start = j
            while j < len(ys) and cells[i, j]:
                j += 1
            # one rect per vertical run of inside cells
            canvas.cell(float(xs[i]) - dx / 2, float(ys[start]) - dy / 2, dx, (j - start) * dy, "#4060c0")
    _emit(args, canvas.render())


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=["csv", "svg"])
    common.add_argument("--precision", type=int, help="significant digits, 6..17 (default 17)")
    common.add_argument("--tol", type=float, help="orbit tolerance (default 1e-12)")
    common.add_argument("--max-iter", dest="max_iter", type=int, help="iteration budget (default 10000)")
    common.add_argument("--div-threshold", dest="div_threshold", type=float,
                        help="divergence threshold (default 1e15)")
    common.add_argument("--config", help="key=value file overriding defaults")

    parser = argparse.ArgumentParser(prog="powertower", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("eval", cmd_eval, "finite tower of given height")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--height", type=int, required=True)

    p = add("classify", cmd_classify, "convergence regime and attractor values")
    p.add_argument("--x", type=float, required=True)

    p = add("fixedpoint", cmd_fixedpoint, "fixed point via Lambert W")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--repulsive", action="store_true")

    p = add("iterate", cmd_iterate, "iterate the tower and diagnose the orbit")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y0", type=float, help="start of the double step (default x)")
    p.add_argument("--double", action="store_true", help="iterate y -> x**(x**y)")
    p.add_argument("--trace", action="store_true", help="emit the whole orbit")

    p = add("cobweb", cmd_cobweb, "cobweb diagram")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y0", type=float)
    p.add_argument("--steps", type=int, default=30)
    p.add_argument("--ymax", type=float, help="upper end of both plot axes")

    p = add("bifurcation", cmd_bifurcation, "attractor values over a range of bases")
    p.add_argument("--x-min", dest="x_min", type=float, default=0.01)
    p.add_argument("--x-max", dest="x_max", type=float, default=core.E_TO_INV_E)
    p.add_argument("--samples", type=int, default=400)

    p = add("region", cmd_region, "where the double step contracts")
    p.add_argument("--x-min", dest="x_min", type=float, default=0.01)
    p.add_argument("--x-max", dest="x_max", type=float, default=1.6)
    p.add_argument("--y-min", dest="y_min", type=float, default=0.01)
    p.add_argument("--y-max", dest="y_max", type=float, default=2.5)
    p.add_argument("--nx", type=int, default=120)
    p.add_argument("--ny", type=int, default=120)

    p = add("cycle", cmd_cycle, "2-cycle from its ratio p or its base x")
    p.add_argument("--p", type=float)
    p.add_argument("--x", type=float)

    p = add("lambertw", cmd_lambertw, "real Lambert W")
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--branch", choices=["principal", "secondary"], default="principal")

    p = add("revert", cmd_revert, "reversion of a power series")
    p.add_argument("--coefficients", required=True, help="comma-separated a_1,a_2,...")
    p.add_argument("--order", type=int, required=True)

    p = add("curve", cmd_curve, "the curve x = y**(1/y)")
    p.add_argument("--y-min", dest="y_min", type=float, default=0.05)
    p.add_argument("--y-max", dest="y_max", type=float, default=10.0)
    p.add_argument("--samples", type=int, default=CURVE_SAMPLES)

    p = add("towers", cmd_towers, "finite towers of fixed heights over a range of bases")
    p.add_argument("--x-min", dest="x_min", type=float, default=0.01)
    p.add_argument("--x-max", dest="x_max", type=float, default=core.E_TO_INV_E)
    p.add_argument("--samples", type=int, default=400)
    p.add_argument("--heights", type=int, nargs="+", default=[200])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _resolve(args)
        args.func(args)
    except (DomainError, PreconditionError, UsageError, OverflowError) as exc:
        print(f"powertower: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"powertower: did not converge: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except OSError as exc:
        print(f"powertower: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
