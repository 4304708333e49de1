"""Command-line front end producing figure data and comparison sweeps.

Subcommands: ``density``, ``asymptotic``, ``compare``, ``evolve``, ``expect``.
Exit status: 0 on success, 2 for a bad configuration, 3 when a numerical
routine refuses (unresolved oscillation, non-convergence).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .asymptotics import (
    AsymptoticIndex,
    density_asymptotic_field,
    fourier_asymptotic,
    macroscopic_density_xt,
    classical_density,
)
from .averaging import CLAMP_FRACTION, default_window, local_average
from .errors import MacroQHOError, NumericalRefusal
from .fourier import fourier_exact, momentum_from_xi0
from .observables import POSITION, POSITION_SQUARED, expectation_asymptotic, expectation_exact, polynomial
from .oscillator import OscillatorParams, Superposition, density_component, density_matrix_xt
from .quadrature import QuadratureSpec

EXIT_OK, EXIT_CONFIG, EXIT_REFUSAL = 0, 2, 3


class ConfigError(MacroQHOError):
    pass


# --- parsing helpers -----------------------------------------------------------

def parse_range(text: str, what: str = "grid") -> np.ndarray:
    try:
        lo, hi, count = text.split(":")
        lo, hi, count = float(lo), float(hi), int(count)
    except ValueError:
        raise ConfigError(f"--{what} expects lo:hi:count, got {text!r}") from None
    if count < 2 or not hi > lo:
        raise ConfigError(f"--{what} needs count >= 2 and hi > lo")
    return np.linspace(lo, hi, count)


def parse_units(text: str) -> OscillatorParams:
    try:
        mass, omega, hbar = (float(s) for s in text.split(","))
    except ValueError:
        raise ConfigError(f"--units expects m,omega,hbar, got {text!r}") from None
    if min(mass, omega, hbar) <= 0:
        raise ConfigError("--units must all be positive")
    return OscillatorParams(mass, omega, hbar)


def parse_coeffs(text: str) -> dict[int, complex]:
    out = {}
    for item in text.split(","):
        try:
            n, c = item.split(":")
            out[int(n)] = complex(c.replace(" ", ""))
        except ValueError:
            raise ConfigError(f"--coeffs expects n:c pairs, got {item!r}") from None
    return out


def build_state(args) -> Superposition:
    given = [args.coeffs is not None, args.nbar is not None, args.n is not None]
    if sum(given) != 1:
        raise ConfigError("give exactly one of --coeffs, --nbar/--sigma, --n")
    if args.coeffs is not None:
        return Superposition(parse_coeffs(args.coeffs))
    if args.nbar is not None:
        if args.sigma is None:
            raise ConfigError("--nbar needs --sigma")
        return Superposition.gaussian(args.nbar, args.sigma)
    return Superposition.eigenstate(args.n)


def parse_observable(text: str):
    if text == "x":
        return POSITION
    if text == "x2":
        return POSITION_SQUARED
    if text.startswith("poly:"):
        try:
            coeffs = [float(c) for c in text[5:].split(",")]
        except ValueError:
            raise ConfigError(f"bad polynomial {text!r}") from None
        return polynomial(coeffs, name=text)
    raise ConfigError(f"--obs must be x, x2 or poly:c0,c1,..., got {text!r}")


# --- output --------------------------------------------------------------------

def _num(v) -> str:
    return format(float(v), ".17g")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        return f if math.isfinite(f) else None
    return obj


def render(meta: dict, columns: list[str], rows, summary: dict | None, fmt: str) -> str:
    rows = np.asarray(rows, dtype=float)
    if fmt == "json":
        doc = {"meta": meta, "columns": columns, "data": rows.tolist(), "summary": summary or {}}
        return json.dumps(_jsonable(doc), sort_keys=True, indent=1) + "\n"
    lines = [f"# {k}: {json.dumps(_jsonable(meta[k]), sort_keys=True)}" for k in sorted(meta)]
    for k in sorted(summary or {}):
        lines.append(f"# summary.{k}: {json.dumps(_jsonable(summary[k]), sort_keys=True)}")
    lines.append(",".join(columns))
    lines.extend(",".join(_num(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def suffixed(out: str | None, tag: str) -> str | None:
    if out is None:
        return None
    p = Path(out)
    return str(p.with_name(f"{p.stem}_{tag}{p.suffix}"))


def base_meta(args, params: OscillatorParams) -> dict:
    # the output path does not change the data, so it stays out of the header
    skip = {"func", "command", "out"}
    parameters = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    return {
        "command": args.command,
        "parameters": parameters,
        "units": {"mass": params.mass, "omega": params.omega, "hbar": params.hbar},
        "library_version": __version__,
    }


# --- commands ------------------------------------------------------------------

def cmd_density(args) -> int:
    params = parse_units(args.units)
    if args.n is None or not args.m:
        raise ConfigError("density needs --n and --m")
    top = max([args.n] + args.m)
    xn = params.amplitude(top)
    grid = parse_range(args.grid) if args.grid else np.linspace(-1.2 * xn, 1.2 * xn, 2001)
    root_alpha = math.sqrt(params.alpha())
    cols = ["x", "xi"]
    data = [grid, grid * root_alpha]
    for m in args.m:
        cols.append(f"rho_bar_{args.n}_{m}")
        data.append(density_component(args.n, m, grid, params) / root_alpha)
    emit(render(base_meta(args, params), cols, np.column_stack(data), None, args.format), args.out)
    return EXIT_OK


def cmd_asymptotic(args) -> int:
    params = parse_units(args.units)
    if args.n is None or not args.v:
        raise ConfigError("asymptotic needs --n and --v")
    root_alpha = math.sqrt(params.alpha())
    for v in args.v:
        idx = AsymptoticIndex(args.n, v)
        chi = idx.chi(params)
        grid = parse_range(args.grid) if args.grid else np.linspace(-chi, chi, 4001)
        field = density_asymptotic_field(args.n, v, grid, params)
        vals = field.values / root_alpha
        interior = np.abs(grid) <= 0.75 * chi
        summary = {
            "chi": chi,
            "prefactor": idx.prefactor,
            "max_abs_rho_bar_interior": float(np.max(np.abs(vals[interior]))) if np.any(interior) else None,
            "max_abs_rho_bar": float(np.max(np.abs(vals))),
            "sign_changes": int(np.count_nonzero(np.diff(np.sign(vals[vals != 0])) != 0)),
            "clamped_points": len(field.meta["clamped"]),
        }
        meta = base_meta(args, params)
        meta["v"] = v
        text = render(meta, ["x", "xi", f"rho_bar_asym_{args.n}_{args.n - v}"],
                      np.column_stack([grid, grid * root_alpha, vals]), summary, args.format)
        emit(text, suffixed(args.out, f"v{v}") if len(args.v) > 1 else args.out)
    return EXIT_OK


def density_error(n: int, k: float, points: int, params: OscillatorParams, quad: QuadratureSpec | None = None) -> float:
    """Max relative deviation of the locally averaged exact density from the arcsine law on ``|x| <= 0.75 x_n``."""
    xn = params.amplitude(n)
    worst = 0.0
    for x in np.linspace(-0.75 * xn, 0.75 * xn, points):
        avg = local_average(lambda y: density_component(n, n, y, params), x, default_window(n, x, k, params), quad)
        ref = classical_density(n, x, params)
        worst = max(worst, abs(avg - ref) / ref)
    return worst


def quad_from(args) -> QuadratureSpec | None:
    return None if args.nodes is None else QuadratureSpec(nodes=args.nodes)


def fourier_error(n: int, v: int, params: OscillatorParams, xi_max: float = 4.0, points: int = 801) -> float:
    p = momentum_from_xi0(np.linspace(-xi_max, xi_max, points), params)
    return float(np.max(np.abs(fourier_exact(n, n - v, p, params) - fourier_asymptotic(n, v, p, params))))


def cmd_compare(args) -> int:
    params = parse_units(args.units)
    ns = args.n_list or [10, 50, 100, 500, 1000]
    vs = args.v if args.v else [0, 1, 2]
    cols = ["n", "density_max_rel_err"] + [f"fourier_max_err_v{v}" for v in vs]
    rows = []
    for n in ns:
        row = [n, density_error(n, args.k, args.points, params, quad_from(args))]
        row += [fourier_error(n, v, params) if v <= n and n >= 1 else float("nan") for v in vs]
        rows.append(row)
    rows = np.array(rows, dtype=float)
    dens = rows[:, 1]
    summary = {"density_error_strictly_decreasing": bool(np.all(np.diff(dens) < 0))}
    for j, v in enumerate(vs):
        col = rows[:, 2 + j]
        summary[f"fourier_v{v}_strictly_decreasing"] = bool(np.all(np.diff(col) < 0))
    emit(render(base_meta(args, params), cols, rows, summary, args.format), args.out)
    return EXIT_OK


def cmd_evolve(args) -> int:
    params = parse_units(args.units)
    state = build_state(args)
    top = int(state.ns[-1])
    xn = params.amplitude(top)
    grid = parse_range(args.grid) if args.grid else np.linspace(-1.2 * xn, 1.2 * xn, 401)
    times = parse_range(args.times, "times") if args.times else np.linspace(0, 2 * math.pi / params.omega, 9)
    rows = []
    for t in times:
        exact = density_matrix_xt(state, grid, t, params)
        macro = macroscopic_density_xt(state, grid, t, args.vmax, params)
        avg = np.full(grid.shape, np.nan)
        for i, x in enumerate(grid):
            if abs(x) < CLAMP_FRACTION * xn and top >= 1:
                win = default_window(top, x, args.k, params)
                avg[i] = local_average(lambda y: density_matrix_xt(state, y, t, params), x, win, quad_from(args))
        rows.append(np.column_stack([np.full(grid.shape, t), grid, exact, avg, macro]))
    emit(render(base_meta(args, params), ["t", "x", "rho_exact", "rho_exact_avg", "rho_macro"],
                np.vstack(rows), None, args.format), args.out)
    return EXIT_OK


def cmd_expect(args) -> int:
    params = parse_units(args.units)
    state = build_state(args)
    obs = parse_observable(args.obs)
    times = parse_range(args.times, "times") if args.times else np.linspace(0, 4 * math.pi / params.omega, 81)
    exact = expectation_exact(state, obs, times, params)
    asym = expectation_asymptotic(state, obs, times, args.vmax, params)
    emit(render(base_meta(args, params), ["t", "exact", "asymptotic"],
                np.column_stack([times, exact, asym]), None, args.format), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="macroqho", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--units", default="1,1,1", help="m,omega,hbar (default natural units)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    def nodes_flag(p):
        p.add_argument("--nodes", type=int, default=None,
                       help="explicit node count per local average (default: from the local wavelength)")

    def state_flags(p):
        p.add_argument("--n", type=int, default=None, help="single eigenstate")
        p.add_argument("--coeffs", default=None, help="n:c pairs, e.g. 100:1,99:1")
        p.add_argument("--nbar", type=float, default=None)
        p.add_argument("--sigma", type=float, default=None)
        p.add_argument("--times", default=None, help="lo:hi:count")
        p.add_argument("--vmax", type=int, default=None)

    p = sub.add_parser("density", help="exact rho_bar_{n,m} on a grid")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int, nargs="+")
    p.add_argument("--grid", default=None, help="lo:hi:count")
    common(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("asymptotic", help="macroscopic rho_bar_{n,n-v} on a grid")
    p.add_argument("--n", type=int)
    p.add_argument("--v", type=int, nargs="+")
    p.add_argument("--grid", default=None, help="lo:hi:count")
    common(p)
    p.set_defaults(func=cmd_asymptotic)

    p = sub.add_parser("compare", help="convergence sweep in n")
    p.add_argument("--n", dest="n_list", type=int, nargs="+")
    p.add_argument("--v", type=int, nargs="+")
    p.add_argument("--k", type=float, default=3.0, help="window width in local wavelengths")
    p.add_argument("--points", type=int, default=301, help="x samples on |x| <= 0.75 x_n")
    nodes_flag(p)
    common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("evolve", help="exact and macroscopic rho(x, t) snapshots")
    state_flags(p)
    p.add_argument("--grid", default=None, help="lo:hi:count")
    p.add_argument("--k", type=float, default=3.0)
    nodes_flag(p)
    common(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("expect", help="exact vs asymptotic <O>(t)")
    state_flags(p)
    p.add_argument("--obs", default="x", help="x, x2 or poly:c0,c1,...")
    common(p)
    p.set_defaults(func=cmd_expect)
    return parser


_RANGE_FLAGS = ("--grid", "--times")


def _join_range_flags(argv: list[str]) -> list[str]:
    # "--grid -6:6:1201" would otherwise be read as an unknown option
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _RANGE_FLAGS and i + 1 < len(argv) and ":" in argv[i + 1]:
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _join_range_flags(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except NumericalRefusal as exc:
        print(f"macroqho: numerical refusal: {exc}", file=sys.stderr)
        return EXIT_REFUSAL
    except (MacroQHOError, ValueError) as exc:
        print(f"macroqho: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
