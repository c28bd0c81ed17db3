"""Command line interface.

Exit codes: 0 success (or invariant for ``check``), 1 not invariant,
2 usage error, 3 I/O error, 4 numeric or parameter error.
"""
from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .edges import PATTERN_KINDS, EdgeParams, PatternSpec, check_invariance, detect_edges, generate_pattern
from .grid import renormalize_palette
from .hdiff2d import trace_2d
from .pgm import FORMATS, read_pgm, write_pgm
from .perona_malik import PMParams, pm_run

EXIT_OK, EXIT_NOT_INVARIANT, EXIT_USAGE, EXIT_IO, EXIT_NUMERIC = 0, 1, 2, 3, 4

TRACE_FIELDS = {
    "d_x.txt": "d_x",
    "d_y.txt": "d_y",
    "l.txt": "l",
    "D.txt": "D",
    "R_staggered.txt": "R_staggered",
    "R_integer.txt": "R_integer",
}


class UsageError(Exception):
    pass


def gamma_list(text: str) -> list[float]:
    try:
        values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("gamma schedule must not be empty")
    return values


def dump_trace(trace, directory: Path) -> None:
    """Write every traced stage as a whitespace-separated decimal matrix."""
    directory.mkdir(parents=True, exist_ok=True)
    for name, attr in TRACE_FIELDS.items():
        field = getattr(trace, attr)
        values = getattr(field, "values", field)
        np.savetxt(directory / name, np.atleast_2d(values), fmt="%.17g")


def _add_pm_flags(p, required):
    p.add_argument("--a", type=float, required=required, help="conductivity parameter")
    p.add_argument("--dt", type=float, required=required, help="time step")
    p.add_argument("--T", type=float, required=required, help="final time")


def _add_io(p, need_in=True):
    if need_in:
        p.add_argument("--in", dest="input", default="-", help="input PGM ('-' for stdin)")
    p.add_argument("--out", default="-", help="output PGM ('-' for stdout)")
    p.add_argument("--format", choices=FORMATS, default="pgm-binary")


def _add_pattern(p):
    p.add_argument("--pattern", choices=PATTERN_KINDS)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--v1", type=float, default=1.0, help="first grey level, palette units [1, 256]")
    p.add_argument("--v2", type=float, default=256.0, help="second grey level, palette units [1, 256]")
    p.add_argument("--period", type=int, default=1, help="stripe width")
    p.add_argument("--split", type=int, default=None)
    p.add_argument("--radius", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hodiff", description="High-order backward anisotropic diffusion on grey images.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("step", help="apply high-order diffusion steps, renormalize, write")
    p.add_argument("--gamma", type=gamma_list, required=True, help="comma-separated gamma per step")
    _add_io(p)
    p.add_argument("--trace-dump", type=Path, default=None, help="directory for intermediate fields")

    p = sub.add_parser("edges", help="diffuse, renormalize and apply the cut-off filter")
    p.add_argument("--gamma", type=gamma_list, default=[-8.0])
    p.add_argument("--tau", type=int, default=162)
    p.add_argument("--method", choices=("highorder", "pm"), default="highorder")
    _add_pm_flags(p, required=False)
    _add_io(p)

    p = sub.add_parser("pm", help="Perona-Malik run, renormalize, write")
    _add_pm_flags(p, required=True)
    _add_io(p)

    p = sub.add_parser("gen", help="write a synthetic test pattern")
    _add_pattern(p)
    _add_io(p, need_in=False)

    p = sub.add_parser("check", help="exit 0 iff one step leaves the image unchanged")
    _add_pattern(p)
    p.add_argument("--in", dest="input", default=None, help="input PGM (default stdin when no --pattern)")
    p.add_argument("--method", choices=("highorder", "pm"), default="highorder")
    p.add_argument("--gamma", type=float, default=-8.0)
    _add_pm_flags(p, required=False)
    p.add_argument("--trace-dump", type=Path, default=None)
    return parser


def _pm_params(args):
    missing = [f"--{k}" for k in ("a", "dt", "T") if getattr(args, k) is None]
    if missing:
        raise UsageError(f"method pm requires {', '.join(missing)}")
    return PMParams(args.a, args.dt, args.T)


def _pattern(args):
    return generate_pattern(PatternSpec(args.pattern, args.n, args.v1, args.v2, args.period, args.split, args.radius))


def cmd_step(args):
    u = read_pgm(args.input).values
    for k, g in enumerate(args.gamma):
        trace = trace_2d(u, g)
        if args.trace_dump is not None:
            target = args.trace_dump if len(args.gamma) == 1 else args.trace_dump / f"step_{k + 1}"
            dump_trace(trace, target)
        u = trace.updated
    write_pgm(renormalize_palette(u), args.out, args.format)
    return EXIT_OK


def cmd_edges(args):
    img = read_pgm(args.input)
    pm = _pm_params(args) if args.method == "pm" else None
    out = detect_edges(img, EdgeParams(args.gamma, args.tau, args.method, pm))
    write_pgm(out, args.out, args.format)
    return EXIT_OK


def cmd_pm(args):
    u = pm_run(read_pgm(args.input).values, _pm_params(args))
    write_pgm(renormalize_palette(u), args.out, args.format)
    return EXIT_OK


def cmd_gen(args):
    if args.pattern is None:
        raise UsageError("gen requires --pattern")
    u = _pattern(args)
    if u.ndim == 1:
        text = " ".join(f"{v:.17g}" for v in u) + "\n"
        if args.out == "-":
            sys.stdout.write(text)
        else:
            Path(args.out).write_text(text)
    else:
        write_pgm(u, args.out, args.format)
    return EXIT_OK


def cmd_check(args):
    if args.pattern is not None and args.input is not None:
        raise UsageError("check takes --pattern or --in, not both")
    u = _pattern(args) if args.pattern is not None else read_pgm(args.input or "-").values
    pm = _pm_params(args) if args.method == "pm" else None
    if args.trace_dump is not None and args.method == "highorder" and u.ndim == 2:
        dump_trace(trace_2d(u, args.gamma), args.trace_dump)
    report = check_invariance(u, args.method, args.gamma, pm)
    print(
        f"invariant={str(report.is_invariant).lower()} "
        f"max_abs_R={report.max_abs_R:.17g} max_abs_change={report.max_abs_change:.17g}",
        file=sys.stderr,
    )
    return EXIT_OK if report.is_invariant else EXIT_NOT_INVARIANT


COMMANDS = {"step": cmd_step, "edges": cmd_edges, "pm": cmd_pm, "gen": cmd_gen, "check": cmd_check}


def _glue_gamma(argv):
    # "--gamma -8,-8" would otherwise be read as an unknown option
    out, it = [], iter(argv)
    for tok in it:
        if tok == "--gamma":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--gamma={nxt}")
        else:
            out.append(tok)
    return out


def run_cli(argv=None) -> int:
    parser = build_parser()
    argv = _glue_gamma(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"hodiff: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"hodiff: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, ArithmeticError) as exc:
        print(f"hodiff: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main() -> None:
    sys.exit(run_cli())
