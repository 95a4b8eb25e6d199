"""Command-line interface: ``crystalzeta <subcommand> ...``.

Exit status 0 on success, 1 when a computed verdict fails, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import io
from .asymptotics import expansion_main
from .crystal import construct_selfdual, measure_from_function
from .errors import CrystalZetaError, DocumentError
from .sequence import (
    check_structure, smallx_residual, theta_sum, theta_tail_bound, zeta_zero_sum_oracle,
)
from .zerofind import Rectangle, isolate_zeros, zeros_to_sequence, zeta_ordinates
from .zetabuild import build_g_N, build_zeta_M, build_zeta_N, dirichlet_head, riemann, sigma0

VALUE_OPTIONS = ("--rect", "--s", "--x-grid", "--x", "--c", "--delta")
SLOPE_LIMIT = 0.3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _floats(text: str, count: int | None = None) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if count is not None and len(vals) != count:
        raise argparse.ArgumentTypeError(f"expected {count} numbers, got {len(vals)}")
    return vals


def _rect(text: str) -> Rectangle:
    try:
        return Rectangle(*_floats(text, 4))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _complex(text: str) -> complex:
    vals = _floats(text)
    if len(vals) not in (1, 2):
        raise argparse.ArgumentTypeError("expected RE or RE,IM")
    return complex(vals[0], vals[1] if len(vals) == 2 else 0.0)


def _resolution(text: str) -> tuple[int, int]:
    parts = text.lower().replace(",", "x").split("x")
    try:
        nx, ny = (int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NXxNY, got {text!r}") from None
    return nx, ny


def _add_function_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--function", choices=("zeta-m", "zeta", "g", "zeta-n"), default="zeta-m",
                   help="function to use (default: zeta-m)")
    p.add_argument("--n", type=int, default=5, help="N for g / zeta-n (default 5)")
    p.add_argument("--t", type=float, default=1.0, help="window T for g / zeta-n (default 1)")
    p.add_argument("--delta", type=float, default=None, help="delta for zeta-n (default: delta0 bound)")


def _function(args):
    if args.function == "zeta-m":
        return build_zeta_M()
    if args.function == "zeta":
        return riemann()
    measure = measure_from_function(construct_selfdual(args.n, args.t), args.n)
    if args.function == "g":
        return build_g_N(measure)
    from .zetabuild import delta0_bound

    delta = args.delta if args.delta is not None else delta0_bound(measure)
    return build_zeta_N(measure, delta)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="crystalzeta", description="Zeta functions of self-dual combs and their zeros.")
    parser.add_argument("--precision", choices=("double", "extended"), default="double")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="self-dual comb on (1/N)Z vanishing on |x| <= T")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("zeta-m", help="the 13-term Hurwitz combination zeta_M")
    p.add_argument("--head", type=float, default=None, help="also print Dirichlet coefficients up to this frequency")

    p = sub.add_parser("eval", help="evaluate a function at one point")
    p.add_argument("--s", type=_complex, required=True, help="RE,IM")
    p.add_argument("--derivative", action="store_true")
    _add_function_args(p)

    p = sub.add_parser("sigma0", help="abscissa right of which there are no zeros")
    p.add_argument("--tol", type=float, default=1e-13)
    _add_function_args(p)

    p = sub.add_parser("zeros", help="all zeros in a rectangle, one record per line")
    p.add_argument("--rect", type=_rect, required=True, help="SIGMA_MIN,SIGMA_MAX,T_MIN,T_MAX")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-depth", type=int, default=40)
    p.add_argument("--out", type=Path)
    _add_function_args(p)

    p = sub.add_parser("xray", help="SVG of the loci where f is real or purely imaginary")
    p.add_argument("--rect", type=_rect, required=True)
    p.add_argument("--resolution", type=_resolution, default=(256, 512), help="NXxNY (default 256x512)")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--png", type=Path, help="also render the picture with matplotlib")
    _add_function_args(p)

    p = sub.add_parser("certify", help="structural conditions for the sequence of a zero list")
    p.add_argument("--zeros", type=Path, required=True)
    p.add_argument("--c", type=float, required=True, help="strip bound for |Im alpha|")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("verify-asymptotics", help="truncation error of the zero-sum expansion")
    p.add_argument("--x-grid", type=_floats, default=[10.0, 20.0, 40.0, 80.0])
    p.add_argument("--terms", type=int, default=4, help="largest truncation order N")
    p.add_argument("--png", type=Path)

    p = sub.add_parser("theta", help="theta sum over zeta ordinates and its small-x residuals")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--ordinates", type=Path, help="ordinate file (default: bundled list)")
    p.add_argument("--orders", type=int, default=3, help="residual orders 0..K")

    p = sub.add_parser("zeta-ordinates", help="compute ordinates of zeta zeros on the critical line")
    p.add_argument("--count", type=int, default=10000)
    p.add_argument("--out", type=Path)
    return parser


def _emit(text: str, out: Path | None, stdout) -> None:
    if out is None:
        stdout.write(text)
    else:
        out.write_text(text)


def _slope(xs, ys) -> float:
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def _run(args, stdout) -> int:
    cmd = args.command
    if cmd == "construct":
        f = construct_selfdual(args.n, args.t)
        _emit(io.measure_to_text(measure_from_function(f, args.n)), args.out, stdout)
        return 0

    if cmd == "zeta-m":
        f = build_zeta_M()
        stdout.write(io.combination_to_text(f))
        if args.head is not None:
            stdout.write(io.head_to_text(dirichlet_head(f, args.head)))
        return 0

    if cmd == "eval":
        f = _function(args)
        if args.derivative:
            v, d = f.value_and_derivative(args.s)
            stdout.write(f"{io.fmt(v.real)} {io.fmt(v.imag)} {io.fmt(d.real)} {io.fmt(d.imag)}\n")
        else:
            v = f(args.s)
            stdout.write(f"{io.fmt(v.real)} {io.fmt(v.imag)}\n")
        return 0

    if cmd == "sigma0":
        f = _function(args)
        val = sigma0(f, tol=args.tol, precision=args.precision)
        stdout.write((val.to_string(22) if args.precision == "extended" else io.fmt(val)) + "\n")
        return 0

    if cmd == "zeros":
        f = _function(args)
        zeros = isolate_zeros(f, args.rect, tol=args.tol, max_depth=args.max_depth)
        poles = [p for p in f.poles if args.rect.strictly_contains(p)]
        _emit(io.zeros_to_text(zeros, poles), args.out, stdout)
        return 0

    if cmd == "xray":
        from .xray import render_svg, sample_grid

        f = _function(args)
        grid = sample_grid(f, args.rect, args.resolution)
        args.out.write_text(render_svg(grid, f.poles, title=f.label))
        if args.png is not None:
            from .plotting import xray_png

            xray_png(grid, args.png, f.poles, title=f.label)
        return 0

    if cmd == "certify":
        zeros, _ = io.zeros_from_text(args.zeros.read_text())
        seq = zeros_to_sequence(zeros)
        report = check_structure(seq, args.c)
        _emit(io.report_to_text(report, str(args.zeros)), args.out, stdout)
        return 0 if report.passed else 1

    if cmd == "verify-asymptotics":
        xs = np.array(sorted(args.x_grid))
        rows, ok = [], True
        stdout.write("# N,x,scaled_error\n")
        for n in range(args.terms + 1):
            errs = np.array([abs(zeta_zero_sum_oracle(x) - expansion_main(x, n).real) * x ** (n + 1) for x in xs])
            for x, e in zip(xs, errs):
                rows.append((n, float(x), float(e)))
                stdout.write(f"{n},{io.fmt(x)},{io.fmt(e)}\n")
            slope = _slope(xs, errs) if np.all(errs > 0) else math.nan
            good = math.isfinite(slope) and abs(slope) <= SLOPE_LIMIT
            ok &= good
            stdout.write(f"# N={n} slope={slope:.4f} {'ok' if good else 'FAIL'}\n")
        if args.png is not None:
            from .plotting import asymptotics_png

            asymptotics_png(rows, args.png)
        return 0 if ok else 1

    if cmd == "theta":
        seq = io.load_ordinates(args.ordinates) if args.ordinates else io.load_bundled_ordinates()
        value = theta_sum(seq, args.x)
        stdout.write(f"theta,{io.fmt(value.real)},{io.fmt(value.imag)}\n")
        stdout.write(f"tail_bound,{io.fmt(theta_tail_bound(seq, args.x))}\n")
        for n in range(args.orders + 1):
            stdout.write(f"residual_{n},{io.fmt(smallx_residual(seq, args.x, n))}\n")
        return 0

    if cmd == "zeta-ordinates":
        _emit(io.ordinates_to_text(zeta_ordinates(args.count)), args.out, stdout)
        return 0
    raise UsageError(f"unknown command {cmd}")


def _join_values(argv: list[str]) -> list[str]:
    """Attach values such as '-21,22,-10,80' to their option so they are not read as flags."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in VALUE_OPTIONS and i + 1 < len(argv):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_values(argv))
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return _run(args, stdout)
    except (DocumentError, FileNotFoundError, IsADirectoryError) as exc:
        stderr.write(f"crystalzeta: {exc}\n")
        return 2
    except CrystalZetaError as exc:
        stderr.write(f"crystalzeta: {type(exc).__name__}: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
