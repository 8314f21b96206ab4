"""Command-line front end: ``krein {validate,spectrum,green,qcheck} CONFIG``.

Exit codes: 0 success, 1 computation or validation failure, 2 operation not
supported for the model kind, 3 I/O or parse error.
"""

import argparse
import csv
import sys

import numpy as np

from . import linrel
from ._numerics import RANK_RTOL, ROOT_RTOL
from .config import ConfigError, ConfigParseError, load_config
from .core import InSpectrumError, eigenvalue_scan, q_identity_residual
from .point import PointModel, build_pair, green_function
from .robin import RobinProblem, robin_bound_states, robin_pair

EXIT_OK, EXIT_FAIL, EXIT_UNSUPPORTED, EXIT_IO = 0, 1, 2, 3
QCHECK_MAX_RESIDUAL = 1e-5


class CommandError(Exception):
    def __init__(self, message, code=EXIT_FAIL):
        super().__init__(message)
        self.code = code


def fmt(value):
    return format(float(value), ".12g")


def _write_csv(path, header, rows):
    if path in (None, "-"):
        _emit_csv(sys.stdout, header, rows)
        return
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            _emit_csv(fh, header, rows)
    except OSError as exc:
        raise CommandError(f"cannot write {path}: {exc.strerror}", EXIT_IO) from exc


def _emit_csv(fh, header, rows):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _pair_for(model):
    if isinstance(model, PointModel):
        return build_pair(model)
    return robin_pair(model)


def cmd_validate(args):
    model = load_config(args.config)
    pair = _pair_for(model)
    check = linrel.check_pair(pair, rtol=args.rank_tol)
    normalized = linrel.is_normalized(pair, args.rank_tol)
    print(f"model: {model!r}" if isinstance(model, PointModel) else
          f"model: robin half-plane, period {fmt(model.period)}, {model.grid_size} samples")
    print(f"bg1 (A B^H = B A^H): {'pass' if check.bg1 else 'FAIL'}")
    print(f"bg2 (ker M^(A,B) = 0): {'pass' if check.bg2 else 'FAIL'}")
    if check.selfadjoint:
        U = linrel.cayley_transform(linrel.relation_from_pair(pair, args.rank_tol))
        err = np.linalg.norm(U.conj().T @ U - np.eye(U.shape[0]), 2)
        print(f"Cayley transform unitarity residual: {err:.3e}")
    print(f"self-adjoint: {'yes' if check.selfadjoint else 'no'}; "
          f"normalized encoding: {'yes' if normalized else 'no'}")
    return EXIT_OK if check.selfadjoint else EXIT_FAIL


def cmd_spectrum(args):
    model = load_config(args.config)
    if not args.zmin < args.zmax < 0:
        raise CommandError(f"invalid range: need zmin < zmax < 0, got [{args.zmin}, {args.zmax}]")
    if isinstance(model, RobinProblem):
        found = robin_bound_states(model, args.zmin, args.zmax, args.grid, args.tol, args.threshold)
    else:
        found = eigenvalue_scan(
            model, build_pair(model), args.zmin, args.zmax, args.grid, args.tol, args.threshold
        )
    rows = [
        (fmt(r.eigenvalue), fmt(r.indicator_residual), r.multiplicity)
        for r in sorted(found, key=lambda r: r.eigenvalue)
    ]
    _write_csv(args.out, ["z", "indicator_residual", "multiplicity"], rows)
    return EXIT_OK


def _require_point_model(model, command):
    if not isinstance(model, PointModel):
        raise CommandError(
            f"'{command}' is unsupported for robin_halfspace models: "
            "no Gamma-field kernel is available", EXIT_UNSUPPORTED
        )


def cmd_green(args):
    model = load_config(args.config)
    _require_point_model(model, "green")
    if args.samples < 1:
        raise CommandError("--samples must be at least 1")
    xs = np.linspace(args.xmin, args.xmax, args.samples)
    try:
        values = green_function(model, build_pair(model), xs, args.y, args.z, args.threshold)
    except InSpectrumError as exc:
        raise CommandError(f"refusing to tabulate: {exc}") from exc
    rows = [(fmt(x), fmt(g.real), fmt(g.imag)) for x, g in zip(xs, values)]
    _write_csv(args.out, ["x", "re_G", "im_G"], rows)
    return EXIT_OK


def cmd_qcheck(args):
    model = load_config(args.config)
    _require_point_model(model, "qcheck")
    residual = q_identity_residual(model, args.z, args.zeta)
    ok = residual <= args.max_residual
    print(f"Q(z) - Q(zeta)^H - (z - conj(zeta)) gamma*(zeta) gamma(z): residual {residual:.3e} "
          f"({'pass' if ok else 'FAIL'}, limit {args.max_residual:.1e})")
    return EXIT_OK if ok else EXIT_FAIL


def _complex(text):
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(
        prog="krein", description="Self-adjoint extensions via boundary triples and Krein's formula"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check that the boundary conditions are self-adjoint")
    p.add_argument("config")
    p.add_argument("--rank-tol", type=float, default=RANK_RTOL)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("spectrum", help="negative eigenvalues as CSV")
    p.add_argument("config")
    p.add_argument("--zmin", type=float, default=-10.0)
    p.add_argument("--zmax", type=float, default=-0.01)
    p.add_argument("--grid", type=int, default=2000)
    p.add_argument("--tol", type=float, default=1e-12, help="bracket width of the refinement")
    p.add_argument("--threshold", type=float, default=ROOT_RTOL,
                   help="relative indicator level accepted as a root")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("green", help="tabulate G(x, y; z) along x as CSV")
    p.add_argument("config")
    p.add_argument("--z", type=_complex, required=True,
                   help="spectral parameter; write complex values as --z=-1+0.5j")
    p.add_argument("--xmin", type=float, default=-5.0)
    p.add_argument("--xmax", type=float, default=5.0)
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--y", type=float, default=0.0)
    p.add_argument("--threshold", type=float, default=ROOT_RTOL)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_green)

    p = sub.add_parser("qcheck", help="check the Q-function identity by quadrature")
    p.add_argument("config")
    p.add_argument("--z", type=_complex, default=-1.0)
    p.add_argument("--zeta", type=_complex, default=-4.0)
    p.add_argument("--max-residual", type=float, default=QCHECK_MAX_RESIDUAL)
    p.set_defaults(func=cmd_qcheck)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
