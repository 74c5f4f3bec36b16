"""sgbounds: evaluate, scan and plot the Gautschi and Stirling mismatch bounds

Exit status: 0 on success, 1 when a scan finds a violation (or a check
fails), 2 on usage errors, domain errors and unwritable output paths.
"""

import argparse
import logging
import os
import sys
import textwrap

import toml
from traitlets import TraitError
from traitlets.config import Config

from . import __version__, bounds, identities, reference
from .bounds import BoundId
from .core import DomainError, InterpPoint
from .figures import FigureBuilder, FigureId
from .identities import TailPolicy
from .sg_utils import format_float, load_config, write_csv
from .verify import Conjecture, GridScanner, GridSpec

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

SCAN_TARGETS = (
    "conjecture1",
    "conjecture2",
    "proofsteps",
    "asymptotics",
    "concavity",
    "widths",
)


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma separated numbers, got {text!r}"
        )


def _print_enclosure(label, enclosure, ref=None):
    print(f"{label}")
    print(f"  enclosure: [{format_float(enclosure.lo)}, {format_float(enclosure.hi)}]")
    print(f"  midpoint:  {format_float(enclosure.midpoint())}")
    print(f"  width:     {format_float(enclosure.width())}")
    if not enclosure.width_met:
        print("  (requested width not met within the period cap)")
    if ref is not None:
        print(f"  reference: {format_float(ref)}")


def _require(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise DomainError(f"{args.function} needs {' and '.join(missing)}")


def cmd_eval(args):
    policy = TailPolicy(args.width)
    f = args.function
    if f == "iota":
        _require(args, "x", "alpha")
        p = InterpPoint(args.x, args.alpha)
        ref = reference.mismatch_ref(reference.MismatchKind.iota(), p)
        _print_enclosure(
            f"iota({args.x:g}, {args.alpha:g})", identities.iota_enclosure(p, policy), ref
        )
    elif f == "m":
        _require(args, "d", "x")
        enclosure = identities.m_enclosure(
            args.d, args.x, policy, cross_check=args.cross_check
        )
        ref = reference.mismatch_ref(reference.MismatchKind.m(args.d), args.x)
        _print_enclosure(f"m_{args.d:g}({args.x:g})", enclosure, ref)
    elif f == "mhat":
        _require(args, "d", "x", "alpha")
        p = InterpPoint(args.x, args.alpha)
        ref = reference.mismatch_ref(reference.MismatchKind.mhat(args.d), p)
        _print_enclosure(
            f"mhat_{args.d:g}({args.x:g}, {args.alpha:g})",
            identities.mhat_enclosure(args.d, p, policy),
            ref,
        )
    elif f == "pi":
        _require(args, "x")
        enclosure = identities.pi_enclosure(args.x, args.width)
        _print_enclosure(f"log Pi({args.x:g})", enclosure, reference.log_pi_fn(args.x))
        exp = enclosure.exp()
        print(f"  Pi enclosure: [{format_float(exp.lo)}, {format_float(exp.hi)}]")
    elif f == "lgamma":
        _require(args, "x")
        print(f"log Gamma({args.x:g})")
        print(f"  reference: {format_float(reference.lgamma_ref(args.x))}")
        if args.x >= 1:
            enclosure = identities.pi_enclosure(args.x - 1.0, args.width)
            print(
                f"  enclosure: [{format_float(enclosure.lo)}, {format_float(enclosure.hi)}]"
            )
    elif f == "factorial-hat":
        _require(args, "x")
        _print_enclosure(
            f"log {args.x:g}!^",
            identities.factorial_hat_enclosure(args.x, args.width),
            reference.log_factorial_hat(args.x),
        )
    elif f == "bound":
        if args.name is None:
            raise DomainError("eval bound needs a bound name")
        bound = BoundId.parse(args.name)
        x = args.x if args.x is not None else args.y
        if x is None:
            raise DomainError("eval bound needs --x or --y")
        alpha = args.alpha if args.alpha is not None else 0.0
        term = bound.evaluate(x, alpha, args.d)
        shift = f", d={args.d:g}" if args.d is not None else ""
        print(f"{bound.value} at x={x:g}, alpha={alpha:g}{shift}")
        print(f"  value: {format_float(term.value)}")
        print(f"  slack: {format_float(term.slack)}")
        print(f"  side: {bound.side.value}, provenance: {bound.provenance.value}")
    return EXIT_OK


def _scanner(args):
    config = load_config(args.config) if args.config else Config()
    kwargs = {}
    if args.tol is not None:
        kwargs["tolerance"] = args.tol
    if args.width is not None:
        kwargs["target_width"] = args.width
    if args.workers is not None:
        kwargs["workers"] = args.workers
    return GridScanner(config=config, **kwargs)


def _grid(args, grid):
    changes = {}
    if args.xmin is not None:
        changes["x_lo"] = args.xmin
    if args.xmax is not None:
        changes["x_hi"] = args.xmax
    if args.step is not None:
        changes["x_step"] = args.step
    if args.alpha_samples is not None:
        changes["alpha_samples"] = args.alpha_samples
    if args.d_list is not None:
        changes["d_list"] = args.d_list
    return grid.replace(**changes) if changes else grid


def _ensure_parent(path):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)


def cmd_scan(args):
    scanner = _scanner(args)
    target = args.target

    if target == "proofsteps":
        grid = None
        if _has_grid_flags(args):
            base = GridSpec(0.0, 20.0, 1.0 / 128.0, scanner.alpha_samples, ())
            grid = _grid(args, base)
        reports = scanner.scan_proofsteps(grid)
        out_dir = args.out or "reports"
        os.makedirs(out_dir, exist_ok=True)
        for report in reports:
            report.persist(os.path.join(out_dir, f"{report.name}.csv"))
            print(report.summary())
        return EXIT_OK if all(r.ok for r in reports) else EXIT_VIOLATION

    if target == "asymptotics":
        x_list = args.x_list or [1.0, 10.0, 100.0, 1000.0]
        table = scanner.scan_asymptotics(args.d_list, x_list)
        out = args.out or os.path.join("reports", "asymptotics.csv")
        _ensure_parent(out)
        write_csv(out, list(table.header), table.to_rows())
        print(",".join(table.header))
        for row in table.to_rows():
            print(",".join(f"{v:.6e}" for v in row))
        failing = table.decays()
        if failing:
            print("no monotone decay: " + ", ".join(failing))
            return EXIT_VIOLATION
        return EXIT_OK

    if target == "concavity":
        checks = scanner.scan_concavity(args.x_list or [0.0, 0.5, 1.0, 2.0, 5.0, 10.0])
        for check in checks:
            status = "ok" if check.ok else "FAILED"
            print(
                f"x={check.x:g}: concave={check.concave}, argmax alpha={check.argmax_alpha:g},"
                f" argmin alpha={check.argmin_alpha:g} {status}"
            )
        return EXIT_OK if all(c.ok for c in checks) else EXIT_VIOLATION

    if target == "widths":
        for row in scanner.width_comparison(args.x_list or [1.0, 10.0, 100.0]):
            print(
                f"x={row.x:g}: bbe11 width {row.bbe11_width:.6e},"
                f" burnside width {row.half_width:.6e}, ratio {row.ratio:.4f}"
            )
        return EXIT_OK

    if target in ("conjecture1", "conjecture2"):
        which = Conjecture(target)
        report = scanner.scan_conjecture(
            which, _grid(args, which.default_grid(scanner.alpha_samples))
        )
    else:
        bound = BoundId.parse(target)
        report = scanner.scan_bound(bound, _grid(args, scanner.default_grid(bound)))

    out = args.out or os.path.join("reports", f"{report.name}.csv")
    _ensure_parent(out)
    report.persist(out)
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_VIOLATION


def _has_grid_flags(args):
    return any(
        getattr(args, name) is not None
        for name in ("xmin", "xmax", "step", "alpha_samples")
    )


def cmd_figure(args):
    config = load_config(args.config) if args.config else Config()
    builder = FigureBuilder(config=config)
    if args.figure_id == "all":
        if args.out:
            builder.out_dir = args.out
        paths = builder.write_all(args.format)
    else:
        paths = [builder.write(args.figure_id, args.format, args.out)]
    for path in paths:
        print(path)
    return EXIT_OK


def cmd_bounds(args):
    rows = bounds.bound_table()
    if args.format == "toml":
        print(toml.dumps({"bounds": rows}), end="")
        return EXIT_OK
    for row in rows:
        print(
            f"{row['name']:<28} {row['target']:<9} {row['side']:<6}"
            f" {row['provenance']:<12} {row['formula']}  [{row['domain']}]"
        )
    return EXIT_OK


def _add_grid_arguments(parser):
    parser.add_argument("--xmin", type=float, help="Left end of the abscissa range.")
    parser.add_argument("--xmax", type=float, help="Right end of the abscissa range.")
    parser.add_argument("--step", type=float, help="Abscissa step.")
    parser.add_argument(
        "--alpha-samples",
        dest="alpha_samples",
        type=int,
        help="Number of alpha samples in [0, 1], both ends included.",
    )
    parser.add_argument(
        "--d",
        dest="d_list",
        type=_float_list,
        help="Comma separated shifts d for bounds that hold for every d.",
    )
    parser.add_argument(
        "--x-list",
        dest="x_list",
        type=_float_list,
        help="Comma separated abscissae for asymptotics, concavity and widths.",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sgbounds",
        description="Certified Gautschi, Stirling and Stirling-Gautschi mismatch bounds",
        epilog=textwrap.dedent(
            """\
            Exit status:
            - 0: success
            - 1: a scan found a violation or a check failed
            - 2: usage error, domain error or unwritable output
            The SG_TOL environment variable overrides the default scan tolerance.
            """
        ),
        formatter_class=argparse.RawTextHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--log-level",
        dest="log_level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level (default: %(default)s).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser(
        "eval",
        help="Evaluate one function or bound",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    p_eval.add_argument(
        "function",
        choices=["iota", "m", "mhat", "pi", "lgamma", "factorial-hat", "bound"],
    )
    p_eval.add_argument("name", nargs="?", help="Bound name, for `eval bound`.")
    p_eval.add_argument("--x", type=float)
    p_eval.add_argument("--y", type=float, help="x + alpha, for bounds stated in y.")
    p_eval.add_argument("--alpha", type=float)
    p_eval.add_argument("--d", type=float)
    p_eval.add_argument(
        "--width",
        type=float,
        default=1e-10,
        help=textwrap.dedent(
            """\
            Requested enclosure width.
            Defaults to:
            --- %(default)s ---
            """
        ),
    )
    p_eval.add_argument(
        "--cross-check",
        dest="cross_check",
        action="store_true",
        help="Also compute m_d through the floor-integral decomposition.",
    )
    p_eval.set_defaults(handler=cmd_eval)

    p_scan = sub.add_parser(
        "scan",
        help="Scan a bound, a conjecture or the proof steps over a grid",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    p_scan.add_argument(
        "target",
        help=textwrap.dedent(
            """\
            A bound name (see `sgbounds bounds list`) or one of:
            """
        )
        + "\n".join(f"- {t}" for t in SCAN_TARGETS),
    )
    _add_grid_arguments(p_scan)
    p_scan.add_argument("--tol", type=float, help="Margin tolerance.")
    p_scan.add_argument("--width", type=float, help="Requested enclosure width.")
    p_scan.add_argument("--workers", type=int, help="Evaluation threads.")
    p_scan.add_argument(
        "--out",
        help=textwrap.dedent(
            """\
            CSV report path; a TOML summary is written next to it.
            For proofsteps this is a directory.
            Defaults to ./reports/<target>.csv
            """
        ),
    )
    p_scan.add_argument("--config", help="TOML configuration file.")
    p_scan.set_defaults(handler=cmd_scan)

    p_figure = sub.add_parser("figure", help="Emit the data of a comparison figure")
    p_figure.add_argument(
        "figure_id",
        help="One of: " + ", ".join(f.value for f in FigureId) + ", or all",
    )
    p_figure.add_argument("--format", choices=["csv", "svg"], default="csv")
    p_figure.add_argument(
        "--out",
        help="Output path (a directory for `all`); defaults to ./figures/<id>.<ext>",
    )
    p_figure.add_argument("--config", help="TOML configuration file.")
    p_figure.set_defaults(handler=cmd_figure)

    p_bounds = sub.add_parser("bounds", help="Inspect the bound catalog")
    p_bounds.add_argument("action", choices=["list"])
    p_bounds.add_argument("--format", choices=["text", "toml"], default="text")
    p_bounds.set_defaults(handler=cmd_bounds)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="[%(levelname)s %(name)s] %(message)s",
    )
    try:
        return args.handler(args)
    except (ValueError, TraitError) as e:
        print(f"sgbounds: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"sgbounds: error: cannot write output: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
