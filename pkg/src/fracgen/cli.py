"""Command-line front end.

Exit codes: 0 success, 1 domain or verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import __version__
from .coeffgen import BetaVector, GeneratorSpec, generate
from .exactnum import format_rational, parse_rational
from .operator import OffGridError, estimate_order
from .stencil import integer_stencil, render_stencil
from .verify import InconsistentGeneratorError, verify_beta, verify_order
from .weights import DegenerateGeneratorError, miller_weights

log = logging.getLogger("fracgen")

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common(sub: argparse.ArgumentParser, fmt_choices, fmt_default, need_spec=True):
    if need_spec:
        sub.add_argument("--alpha", type=_rational, required=True, help="derivative order")
        sub.add_argument("--p", type=int, required=True, help="approximation order")
        sub.add_argument("--r", type=_rational, default=Fraction(0), help="shift")
    sub.add_argument("--format", choices=fmt_choices, default=fmt_default)
    sub.add_argument("--out", default="-", help="output path ('-' for stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracgen",
        description="Shifted Grünwald generators, weights and finite-difference stencils.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--verbose", action="store_true", help="log run metadata to stderr")
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("coeffs", help="generator polynomial coefficients")
    _common(s, ("json", "text"), "json")

    s = subs.add_parser("weights", help="Grünwald weights w_0..w_M")
    _common(s, ("csv", "json"), "csv")
    s.add_argument("--M", type=int, default=16, help="last weight index")

    s = subs.add_parser("verify", help="formal order check of a generator")
    s.add_argument("--alpha", type=_rational)
    s.add_argument("--p", type=int)
    s.add_argument("--r", type=_rational)
    s.add_argument("--beta-file", help="check coefficients from a JSON file instead")
    s.add_argument("--K", type=int, help="series truncation order (default p + 4)")
    _common(s, ("json", "text"), "json", need_spec=False)

    s = subs.add_parser("converge", help="empirical convergence order on a power function")
    _common(s, ("csv", "json"), "csv")
    s.add_argument("--mu", type=float, default=8.0, help="exponent of the test function")
    s.add_argument("--x0", type=float, default=1.0, help="evaluation point")
    s.add_argument("--b", type=float, default=2.0, help="right end of [0, b]")
    s.add_argument("--h-start", type=float, default=2.0**-4)
    s.add_argument("--h-count", type=int, default=6, help="number of halvings of h")
    s.add_argument("--side", choices=("left", "right"), default="left")

    s = subs.add_parser("stencil", help="integer-order finite-difference stencil")
    s.add_argument("--n", type=int, required=True, help="derivative order")
    s.add_argument("--p", type=int, required=True, help="accuracy order")
    s.add_argument("--r", type=_rational, default=Fraction(0), help="shift")
    _common(s, ("text", "json"), "text", need_spec=False)
    return parser


def _spec(args) -> GeneratorSpec:
    if args.alpha is None or args.p is None:
        raise UsageError("--alpha and --p are required")
    try:
        return GeneratorSpec(args.alpha, args.p, args.r if args.r is not None else 0)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def cmd_coeffs(args) -> tuple[int, str]:
    b = generate(_spec(args))
    if args.format == "json":
        return EXIT_OK, b.to_json() + "\n"
    lines = [f"lambda = {format_rational(b.lam)}"]
    lines += [f"beta_{j} = {format_rational(x)}" for j, x in enumerate(b.betas)]
    if b.degenerate:
        lines.append("warning: beta_0 = 0, weights cannot be expanded")
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_weights(args) -> tuple[int, str]:
    spec = _spec(args)
    if args.M < 0:
        raise UsageError("--M must be non-negative")
    w = miller_weights(generate(spec), spec.alpha, args.M)
    if args.format == "csv":
        return EXIT_OK, w.to_csv()
    data = {
        "alpha": format_rational(spec.alpha),
        "p": spec.p,
        "r": format_rational(spec.r),
        "M": w.M,
        "weights": [float(x) for x in w],
    }
    return EXIT_OK, json.dumps(data) + "\n"


def cmd_verify(args) -> tuple[int, str]:
    if args.beta_file:
        try:
            with open(args.beta_file) as fh:
                data = json.load(fh)
            b = BetaVector.from_dict(data)
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read {args.beta_file}: {exc}") from None
        alpha = args.alpha if args.alpha is not None else data.get("alpha")
        r = args.r if args.r is not None else data.get("r", "0")
        if alpha is None:
            raise UsageError("alpha must come from --alpha or the beta file")
        alpha, r = parse_rational(alpha), parse_rational(r)
        if not alpha > 0:
            raise UsageError("alpha must be positive")
        report = verify_beta(b.betas, alpha, r, args.K)
        p = b.p
    else:
        spec = _spec(args)
        if args.K is not None and args.K < spec.p + 2:
            raise UsageError(f"--K must be at least p + 2 = {spec.p + 2}")
        report = verify_order(spec, args.K)
        p = spec.p
    code = EXIT_OK if report.confirmed_order >= p else EXIT_DOMAIN
    if args.format == "json":
        return code, report.to_json() + "\n"
    text = (
        f"confirmed order {report.confirmed_order} (requested {p})\n"
        f"leading coefficient a_{p} = {format_rational(report.leading_coeff)}\n"
    )
    return code, text


def cmd_converge(args) -> tuple[int, str]:
    spec = _spec(args)
    if args.h_count < 4 or not args.h_start > 0:
        raise UsageError("need --h-count >= 4 and a positive --h-start")
    hs = [args.h_start / 2**i for i in range(args.h_count)]
    table = estimate_order(spec, args.mu, args.x0, hs, b=args.b, side=args.side)
    if args.format == "csv":
        return EXIT_OK, table.to_csv()
    data = {
        "rows": [
            {"h": r.h, "approx": r.approx, "exact": r.exact, "error": r.abs_error,
             "at_floor": r.at_floor}
            for r in table.rows
        ],
        "slope": table.slope,
        "residual": table.residual,
    }
    return EXIT_OK, json.dumps(data) + "\n"


def cmd_stencil(args) -> tuple[int, str]:
    if args.n < 1 or args.p < 1:
        raise UsageError("need --n >= 1 and --p >= 1")
    s = integer_stencil(args.n, args.p, args.r)
    return EXIT_OK, render_stencil(s, args.format) + "\n"


COMMANDS = {
    "coeffs": cmd_coeffs,
    "weights": cmd_weights,
    "verify": cmd_verify,
    "converge": cmd_converge,
    "stencil": cmd_stencil,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(asctime)s %(name)s: %(message)s"))
    log.handlers[:] = [handler]
    log.propagate = False
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    log.info("fracgen %s: %s", __version__, " ".join(sys.argv[1:] if argv is None else argv))
    try:
        code, output = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"fracgen {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (
        DegenerateGeneratorError,
        InconsistentGeneratorError,
        OffGridError,
        OverflowError,
        ValueError,
        ZeroDivisionError,
    ) as exc:
        print(f"fracgen {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.out == "-":
        sys.stdout.write(output)
    else:
        with open(args.out, "w") as fh:
            fh.write(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
