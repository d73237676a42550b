"""Command-line front end.

Subcommands: constants, na, density, ode-check, gram, lemma2, embed-check,
report.  Exit codes: 0 all checks pass, 1 any check failure or runtime
error, 2 usage error.  Output goes to stdout or --output; identical
invocations are byte-identical apart from the runtime_ms field.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .constants import (
    HarmonicParams,
    NACatalogEntry,
    density_exponents,
    derive_spectral_constants,
)
from .density import IntegrationConfig, default_residual_grid, density_table_csv
from .gram import RANK_RTOL
from .report import (
    constants_report,
    embed_report,
    full_report,
    gram_report,
    lemma2_report,
    na_report,
    ode_report,
)


class UsageError(Exception):
    """Bad flag combination or value; maps to exit code 2."""


def parse_rational(text: str) -> Fraction:
    """Exact rational from 'a/b' or a decimal string; decimals convert exactly."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmonic-embed",
        description=(
            "Derive and verify the spectral constants, volume density, radial "
            "eigenfunction equation and distance-kernel embedding identities "
            "of cosh r + c harmonic spaces."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--output", help="write the result here instead of stdout")
        sp.add_argument(
            "--format",
            choices=["json", "csv", "text"],
            default=None,
            help="output format (default json; density defaults to csv)",
        )

    def nk(sp):
        sp.add_argument("--n", type=int, default=4, help="dimension (default 4)")
        sp.add_argument(
            "--k", type=parse_rational, default=Fraction(3, 2),
            help="Einstein constant, Ricci = -k; 'a/b' or decimal (default 3/2)",
        )

    sp = sub.add_parser("constants", help="derive the constant chain and adjudicate the sign variant")
    nk(sp)
    common(sp)

    sp = sub.add_parser("na", help="NA catalog: n, k and integrality of b")
    sp.add_argument("--p", type=int, help="horizontal-space dimension (with --q)")
    sp.add_argument("--q", type=int, help="center dimension (with --p)")
    common(sp)

    sp = sub.add_parser("density", help="emit the volume density table as CSV")
    nk(sp)
    sp.add_argument("--r-max", type=float, default=8.0, help="last radius (default 8)")
    sp.add_argument("--step", type=float, default=0.05, help="grid step (default 0.05)")
    common(sp)

    sp = sub.add_parser("ode-check", help="series oracle, eigenfunction residual, integration")
    nk(sp)
    sp.add_argument("--step", type=float, default=1e-3)
    sp.add_argument("--r-max", type=float, default=8.0)
    sp.add_argument("--switch-radius", type=float, default=0.5)
    sp.add_argument("--series-order", type=int, default=12)
    common(sp)

    sp = sub.add_parser("gram", help="kernel matrix rank/signature analysis")
    nk(sp)
    sp.add_argument("--model", choices=["line", "hyperboloid"], default="line")
    sp.add_argument("--points", type=int, default=40)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--radius", type=float, default=3.0)
    sp.add_argument(
        "--c-override", type=parse_rational, default=None,
        help="kernel constant c (default: derived c for n, k)",
    )
    sp.add_argument("--tolerance", type=float, default=RANK_RTOL, help="relative zero cut")
    common(sp)

    sp = sub.add_parser("lemma2", help="3x3 cosh/sinh/constant system for a parameter triple")
    sp.add_argument(
        "--s", type=float, nargs=3, default=[-1.0, 0.0, 1.0], metavar=("S1", "S2", "S3")
    )
    common(sp)

    sp = sub.add_parser("embed-check", help="embedding identities by finite differences")
    sp.add_argument("--n", type=int, default=3, help="model dimension (default 3)")
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--h", type=float, default=1e-3)
    sp.add_argument("--radius", type=float, default=3.0)
    common(sp)

    sp = sub.add_parser("report", help="run the full fixed check list")
    nk(sp)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--points", type=int, default=40)
    sp.add_argument("--radius", type=float, default=3.0)
    sp.add_argument("--h", type=float, default=1e-3)
    common(sp)

    return parser


def _params(args) -> HarmonicParams:
    try:
        return HarmonicParams(args.n, args.k)
    except ValueError as exc:
        raise UsageError(f"--n/--k: {exc}") from exc


def _run(args) -> tuple[str, bool]:
    """Dispatch to the command; returns (rendered output, all checks passed)."""
    fmt = args.format
    if args.command == "density":
        if fmt not in (None, "csv"):
            raise UsageError("--format: density emits csv only")
        if args.step <= 0:
            raise UsageError("--step: must be > 0 (the grid excludes r = 0)")
        if args.r_max <= 0:
            raise UsageError("--r-max: must be > 0")
        params = _params(args)
        exps = density_exponents(params, derive_spectral_constants(params))
        grid = default_residual_grid(args.r_max, args.step)
        return density_table_csv(exps, grid), True

    if fmt == "csv":
        raise UsageError("--format: csv applies to the density command only")

    if args.command == "constants":
        report = constants_report(_params(args))
    elif args.command == "na":
        if (args.p is None) != (args.q is None):
            raise UsageError("--p/--q: give both or neither")
        if args.p is None:
            report = na_report()
        else:
            if args.p < 1 or args.q < 1:
                raise UsageError("--p/--q: must be >= 1")
            report = na_report((NACatalogEntry(f"NA({args.p},{args.q})", args.p, args.q),))
    elif args.command == "ode-check":
        try:
            config = IntegrationConfig(
                series_order=args.series_order,
                switch_radius=args.switch_radius,
                step=args.step,
                r_max=args.r_max,
            )
        except ValueError as exc:
            raise UsageError(f"--step/--r-max/--switch-radius/--series-order: {exc}") from exc
        report = ode_report(_params(args), config)
    elif args.command == "gram":
        params = _params(args)
        if args.points < 1:
            raise UsageError("--points: must be >= 1")
        c = args.c_override if args.c_override is not None else derive_spectral_constants(params).c
        report = gram_report(
            model=args.model,
            n=params.n,
            points=args.points,
            seed=args.seed,
            radius=args.radius,
            c=float(c),
            tolerance=args.tolerance,
        )
    elif args.command == "lemma2":
        report = lemma2_report(tuple(args.s))
    elif args.command == "embed-check":
        if args.n < 2:
            raise UsageError("--n: must be >= 2")
        report = embed_report(n=args.n, seed=args.seed, h=args.h, radius=args.radius)
    elif args.command == "report":
        report = full_report(
            _params(args), seed=args.seed, points=args.points, radius=args.radius, h=args.h
        )
    else:  # unreachable behind argparse
        raise UsageError(f"unknown command {args.command!r}")

    rendered = report.to_text() if fmt == "text" else report.to_json()
    return rendered, report.passed


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 itself on malformed flags
    try:
        rendered, passed = _run(args)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(rendered)
        else:
            sys.stdout.write(rendered)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # operational failure: unwritable output, blow-up, ...
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
