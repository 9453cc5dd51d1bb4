"""
Command-line interface.

Exit codes: 0 on success, 1 on input/output or usage errors, 2 when the budget k is too
small for the criterion, 3 when a design fails verification.
"""

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from eigendesign.criteria import resolve
from eigendesign.designer import optimal_design, verify_design
from eigendesign.documents import DesignDocument, read_matrix
from eigendesign.linalg import gram
from eigendesign.svg import Design2DPlot
from eigendesign.utils.common import fmt
from eigendesign.utils.errors import BadRange, DesignError, InfeasibleBudget, MatrixFormatError
from eigendesign.utils.logger import logger
from eigendesign.utils.rng import default_seed

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_CERTIFICATE = 3
GAP_TOL = 1e-6


class UsageError(ValueError):
    """Bad command-line arguments."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_prior(text):
    """
    Parse ``"x0a,x0b;x1a,x1b;..."`` into an n×2 array of prior points.

    Examples
    --------

    >>> parse_prior("1,0;0.5,0.5")
    array([[1. , 0. ],
           [0.5, 0.5]])
    >>> parse_prior("").shape
    (0, 2)
    """
    points = []
    for i, chunk in enumerate(text.split(";"), start=1):
        if not chunk.strip():
            continue
        cells = chunk.split(",")
        if len(cells) != 2:
            raise MatrixFormatError(f"Prior point {chunk.strip()!r} must have two coordinates", row=i)
        try:
            points.append([float(c) for c in cells])
        except ValueError:
            raise MatrixFormatError(f"Prior point {chunk.strip()!r} is not numeric", row=i) from None
    return np.array(points, dtype=float).reshape(-1, 2)


def _print_result(result):
    print(f"d={result.d} k={result.k} criterion={result.criterion}")
    print(f"objective={fmt(result.objective)} lower_bound={fmt(result.lower_bound)} s_star={fmt(result.s_star)}")
    print("eigenvalues_after=" + ",".join(fmt(v) for v in result.eigenvalues_after))


def cmd_design(args):
    """Compute an optimal design for the prior in ``--input`` and write it as JSON."""
    a = read_matrix(args.input)
    result = optimal_design(a, args.k, args.criterion, tol=args.tol)
    result.criterion = args.criterion
    result.to_document().dump(args.output)
    logger.info(f"Design written to {args.output} (gap {result.gap:.3g}).")
    _print_result(result)
    return EXIT_OK


def cmd_demo2d(args):
    """Design in the plane for a prior given as a list of points; writes CSV and SVG."""
    if args.k < 1:
        raise BadRange(f"At least one design vector is needed (k={args.k}).")
    prior_points = parse_prior(args.prior)
    a = gram(prior_points.T) if len(prior_points) else np.zeros((2, 2))
    result = optimal_design(a, args.k, args.criterion, closed_form=args.closed_form)
    title = f"{result.criterion}, k={result.k}"
    plot = Design2DPlot(result.X_star, prior_points=prior_points, title=title)
    if args.svg:
        plot.save_svg(args.svg)
    if args.csv:
        plot.save_csv(args.csv)
    _print_result(result)
    for x, y, count in plot.points:
        print(f"point {fmt(x)},{fmt(y)} x{count}")
    return EXIT_OK


def cmd_verify(args):
    """Check a design document against the prior; exit 3 if any check fails."""
    a = read_matrix(args.input)
    doc = DesignDocument.load(args.design)
    criterion = resolve(args.criterion or doc.criterion)
    report = verify_design(
        a, doc.array, criterion, samples=args.samples, seed=default_seed(args.seed), progress=not args.quiet
    )
    print(f"weyl_ok={report.weyl_ok}")
    print(f"unit_ball_ok={report.unit_ball_ok}")
    print(f"bound_gap={fmt(report.bound_gap)}")
    print(f"sampled_better_designs={report.sampled_better_designs}")
    if report.ok(GAP_TOL):
        logger.info("Design verified.")
        return EXIT_OK
    logger.error(f"Verification failed: {report}")
    return EXIT_CERTIFICATE


def cmd_dfo_bench(args):
    """Benchmark design modes on the built-in problems and write data profiles."""
    from eigendesign.dfo.bench import run_benchmark
    from eigendesign.svg import profile_svg

    modes = tuple(m.strip() for m in args.modes.split(",") if m.strip())
    families = [f.strip() for f in args.problems.split(",")] if args.problems else None
    dims = tuple(int(d) for d in args.dims.split(","))
    bench = run_benchmark(
        args.sigma,
        args.tau,
        args.seeds,
        budget_multiplier=args.budget_multiplier,
        modes=modes,
        families=families,
        dims=dims,
        max_workers=args.workers,
        progress=not args.quiet,
        seed=default_seed(args.seed),
    )
    out = Path(args.out)
    bench.write_profiles(out)
    runs_out = Path(args.runs_out) if args.runs_out else out.with_name(out.stem + "_runs.csv")
    bench.write_runs(runs_out)
    if args.svg:
        Path(args.svg).write_text(profile_svg(bench.profile), encoding="utf8")
    for method, curve in bench.profile.curves.items():
        print(f"{method}: final fraction solved {fmt(curve[-1])}")
    return EXIT_OK


def build_parser():
    """
    Returns
    -------
    :class:`argparse.ArgumentParser`
        Parser of the ``eigendesign`` command.
    """
    parser = _Parser(prog="eigendesign", description="Optimal spectral experimental designs.")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging.")
    parser.add_argument("-q", "--quiet", action="store_true", help="No progress bars.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("design", help="Optimal design for a prior matrix.")
    p.add_argument("--input", required=True, help="Prior matrix, CSV.")
    p.add_argument("--k", type=int, required=True, help="Number of design vectors.")
    p.add_argument("--criterion", default="d-opt", help="a-opt, d-opt, e-opt, ... or custom:<file.json>.")
    p.add_argument("--tol", type=float, default=None, help="Accuracy for non-monotone criteria.")
    p.add_argument("--output", required=True, help="Design document, JSON.")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("demo2d", help="Two-dimensional design with SVG and CSV output.")
    p.add_argument("--prior", default="", help='Prior points, e.g. "1,0;0.5,0.5".')
    p.add_argument("--k", type=int, required=True, help="Number of design vectors.")
    p.add_argument("--criterion", default="d-opt")
    p.add_argument("--svg", default=None, help="SVG picture.")
    p.add_argument("--csv", default=None, help="Design points with multiplicities.")
    p.add_argument("--closed-form", action="store_true", help="Closed-form design for an isotropic prior.")
    p.set_defaults(func=cmd_demo2d)

    p = sub.add_parser("verify", help="Certify a design document.")
    p.add_argument("--input", required=True, help="Prior matrix, CSV.")
    p.add_argument("--design", required=True, help="Design document, JSON.")
    p.add_argument("--criterion", default=None, help="Defaults to the criterion of the document.")
    p.add_argument("--samples", type=int, default=10000, help="Random competitor designs.")
    p.add_argument("--seed", type=int, default=None, help="Sampler seed (overridden by the environment).")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dfo-bench", help="Data profiles of DFO design modes.")
    p.add_argument("--sigma", type=float, default=1e-2, help="Noise width.")
    p.add_argument("--tau", type=float, default=1e-1, help="Accuracy, in (0, 1).")
    p.add_argument("--seeds", type=int, default=10, help="Number of noise seeds per problem.")
    p.add_argument("--seed", type=int, default=None, help="First noise seed (overridden by the environment).")
    p.add_argument("--budget-multiplier", type=int, default=50)
    p.add_argument("--modes", default="spectral,coordinate,forward-diff")
    p.add_argument("--problems", default=None, help="Comma-separated problem families (default: all).")
    p.add_argument("--dims", default="2,4,8")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", required=True, help="Profiles, CSV.")
    p.add_argument("--runs-out", default=None, help="Per-run log, CSV (default: <out>_runs.csv).")
    p.add_argument("--svg", default=None, help="Profiles picture.")
    p.set_defaults(func=cmd_dfo_bench)
    return parser


def main(argv=None):
    """
    Run the command line.

    Parameters
    ----------
    argv: :class:`list` of :class:`str`, optional
        Arguments. Defaults to ``sys.argv[1:]``.

    Returns
    -------
    :class:`int`
        Exit code.
    """
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        logger.error(f"Usage: {e}")
        return EXIT_INPUT
    if args.verbose:
        logger.setLevel(logging.DEBUG)
    try:
        return args.func(args)
    except InfeasibleBudget as e:
        logger.error(str(e))
        return EXIT_INFEASIBLE
    except (DesignError, OSError, KeyError, ValueError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_INPUT


def entry_point():
    """Console script."""
    logging.basicConfig(format="%(asctime)s %(levelname)s %(message)s")
    sys.exit(main())
