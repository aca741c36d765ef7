"""Command-line front end.

Subcommands:
    check      certify a problem's condition on its pair sample
    solve      run the Picard iteration from the problem's (or --x0) start
    hausdorff  Pompeiu-Hausdorff distance between two point-set files
    demo       annotated report of the built-in worked example

Machine-readable output goes to stdout as JSON lines with sorted keys;
human-readable summaries, timing and logs go to stderr. Exit status is 0 on
success or certification, 1 on a violation, non-convergence or divergence,
and 2 on usage or validation errors. Report records carry a digest of the
problem as run (sha256, or blake3 with ``--digest blake3``).

Settings resolve as: command-line flag, then environment
(``F9_FIXED_POINT_SEED``, ``F9_FIXED_POINT_LOG_LEVEL``), then the problem
file, then built-in defaults.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from collections.abc import Sequence
from typing import Any, Callable

from .conditions import certify
from .demo import run_demo
from .interfaces import DivergenceError, FixedPointError, MultiValuedMap, NormKind
from .problem import ProblemFile, RunReport, load_point_set, load_problem, problem_from_dict
from .solver import picard_solve, picard_solve_multi
from .space import hausdorff
from .utils import DIGEST_ALGORITHMS, canonical_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
DEFAULT_WITNESSES = 10
SEED_ENV = "F9_FIXED_POINT_SEED"
LOG_LEVEL_ENV = "F9_FIXED_POINT_LOG_LEVEL"


def _env_seed() -> int | None:
    value = os.getenv(SEED_ENV)
    if value is None or not value.strip():
        return None
    try:
        return int(value)
    except ValueError:
        logger.warning("Ignoring non-integer %s=%r", SEED_ENV, value)
        return None


def _configure_logging(verbosity: int) -> None:
    name = os.getenv(LOG_LEVEL_ENV, "WARNING").upper()
    level = logging.getLevelName(name)
    if not isinstance(level, int):
        level = logging.WARNING
    level = max(logging.DEBUG, level - 10 * verbosity)
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _emit(records: Sequence[dict[str, Any]]) -> None:
    for record in records:
        sys.stdout.write(canonical_json(record) + "\n")
    sys.stdout.flush()


def _human(message: str) -> None:
    print(message, file=sys.stderr)


def _load(args: argparse.Namespace) -> tuple[ProblemFile, str]:
    problem = load_problem(args.problem)
    if args.norm is not None and NormKind.parse(args.norm) is not problem.norm:
        problem = problem_from_dict({**problem.as_dict(), "norm": args.norm})
    # The digest covers the problem actually run, overrides included.
    return problem, problem.digest(args.digest)


def cmd_check(args: argparse.Namespace) -> int:
    """Certify the problem's condition and report witnesses."""
    started = time.perf_counter()
    problem, digest = _load(args)
    cond = problem.require_condition()
    sample = problem.build_sample(seed=args.seed, count=args.pair_count)
    report = certify(problem.map, cond, sample, problem.norm)
    run = RunReport(
        "check",
        digest=digest,
        digest_algorithm=args.digest,
        certificate=report,
        wall_time=time.perf_counter() - started,
    )
    _emit(run.lines(max_witnesses=None if args.all_witnesses else DEFAULT_WITNESSES))

    _human(
        f"{cond.tag}: {report.verdict.value} on {report.pairs_checked} pairs "
        f"({report.antecedent_hits} antecedent hits, {len(report.violations)} violations)",
    )
    shown = report.violations if args.all_witnesses else report.violations[:DEFAULT_WITNESSES]
    for witness in shown:
        _human(
            f"  x={list(witness.x)} y={list(witness.y)}: "
            f"{witness.consequent_lhs:.6g} > {witness.consequent_rhs:.6g}",
        )
    if len(shown) < len(report.violations):
        _human(f"  ... {len(report.violations) - len(shown)} more (use --all-witnesses)")
    _human(f"wall time {run.wall_time:.3f}s")
    return EXIT_OK if report.certified else EXIT_FAILED


def cmd_solve(args: argparse.Namespace) -> int:
    """Run the Picard iteration and print the trace."""
    started = time.perf_counter()
    problem, digest = _load(args)
    cfg = problem.solve_config(x0=args.x0, tol=args.tol, max_iter=args.max_iter)
    if isinstance(problem.map, MultiValuedMap):
        trace = picard_solve_multi(problem.map, problem.b, cfg, problem.norm)
    else:
        trace = picard_solve(problem.map, problem.b, cfg, problem.norm)
    run = RunReport(
        "solve",
        digest=digest,
        digest_algorithm=args.digest,
        trace=trace,
        wall_time=time.perf_counter() - started,
    )
    _emit(run.lines())

    state = "converged" if trace.converged else "not converged"
    _human(
        f"{state} after {trace.iterations_used} iterations: "
        f"x={trace.final.tolist()} residual={trace.final_residual:.3e}",
    )
    if trace.estimated_ratio is not None:
        _human(f"estimated ratio {trace.estimated_ratio:.6g}")
    _human(f"wall time {run.wall_time:.3f}s")
    return EXIT_OK if trace.converged else EXIT_FAILED


def cmd_hausdorff(args: argparse.Namespace) -> int:
    """Print the Pompeiu-Hausdorff distance between two point-set files."""
    kind = NormKind.parse(args.norm or NormKind.L2.value)
    first = load_point_set(args.set_a, kind=kind)
    second = load_point_set(args.set_b, kind=kind)
    value = hausdorff(first, second, kind)
    sys.stdout.write(f"{value:.12g}\n")
    _human(f"H(A, B) = {value:.12g} under {kind.value} ({len(first)} and {len(second)} points)")
    return EXIT_OK


def cmd_demo(args: argparse.Namespace) -> int:
    """Print the annotated worked-example report."""
    records = run_demo()
    _emit(records)
    for record in records:
        _human(f"[{record['provenance']}] {record['section']}")
    return EXIT_OK


def _global_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
        "--norm",
        choices=[kind.value for kind in NormKind],
        default=None,
        help="Norm (default: problem file, else l2)",
    )
    parent.add_argument(
        "--seed",
        type=int,
        default=_env_seed(),
        help=f"Seed for random pair samples (CLI > env:{SEED_ENV} > problem file > 0)",
    )
    parent.add_argument("--tol", type=float, default=None, help="Convergence tolerance (default 1e-8)")
    parent.add_argument("--max-iter", type=int, default=None, help="Iteration cap (default 1000)")
    parent.add_argument("--all-witnesses", action="store_true", help="Report every violation witness")
    parent.add_argument("--pair-count", type=int, default=None, help="Override the random pair count")
    parent.add_argument(
        "--digest",
        choices=DIGEST_ALGORITHMS,
        default="sha256",
        help="Problem digest algorithm (blake3 needs the checksum extra)",
    )
    parent.add_argument("-v", "--verbose", action="count", default=0, help="Increase log verbosity")
    return parent


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser with all subcommands."""
    parent = _global_options()
    parser = argparse.ArgumentParser(
        prog="f9-fixed-point",
        description="Certify contraction conditions and compute fixed points",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", parents=[parent], help="Certify a condition on a pair sample")
    check.add_argument("problem", help="Problem JSON file")
    check.set_defaults(handler=cmd_check)

    solve = commands.add_parser("solve", parents=[parent], help="Run the Picard iteration")
    solve.add_argument("problem", help="Problem JSON file")
    solve.add_argument("--x0", type=float, nargs="+", default=None, help="Starting point coordinates")
    solve.set_defaults(handler=cmd_solve)

    distance = commands.add_parser("hausdorff", parents=[parent], help="Hausdorff distance of two point sets")
    distance.add_argument("set_a", help="First point-set file")
    distance.add_argument("set_b", help="Second point-set file")
    distance.set_defaults(handler=cmd_hausdorff)

    demo = commands.add_parser("demo", parents=[parent], help="Report on the built-in worked example")
    demo.set_defaults(handler=cmd_demo)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    _configure_logging(args.verbose)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except DivergenceError as exc:
        _human(f"error: {exc}")
        return EXIT_FAILED
    except FixedPointError as exc:
        _human(f"error: {exc}")
        return EXIT_USAGE
    except (TypeError, ValueError) as exc:
        _human(f"error: invalid input ({exc})")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
