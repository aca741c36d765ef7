"""Built-in worked example: a map whose enriched condition is vacuous at two points.

The map sends every point of the plane to the origin, except

    (4, 5) -> (4, 0)    and    (5, 4) -> (0, 4).

With ``b = 1`` and ``theta = 1`` the averaged weight is ``lam = 1/2`` and
``r = theta lam = 1/2``, so ``psi(r) = 1/2``. At the two exceptional points the
antecedent ``psi ||x - Tx|| = 2.5`` exceeds their mutual distance
``sqrt(2)``, which makes the implication vacuous there; away from them the
consequent holds with equality. A grid search nevertheless finds pairs that
violate the condition, for example ``x = (4, 5)``, ``y = (-10, 5)``.

Every record carries a ``provenance`` label:

    worked-example  value stated with the example
    derived         follows from the definitions by direct computation
    search          found by sampling; holds on the sample only

"""

from __future__ import annotations

import logging
from typing import Any

import numpy as np

from .conditions import SuzukiBerinde, certify, explicit_sample
from .interfaces import NormKind
from .maps import ContractionParams, fixed_point_residual
from .problem import ProblemFile, problem_from_dict
from .solver import apriori_bound, picard_solve
from .space import dist, norm

logger = logging.getLogger(__name__)

SPECIAL_POINTS = ((4.0, 5.0), (5.0, 4.0))
DEFAULT_REGION_PAIRS = (
    ((1.0, 0.0), (0.0, 1.0)),
    ((2.0, 2.0), (-1.0, 3.0)),
    ((0.0, 0.0), (3.0, -4.0)),
    ((-2.0, 1.0), (1.0, 1.0)),
    ((6.0, 6.0), (-3.0, 2.0)),
)
GLOBAL_WITNESS = ((4.0, 5.0), (-10.0, 5.0))
GRID_BOUNDS = ((-10.0, 10.0), (-10.0, 10.0))
GRID_STEPS = 21
PRINTED_DISTANCE = 2.0


def example_document() -> dict[str, Any]:
    """Return the worked example as a problem-file document."""
    return {
        "description": "Enriched Suzuki-type condition that is vacuous at two points",
        "dimension": 2,
        "norm": "l2",
        "map": {
            "type": "piecewise_override",
            "default": {"type": "affine", "matrix": [[0.0, 0.0], [0.0, 0.0]], "offset": [0.0, 0.0]},
            "overrides": [
                {"input": [4.0, 5.0], "output": [4.0, 0.0]},
                {"input": [5.0, 4.0], "output": [0.0, 4.0]},
            ],
        },
        "params": {"b": 1.0, "theta": 1.0},
        "condition": "suzuki_berinde",
        "pairs": {
            "kind": "grid",
            "bounds": [list(axis) for axis in GRID_BOUNDS],
            "steps": GRID_STEPS,
            "extra_points": [list(point) for point in SPECIAL_POINTS],
        },
        "solve": {"x0": [4.0, 5.0], "tol": 1e-8, "max_iter": 1000},
    }


def example_problem() -> ProblemFile:
    """Return the worked example as a validated problem."""
    return problem_from_dict(example_document())


def run_demo() -> list[dict[str, Any]]:
    """Compute the annotated report of the worked example, one record per section."""
    problem = example_problem()
    T = problem.map
    b = problem.b
    cond = problem.require_condition()
    assert isinstance(cond, SuzukiBerinde)
    params = ContractionParams(b, cond.params.theta)
    kind = NormKind.L2
    x, y = (np.array(p) for p in SPECIAL_POINTS)
    records: list[dict[str, Any]] = []

    psi = cond.antecedent_coefficient
    records.append(
        {
            "section": "threshold",
            "provenance": "worked-example",
            "b": params.b,
            "theta": params.theta,
            "lambda": params.lam,
            "r": params.r,
            "psi": psi,
        },
    )

    displacement = fixed_point_residual(T, x, kind)
    records.append(
        {
            "section": "antecedent",
            "provenance": "worked-example",
            "x": x.tolist(),
            "image": T.evaluate(x).tolist(),
            "displacement": displacement,
            "psi_antecedent_lhs": psi * displacement,
        },
    )

    gap = dist(x, y, kind)
    records.append(
        {
            "section": "pair_distance",
            "provenance": "derived",
            "x": x.tolist(),
            "y": y.tolist(),
            "distance": gap,
            "exact": "sqrt(2)",
            "printed_distance": PRINTED_DISTANCE,
            "note": "the example prints 2; the Euclidean distance is sqrt(2)",
        },
    )

    restricted = explicit_sample(
        [(SPECIAL_POINTS[0], SPECIAL_POINTS[1]), (SPECIAL_POINTS[1], SPECIAL_POINTS[0]), *DEFAULT_REGION_PAIRS],
        kind=kind,
    )
    report = certify(T, cond, restricted, kind)
    records.append(
        {
            "section": "vacuity",
            "provenance": "derived",
            "antecedent_holds": bool(psi * displacement <= gap),
            "conclusion": "the implication is vacuous for both orderings of the exceptional pair",
            "restricted_verdict": report.verdict.value,
            "restricted_pairs": report.pairs_checked,
        },
    )

    default_rows = []
    for first, second in DEFAULT_REGION_PAIRS[:3]:
        u, v = np.array(first), np.array(second)
        lhs = norm(b * (u - v) + T.evaluate(u) - T.evaluate(v), kind)
        default_rows.append({"x": u.tolist(), "y": v.tolist(), "consequent_lhs": lhs, "distance": dist(u, v, kind)})
    records.append(
        {
            "section": "default_region",
            "provenance": "derived",
            "pairs": default_rows,
            "note": "away from the exceptional points ||b(x-y)+Tx-Ty|| = ||x-y||",
        },
    )

    trace = picard_solve(T, b, problem.solve_config(), kind)
    origin = np.zeros(problem.dimension)
    records.append(
        {
            "section": "solve",
            "provenance": "derived",
            "x0": trace.iterates[0].tolist(),
            "first_iterates": [u.tolist() for u in trace.iterates[:4]],
            "converged": trace.converged,
            "iterations": trace.iterations_used,
            "estimated_ratio": trace.estimated_ratio,
            "final": trace.final.tolist(),
            "fixed_point": origin.tolist(),
            "residual": fixed_point_residual(T, origin, kind),
            "apriori_violations": len(apriori_bound(trace, params.r, anchor="displacement")),
        },
    )

    grid = problem.build_sample()
    grid_report = certify(T, cond, grid, kind)
    witness = next(
        (w for w in grid_report.violations if (w.x, w.y) == GLOBAL_WITNESS),
        None,
    )
    if witness is None:
        witness_report = certify(T, cond, explicit_sample([GLOBAL_WITNESS], kind=kind), kind)
        witness = witness_report.violations[0]
    records.append(
        {
            "section": "global_witness",
            "provenance": "search",
            "grid_pairs": grid_report.pairs_checked,
            "grid_violations": len(grid_report.violations),
            "witness": [list(witness.x), list(witness.y)],
            "consequent_lhs": witness.consequent_lhs,
            "consequent_rhs": witness.consequent_rhs,
            "caveat": (
                "the condition fails on this pair, so the map does not satisfy it globally; "
                "the fixed point (0, 0) still exists and attracts the iteration"
            ),
        },
    )
    logger.info("Demo finished with %d grid violations", len(grid_report.violations))
    return records
