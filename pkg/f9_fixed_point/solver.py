"""Picard iteration on the averaged operator with residual traces.

The solvers iterate ``T_lam = (1 - lam) I + lam T`` with ``lam = 1/(b + 1)``;
``T_lam`` has the same fixed points as ``T``. Every iterate ``u_n`` is
recorded together with its outgoing step ``||u_{n+1} - u_n||`` and its
residual ``d(u_n, T u_n)``. The single-valued solver stops at the first
iterate whose outgoing step and residual are both at most
``tol * (1 + ||u_n||)``; the multivalued solver stops once the residual is at
most ``tol``. In both cases ``u_n`` is final and the run is converged.
Otherwise the run ends when ``n`` reaches ``max_iter``. An iterate, step or
residual that overflows ends the run with ``DivergenceError``.

Example:
    >>> from f9_fixed_point.maps import AffineMap
    >>> from f9_fixed_point.solver import SolveConfig, picard_solve
    >>> trace = picard_solve(AffineMap([[0.5]], [1.0]), 0.0, SolveConfig(x0=[0.0]))
    >>> round(float(trace.final[0]), 6)
    2.0

"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from typing import Any, Literal

import numpy as np

from .interfaces import (
    EPS_CMP,
    DivergenceError,
    DomainError,
    InvalidInputError,
    MultiValuedMap,
    NonFiniteValueError,
    NormKind,
    SingleValuedMap,
    Vector,
)
from .maps import ContractionParams, averaged_apply, averaged_set, fixed_point_residual
from .space import dist, nearest_point, norm
from .validation import validate_contraction_ratio, validate_count, validate_positive, validate_vector

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
DEFAULT_MAX_ITER = 1000
RATIO_WINDOW = 5
MIN_RATIO_STEPS = 3


@dataclass(frozen=True)
class SolveConfig:
    """Starting point and stopping rule of a Picard run."""

    x0: Vector
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    decay_check: float | None = None

    def __post_init__(self) -> None:
        """Validate ``tol > 0``, ``max_iter >= 1`` and ``decay_check`` in ``[0, 1)``."""
        object.__setattr__(self, "x0", validate_vector(self.x0))
        object.__setattr__(self, "tol", validate_positive("tol", self.tol))
        object.__setattr__(self, "max_iter", validate_count("max_iter", self.max_iter))
        if self.decay_check is not None:
            object.__setattr__(self, "decay_check", validate_contraction_ratio(self.decay_check))

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {
            "x0": self.x0.tolist(),
            "tol": self.tol,
            "max_iter": self.max_iter,
            "decay_check": self.decay_check,
        }


@dataclass(frozen=True)
class IterationTrace:
    """Immutable record of a Picard run."""

    iterates: tuple[Vector, ...]
    step_norms: tuple[float, ...]
    residuals: tuple[float, ...]
    converged: bool
    iterations_used: int
    estimated_ratio: float | None
    decay_violations: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        """Validate that the per-iterate sequences line up."""
        count = len(self.iterates)
        if count == 0 or len(self.step_norms) != count or len(self.residuals) != count:
            raise InvalidInputError("Trace sequences must be nonempty and of equal length")

    @property
    def final(self) -> Vector:
        """The last recorded iterate."""
        return self.iterates[-1]

    @property
    def final_residual(self) -> float:
        """Residual of the last recorded iterate."""
        return self.residuals[-1]

    def records(self) -> list[dict[str, Any]]:
        """Return one JSON-serialisable record per iterate."""
        return [
            {"n": n, "x": x.tolist(), "step_norm": step, "residual": residual}
            for n, (x, step, residual) in enumerate(zip(self.iterates, self.step_norms, self.residuals))
        ]

    def summary(self) -> dict[str, Any]:
        """Return the final summary record."""
        return {
            "converged": self.converged,
            "iterations": self.iterations_used,
            "estimated_ratio": self.estimated_ratio,
            "final": self.final.tolist(),
            "final_residual": self.final_residual,
            "decay_violations": list(self.decay_violations),
        }

    def as_dict(self) -> dict[str, Any]:
        """Return the records and the summary."""
        return {"records": self.records(), "summary": self.summary()}


@dataclass(frozen=True)
class AprioriViolation:
    """A step that exceeded its geometric a-priori bound."""

    n: int
    bound: float
    actual: float

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {"n": self.n, "bound": self.bound, "actual": self.actual}


def estimate_ratio(step_norms: Iterable[float]) -> float | None:
    """Return the largest of the trailing step ratios, or None if too few steps.

    At least ``MIN_RATIO_STEPS`` nonzero steps are needed; the window covers
    the last ``RATIO_WINDOW`` ratios.
    """
    steps = list(step_norms)
    if sum(1 for step in steps if step > 0.0) < MIN_RATIO_STEPS:
        return None
    ratios = [after / before for before, after in zip(steps, steps[1:]) if before > 0.0]
    if not ratios:
        return None
    return float(max(ratios[-RATIO_WINDOW:]))


def decay_violations(step_norms: Iterable[float], r: float) -> tuple[int, ...]:
    """Return every ``n`` with ``step[n + 1] > r * step[n] + eps``."""
    steps = list(step_norms)
    return tuple(
        n + 1 for n, (before, after) in enumerate(zip(steps, steps[1:])) if after > r * before + EPS_CMP
    )


StopRule = Callable[[float, float, float], bool]


def _relative_stop(tol: float) -> StopRule:
    def stop(step: float, residual: float, size: float) -> bool:
        bound = tol * (1.0 + size)
        return step <= bound and residual <= bound

    return stop


def _residual_stop(tol: float) -> StopRule:
    def stop(step: float, residual: float, size: float) -> bool:
        return residual <= tol

    return stop


def _iterate(
    successor: Callable[[Vector], Vector],
    residual: Callable[[Vector], float],
    stop: StopRule,
    cfg: SolveConfig,
    kind: NormKind,
) -> IterationTrace:
    iterates: list[Vector] = []
    steps: list[float] = []
    residuals: list[float] = []
    current = cfg.x0
    converged = False
    n = 0
    while True:
        with np.errstate(over="ignore", invalid="ignore"):
            try:
                following = successor(current)
                if not np.all(np.isfinite(following)):
                    raise DivergenceError(n + 1)
                current_residual = residual(current)
            except DomainError as exc:
                raise DomainError(current, index=n) from exc
            except NonFiniteValueError as exc:
                raise DivergenceError(n + 1) from exc
            size = norm(current, kind)
            step = dist(current, following, kind)
        # Norms of huge iterates overflow before the iterates themselves do.
        if not (math.isfinite(size) and math.isfinite(step) and math.isfinite(current_residual)):
            raise DivergenceError(n)
        iterates.append(current)
        steps.append(step)
        residuals.append(current_residual)
        logger.debug("Iterate %d: step %.3e residual %.3e", n, step, current_residual)
        if stop(step, current_residual, size):
            converged = True
            break
        if n >= cfg.max_iter:
            break
        current = validate_vector(following)
        n += 1

    flagged = decay_violations(steps, cfg.decay_check) if cfg.decay_check is not None else ()
    trace = IterationTrace(
        iterates=tuple(iterates),
        step_norms=tuple(steps),
        residuals=tuple(residuals),
        converged=converged,
        iterations_used=n,
        estimated_ratio=estimate_ratio(steps),
        decay_violations=flagged,
    )
    if converged:
        logger.info("Converged after %d iterations (residual %.3e)", n, trace.final_residual)
    else:
        logger.warning("No convergence within %d iterations (last step %.3e)", cfg.max_iter, steps[-1])
    if flagged:
        logger.warning("Geometric decay with ratio %s failed at %d steps", cfg.decay_check, len(flagged))
    return trace


def picard_solve(
    T: SingleValuedMap,
    b: float,
    cfg: SolveConfig,
    kind: NormKind = NormKind.L2,
) -> IterationTrace:
    """Iterate ``u_{n+1} = T_lam u_n`` from ``cfg.x0``.

    Raises:
        InvalidConditionError: If ``b`` is negative.
        DomainError: If an iterate leaves a tabulated domain (names the index).
        DivergenceError: If an iterate becomes non-finite.

    """
    if isinstance(T, MultiValuedMap):
        raise InvalidInputError("picard_solve requires a single-valued map", context=T.type_tag)
    lam = ContractionParams(b, 0.0).lam
    logger.info("Picard iteration on %s with lambda %.6g", T.type_tag, lam)
    return _iterate(
        lambda u: averaged_apply(T, lam, u),
        lambda u: fixed_point_residual(T, u, kind),
        _relative_stop(cfg.tol),
        cfg,
        kind,
    )


def picard_solve_multi(
    T: MultiValuedMap,
    b: float,
    cfg: SolveConfig,
    kind: NormKind = NormKind.L2,
) -> IterationTrace:
    """Iterate with the point of ``averaged_set(T, lam, u_n)`` nearest to ``u_n``.

    Ties are broken by lexicographic coordinate order. The run converges at
    the first iterate with ``d(u_n, T u_n) <= tol``.

    Raises:
        InvalidConditionError: If ``b`` is negative.
        DomainError: If an iterate leaves a tabulated domain (names the index).
        DivergenceError: If an iterate becomes non-finite.

    """
    if isinstance(T, SingleValuedMap):
        raise InvalidInputError("picard_solve_multi requires a multivalued map", context=T.type_tag)
    lam = ContractionParams(b, 0.0).lam
    logger.info("Nearest-point iteration on %s with lambda %.6g", T.type_tag, lam)
    return _iterate(
        lambda u: nearest_point(u, averaged_set(T, lam, u, kind), kind),
        lambda u: fixed_point_residual(T, u, kind),
        _residual_stop(cfg.tol),
        cfg,
        kind,
    )


def apriori_bound(
    trace: IterationTrace,
    r: float,
    *,
    anchor: Literal["step", "displacement"] = "step",
) -> list[AprioriViolation]:
    """Return every step ``n`` with ``step_norms[n] > r**n * anchor + eps``.

    ``anchor="step"`` uses ``||u_0 - T_lam u_0||`` (the first step);
    ``anchor="displacement"`` uses ``||u_0 - T u_0||``, the first residual.
    An empty list certifies the geometric decay on this trajectory.

    Raises:
        InvalidInputError: If ``r`` is outside ``[0, 1)`` or the anchor is unknown.

    """
    r = validate_contraction_ratio(r)
    if anchor == "step":
        base = trace.step_norms[0]
    elif anchor == "displacement":
        base = trace.residuals[0]
    else:
        raise InvalidInputError("Unknown a-priori anchor", context=anchor)
    violations = []
    for n, actual in enumerate(trace.step_norms):
        bound = r**n * base
        if actual > bound + EPS_CMP:
            violations.append(AprioriViolation(n=n, bound=bound, actual=actual))
    return violations
