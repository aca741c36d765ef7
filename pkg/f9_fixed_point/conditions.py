"""Implicative contraction conditions and their sample-based certifier.

Every condition has the shape

    c * d(x, Tx)  <=  ||x - y||     (antecedent; ``<`` for strict forms)
    implies
    L(x, y)       <=  k * ||x - y|| (consequent; ``<`` for strict forms)

where ``L`` is ``||b(x - y) + Tx - Ty||`` for single-valued maps and
``H(bx + Tx, by + Ty)`` for multivalued ones. The conditions differ only in
``c``, ``k``, ``b`` and strictness, so a single certifier handles all of them.

Certification runs over a finite ``PairSample`` and never claims more than
"certified-on-sample". Comparisons use the absolute tolerance ``EPS_CMP``:
non-strict ``lhs <= rhs + eps``; strict ``lhs < rhs - eps``, except that a
strict consequent with ``rhs <= eps`` requires ``lhs <= eps``.

Example:
    >>> from f9_fixed_point.conditions import Banach, certify, explicit_sample
    >>> from f9_fixed_point.maps import AffineMap
    >>> T = AffineMap([[0.5]], [1.0])
    >>> report = certify(T, Banach(0.5), explicit_sample([([0.0], [3.0])]))
    >>> report.verdict.value
    'certified-on-sample'

"""

from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any, ClassVar

import numpy as np
import numpy.typing as npt

from .interfaces import (
    EPS_CMP,
    DomainError,
    InvalidConditionError,
    InvalidInputError,
    MultiValuedMap,
    NormKind,
    PreconditionError,
    SingleValuedMap,
    Verdict,
    Vector,
)
from .maps import AnyMap, ContractionParams, SingletonMultiMap, averaged_apply, fixed_point_residual
from .space import PointSet, dist, dist_point_set, hausdorff, row_norms
from .validation import (
    validate_averaging_weight,
    validate_contraction_ratio,
    validate_count,
    validate_dimension,
    validate_points,
    validate_vector,
)

logger = logging.getLogger(__name__)

GOLDEN_RATIO_CONJUGATE = (math.sqrt(5.0) - 1.0) / 2.0
INV_SQRT2 = 1.0 / math.sqrt(2.0)


def f_threshold(r: float) -> float:
    """Return the nonincreasing Suzuki threshold ``f(r)`` with range ``(1/2, 1]``.

    ``f`` is 1 up to the golden-ratio conjugate, ``(1 - r)/r**2`` up to
    ``1/sqrt(2)`` and ``1/(1 + r)`` beyond; the branches meet continuously.

    Raises:
        InvalidInputError: If ``r`` is outside ``[0, 1)``.

    """
    r = validate_contraction_ratio(r)
    if r <= GOLDEN_RATIO_CONJUGATE:
        return 1.0
    if r < INV_SQRT2:
        return (1.0 - r) / (r * r)
    return 1.0 / (1.0 + r)


def psi_single(r: float, lam: float) -> float:
    """Return ``psi(r) = lam * f(r)``, the enriched single-valued threshold."""
    return validate_averaging_weight(lam) * f_threshold(r)


def psi_multi(r: float, lam: float) -> float:
    """Return ``psi(r) = lam / (1 + r)``, the enriched multivalued threshold."""
    r = validate_contraction_ratio(r)
    return validate_averaging_weight(lam) / (1.0 + r)


def _ratio(r: float) -> float:
    try:
        return validate_contraction_ratio(r)
    except InvalidInputError as exc:
        raise InvalidConditionError(exc.message, context=exc.context) from exc


class Condition(ABC):
    """An implicative contraction condition, parameterised by its coefficients."""

    tag: ClassVar[str]
    multivalued: ClassVar[bool] = False
    strict_antecedent: ClassVar[bool] = False
    strict_consequent: ClassVar[bool] = False

    @property
    def enrichment(self) -> float:
        """The constant ``b`` multiplying ``x - y`` in the consequent."""
        return 0.0

    @property
    @abstractmethod
    def antecedent_coefficient(self) -> float:
        """Factor ``c`` in ``c * d(x, Tx)``."""

    @property
    @abstractmethod
    def consequent_coefficient(self) -> float:
        """Factor ``k`` in ``k * ||x - y||``."""

    def averaged_form(self) -> Condition:
        """Return the equivalent condition on the averaged map ``T_lam``.

        Raises:
            InvalidConditionError: If the condition has no equivalent form.

        """
        raise InvalidConditionError("Condition has no equivalent averaged form", context=self.tag)

    @abstractmethod
    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""


@dataclass(frozen=True)
class Banach(Condition):
    """``d(Tx, Ty) <= r d(x, y)`` for every pair."""

    r: float
    tag: ClassVar[str] = "banach"

    def __post_init__(self) -> None:
        """Validate ``0 <= r < 1``."""
        object.__setattr__(self, "r", _ratio(self.r))

    @property
    def antecedent_coefficient(self) -> float:
        """Always-true antecedent."""
        return 0.0

    @property
    def consequent_coefficient(self) -> float:
        """Contraction ratio."""
        return self.r

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {"condition": self.tag, "r": self.r}


@dataclass(frozen=True)
class Suzuki(Condition):
    """``f(r) d(x, Tx) <= d(x, y)`` implies ``d(Tx, Ty) <= r d(x, y)``."""

    r: float
    tag: ClassVar[str] = "suzuki"

    def __post_init__(self) -> None:
        """Validate ``0 <= r < 1``."""
        object.__setattr__(self, "r", _ratio(self.r))

    @property
    def antecedent_coefficient(self) -> float:
        """``f(r)``."""
        return f_threshold(self.r)

    @property
    def consequent_coefficient(self) -> float:
        """Contraction ratio."""
        return self.r

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {"condition": self.tag, "r": self.r}


@dataclass(frozen=True)
class SuzukiStrict(Condition):
    """``d(x, Tx)/2 < d(x, y)`` implies ``d(Tx, Ty) < d(x, y)``."""

    tag: ClassVar[str] = "suzuki_strict"
    strict_antecedent: ClassVar[bool] = True
    strict_consequent: ClassVar[bool] = True

    @property
    def antecedent_coefficient(self) -> float:
        """One half."""
        return 0.5

    @property
    def consequent_coefficient(self) -> float:
        """Non-expansive bound."""
        return 1.0

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {"condition": self.tag}


@dataclass(frozen=True)
class Edelstein(Condition):
    """``d(Tx, Ty) < d(x, y)`` whenever ``x != y``."""

    tag: ClassVar[str] = "edelstein"
    strict_antecedent: ClassVar[bool] = True
    strict_consequent: ClassVar[bool] = True

    @property
    def antecedent_coefficient(self) -> float:
        """Antecedent reduces to ``0 < d(x, y)``."""
        return 0.0

    @property
    def consequent_coefficient(self) -> float:
        """Non-expansive bound."""
        return 1.0

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {"condition": self.tag}


@dataclass(frozen=True)
class SuzukiBerinde(Condition):
    """``psi(r)||x - Tx|| <= ||x - y||`` implies ``||b(x-y) + Tx - Ty|| <= theta ||x - y||``."""

    b: float
    theta: float
    params: ContractionParams = field(init=False, repr=False)
    tag: ClassVar[str] = "suzuki_berinde"

    def __post_init__(self) -> None:
        """Validate ``b >= 0`` and ``0 <= theta < b + 1``."""
        object.__setattr__(self, "params", ContractionParams(self.b, self.theta))

    @property
    def enrichment(self) -> float:
        """The constant ``b``."""
        return self.params.b

    @property
    def antecedent_coefficient(self) -> float:
        """``psi(r) = lam f(r)``."""
        return psi_single(self.params.r, self.params.lam)

    @property
    def consequent_coefficient(self) -> float:
        """``theta``."""
        return self.params.theta

    def averaged_form(self) -> Condition:
        """Return ``Suzuki(r = theta lam)``, the condition ``T_lam`` satisfies."""
        return Suzuki(self.params.r)

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {"condition": self.tag, "b": self.params.b, "theta": self.params.theta}


@dataclass(frozen=True)
class GammaFamily(Condition):
    """``s||x - Tx|| <= ||x - y||`` implies ``||b(x-y) + Tx - Ty|| <= theta ||x - y||``.

    The threshold must satisfy ``0 < s <= psi(r)``.
    """

    b: float
    theta: float
    s: float
    params: ContractionParams = field(init=False, repr=False)
    tag: ClassVar[str] = "gamma_family"

    def __post_init__(self) -> None:
        """Validate the parameters and ``0 < s <= psi(r)``."""
        params = ContractionParams(self.b, self.theta, s=self.s)
        assert params.s is not None
        bound = psi_single(params.r, params.lam)
        if params.s > bound + EPS_CMP:
            raise InvalidConditionError.out_of_range("s", params.s, f"(0, {bound}]")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "s", params.s)

    @property
    def enrichment(self) -> float:
        """The constant ``b``."""
        return self.params.b

    @property
    def antecedent_coefficient(self) -> float:
        """The user threshold ``s``."""
        return self.s

    @property
    def consequent_coefficient(self) -> float:
        """``theta``."""
        return self.params.theta

    def averaged_form(self) -> Condition:
        """Return the b = 0 member of the family satisfied by ``T_lam``."""
        return GammaFamily(0.0, self.params.r, self.s / self.params.lam)

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {"condition": self.tag, "b": self.params.b, "theta": self.params.theta, "s": self.s}


@dataclass(frozen=True)
class CompactBerinde(Condition):
    """``(lam/2)||x - Tx|| < ||x - y||`` implies ``||b(x-y) + Tx - Ty|| < ||x - y||``."""

    b: float
    params: ContractionParams = field(init=False, repr=False)
    tag: ClassVar[str] = "compact_berinde"
    strict_antecedent: ClassVar[bool] = True
    strict_consequent: ClassVar[bool] = True

    def __post_init__(self) -> None:
        """Validate ``b >= 0``."""
        object.__setattr__(self, "params", ContractionParams(self.b, 0.0))

    @property
    def enrichment(self) -> float:
        """The constant ``b``."""
        return self.params.b

    @property
    def antecedent_coefficient(self) -> float:
        """``lam / 2``."""
        return self.params.lam / 2.0

    @property
    def consequent_coefficient(self) -> float:
        """Non-expansive bound."""
        return 1.0

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {"condition": self.tag, "b": self.params.b}


@dataclass(frozen=True)
class MultiSuzukiBerinde(Condition):
    """``psi(r) d(x, Tx) <= ||x - y||`` implies ``H(bx+Tx, by+Ty) <= theta ||x - y||``.

    Here ``psi(r) = lam / (1 + r)``.
    """

    b: float
    theta: float
    params: ContractionParams = field(init=False, repr=False)
    tag: ClassVar[str] = "multi_suzuki_berinde"
    multivalued: ClassVar[bool] = True

    def __post_init__(self) -> None:
        """Validate ``b >= 0`` and ``0 <= theta < b + 1``."""
        object.__setattr__(self, "params", ContractionParams(self.b, self.theta))

    @property
    def enrichment(self) -> float:
        """The constant ``b``."""
        return self.params.b

    @property
    def antecedent_coefficient(self) -> float:
        """``lam / (1 + r)``."""
        return psi_multi(self.params.r, self.params.lam)

    @property
    def consequent_coefficient(self) -> float:
        """``theta``."""
        return self.params.theta

    def averaged_form(self) -> Condition:
        """Return the b = 0 condition ``T_lam`` satisfies, with ratio ``theta lam``."""
        return MultiSuzukiBerinde(0.0, self.params.r)

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {"condition": self.tag, "b": self.params.b, "theta": self.params.theta}


@dataclass(frozen=True)
class MultiGamma(Condition):
    """``gamma lam d(x, Tx) <= ||x - y||`` implies ``H(bx+Tx, by+Ty) <= theta ||x - y||``.

    Requires ``(theta lam + 1) gamma <= 1``.
    """

    b: float
    theta: float
    gamma: float
    params: ContractionParams = field(init=False, repr=False)
    tag: ClassVar[str] = "multi_gamma"
    multivalued: ClassVar[bool] = True

    def __post_init__(self) -> None:
        """Validate the parameters and ``(theta lam + 1) gamma <= 1``."""
        params = ContractionParams(self.b, self.theta, gamma=self.gamma)
        assert params.gamma is not None
        if (params.r + 1.0) * params.gamma > 1.0:
            raise InvalidConditionError(
                "gamma must satisfy (theta * lambda + 1) * gamma <= 1",
                context=params.gamma,
            )
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "gamma", params.gamma)

    @property
    def enrichment(self) -> float:
        """The constant ``b``."""
        return self.params.b

    @property
    def antecedent_coefficient(self) -> float:
        """``gamma lam``."""
        return self.gamma * self.params.lam

    @property
    def consequent_coefficient(self) -> float:
        """``theta``."""
        return self.params.theta

    def averaged_form(self) -> Condition:
        """Return the b = 0 condition ``T_lam`` satisfies, with ratio ``theta lam``."""
        return MultiGamma(0.0, self.params.r, self.gamma)

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {
            "condition": self.tag,
            "b": self.params.b,
            "theta": self.params.theta,
            "gamma": self.gamma,
        }


@dataclass(frozen=True)
class MultiCompactGamma(Condition):
    """``gamma lam d(x, Tx) < ||x - y||`` implies ``H(bx+Tx, by+Ty) < ||x - y||``.

    Requires ``0 < gamma <= 1/2``.
    """

    b: float
    gamma: float
    params: ContractionParams = field(init=False, repr=False)
    tag: ClassVar[str] = "multi_compact_gamma"
    multivalued: ClassVar[bool] = True
    strict_antecedent: ClassVar[bool] = True
    strict_consequent: ClassVar[bool] = True

    def __post_init__(self) -> None:
        """Validate ``b >= 0`` and ``0 < gamma <= 1/2``."""
        params = ContractionParams(self.b, 0.0, gamma=self.gamma)
        assert params.gamma is not None
        if params.gamma > 0.5:  # noqa: PLR2004
            raise InvalidConditionError.out_of_range("gamma", params.gamma, "(0, 1/2]")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "gamma", params.gamma)

    @property
    def enrichment(self) -> float:
        """The constant ``b``."""
        return self.params.b

    @property
    def antecedent_coefficient(self) -> float:
        """``gamma lam``."""
        return self.gamma * self.params.lam

    @property
    def consequent_coefficient(self) -> float:
        """Non-expansive bound."""
        return 1.0

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {"condition": self.tag, "b": self.params.b, "gamma": self.gamma}


CONDITION_TYPES: dict[str, type[Condition]] = {
    cls.tag: cls
    for cls in (
        Banach,
        Suzuki,
        SuzukiStrict,
        Edelstein,
        SuzukiBerinde,
        GammaFamily,
        CompactBerinde,
        MultiSuzukiBerinde,
        MultiGamma,
        MultiCompactGamma,
    )
}


@dataclass(frozen=True)
class SampleProvenance:
    """How a pair sample was produced; fully determines the pair list."""

    kind: str
    details: Mapping[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {"kind": self.kind, **self.details}


@dataclass(frozen=True, eq=False)
class PairSample:
    """Finite list of ordered pairs, stored as points plus index pairs."""

    points: Vector
    index_pairs: npt.NDArray[np.intp]
    provenance: SampleProvenance

    def __len__(self) -> int:
        """Return the number of ordered pairs."""
        return int(self.index_pairs.shape[0])

    @property
    def pairs(self) -> list[tuple[Vector, Vector]]:
        """Return the ordered pairs as vectors."""
        return [(self.points[i], self.points[j]) for i, j in self.index_pairs]


def _product_pairs(count: int) -> npt.NDArray[np.intp]:
    indices = np.arange(count, dtype=np.intp)
    return np.column_stack([np.repeat(indices, count), np.tile(indices, count)])


def exhaustive_sample(
    points: Iterable[Iterable[float]] | Vector,
    *,
    kind: NormKind = NormKind.L2,
    provenance: str = "exhaustive-tabulated",
) -> PairSample:
    """Return all ``m**2`` ordered pairs (``x = y`` included) of ``points``.

    Raises:
        InvalidInputError: If ``points`` is empty.

    """
    unique = PointSet.from_points(points, kind=kind).points
    return PairSample(
        points=unique,
        index_pairs=_product_pairs(len(unique)),
        provenance=SampleProvenance(provenance, {"points": len(unique)}),
    )


def _validate_bounds(bounds: Sequence[Sequence[float]]) -> Vector:
    array = np.array(bounds, dtype=np.float64)
    if array.ndim != 2 or array.shape[1] != 2 or array.shape[0] == 0:  # noqa: PLR2004
        raise InvalidInputError("Bounds must be a list of [low, high] per axis", context=bounds)
    if not np.all(np.isfinite(array)) or np.any(array[:, 0] > array[:, 1]):
        raise InvalidInputError("Bounds must be finite with low <= high", context=bounds)
    return array


def grid_sample(
    bounds: Sequence[Sequence[float]],
    steps: int | Sequence[int],
    *,
    extra_points: Iterable[Iterable[float]] | None = None,
    kind: NormKind = NormKind.L2,
) -> PairSample:
    """Return the exhaustive product over a rectangular grid.

    ``steps`` counts grid points per axis (``steps = 2`` on ``[0, 1]`` gives
    ``{0, 1}``). ``extra_points`` are appended after the grid.
    """
    box = _validate_bounds(bounds)
    per_axis = [steps] * len(box) if isinstance(steps, int) else list(steps)
    if len(per_axis) != len(box):
        raise InvalidInputError.dimension_mismatch(len(box), len(per_axis))
    axes = [
        np.linspace(low, high, validate_count("steps", count))
        for (low, high), count in zip(box, per_axis)
    ]
    mesh = np.meshgrid(*axes, indexing="ij")
    points = np.column_stack([axis.ravel() for axis in mesh])
    details: dict[str, Any] = {"bounds": box.tolist(), "steps": per_axis}
    if extra_points is not None:
        extra = validate_points(list(extra_points))
        points = np.vstack([points, extra])
        details["extra_points"] = extra.tolist()
    unique = PointSet.from_points(points, kind=kind).points
    return PairSample(
        points=unique,
        index_pairs=_product_pairs(len(unique)),
        provenance=SampleProvenance("grid", details),
    )


def random_sample(
    count: int,
    seed: int,
    *,
    bounds: Sequence[Sequence[float]] | None = None,
    domain: Vector | None = None,
) -> PairSample:
    """Return ``count`` seeded random ordered pairs.

    Pairs are drawn uniformly from the box ``bounds``, or, when no box is
    given, uniformly from the points of a finite ``domain``.

    Raises:
        InvalidInputError: If neither a box nor a nonempty domain is given.

    """
    count = validate_count("count", count)
    rng = np.random.default_rng(seed)
    if bounds is not None:
        box = _validate_bounds(bounds)
        points = rng.uniform(box[:, 0], box[:, 1], size=(2 * count, len(box)))
        index_pairs = np.arange(2 * count, dtype=np.intp).reshape(count, 2)
        details: dict[str, Any] = {"bounds": box.tolist(), "count": count, "seed": seed}
    elif domain is not None and len(domain):
        points = np.asarray(domain, dtype=np.float64)
        index_pairs = rng.integers(0, len(points), size=(count, 2)).astype(np.intp)
        details = {"count": count, "seed": seed}
    else:
        raise InvalidInputError("Random sample needs bounds or a finite domain")
    return PairSample(points=points, index_pairs=index_pairs, provenance=SampleProvenance("random", details))


def explicit_sample(
    pairs: Iterable[tuple[Iterable[float], Iterable[float]]],
    *,
    kind: NormKind = NormKind.L2,
) -> PairSample:
    """Return a sample holding exactly the given ordered pairs, in order."""
    pair_list = [(validate_vector(x), validate_vector(y)) for x, y in pairs]
    if not pair_list:
        raise InvalidInputError.empty_set()
    unique = PointSet.from_points([p for pair in pair_list for p in pair], kind=kind)
    index_pairs = np.array(
        [
            [_index_of(unique, x, kind), _index_of(unique, y, kind)]
            for x, y in pair_list
        ],
        dtype=np.intp,
    )
    return PairSample(
        points=unique.points,
        index_pairs=index_pairs,
        provenance=SampleProvenance("explicit", {"pairs": len(pair_list)}),
    )


def _index_of(points: PointSet, v: Vector, kind: NormKind) -> int:
    validate_dimension(v, points.dimension)
    distances = row_norms(points.points - v, kind)
    return int(np.argmin(distances))


def make_pair_sample(
    spec: Mapping[str, Any],
    *,
    domain: Vector | None = None,
    seed: int | None = None,
    count: int | None = None,
    kind: NormKind = NormKind.L2,
) -> PairSample:
    """Build a pair sample from a ``{"kind": ...}`` specification.

    ``seed`` and ``count`` override the values in ``spec`` when given.

    Raises:
        InvalidInputError: On an unknown kind or an empty domain.

    """
    sample_kind = spec.get("kind", "exhaustive")
    if sample_kind == "exhaustive":
        points = spec.get("points")
        if points is not None:
            return exhaustive_sample(points, kind=kind, provenance="exhaustive")
        if domain is None or not len(domain):
            raise InvalidInputError("Exhaustive sample needs explicit points or a finite domain")
        return exhaustive_sample(domain, kind=kind)
    if sample_kind == "grid":
        return grid_sample(spec["bounds"], spec["steps"], extra_points=spec.get("extra_points"), kind=kind)
    if sample_kind == "random":
        return random_sample(
            count if count is not None else spec["count"],
            seed if seed is not None else spec.get("seed", 0),
            bounds=spec.get("bounds"),
            domain=domain,
        )
    if sample_kind == "explicit":
        return explicit_sample(spec["pairs"], kind=kind)
    raise InvalidInputError("Unknown pair sample kind", context=sample_kind)


@dataclass(frozen=True)
class Witness:
    """A pair where the antecedent held but the consequent failed."""

    pair_index: int
    x: tuple[float, ...]
    y: tuple[float, ...]
    antecedent_lhs: float
    antecedent_rhs: float
    consequent_lhs: float
    consequent_rhs: float

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {
            "pair_index": self.pair_index,
            "x": list(self.x),
            "y": list(self.y),
            "antecedent_lhs": self.antecedent_lhs,
            "antecedent_rhs": self.antecedent_rhs,
            "consequent_lhs": self.consequent_lhs,
            "consequent_rhs": self.consequent_rhs,
        }


@dataclass(frozen=True)
class CertificateReport:
    """Verdict of a certification run with every violation witness."""

    condition: str
    pairs_checked: int
    antecedent_hits: int
    violations: tuple[Witness, ...]
    provenance: SampleProvenance | None = None

    @property
    def verdict(self) -> Verdict:
        """``violated`` iff at least one witness was found."""
        return Verdict.VIOLATED if self.violations else Verdict.CERTIFIED_ON_SAMPLE

    @property
    def certified(self) -> bool:
        """True when no witness was found on the sample."""
        return not self.violations

    def witness_pairs(self) -> list[tuple[tuple[float, ...], tuple[float, ...]]]:
        """Return the ``(x, y)`` of every witness, in sample order."""
        return [(w.x, w.y) for w in self.violations]

    def as_dict(self, *, max_witnesses: int | None = None) -> dict[str, Any]:
        """Return a JSON-serialisable summary (witnesses truncated if requested)."""
        shown = self.violations if max_witnesses is None else self.violations[:max_witnesses]
        return {
            "condition": self.condition,
            "verdict": self.verdict.value,
            "pairs_checked": self.pairs_checked,
            "antecedent_hits": self.antecedent_hits,
            "violation_count": len(self.violations),
            "violations": [w.as_dict() for w in shown],
            "sample": self.provenance.as_dict() if self.provenance else None,
        }


def _antecedent_holds(lhs: Vector, rhs: Vector, *, strict: bool) -> npt.NDArray[np.bool_]:
    if strict:
        return lhs < rhs - EPS_CMP
    return lhs <= rhs + EPS_CMP


def _consequent_holds(lhs: Vector, rhs: Vector, *, strict: bool) -> npt.NDArray[np.bool_]:
    if strict:
        return np.where(rhs > EPS_CMP, lhs < rhs - EPS_CMP, lhs <= EPS_CMP)
    return lhs <= rhs + EPS_CMP


def _images(T: AnyMap, sample: PairSample) -> list[Any]:
    images = []
    for index, point in enumerate(sample.points):
        try:
            images.append(T.evaluate(point))
        except DomainError as exc:
            rows = np.nonzero((sample.index_pairs == index).any(axis=1))[0]
            if not len(rows):
                raise
            i, j = sample.index_pairs[rows[0]]
            raise DomainError(point, pair=(sample.points[i], sample.points[j])) from exc
    return images


def certify(
    T: AnyMap,
    cond: Condition,
    sample: PairSample,
    kind: NormKind = NormKind.L2,
) -> CertificateReport:
    """Check the implication of ``cond`` on every ordered pair of ``sample``.

    Multivalued conditions accept single-valued maps (lifted to singleton
    images); single-valued conditions reject multivalued maps.

    Raises:
        InvalidConditionError: If the map and condition kinds are incompatible.
        DomainError: If a sampled point lies outside the map's domain.

    """
    if isinstance(T, MultiValuedMap) and not cond.multivalued:
        raise InvalidConditionError("Single-valued condition requires a single-valued map", context=cond.tag)
    if cond.multivalued and isinstance(T, SingleValuedMap):
        T = SingletonMultiMap(T, kind=kind)

    points = sample.points
    first, second = sample.index_pairs[:, 0], sample.index_pairs[:, 1]
    b = cond.enrichment
    distances = row_norms(points[first] - points[second], kind)
    images = _images(T, sample)

    if cond.multivalued:
        displacement = np.array([dist_point_set(p, image, kind) for p, image in zip(points, images)])
        shifted = [
            image if b == 0.0 else PointSet(points=b * p + image.points)
            for p, image in zip(points, images)
        ]
        consequent_lhs = np.array(
            [hausdorff(shifted[i], shifted[j], kind) for i, j in sample.index_pairs],
            dtype=np.float64,
        )
    else:
        mapped = np.stack(images) if images else np.empty_like(points)
        displacement = row_norms(points - mapped, kind)
        if b == 0.0:
            consequent_lhs = row_norms(mapped[first] - mapped[second], kind)
        else:
            consequent_lhs = row_norms(b * (points[first] - points[second]) + mapped[first] - mapped[second], kind)

    antecedent_lhs = cond.antecedent_coefficient * displacement[first]
    consequent_rhs = cond.consequent_coefficient * distances
    fires = _antecedent_holds(antecedent_lhs, distances, strict=cond.strict_antecedent)
    holds = _consequent_holds(consequent_lhs, consequent_rhs, strict=cond.strict_consequent)

    violations = tuple(
        Witness(
            pair_index=int(k),
            x=tuple(points[first[k]].tolist()),
            y=tuple(points[second[k]].tolist()),
            antecedent_lhs=float(antecedent_lhs[k]),
            antecedent_rhs=float(distances[k]),
            consequent_lhs=float(consequent_lhs[k]),
            consequent_rhs=float(consequent_rhs[k]),
        )
        for k in np.nonzero(fires & ~holds)[0]
    )
    report = CertificateReport(
        condition=cond.tag,
        pairs_checked=len(sample),
        antecedent_hits=int(fires.sum()),
        violations=violations,
        provenance=sample.provenance,
    )
    logger.info(
        "Certified %s on %d pairs: %d antecedent hits, %d violations",
        cond.tag,
        report.pairs_checked,
        report.antecedent_hits,
        len(violations),
    )
    return report


def uniqueness_certify(
    T: SingleValuedMap,
    z: Iterable[float] | Vector,
    r: float,
    sample: Sequence[Iterable[float]] | Vector,
    kind: NormKind = NormKind.L2,
    *,
    b: float = 0.0,
    tol: float = EPS_CMP,
) -> CertificateReport:
    """Check ``||T_lam x - z|| <= r ||x - z||`` for every sampled ``x != z``.

    A certified report means no other fixed point exists among the samples.

    Raises:
        PreconditionError: If ``z`` is not a numerical fixed point of ``T``.
        InvalidInputError: If ``r`` is outside ``[0, 1)``.

    """
    r = validate_contraction_ratio(r)
    lam = ContractionParams(b, 0.0).lam
    center = validate_vector(z)
    residual = fixed_point_residual(T, center, kind)
    if residual > tol:
        raise PreconditionError.not_a_fixed_point(residual)

    hits = 0
    violations: list[Witness] = []
    for index, x in enumerate(sample):
        point = validate_vector(x)
        gap = dist(point, center, kind)
        if gap <= EPS_CMP:
            continue
        hits += 1
        lhs = dist(averaged_apply(T, lam, point), center, kind)
        rhs = r * gap
        if lhs > rhs + EPS_CMP:
            violations.append(
                Witness(
                    pair_index=index,
                    x=tuple(point.tolist()),
                    y=tuple(center.tolist()),
                    antecedent_lhs=0.0,
                    antecedent_rhs=gap,
                    consequent_lhs=lhs,
                    consequent_rhs=rhs,
                ),
            )
    logger.info("Uniqueness check on %d samples: %d violations", len(sample), len(violations))
    return CertificateReport(
        condition="uniqueness",
        pairs_checked=len(sample),
        antecedent_hits=hits,
        violations=tuple(violations),
    )
