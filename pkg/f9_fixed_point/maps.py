"""Single- and multivalued mappings and their averaged transforms.

Every map implements ``SingleValuedMap`` or ``MultiValuedMap`` from
``interfaces`` and is immutable once built. The averaged operator

    T_lam x = (1 - lam) x + lam T x,    lam = 1 / (b + 1)

shares its fixed points with ``T`` and is what the solver iterates; for
multivalued maps it translates the set ``lam Tx`` by ``(1 - lam) x``.

Example:
    >>> from f9_fixed_point.maps import AffineMap, averaged_apply
    >>> T = AffineMap([[0.5]], [1.0])
    >>> averaged_apply(T, 1.0, [0.0])
    array([1.])

"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any, Union

import numpy as np

from .interfaces import (
    EPS_CMP,
    DomainError,
    InvalidConditionError,
    InvalidInputError,
    MultiValuedMap,
    NormKind,
    SingleValuedMap,
    Vector,
)
from .space import PointSet, dist, dist_point_set, pairwise_distances
from .validation import (
    validate_averaging_weight,
    validate_dimension,
    validate_enrichment,
    validate_points,
    validate_positive,
    validate_theta,
    validate_vector,
)

AnyMap = Union[SingleValuedMap, MultiValuedMap]


def _validate_matrix(matrix: Iterable[Iterable[float]] | Vector) -> Vector:
    array = np.array(matrix, dtype=np.float64)
    if array.ndim != 2 or array.shape[0] != array.shape[1] or array.size == 0:  # noqa: PLR2004
        raise InvalidInputError("Matrix must be square and nonempty", context=array.shape)
    if not np.all(np.isfinite(array)):
        raise InvalidInputError.non_finite(array.tolist())
    array.flags.writeable = False
    return array


def _validate_distinct(inputs: Vector, kind: NormKind, what: str) -> None:
    if len(inputs) < 2:  # noqa: PLR2004
        return
    distances = pairwise_distances(inputs, inputs, kind)
    np.fill_diagonal(distances, np.inf)
    if distances.min() <= EPS_CMP:
        i, j = np.unravel_index(np.argmin(distances), distances.shape)
        clash = [inputs[i].tolist(), inputs[j].tolist()]
        raise InvalidInputError(f"{what} inputs must be pairwise distinct", context=clash)


def _lookup(inputs: Vector, x: Vector, kind: NormKind) -> int | None:
    distances = pairwise_distances(x, inputs, kind)[0]
    index = int(np.argmin(distances))
    return index if distances[index] <= EPS_CMP else None


class TabulatedMap(SingleValuedMap):
    """Map given by a finite table of ``input -> output`` pairs."""

    type_tag = "tabulated"

    def __init__(
        self,
        entries: Sequence[tuple[Iterable[float], Iterable[float]]],
        *,
        kind: NormKind = NormKind.L2,
    ) -> None:
        """Build the table; inputs are matched within ``EPS_CMP`` under ``kind``."""
        if not entries:
            raise InvalidInputError.empty_set()
        self._inputs = validate_points([entry[0] for entry in entries])
        self._outputs = validate_points([entry[1] for entry in entries])
        validate_dimension(self._outputs, self._inputs.shape[1])
        _validate_distinct(self._inputs, kind, "Tabulated")
        self._kind = kind

    @property
    def dimension(self) -> int:
        """Dimension of the space the map acts on."""
        return int(self._inputs.shape[1])

    def evaluate(self, x: Vector) -> Vector:
        """Return the tabulated image of ``x``."""
        point = validate_vector(x)
        validate_dimension(point, self.dimension)
        index = _lookup(self._inputs, point, self._kind)
        if index is None:
            raise DomainError(point)
        return self._outputs[index]

    def domain(self) -> Vector:
        """Return the table inputs."""
        return self._inputs

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {
            "type": self.type_tag,
            "entries": [
                {"input": x.tolist(), "output": y.tolist()}
                for x, y in zip(self._inputs, self._outputs)
            ],
        }


class AffineMap(SingleValuedMap):
    """Total map ``x -> A x + c``."""

    type_tag = "affine"

    def __init__(
        self,
        matrix: Iterable[Iterable[float]] | Vector,
        offset: Iterable[float] | Vector,
    ) -> None:
        """Build the map from an ``n x n`` matrix and an offset vector."""
        self._matrix = _validate_matrix(matrix)
        self._offset = validate_vector(offset)
        validate_dimension(self._offset, self._matrix.shape[0])

    @property
    def matrix(self) -> Vector:
        """Linear part ``A``."""
        return self._matrix

    @property
    def offset(self) -> Vector:
        """Translation part ``c``."""
        return self._offset

    @property
    def dimension(self) -> int:
        """Dimension of the space the map acts on."""
        return int(self._offset.shape[0])

    def evaluate(self, x: Vector) -> Vector:
        """Return ``A x + c``."""
        point = validate_vector(x)
        validate_dimension(point, self.dimension)
        return self._matrix @ point + self._offset

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {
            "type": self.type_tag,
            "matrix": self._matrix.tolist(),
            "offset": self._offset.tolist(),
        }


class PiecewiseOverrideMap(SingleValuedMap):
    """Default rule with a finite list of exceptional points.

    Inputs matching an override (within ``EPS_CMP``) take the override's
    output; every other input goes through ``default``.
    """

    type_tag = "piecewise_override"

    def __init__(
        self,
        default: SingleValuedMap,
        overrides: Sequence[tuple[Iterable[float], Iterable[float]]],
        *,
        kind: NormKind = NormKind.L2,
    ) -> None:
        """Build the map from a default rule and override pairs."""
        self._default = default
        self._kind = kind
        if overrides:
            self._inputs = validate_points([entry[0] for entry in overrides])
            self._outputs = validate_points([entry[1] for entry in overrides])
            validate_dimension(self._inputs, default.dimension)
            validate_dimension(self._outputs, default.dimension)
            _validate_distinct(self._inputs, kind, "Override")
        else:
            self._inputs = np.empty((0, default.dimension))
            self._outputs = np.empty((0, default.dimension))

    @property
    def default(self) -> SingleValuedMap:
        """Rule applied away from the overrides."""
        return self._default

    @property
    def dimension(self) -> int:
        """Dimension of the space the map acts on."""
        return self._default.dimension

    def evaluate(self, x: Vector) -> Vector:
        """Return the override output at an exceptional point, else the default."""
        point = validate_vector(x)
        validate_dimension(point, self.dimension)
        if len(self._inputs):
            index = _lookup(self._inputs, point, self._kind)
            if index is not None:
                return self._outputs[index]
        return self._default.evaluate(point)

    def domain(self) -> Vector | None:
        """Return the finite domain, or None when the default rule is total."""
        base = self._default.domain()
        if base is None:
            return None
        return PointSet.from_points(np.vstack([base, self._inputs]), kind=self._kind).points

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {
            "type": self.type_tag,
            "default": self._default.as_dict(),
            "overrides": [
                {"input": x.tolist(), "output": y.tolist()}
                for x, y in zip(self._inputs, self._outputs)
            ],
        }


class AveragedMap(SingleValuedMap):
    """The averaged operator ``T_lam`` of a single-valued map, as a map."""

    type_tag = "averaged"

    def __init__(self, base: SingleValuedMap, lam: float) -> None:
        """Wrap ``base`` with averaging weight ``lam`` in ``(0, 1]``."""
        self._base = base
        self._lam = validate_averaging_weight(lam)

    @property
    def base(self) -> SingleValuedMap:
        """The map being averaged."""
        return self._base

    @property
    def lam(self) -> float:
        """Averaging weight."""
        return self._lam

    @property
    def dimension(self) -> int:
        """Dimension of the space the map acts on."""
        return self._base.dimension

    def evaluate(self, x: Vector) -> Vector:
        """Return ``(1 - lam) x + lam T x``."""
        return averaged_apply(self._base, self._lam, x)

    def domain(self) -> Vector | None:
        """Return the domain of the averaged map."""
        return self._base.domain()

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {"type": self.type_tag, "lambda": self._lam, "base": self._base.as_dict()}


class SetTabulatedMap(MultiValuedMap):
    """Multivalued map given by a finite table of ``input -> set`` pairs."""

    type_tag = "set_tabulated"

    def __init__(
        self,
        entries: Sequence[tuple[Iterable[float], Iterable[Iterable[float]] | PointSet]],
        *,
        kind: NormKind = NormKind.L2,
    ) -> None:
        """Build the table; every image set must be nonempty."""
        if not entries:
            raise InvalidInputError.empty_set()
        self._inputs = validate_points([entry[0] for entry in entries])
        self._kind = kind
        images: list[PointSet] = []
        for _, image in entries:
            image_set = image if isinstance(image, PointSet) else PointSet.from_points(image, kind=kind)
            validate_dimension(image_set.points, self._inputs.shape[1])
            images.append(image_set)
        self._images = tuple(images)
        _validate_distinct(self._inputs, kind, "Tabulated")

    @property
    def dimension(self) -> int:
        """Dimension of the space the map acts on."""
        return int(self._inputs.shape[1])

    def evaluate(self, x: Vector) -> PointSet:
        """Return the tabulated image set of ``x``."""
        point = validate_vector(x)
        validate_dimension(point, self.dimension)
        index = _lookup(self._inputs, point, self._kind)
        if index is None:
            raise DomainError(point)
        return self._images[index]

    def domain(self) -> Vector:
        """Return the table inputs."""
        return self._inputs

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {
            "type": self.type_tag,
            "entries": [
                {"input": x.tolist(), "output": image.as_list()}
                for x, image in zip(self._inputs, self._images)
            ],
        }


class AffineFamilyMap(MultiValuedMap):
    """Multivalued map ``Tx = {A_i x + c_i : i}``."""

    type_tag = "affine_family"

    def __init__(
        self,
        rules: Sequence[tuple[Iterable[Iterable[float]] | Vector, Iterable[float] | Vector]],
        *,
        kind: NormKind = NormKind.L2,
    ) -> None:
        """Build the family from ``(matrix, offset)`` rules."""
        if not rules:
            raise InvalidInputError.empty_set()
        self._rules = tuple(AffineMap(matrix, offset) for matrix, offset in rules)
        dimension = self._rules[0].dimension
        for rule in self._rules:
            validate_dimension(rule.offset, dimension)
        self._kind = kind

    @property
    def dimension(self) -> int:
        """Dimension of the space the map acts on."""
        return self._rules[0].dimension

    def evaluate(self, x: Vector) -> PointSet:
        """Return the set of images under every rule."""
        point = validate_vector(x)
        validate_dimension(point, self.dimension)
        return PointSet.from_points(np.stack([rule.evaluate(point) for rule in self._rules]), kind=self._kind)

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {
            "type": self.type_tag,
            "rules": [
                {"matrix": rule.matrix.tolist(), "offset": rule.offset.tolist()}
                for rule in self._rules
            ],
        }


class AveragedMultiMap(MultiValuedMap):
    """The averaged operator ``T_lam`` of a multivalued map, as a map."""

    type_tag = "averaged_multi"

    def __init__(self, base: MultiValuedMap, lam: float, *, kind: NormKind = NormKind.L2) -> None:
        """Wrap ``base`` with averaging weight ``lam`` in ``(0, 1]``."""
        self._base = base
        self._lam = validate_averaging_weight(lam)
        self._kind = kind

    @property
    def dimension(self) -> int:
        """Dimension of the space the map acts on."""
        return self._base.dimension

    def evaluate(self, x: Vector) -> PointSet:
        """Return the translate ``{(1 - lam) x + lam s : s in Tx}``."""
        return averaged_set(self._base, self._lam, x, self._kind)

    def domain(self) -> Vector | None:
        """Return the domain of the averaged map."""
        return self._base.domain()

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {"type": self.type_tag, "lambda": self._lam, "base": self._base.as_dict()}


class SingletonMultiMap(MultiValuedMap):
    """A single-valued map viewed as a multivalued one, ``Tx = {T x}``."""

    type_tag = "singleton"

    def __init__(self, base: SingleValuedMap, *, kind: NormKind = NormKind.L2) -> None:
        """Lift ``base`` to singleton images."""
        self._base = base
        self._kind = kind

    @property
    def dimension(self) -> int:
        """Dimension of the space the map acts on."""
        return self._base.dimension

    def evaluate(self, x: Vector) -> PointSet:
        """Return ``{T x}``."""
        return PointSet.from_points(self._base.evaluate(x)[np.newaxis, :], kind=self._kind)

    def domain(self) -> Vector | None:
        """Return the domain of the lifted map."""
        return self._base.domain()

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
        return {"type": self.type_tag, "base": self._base.as_dict()}


@dataclass(frozen=True)
class ContractionParams:
    """Parameters ``(b, theta)`` with derived ``lam = 1/(b+1)`` and ``r = theta lam``.

    ``s`` is the threshold of the Gamma family and ``gamma`` the antecedent
    factor of the multivalued gamma conditions; both are optional.
    """

    b: float
    theta: float
    s: float | None = None
    gamma: float | None = None
    lam: float = field(init=False)
    r: float = field(init=False)

    def __post_init__(self) -> None:
        """Validate ranges and derive ``lam`` and ``r``."""
        b = validate_enrichment(self.b)
        theta = validate_theta(self.theta, b)
        lam = 1.0 / (b + 1.0)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "r", theta * lam)
        if self.r >= 1.0:
            raise InvalidConditionError.out_of_range("r", self.r, "[0, 1)")
        if self.s is not None:
            try:
                object.__setattr__(self, "s", validate_positive("s", self.s))
            except InvalidInputError as exc:
                raise InvalidConditionError(exc.message, context=exc.context) from exc
        if self.gamma is not None:
            gamma = float(self.gamma)
            if not (0.0 < gamma < 1.0):
                raise InvalidConditionError.out_of_range("gamma", gamma, "(0, 1)")
            object.__setattr__(self, "gamma", gamma)

    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation of the primary fields."""
        data: dict[str, Any] = {"b": self.b, "theta": self.theta}
        if self.s is not None:
            data["s"] = self.s
        if self.gamma is not None:
            data["gamma"] = self.gamma
        return data


def evaluate(T: SingleValuedMap, x: Iterable[float] | Vector) -> Vector:
    """Return ``Tx``.

    Raises:
        DomainError: If ``x`` misses a tabulated domain.

    """
    return T.evaluate(validate_vector(x))


def evaluate_multi(T: MultiValuedMap, x: Iterable[float] | Vector) -> PointSet:
    """Return the image set ``Tx``.

    Raises:
        DomainError: If ``x`` misses a tabulated domain.

    """
    return T.evaluate(validate_vector(x))


def averaged_apply(T: SingleValuedMap, lam: float, x: Iterable[float] | Vector) -> Vector:
    """Return ``T_lam x = (1 - lam) x + lam T x``; ``lam = 1`` gives ``Tx`` exactly."""
    lam = validate_averaging_weight(lam)
    point = validate_vector(x)
    image = T.evaluate(point)
    if lam == 1.0:
        return image
    return (1.0 - lam) * point + lam * image


def averaged_set(
    T: MultiValuedMap,
    lam: float,
    x: Iterable[float] | Vector,
    kind: NormKind = NormKind.L2,
) -> PointSet:
    """Return ``{(1 - lam) x + lam s : s in Tx}``; ``lam = 1`` gives ``Tx`` exactly.

    Translated points closer than ``EPS_CMP`` under ``kind`` are merged.
    """
    lam = validate_averaging_weight(lam)
    point = validate_vector(x)
    image = T.evaluate(point)
    if lam == 1.0:
        return image
    return PointSet.from_points((1.0 - lam) * point + lam * image.points, kind=kind)


def averaged(T: AnyMap, lam: float, kind: NormKind = NormKind.L2) -> AnyMap:
    """Return the averaged operator of ``T`` as a first-class map."""
    if isinstance(T, MultiValuedMap):
        return AveragedMultiMap(T, lam, kind=kind)
    return AveragedMap(T, lam)


def fixed_point_residual(
    T: AnyMap,
    x: Iterable[float] | Vector,
    kind: NormKind = NormKind.L2,
) -> float:
    """Return ``||x - Tx||`` (single-valued) or ``d(x, Tx)`` (multivalued)."""
    point = validate_vector(x)
    if isinstance(T, MultiValuedMap):
        return dist_point_set(point, T.evaluate(point), kind)
    return dist(point, T.evaluate(point), kind)
