"""Map factory for resolving JSON map specifications into map instances.

A map specification is a JSON object whose ``"type"`` field selects a
builder; builders for the built-in types are registered on construction and
custom types can be added with ``register_map_factory``. Conditions and pair
samples are built from their specifications here too, so that every
validation failure is reported with the dotted field path it came from.

Supported map types:
    - tabulated - TabulatedMap from ``entries``
    - affine - AffineMap from ``matrix`` and ``offset``
    - piecewise_override - PiecewiseOverrideMap from ``default`` and ``overrides``
    - set_tabulated - SetTabulatedMap from ``entries`` with set outputs
    - affine_family - AffineFamilyMap from ``rules``

Example:
    >>> from f9_fixed_point.factory import resolve_map
    >>> T = resolve_map({"type": "affine", "matrix": [[0.5]], "offset": [1.0]})
    >>> T.evaluate([2.0])
    array([2.])

"""

from __future__ import annotations

from collections.abc import Mapping
from typing import TYPE_CHECKING, Any, Callable

from .conditions import CONDITION_TYPES, Condition, PairSample, make_pair_sample
from .interfaces import InvalidInputError, NormKind, ProblemFileError
from .maps import (
    AffineFamilyMap,
    AffineMap,
    ContractionParams,
    PiecewiseOverrideMap,
    SetTabulatedMap,
    SingleValuedMap,
    TabulatedMap,
)

if TYPE_CHECKING:
    from .interfaces import Vector
    from .maps import AnyMap


def _require(spec: Mapping[str, Any], key: str, path: str) -> Any:
    if not isinstance(spec, Mapping):
        raise ProblemFileError.invalid_field(path, "expected an object")
    if key not in spec:
        raise ProblemFileError.missing_field(f"{path}.{key}")
    return spec[key]


def _pairs(entries: Any, path: str) -> list[tuple[Any, Any]]:
    if not isinstance(entries, list) or not entries:
        raise ProblemFileError.invalid_field(path, "expected a nonempty list")
    return [
        (_require(entry, "input", f"{path}[{i}]"), _require(entry, "output", f"{path}[{i}]"))
        for i, entry in enumerate(entries)
    ]


class MapFactory:
    """Factory for creating maps from JSON specifications."""

    def __init__(self) -> None:
        """Initialise the factory with built-in map type handlers."""
        self._factories: dict[str, Callable[..., Any]] = {
            "tabulated": self._create_tabulated,
            "affine": self._create_affine,
            "piecewise_override": self._create_piecewise_override,
            "set_tabulated": self._create_set_tabulated,
            "affine_family": self._create_affine_family,
        }

    @property
    def types(self) -> list[str]:
        """Registered map types, sorted."""
        return sorted(self._factories)

    def resolve(
        self,
        spec: Mapping[str, Any],
        *,
        kind: NormKind = NormKind.L2,
        path: str = "map",
    ) -> AnyMap:
        """Create a map instance from a specification.

        Args:
            spec: JSON object with a ``"type"`` field
            kind: Norm used to match tabulated inputs
            path: Dotted field path reported in errors

        Raises:
            ProblemFileError: If the type is unknown or the fields are invalid

        """
        map_type = _require(spec, "type", path)
        if map_type not in self._factories:
            supported = ", ".join(self.types)
            reason = f"unsupported map type '{map_type}', expected one of {supported}"
            raise ProblemFileError.invalid_field(f"{path}.type", reason)
        try:
            return self._factories[map_type](spec, path, kind, self)
        except ProblemFileError:
            raise
        except InvalidInputError as exc:
            raise ProblemFileError.invalid_field(path, str(exc)) from exc
        except (TypeError, ValueError) as exc:
            raise ProblemFileError.invalid_field(path, str(exc)) from exc

    def register(self, map_type: str, factory_func: Callable[..., Any]) -> None:
        """Register a custom builder for a map type.

        Args:
            map_type: Value of the ``"type"`` field to handle
            factory_func: Callable taking ``(spec, path, kind, factory)``

        """
        if not callable(factory_func):
            msg = "factory_func must be callable"
            raise TypeError(msg)
        self._factories[map_type] = factory_func

    @staticmethod
    def _create_tabulated(spec: Mapping[str, Any], path: str, kind: NormKind, _: MapFactory) -> TabulatedMap:
        return TabulatedMap(_pairs(_require(spec, "entries", path), f"{path}.entries"), kind=kind)

    @staticmethod
    def _create_affine(spec: Mapping[str, Any], path: str, kind: NormKind, _: MapFactory) -> AffineMap:
        return AffineMap(_require(spec, "matrix", path), _require(spec, "offset", path))

    @staticmethod
    def _create_piecewise_override(
        spec: Mapping[str, Any],
        path: str,
        kind: NormKind,
        factory: MapFactory,
    ) -> PiecewiseOverrideMap:
        default = factory.resolve(_require(spec, "default", path), kind=kind, path=f"{path}.default")
        if not isinstance(default, SingleValuedMap):
            raise ProblemFileError.invalid_field(f"{path}.default", "default rule must be single-valued")
        overrides = spec.get("overrides", [])
        pairs = _pairs(overrides, f"{path}.overrides") if overrides else []
        return PiecewiseOverrideMap(default, pairs, kind=kind)

    @staticmethod
    def _create_set_tabulated(spec: Mapping[str, Any], path: str, kind: NormKind, _: MapFactory) -> SetTabulatedMap:
        return SetTabulatedMap(_pairs(_require(spec, "entries", path), f"{path}.entries"), kind=kind)

    @staticmethod
    def _create_affine_family(spec: Mapping[str, Any], path: str, kind: NormKind, _: MapFactory) -> AffineFamilyMap:
        rules = _require(spec, "rules", path)
        if not isinstance(rules, list) or not rules:
            raise ProblemFileError.invalid_field(f"{path}.rules", "expected a nonempty list")
        return AffineFamilyMap(
            [
                (_require(rule, "matrix", f"{path}.rules[{i}]"), _require(rule, "offset", f"{path}.rules[{i}]"))
                for i, rule in enumerate(rules)
            ],
            kind=kind,
        )


# Global default factory instance
_default_factory = MapFactory()


def resolve_map(spec: Mapping[str, Any], *, kind: NormKind = NormKind.L2, path: str = "map") -> AnyMap:
    """Resolve a map specification using the default factory.

    Raises:
        ProblemFileError: If the type is unknown or the fields are invalid.

    """
    return _default_factory.resolve(spec, kind=kind, path=path)


def register_map_factory(map_type: str, factory_func: Callable[..., Any]) -> None:
    """Register a custom map builder on the default factory.

    Example:
        >>> def scaled(spec, path, kind, factory):
        ...     n = spec["dimension"]
        ...     return AffineMap([[spec["factor"] if i == j else 0.0 for j in range(n)] for i in range(n)], [0.0] * n)
        >>> register_map_factory("scaled", scaled)

    """
    _default_factory.register(map_type, factory_func)


_CONDITION_FIELDS: dict[str, tuple[str, ...]] = {
    "banach": ("r",),
    "suzuki": ("r",),
    "suzuki_strict": (),
    "edelstein": (),
    "suzuki_berinde": ("b", "theta"),
    "gamma_family": ("b", "theta", "s"),
    "compact_berinde": ("b",),
    "multi_suzuki_berinde": ("b", "theta"),
    "multi_gamma": ("b", "theta", "gamma"),
    "multi_compact_gamma": ("b", "gamma"),
}


def condition_from_spec(tag: str, params: Mapping[str, Any] | None = None) -> Condition:
    """Build a condition from its tag and the problem's ``params``.

    ``b`` defaults to 0. Banach and Suzuki use ``params["r"]`` when present,
    otherwise ``r = theta / (b + 1)``.

    Raises:
        ProblemFileError: On an unknown tag or a missing parameter.
        InvalidConditionError: If a parameter is out of range.

    """
    if tag not in CONDITION_TYPES:
        supported = ", ".join(sorted(CONDITION_TYPES))
        raise ProblemFileError.invalid_field("condition", f"unknown condition '{tag}', expected one of {supported}")
    values = dict(params or {})
    values.setdefault("b", 0.0)
    arguments = []
    for name in _CONDITION_FIELDS[tag]:
        if name == "r" and "r" not in values:
            arguments.append(ContractionParams(values["b"], _require(values, "theta", "params")).r)
            continue
        arguments.append(_require(values, name, "params"))
    try:
        return CONDITION_TYPES[tag](*arguments)
    except (TypeError, ValueError) as exc:
        raise ProblemFileError.invalid_field("params", str(exc)) from exc


def sample_from_spec(
    spec: Mapping[str, Any],
    *,
    domain: Vector | None = None,
    seed: int | None = None,
    count: int | None = None,
    kind: NormKind = NormKind.L2,
) -> PairSample:
    """Build a pair sample, reporting missing fields under ``pairs``.

    Raises:
        ProblemFileError: If a required field of the sample kind is missing.
        InvalidInputError: If the sample cannot be drawn (e.g. empty domain).

    """
    if not isinstance(spec, Mapping):
        raise ProblemFileError.invalid_field("pairs", "expected an object")
    try:
        return make_pair_sample(spec, domain=domain, seed=seed, count=count, kind=kind)
    except KeyError as exc:
        raise ProblemFileError.missing_field(f"pairs.{exc.args[0]}") from exc
    except (TypeError, ValueError) as exc:
        raise ProblemFileError.invalid_field("pairs", str(exc)) from exc
