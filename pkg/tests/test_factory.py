"""Tests for building maps, conditions and samples from JSON specifications."""

from typing import Any

import numpy as np
import pytest

from f9_fixed_point.conditions import Banach, GammaFamily, MultiGamma, Suzuki, SuzukiBerinde
from f9_fixed_point.factory import (
    MapFactory,
    _default_factory,
    condition_from_spec,
    register_map_factory,
    resolve_map,
    sample_from_spec,
)
from f9_fixed_point.interfaces import InvalidConditionError, NormKind, ProblemFileError
from f9_fixed_point.maps import (
    AffineFamilyMap,
    AffineMap,
    PiecewiseOverrideMap,
    SetTabulatedMap,
    TabulatedMap,
)

# ruff: noqa: S101, PLR2004  # pytest assertions and magic numbers are ok in tests


class TestMapFactory:
    """Test the MapFactory class."""

    def test_factory_initialization(self) -> None:
        """Test factory initializes with built-in map types."""
        factory = MapFactory()
        assert factory.types == ["affine", "affine_family", "piecewise_override", "set_tabulated", "tabulated"]

    def test_resolve_tabulated(self) -> None:
        """Test resolving a tabulated map."""
        entries = [{"input": [0], "output": [1]}, {"input": [1], "output": [0]}]
        T = resolve_map({"type": "tabulated", "entries": entries})
        assert isinstance(T, TabulatedMap)
        assert T.evaluate(np.array([1.0])).tolist() == [0.0]

    def test_resolve_affine(self) -> None:
        """Test resolving an affine map."""
        T = resolve_map({"type": "affine", "matrix": [[0.5]], "offset": [1]})
        assert isinstance(T, AffineMap)
        assert T.evaluate(np.array([2.0])).tolist() == [2.0]

    def test_resolve_piecewise_override(self) -> None:
        """Test resolving a nested piecewise map."""
        spec = {
            "type": "piecewise_override",
            "default": {"type": "affine", "matrix": [[0, 0], [0, 0]], "offset": [0, 0]},
            "overrides": [{"input": [4, 5], "output": [4, 0]}],
        }
        T = resolve_map(spec)
        assert isinstance(T, PiecewiseOverrideMap)
        assert T.evaluate(np.array([4.0, 5.0])).tolist() == [4.0, 0.0]
        assert T.evaluate(np.array([1.0, 1.0])).tolist() == [0.0, 0.0]

    def test_resolve_multivalued(self) -> None:
        """Test resolving set-valued maps."""
        table = resolve_map({"type": "set_tabulated", "entries": [{"input": [0], "output": [[0], [1]]}]})
        assert isinstance(table, SetTabulatedMap)
        assert len(table.evaluate(np.array([0.0]))) == 2
        family = resolve_map({"type": "affine_family", "rules": [{"matrix": [[0.25]], "offset": [0]}]})
        assert isinstance(family, AffineFamilyMap)

    def test_unknown_type(self) -> None:
        """Test that unknown map types are rejected with the field path."""
        with pytest.raises(ProblemFileError, match=r"unsupported map type 'spline'.*map\.type"):
            resolve_map({"type": "spline"})

    def test_missing_field_path(self) -> None:
        """Test that missing nested fields name their dotted path."""
        with pytest.raises(ProblemFileError, match=r"map\.entries\[1\]"):
            resolve_map({"type": "tabulated", "entries": [{"input": [0], "output": [0]}, {"input": [1]}]})
        with pytest.raises(ProblemFileError, match=r"map\.default"):
            resolve_map({"type": "piecewise_override"})

    def test_invalid_values_wrapped(self) -> None:
        """Test that validation errors surface as problem-file errors."""
        with pytest.raises(ProblemFileError, match="square"):
            resolve_map({"type": "affine", "matrix": [[1, 2]], "offset": [0]})

    def test_multivalued_default_rejected(self) -> None:
        """Test that a piecewise default rule must be single-valued."""
        family = {"type": "affine_family", "rules": [{"matrix": [[1]], "offset": [0]}]}
        spec = {"type": "piecewise_override", "default": family}
        with pytest.raises(ProblemFileError, match="single-valued"):
            resolve_map(spec)

    def test_register_custom_type(self) -> None:
        """Test registering a custom builder on a factory instance."""
        factory = MapFactory()

        def scaled(spec: dict[str, Any], path: str, kind: NormKind, _: MapFactory) -> AffineMap:
            return AffineMap([[spec["factor"]]], [0.0])

        factory.register("scaled", scaled)
        assert "scaled" in factory.types
        T = factory.resolve({"type": "scaled", "factor": 0.5})
        assert T.evaluate(np.array([4.0])).tolist() == [2.0]

    def test_register_requires_callable(self) -> None:
        """Test that non-callables are rejected."""
        with pytest.raises(TypeError):
            MapFactory().register("broken", "not callable")  # type: ignore[arg-type]

    def test_register_on_default_factory(self) -> None:
        """Test the module-level registration helper."""
        try:
            register_map_factory("halving", lambda spec, path, kind, factory: AffineMap([[0.5]], [0.0]))
            assert isinstance(resolve_map({"type": "halving"}), AffineMap)
        finally:
            _default_factory._factories.pop("halving", None)


class TestConditionFromSpec:
    """Tests for condition construction from tags and params."""

    def test_suzuki_berinde(self) -> None:
        """The enriched condition reads b and theta."""
        assert condition_from_spec("suzuki_berinde", {"b": 1, "theta": 1}) == SuzukiBerinde(1.0, 1.0)

    def test_ratio_defaults_to_theta_lambda(self) -> None:
        """Banach and Suzuki fall back to r = theta / (b + 1)."""
        assert condition_from_spec("banach", {"b": 1, "theta": 1}) == Banach(0.5)
        assert condition_from_spec("suzuki", {"r": 0.3, "b": 1, "theta": 1}) == Suzuki(0.3)

    def test_b_defaults_to_zero(self) -> None:
        """Omitted b means no enrichment."""
        assert condition_from_spec("multi_gamma", {"theta": 0.5, "gamma": 0.6}) == MultiGamma(0.0, 0.5, 0.6)
        assert condition_from_spec("gamma_family", {"theta": 0.5, "s": 1.0}) == GammaFamily(0.0, 0.5, 1.0)

    def test_parameterless_conditions(self) -> None:
        """Strict conditions need no parameters."""
        assert condition_from_spec("edelstein").tag == "edelstein"
        assert condition_from_spec("suzuki_strict", {}).tag == "suzuki_strict"

    def test_unknown_tag(self) -> None:
        """Unknown tags list the supported ones."""
        with pytest.raises(ProblemFileError, match="unknown condition 'kannan'"):
            condition_from_spec("kannan", {})

    def test_missing_parameter(self) -> None:
        """Missing parameters name their field."""
        with pytest.raises(ProblemFileError, match=r"params\.theta"):
            condition_from_spec("suzuki_berinde", {"b": 1})
        with pytest.raises(ProblemFileError, match=r"params\.theta"):
            condition_from_spec("banach", {})

    def test_out_of_range_parameter(self) -> None:
        """Range violations keep their specific error."""
        with pytest.raises(InvalidConditionError):
            condition_from_spec("suzuki_berinde", {"b": 1, "theta": 3})


class TestSampleFromSpec:
    """Tests for pair sample construction from specifications."""

    def test_grid(self) -> None:
        """Grid samples are exhaustive over the grid."""
        sample = sample_from_spec({"kind": "grid", "bounds": [[0, 1], [0, 1]], "steps": 2})
        assert len(sample) == 16

    def test_random_with_override(self) -> None:
        """Command-line seed and count replace file values."""
        spec = {"kind": "random", "bounds": [[-1, 1]], "count": 10, "seed": 1}
        assert len(sample_from_spec(spec)) == 10
        overridden = sample_from_spec(spec, seed=2, count=30)
        assert len(overridden) == 30
        assert overridden.provenance.details["seed"] == 2

    def test_missing_field(self) -> None:
        """Missing kind-specific fields name their path."""
        with pytest.raises(ProblemFileError, match=r"pairs\.bounds"):
            sample_from_spec({"kind": "grid", "steps": 3})
        with pytest.raises(ProblemFileError, match=r"pairs\.count"):
            sample_from_spec({"kind": "random", "bounds": [[0, 1]]})

    def test_not_an_object(self) -> None:
        """The pairs field must be an object."""
        with pytest.raises(ProblemFileError, match="expected an object"):
            sample_from_spec([1, 2])  # type: ignore[arg-type]
