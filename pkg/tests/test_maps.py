"""Tests for single- and multivalued maps and the averaged operator."""

from __future__ import annotations

import numpy as np
import pytest

from f9_fixed_point.demo import example_problem
from f9_fixed_point.interfaces import (
    DomainError,
    InvalidConditionError,
    InvalidInputError,
    NormKind,
)
from f9_fixed_point.maps import (
    AffineFamilyMap,
    AffineMap,
    AveragedMap,
    AveragedMultiMap,
    ContractionParams,
    PiecewiseOverrideMap,
    SetTabulatedMap,
    SingletonMultiMap,
    TabulatedMap,
    averaged,
    averaged_apply,
    averaged_set,
    evaluate,
    evaluate_multi,
    fixed_point_residual,
)


def _sorted(points: np.ndarray) -> list[list[float]]:
    return sorted(points.tolist())


@pytest.fixture
def example_map() -> PiecewiseOverrideMap:
    """Return the worked example map."""
    mapping = example_problem().map
    assert isinstance(mapping, PiecewiseOverrideMap)
    return mapping


class TestSingleValuedMaps:
    """Tests for tabulated, affine and piecewise maps."""

    def test_example_map_overrides(self, example_map: PiecewiseOverrideMap) -> None:
        """Exceptional points take their override outputs."""
        assert evaluate(example_map, [4.0, 5.0]).tolist() == [4.0, 0.0]
        assert evaluate(example_map, [5.0, 4.0]).tolist() == [0.0, 4.0]

    def test_example_map_default(self, example_map: PiecewiseOverrideMap) -> None:
        """Every other point maps to the origin."""
        assert evaluate(example_map, [0.0, 0.0]).tolist() == [0.0, 0.0]
        assert evaluate(example_map, [-10.0, 5.0]).tolist() == [0.0, 0.0]
        assert example_map.domain() is None

    def test_affine(self) -> None:
        """Affine maps evaluate A x + c."""
        T = AffineMap([[0.5]], [1.0])
        assert evaluate(T, [0.0]).tolist() == [1.0]
        assert T.dimension == 1

    def test_affine_rejects_non_square(self) -> None:
        """The linear part must be square."""
        with pytest.raises(InvalidInputError, match="square"):
            AffineMap([[1.0, 2.0]], [0.0])

    def test_affine_dimension_mismatch(self) -> None:
        """Offsets must match the matrix size."""
        with pytest.raises(InvalidInputError, match="Dimension mismatch"):
            AffineMap([[1.0, 0.0], [0.0, 1.0]], [0.0])

    def test_tabulated_lookup_and_miss(self) -> None:
        """Table lookups succeed within tolerance and fail elsewhere."""
        T = TabulatedMap([([0.0, 0.0], [1.0, 1.0]), ([1.0, 1.0], [0.0, 0.0])])
        assert evaluate(T, [1e-12, 0.0]).tolist() == [1.0, 1.0]
        with pytest.raises(DomainError) as excinfo:
            evaluate(T, [2.0, 2.0])
        assert excinfo.value.point == [2.0, 2.0]

    def test_tabulated_duplicate_inputs(self) -> None:
        """Tables with repeated inputs are ambiguous."""
        with pytest.raises(InvalidInputError, match="distinct"):
            TabulatedMap([([0.0], [1.0]), ([0.0], [2.0])])

    def test_tabulated_domain(self) -> None:
        """The domain of a table is its inputs."""
        T = TabulatedMap([([0.0], [1.0]), ([1.0], [0.0])])
        assert T.domain().tolist() == [[0.0], [1.0]]

    def test_piecewise_over_table_keeps_finite_domain(self) -> None:
        """Overrides extend a finite default domain."""
        default = TabulatedMap([([0.0], [0.0])])
        T = PiecewiseOverrideMap(default, [([3.0], [0.0])])
        assert _sorted(T.domain()) == [[0.0], [3.0]]

    def test_as_dict(self, example_map: PiecewiseOverrideMap) -> None:
        """Maps serialise to their specification."""
        data = example_map.as_dict()
        assert data["type"] == "piecewise_override"
        assert data["default"]["type"] == "affine"
        assert data["overrides"][0] == {"input": [4.0, 5.0], "output": [4.0, 0.0]}


class TestMultiValuedMaps:
    """Tests for set-valued maps."""

    def test_affine_family_single_rule(self) -> None:
        """A one-rule family has singleton images."""
        T = AffineFamilyMap([([[0.25]], [0.0])])
        assert evaluate_multi(T, [8.0]).as_list() == [[2.0]]

    def test_affine_family_two_rules(self) -> None:
        """Every rule contributes a member."""
        T = AffineFamilyMap([([[0.25]], [0.0]), ([[0.0]], [0.0])])
        assert _sorted(evaluate_multi(T, [8.0]).points) == [[0.0], [2.0]]

    def test_set_tabulated(self) -> None:
        """Set tables return their stored image."""
        T = SetTabulatedMap([([0.0], [[0.0]]), ([1.0], [[0.0], [1.0]])])
        assert evaluate_multi(T, [0.0]).as_list() == [[0.0]]
        assert len(evaluate_multi(T, [1.0])) == 2
        with pytest.raises(DomainError):
            evaluate_multi(T, [5.0])

    def test_singleton_lift(self) -> None:
        """Single-valued maps lift to singleton images."""
        T = SingletonMultiMap(AffineMap([[0.5]], [1.0]))
        assert evaluate_multi(T, [2.0]).as_list() == [[2.0]]


class TestAveragedOperator:
    """Tests for the averaged operator and its multivalued analogue."""

    def test_example_averaged_apply(self, example_map: PiecewiseOverrideMap) -> None:
        """T_lam at the exceptional and default points."""
        assert averaged_apply(example_map, 0.5, [4.0, 5.0]).tolist() == [4.0, 2.5]
        assert averaged_apply(example_map, 0.5, [2.0, 1.0]).tolist() == [1.0, 0.5]

    def test_identity_is_fixed(self) -> None:
        """The averaged identity is the identity."""
        T = AffineMap(np.eye(3), np.zeros(3))
        x = [1.5, -2.0, 7.0]
        for lam in (0.1, 0.5, 1.0):
            assert averaged_apply(T, lam, x).tolist() == pytest.approx(x, abs=1e-12)

    def test_lambda_one_is_exact(self) -> None:
        """lam = 1 returns Tx bit for bit."""
        T = AffineMap([[0.3, 0.1], [0.2, 0.7]], [0.1, 0.9])
        x = np.array([1.1, -3.3])
        assert np.array_equal(averaged_apply(T, 1.0, x), T.evaluate(x))

    def test_lambda_out_of_range(self) -> None:
        """lam must lie in (0, 1]."""
        T = AffineMap([[0.5]], [0.0])
        with pytest.raises(InvalidInputError):
            averaged_apply(T, 0.0, [1.0])
        with pytest.raises(InvalidInputError):
            averaged_apply(T, 1.5, [1.0])

    def test_averaged_set_examples(self) -> None:
        """The averaged set translates every member."""
        T = AffineFamilyMap([([[0.0]], [0.0]), ([[0.0]], [8.0])])
        assert _sorted(averaged_set(T, 0.5, [4.0]).points) == [[2.0], [6.0]]
        zero = AffineFamilyMap([([[0.0]], [0.0])])
        assert averaged_set(zero, 0.25, [8.0]).as_list() == [[6.0]]
        identity = AffineFamilyMap([([[1.0]], [0.0])])
        assert averaged_set(identity, 0.3, [5.0]).points[0, 0] == pytest.approx(5.0, abs=1e-12)

    def test_averaged_set_merges_under_active_norm(self) -> None:
        """Translated points within EPS_CMP under the given norm collapse."""
        T = AffineFamilyMap([([[0.0, 0.0], [0.0, 0.0]], [0.0, 0.0]), ([[0.0, 0.0], [0.0, 0.0]], [9e-10, 9e-10])])
        assert len(averaged_set(T, 1.0, [1.0, 1.0], NormKind.L2)) == 2
        assert len(averaged_set(T, 1.0, [1.0, 1.0], NormKind.LINF)) == 1
        assert len(averaged(T, 1.0, kind=NormKind.LINF).evaluate(np.array([1.0, 1.0]))) == 1

    def test_averaged_map_matches_apply(self) -> None:
        """The first-class averaged map agrees with averaged_apply exactly."""
        T = AffineMap([[0.3, 0.1], [0.2, 0.7]], [0.1, 0.9])
        T_lam = averaged(T, 0.25)
        assert isinstance(T_lam, AveragedMap)
        x = np.array([2.0, -1.0])
        assert np.array_equal(T_lam.evaluate(x), averaged_apply(T, 0.25, x))

    def test_averaged_multi_map(self) -> None:
        """Averaging a multivalued map yields a multivalued map."""
        T = AffineFamilyMap([([[0.0]], [0.0]), ([[0.0]], [8.0])])
        T_lam = averaged(T, 0.5)
        assert isinstance(T_lam, AveragedMultiMap)
        assert _sorted(T_lam.evaluate(np.array([4.0])).points) == [[2.0], [6.0]]

    def test_enrichment_identity(self) -> None:
        """||b(x-y) + Tx - Ty|| equals (b+1)||T_lam x - T_lam y|| for affine maps."""
        rng = np.random.default_rng(2)
        T = AffineMap(rng.normal(size=(3, 3)), rng.normal(size=3))
        for _ in range(1000):
            x, y = rng.normal(scale=5.0, size=(2, 3))
            b = rng.uniform(0.0, 10.0)
            lam = 1.0 / (b + 1.0)
            enriched = np.linalg.norm(b * (x - y) + T.evaluate(x) - T.evaluate(y))
            averaged_gap = (b + 1.0) * np.linalg.norm(averaged_apply(T, lam, x) - averaged_apply(T, lam, y))
            assert enriched == pytest.approx(averaged_gap, rel=1e-9, abs=1e-12)


class TestResidual:
    """Tests for the fixed-point residual."""

    def test_example_residuals(self, example_map: PiecewiseOverrideMap) -> None:
        """The origin is fixed and (4, 5) is displaced by 5."""
        assert fixed_point_residual(example_map, [0.0, 0.0]) == 0.0
        assert fixed_point_residual(example_map, [4.0, 5.0]) == 5.0

    def test_multivalued_residual(self) -> None:
        """The residual of a set-valued map is d(x, Tx)."""
        T = AffineFamilyMap([([[0.25]], [0.0])])
        assert fixed_point_residual(T, [0.0]) == 0.0
        assert fixed_point_residual(T, [8.0], NormKind.L1) == 6.0


class TestContractionParams:
    """Tests for parameter validation and derived quantities."""

    def test_derived_values(self) -> None:
        """lam = 1/(b+1) and r = theta lam."""
        params = ContractionParams(1.0, 1.0)
        assert params.lam == 0.5
        assert params.r == 0.5
        assert params.as_dict() == {"b": 1.0, "theta": 1.0}

    def test_b_zero_gives_unit_lambda(self) -> None:
        """Without enrichment the averaged operator is T itself."""
        params = ContractionParams(0.0, 0.3)
        assert params.lam == 1.0
        assert params.r == 0.3

    def test_negative_b_rejected(self) -> None:
        """b must be non-negative."""
        with pytest.raises(InvalidConditionError):
            ContractionParams(-0.1, 0.0)

    def test_theta_bound(self) -> None:
        """theta must stay below b + 1."""
        with pytest.raises(InvalidConditionError, match="theta"):
            ContractionParams(1.0, 2.0)
        with pytest.raises(InvalidConditionError):
            ContractionParams(1.0, -0.5)

    def test_optional_fields(self) -> None:
        """s must be positive and gamma must lie in (0, 1)."""
        assert ContractionParams(1.0, 1.0, s=0.25).s == 0.25
        with pytest.raises(InvalidConditionError):
            ContractionParams(1.0, 1.0, s=0.0)
        with pytest.raises(InvalidConditionError, match="gamma"):
            ContractionParams(1.0, 1.0, gamma=1.0)
