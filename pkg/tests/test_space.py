"""Tests for norms, point sets and the Pompeiu-Hausdorff metric."""

from __future__ import annotations

import math

import numpy as np
import pytest

from f9_fixed_point.interfaces import InvalidInputError, NormKind
from f9_fixed_point.space import (
    PointSet,
    dist,
    dist_point_set,
    excess,
    hausdorff,
    nearest_point,
    norm,
)


def _set(*points: float | tuple[float, ...]) -> PointSet:
    rows = [[p] if isinstance(p, (int, float)) else list(p) for p in points]
    return PointSet.from_points(rows)


def _naive_hausdorff(a: PointSet, b: PointSet, kind: NormKind) -> float:
    table = [[dist(x, y, kind) for y in b] for x in a]
    forward = max(min(row) for row in table)
    backward = max(min(table[i][j] for i in range(len(a))) for j in range(len(b)))
    return max(forward, backward)


class TestNorm:
    """Tests for vector norms and distances."""

    def test_euclidean_norm(self) -> None:
        """The l2 norm of (3, 4) is 5."""
        assert norm([3.0, 4.0], NormKind.L2) == 5.0

    def test_zero_vector(self) -> None:
        """The zero vector has norm 0 under every norm."""
        for kind in NormKind:
            assert norm([0.0, 0.0], kind) == 0.0

    def test_diagonal_unit_step(self) -> None:
        """The l2 norm of (-1, 1) is sqrt(2)."""
        assert norm([-1.0, 1.0], NormKind.L2) == pytest.approx(math.sqrt(2.0), abs=1e-12)

    def test_norm_kinds_differ(self) -> None:
        """The three norms of (3, -4) are 7, 5 and 4."""
        assert norm([3.0, -4.0], NormKind.L1) == 7.0
        assert norm([3.0, -4.0], NormKind.L2) == 5.0
        assert norm([3.0, -4.0], NormKind.LINF) == 4.0

    def test_empty_vector_rejected(self) -> None:
        """A zero-dimensional vector is invalid."""
        with pytest.raises(InvalidInputError):
            norm([], NormKind.L2)

    def test_non_finite_rejected(self) -> None:
        """NaN coordinates are invalid."""
        with pytest.raises(InvalidInputError, match="finite"):
            norm([1.0, float("nan")], NormKind.L2)

    def test_distance_examples(self) -> None:
        """Distances match hand arithmetic."""
        assert dist([4.0, 5.0], [5.0, 4.0]) == pytest.approx(math.sqrt(2.0), abs=1e-12)
        assert dist([4.0, 5.0], [4.0, 5.0]) == 0.0
        assert dist([1.0, 0.0], [0.0, 0.0], NormKind.LINF) == 1.0

    def test_dimension_mismatch(self) -> None:
        """Vectors of different dimension cannot be compared."""
        with pytest.raises(InvalidInputError, match="Dimension mismatch"):
            dist([1.0, 2.0], [1.0])

    def test_parse_norm(self) -> None:
        """Norm tags parse case-insensitively and unknown tags are rejected."""
        assert NormKind.parse("L1") is NormKind.L1
        assert NormKind.parse(NormKind.LINF) is NormKind.LINF
        with pytest.raises(InvalidInputError, match="Unknown norm"):
            NormKind.parse("l3")


class TestNormProperties:
    """Seeded checks of the norm axioms."""

    def test_triangle_inequality(self) -> None:
        """||u + v|| <= ||u|| + ||v|| under every norm."""
        rng = np.random.default_rng(3)
        for _ in range(200):
            dimension = int(rng.integers(1, 6))
            u = rng.uniform(-50, 50, size=dimension)
            v = rng.uniform(-50, 50, size=dimension)
            for kind in NormKind:
                assert norm(u + v, kind) <= norm(u, kind) + norm(v, kind) + 1e-9

    def test_absolute_homogeneity(self) -> None:
        """||a v|| = |a| ||v|| under every norm."""
        rng = np.random.default_rng(5)
        for _ in range(200):
            v = rng.normal(size=int(rng.integers(1, 6)))
            alpha = float(rng.uniform(-20, 20))
            for kind in NormKind:
                expected = abs(alpha) * norm(v, kind)
                assert norm(alpha * v, kind) == pytest.approx(expected, rel=1e-12, abs=1e-12)

    def test_distance_is_norm_of_difference(self) -> None:
        """dist(u, v) = ||u - v|| = dist(v, u)."""
        rng = np.random.default_rng(9)
        for _ in range(100):
            u, v = rng.uniform(-10, 10, size=(2, 3))
            for kind in NormKind:
                assert dist(u, v, kind) == pytest.approx(norm(u - v, kind), rel=1e-12)
                assert dist(u, v, kind) == dist(v, u, kind)


class TestPointSet:
    """Tests for finite point sets."""

    def test_near_duplicates_collapse(self) -> None:
        """Points closer than the comparison tolerance keep the first occurrence."""
        points = PointSet.from_points([[0.0, 0.0], [1.0, 1.0], [1e-12, 0.0]])
        assert len(points) == 2
        assert points.as_list() == [[0.0, 0.0], [1.0, 1.0]]

    def test_empty_set_rejected(self) -> None:
        """The empty set is not a valid image."""
        with pytest.raises(InvalidInputError, match="nonempty"):
            PointSet.from_points([])

    def test_ragged_points_rejected(self) -> None:
        """Points of unequal dimension are rejected."""
        with pytest.raises(InvalidInputError):
            PointSet.from_points([[0.0, 1.0], [2.0]])

    def test_contains(self) -> None:
        """Membership is decided within the tolerance."""
        points = _set((0.0, 0.0), (3.0, 4.0))
        assert points.contains(np.array([3.0, 4.0]))
        assert not points.contains(np.array([3.0, 4.1]))

    def test_points_are_read_only(self) -> None:
        """Stored coordinates cannot be mutated."""
        points = _set(1.0, 2.0)
        with pytest.raises(ValueError):
            points.points[0, 0] = 5.0


class TestSetDistances:
    """Tests for point-to-set distances, excess and Hausdorff distance."""

    def test_point_to_set(self) -> None:
        """d(a, B) is the minimum distance to a member."""
        assert dist_point_set([0.0], _set(1.0, 3.0)) == 1.0
        assert dist_point_set([2.0], _set(2.0)) == 0.0
        assert dist_point_set([0.0, 0.0], _set((3.0, 4.0), (0.0, 5.0))) == 5.0

    def test_excess(self) -> None:
        """The excess is one-sided."""
        assert excess(_set(0.0, 2.0), _set(1.0)) == 1.0
        assert excess(_set(0.0, 2.0), _set(0.0, 2.0)) == 0.0
        assert excess(_set(0.0), _set(0.0, 10.0)) == 0.0
        assert excess(_set(0.0, 10.0), _set(0.0)) == 10.0

    def test_hausdorff_examples(self) -> None:
        """H(A, B) takes the larger excess."""
        assert hausdorff(_set(0.0), _set(0.0, 10.0)) == 10.0
        assert hausdorff(_set(0.0, 2.0), _set(1.0)) == 1.0
        assert hausdorff(_set((1.0, 1.0)), _set((1.0, 1.0))) == 0.0
        assert hausdorff(_set(0.0, 2.0), _set(1.0), NormKind.L1) == 1.0

    def test_hausdorff_dimension_mismatch(self) -> None:
        """Sets of different dimension are rejected."""
        with pytest.raises(InvalidInputError):
            hausdorff(_set(0.0), _set((0.0, 0.0)))

    def test_nearest_point_tie_break(self) -> None:
        """Equidistant members resolve to the lexicographically smallest."""
        assert nearest_point(np.array([0.0]), _set(1.0, -1.0)).tolist() == [-1.0]
        candidates = _set((1.0, 1.0), (1.0, -1.0), (-1.0, 1.0))
        assert nearest_point(np.array([0.0, 0.0]), candidates).tolist() == [-1.0, 1.0]

    def test_nearest_point_unique(self) -> None:
        """Without ties the closest member is returned."""
        assert nearest_point(np.array([4.0]), _set(0.0, 5.0, 8.0)).tolist() == [5.0]


class TestHausdorffProperties:
    """Seeded property checks of the Hausdorff metric."""

    def test_matches_naive_oracle(self) -> None:
        """The matrix computation equals a double loop over pointwise distances."""
        rng = np.random.default_rng(7)
        kinds = list(NormKind)
        for trial in range(200):
            dimension = int(rng.integers(1, 5))
            a = PointSet(points=rng.uniform(-10, 10, size=(int(rng.integers(1, 51)), dimension)))
            b = PointSet(points=rng.uniform(-10, 10, size=(int(rng.integers(1, 51)), dimension)))
            kind = kinds[trial % len(kinds)]
            assert hausdorff(a, b, kind) == _naive_hausdorff(a, b, kind)

    def test_symmetry_is_exact(self) -> None:
        """H(A, B) equals H(B, A) bit for bit."""
        rng = np.random.default_rng(11)
        for _ in range(200):
            dimension = int(rng.integers(1, 5))
            a = PointSet(points=rng.normal(size=(int(rng.integers(1, 30)), dimension)))
            b = PointSet(points=rng.normal(size=(int(rng.integers(1, 30)), dimension)))
            for kind in NormKind:
                assert hausdorff(a, b, kind) == hausdorff(b, a, kind)

    def test_triangle_inequality(self) -> None:
        """H(A, C) <= H(A, B) + H(B, C) up to rounding."""
        rng = np.random.default_rng(13)
        for _ in range(200):
            dimension = int(rng.integers(1, 5))
            a, b, c = (
                PointSet(points=rng.uniform(-5, 5, size=(int(rng.integers(1, 20)), dimension)))
                for _ in range(3)
            )
            for kind in NormKind:
                assert hausdorff(a, c, kind) <= hausdorff(a, b, kind) + hausdorff(b, c, kind) + 1e-9

    def test_identity_of_indiscernibles(self) -> None:
        """A set is at distance zero from itself."""
        rng = np.random.default_rng(17)
        points = PointSet(points=rng.normal(size=(25, 3)))
        for kind in NormKind:
            assert hausdorff(points, points, kind) == 0.0
