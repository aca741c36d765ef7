"""Vectors, norms and the Pompeiu-Hausdorff metric on finite point sets.

Closed bounded sets are represented by finite samples (``PointSet``), so the
infima and suprema of the set distances become minima and maxima over
distance matrices. Every distance in this module is produced by
``scipy.spatial.distance.cdist``; a single pair evaluated through ``dist`` is
bitwise identical to the corresponding entry of a full distance matrix, which
keeps the matrix path and a naive double loop in exact agreement.

Example:
    >>> from f9_fixed_point.space import PointSet, hausdorff
    >>> a = PointSet.from_points([[0.0]])
    >>> b = PointSet.from_points([[0.0], [10.0]])
    >>> hausdorff(a, b)
    10.0

"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .interfaces import EPS_CMP, InvalidInputError, NormKind, Vector
from .validation import validate_points, validate_same_dimension, validate_vector


def as_vector(values: Iterable[float] | Vector) -> Vector:
    """Return ``values`` as a validated, read-only vector."""
    return validate_vector(values)


def norm(v: Iterable[float] | Vector, kind: NormKind = NormKind.L2) -> float:
    """Return the l1, l2 or l-infinity norm of ``v``.

    Raises:
        InvalidInputError: If ``v`` is empty or has non-finite coordinates.

    """
    vector = validate_vector(v)
    return float(np.linalg.norm(vector, ord=kind.order, axis=-1))


def row_norms(rows: Vector, kind: NormKind = NormKind.L2) -> Vector:
    """Return the norm of every row of a 2-D array."""
    return np.linalg.norm(rows, ord=kind.order, axis=-1)


def pairwise_distances(a: Vector, b: Vector, kind: NormKind = NormKind.L2) -> Vector:
    """Return the ``(len(a), len(b))`` matrix of distances between rows."""
    return cdist(np.atleast_2d(a), np.atleast_2d(b), metric=kind.scipy_metric)


def dist(
    x: Iterable[float] | Vector,
    y: Iterable[float] | Vector,
    kind: NormKind = NormKind.L2,
) -> float:
    """Return ``||x - y||`` under ``kind``.

    Raises:
        InvalidInputError: On empty vectors or a dimension mismatch.

    """
    first = validate_vector(x)
    second = validate_vector(y)
    validate_same_dimension(first, second)
    return float(pairwise_distances(first, second, kind)[0, 0])


@dataclass(frozen=True, eq=False)
class PointSet:
    """Finite nonempty set of points of equal dimension.

    Construct through ``from_points`` so that near-duplicates (closer than
    ``EPS_CMP`` under the active norm) collapse onto their first occurrence.
    """

    points: Vector

    @classmethod
    def from_points(
        cls,
        points: Iterable[Iterable[float]] | Vector,
        *,
        kind: NormKind = NormKind.L2,
    ) -> PointSet:
        """Validate and deduplicate ``points``.

        Raises:
            InvalidInputError: If the collection is empty, ragged or non-finite.

        """
        array = validate_points(points)
        if len(array) > 1:
            distances = pairwise_distances(array, array, kind)
            keep: list[int] = []
            for index in range(len(array)):
                if all(distances[index, kept] > EPS_CMP for kept in keep):
                    keep.append(index)
            if len(keep) < len(array):
                array = array[keep]
                array.flags.writeable = False
        return cls(points=array)

    @property
    def dimension(self) -> int:
        """Dimension of the member points."""
        return int(self.points.shape[1])

    def __len__(self) -> int:
        """Return the number of distinct points."""
        return int(self.points.shape[0])

    def __iter__(self) -> Iterator[Vector]:
        """Iterate over the member points in stored order."""
        return iter(self.points)

    def contains(self, v: Vector, kind: NormKind = NormKind.L2) -> bool:
        """Return True if ``v`` is a member within ``EPS_CMP``."""
        return dist_point_set(v, self, kind) <= EPS_CMP

    def as_list(self) -> list[list[float]]:
        """Return a JSON-serialisable representation."""
        return self.points.tolist()


def _require_points(value: PointSet) -> Vector:
    if len(value) == 0:
        raise InvalidInputError.empty_set()
    return value.points


def dist_point_set(a: Iterable[float] | Vector, b: PointSet, kind: NormKind = NormKind.L2) -> float:
    """Return ``d(a, B) = min_{b in B} ||a - b||``.

    Raises:
        InvalidInputError: On an empty set or a dimension mismatch.

    """
    point = validate_vector(a)
    members = _require_points(b)
    validate_same_dimension(point, members)
    return float(pairwise_distances(point, members, kind).min())


def nearest_point(a: Vector, b: PointSet, kind: NormKind = NormKind.L2) -> Vector:
    """Return the member of ``B`` nearest to ``a``.

    Ties (within ``EPS_CMP``) are broken by lexicographic coordinate order.
    """
    point = validate_vector(a)
    members = _require_points(b)
    validate_same_dimension(point, members)
    distances = pairwise_distances(point, members, kind)[0]
    candidates = members[distances <= distances.min() + EPS_CMP]
    if len(candidates) > 1:
        order = np.lexsort(candidates.T[::-1])
        return candidates[order[0]]
    return candidates[0]


def excess(a: PointSet, b: PointSet, kind: NormKind = NormKind.L2) -> float:
    """Return the excess ``D(A, B) = max_{a in A} d(a, B)``.

    Raises:
        InvalidInputError: On an empty set or a dimension mismatch.

    """
    first = _require_points(a)
    second = _require_points(b)
    validate_same_dimension(first, second)
    return float(pairwise_distances(first, second, kind).min(axis=1).max())


def hausdorff(a: PointSet, b: PointSet, kind: NormKind = NormKind.L2) -> float:
    """Return the Pompeiu-Hausdorff distance ``max{D(A, B), D(B, A)}``.

    Raises:
        InvalidInputError: On an empty set or a dimension mismatch.

    """
    first = _require_points(a)
    second = _require_points(b)
    validate_same_dimension(first, second)
    distances = pairwise_distances(first, second, kind)
    return float(max(distances.min(axis=1).max(), distances.min(axis=0).max()))
