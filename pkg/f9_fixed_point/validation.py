"""Validation helpers for vectors, point sets and scalar parameters.

The functions here are shared by every module so that malformed input is
rejected the same way everywhere: each returns the normalised value or raises
an ``InvalidInputError`` (or ``InvalidConditionError``) describing the problem.

Example:
    >>> v = validate_vector([3, 4])
    >>> validate_same_dimension(v, validate_vector([0, 0]))
    >>> validate_contraction_ratio(0.5)
    0.5

"""

from __future__ import annotations

from collections.abc import Iterable
from typing import TYPE_CHECKING

import numpy as np

from .interfaces import InvalidConditionError, InvalidInputError

if TYPE_CHECKING:
    from .interfaces import Vector


def validate_vector(values: Iterable[float] | Vector) -> Vector:
    """Return ``values`` as a read-only 1-D float array.

    Raises:
        InvalidInputError: If the vector is empty, not 1-D, or not finite.

    """
    try:
        array = np.array(values, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError("Vector coordinates must be numbers", context=values) from exc
    if array.ndim != 1:
        raise InvalidInputError("Vector must be one-dimensional", context=array.shape)
    if array.size == 0:
        raise InvalidInputError.empty_vector()
    if not np.all(np.isfinite(array)):
        raise InvalidInputError.non_finite(array.tolist())
    array.flags.writeable = False
    return array


def validate_points(values: Iterable[Iterable[float]] | Vector) -> Vector:
    """Return ``values`` as a read-only ``(m, n)`` float array with ``m >= 1``.

    Raises:
        InvalidInputError: If the collection is empty, ragged, or not finite.

    """
    try:
        array = np.array(values, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError("Points must share one dimension", context=values) from exc
    if array.size == 0:
        raise InvalidInputError.empty_set()
    if array.ndim != 2:  # noqa: PLR2004
        raise InvalidInputError("Points must share one dimension", context=array.shape)
    if array.shape[1] == 0:
        raise InvalidInputError.empty_vector()
    if not np.all(np.isfinite(array)):
        raise InvalidInputError.non_finite(array.tolist())
    array.flags.writeable = False
    return array


def validate_same_dimension(first: Vector, second: Vector) -> None:
    """Validate that two arrays agree in their trailing (coordinate) axis.

    Raises:
        InvalidInputError: If the dimensions differ.

    """
    if first.shape[-1] != second.shape[-1]:
        raise InvalidInputError.dimension_mismatch(first.shape[-1], second.shape[-1])


def validate_dimension(vector: Vector, expected: int) -> None:
    """Validate that ``vector`` has ``expected`` coordinates."""
    if vector.shape[-1] != expected:
        raise InvalidInputError.dimension_mismatch(expected, vector.shape[-1])


def validate_contraction_ratio(r: float) -> float:
    """Validate ``0 <= r < 1``.

    Raises:
        InvalidInputError: If ``r`` is outside ``[0, 1)``.

    """
    r = float(r)
    if not (0.0 <= r < 1.0):
        raise InvalidInputError.out_of_range("r", r, "[0, 1)")
    return r


def validate_averaging_weight(lam: float) -> float:
    """Validate ``0 < lam <= 1``.

    Raises:
        InvalidInputError: If ``lam`` is outside ``(0, 1]``.

    """
    lam = float(lam)
    if not (0.0 < lam <= 1.0):
        raise InvalidInputError.out_of_range("lambda", lam, "(0, 1]")
    return lam


def validate_enrichment(b: float) -> float:
    """Validate the enrichment constant ``b >= 0`` (finite).

    Raises:
        InvalidConditionError: If ``b`` is negative or not finite.

    """
    b = float(b)
    if not np.isfinite(b) or b < 0.0:
        raise InvalidConditionError.out_of_range("b", b, "[0, inf)")
    return b


def validate_theta(theta: float, b: float) -> float:
    """Validate ``0 <= theta < b + 1``.

    Raises:
        InvalidConditionError: If ``theta`` is outside ``[0, b + 1)``.

    """
    theta = float(theta)
    if not np.isfinite(theta) or not (0.0 <= theta < b + 1.0):
        raise InvalidConditionError.out_of_range("theta", theta, f"[0, {b + 1.0})")
    return theta


def validate_positive(name: str, value: float) -> float:
    """Validate that ``value`` is a finite positive real."""
    value = float(value)
    if not np.isfinite(value) or value <= 0.0:
        raise InvalidInputError.out_of_range(name, value, "(0, inf)")
    return value


def validate_count(name: str, value: int, *, minimum: int = 1) -> int:
    """Validate that ``value`` is an integer no smaller than ``minimum``."""
    if isinstance(value, bool) or int(value) != value or value < minimum:
        raise InvalidInputError.out_of_range(name, value, f"integers >= {minimum}")
    return int(value)
