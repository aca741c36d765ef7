"""Core interfaces and data structures for fixed-point computations."""

from __future__ import annotations

from abc import ABC, abstractmethod
from enum import Enum
from typing import TYPE_CHECKING, Any, ClassVar

import numpy as np
import numpy.typing as npt

if TYPE_CHECKING:
    from .space import PointSet

Vector = npt.NDArray[np.float64]

EPS_CMP = 1e-9


class NormKind(Enum):
    """Norms offered on the finite-dimensional space."""

    L1 = "l1"
    L2 = "l2"
    LINF = "linf"

    @property
    def order(self) -> float:
        """Return the ``ord`` argument understood by ``numpy.linalg.norm``."""
        return {NormKind.L1: 1.0, NormKind.L2: 2.0, NormKind.LINF: np.inf}[self]

    @property
    def scipy_metric(self) -> str:
        """Return the matching ``scipy.spatial.distance`` metric name."""
        return {
            NormKind.L1: "cityblock",
            NormKind.L2: "euclidean",
            NormKind.LINF: "chebyshev",
        }[self]

    @classmethod
    def parse(cls, value: str | NormKind) -> NormKind:
        """Return the norm for a tag such as ``"l2"`` (case-insensitive)."""
        if isinstance(value, NormKind):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise InvalidInputError.unknown_norm(value) from None


class Verdict(Enum):
    """Outcome of a certification run over a finite sample."""

    CERTIFIED_ON_SAMPLE = "certified-on-sample"
    VIOLATED = "violated"


class FixedPointError(RuntimeError):
    """Base exception for library operations."""

    def __init__(
        self,
        message: str,
        *,
        context: Any = None,
    ) -> None:
        """Initialise the base error with optional context (point, field, index)."""
        detail = message if context is None else ": ".join((message, str(context)))
        super().__init__(detail)
        self.message = message
        self.context = context


class InvalidInputError(FixedPointError):
    """Raised when an argument is malformed or outside its admissible range."""

    @classmethod
    def empty_vector(cls) -> InvalidInputError:
        """Return an error for a zero-dimensional vector."""
        return cls("Vector must have dimension >= 1")

    @classmethod
    def non_finite(cls, values: Any) -> NonFiniteValueError:
        """Return an error for coordinates containing NaN or infinity."""
        return NonFiniteValueError("Vector coordinates must be finite", context=values)

    @classmethod
    def dimension_mismatch(cls, expected: int, actual: int) -> InvalidInputError:
        """Return an error for operands of different dimension."""
        return cls("Dimension mismatch", context=f"expected {expected}, got {actual}")

    @classmethod
    def empty_set(cls) -> InvalidInputError:
        """Return an error for an empty point set."""
        return cls("Point set must be nonempty")

    @classmethod
    def out_of_range(cls, name: str, value: float, interval: str) -> InvalidInputError:
        """Return an error for a scalar outside its interval."""
        return cls(f"{name} must lie in {interval}", context=value)

    @classmethod
    def unknown_norm(cls, value: Any) -> InvalidInputError:
        """Return an error for an unsupported norm tag."""
        return cls("Unknown norm (expected l1, l2 or linf)", context=value)


class InvalidConditionError(InvalidInputError):
    """Raised when contraction parameters violate their admissible ranges."""


class NonFiniteValueError(InvalidInputError):
    """Raised when coordinates contain NaN or infinity."""


class DomainError(FixedPointError):
    """Raised when a point lies outside the domain of a tabulated map."""

    def __init__(
        self,
        point: Any,
        *,
        index: int | None = None,
        pair: tuple[Any, Any] | None = None,
    ) -> None:
        """Create a domain error for ``point``, naming the iterate or pair if known."""
        coords = np.asarray(point, dtype=float).tolist()
        if index is not None:
            context: Any = f"iterate {index} at {coords}"
        elif pair is not None:
            first, second = (np.asarray(p, dtype=float).tolist() for p in pair)
            context = f"{coords} in pair ({first}, {second})"
        else:
            context = coords
        super().__init__("Point outside map domain", context=context)
        self.point = coords
        self.index = index
        self.pair = pair


class DivergenceError(FixedPointError):
    """Raised when an iterate stops being finite."""

    def __init__(self, index: int) -> None:
        """Create a divergence error naming the iterate index."""
        super().__init__("Non-finite iterate", context=f"iterate {index}")
        self.index = index


class PreconditionError(FixedPointError):
    """Raised when an operation's precondition does not hold."""

    @classmethod
    def not_a_fixed_point(cls, residual: float) -> PreconditionError:
        """Return an error for a candidate whose residual exceeds tolerance."""
        return cls("Candidate is not a numerical fixed point", context=residual)


class ProblemFileError(FixedPointError):
    """Raised when a problem or point-set file cannot be decoded or validated."""

    @classmethod
    def missing_field(cls, field: str) -> ProblemFileError:
        """Return an error for a required field that is absent."""
        return cls("Missing required field", context=field)

    @classmethod
    def invalid_field(cls, field: str, reason: str) -> ProblemFileError:
        """Return an error for a field that failed validation."""
        return cls(f"Invalid field ({reason})", context=field)

    @classmethod
    def bad_json(cls, source: str, line: int, column: int, reason: str) -> ProblemFileError:
        """Return an error for undecodable JSON with its position."""
        return cls(f"Malformed JSON ({reason})", context=f"{source}:{line}:{column}")

    @classmethod
    def bad_line(cls, source: str, line: int, reason: str) -> ProblemFileError:
        """Return an error for an unparseable point-set line."""
        return cls(f"Malformed point ({reason})", context=f"{source}:{line}")


class SingleValuedMap(ABC):
    """Standardised interface for selfmappings ``T: X -> X``.

    Implementations are immutable after construction and evaluation is pure.
    """

    type_tag: ClassVar[str]

    @property
    @abstractmethod
    def dimension(self) -> int:
        """Dimension of the space the map acts on."""

    @abstractmethod
    def evaluate(self, x: Vector) -> Vector:
        """Return the image ``Tx``.

        Raises:
            DomainError: If ``x`` is outside a finite domain.

        """

    def domain(self) -> Vector | None:
        """Return the finite domain as an ``(m, n)`` array, or None if total."""
        return None

    @abstractmethod
    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""


class MultiValuedMap(ABC):
    """Standardised interface for multivalued maps ``T: X -> CB(X)``.

    Closed bounded images are approximated by finite point sets.
    """

    type_tag: ClassVar[str]

    @property
    @abstractmethod
    def dimension(self) -> int:
        """Dimension of the space the map acts on."""

    @abstractmethod
    def evaluate(self, x: Vector) -> PointSet:
        """Return the nonempty image set ``Tx``.

        Raises:
            DomainError: If ``x`` is outside a finite domain.

        """

    def domain(self) -> Vector | None:
        """Return the finite domain as an ``(m, n)`` array, or None if total."""
        return None

    @abstractmethod
    def as_dict(self) -> dict[str, Any]:
        """Return a JSON-serialisable representation."""
