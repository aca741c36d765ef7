"""Canonical JSON encoding and content digests.

Problem files are digested over their canonical JSON form (sorted keys,
compact separators), so a problem that is parsed and serialised again keeps
its digest. Machine output uses the same encoding, one object per line, which
keeps two runs with identical input byte-identical.

Digests are sha256 unless ``blake3`` is requested; that needs the optional
``checksum`` extra.

Example usage:
    >>> from f9_fixed_point.utils import canonical_json, compute_digest
    >>> canonical_json({"b": 1, "a": [1.0, 2]})
    '{"a":[1.0,2],"b":1}'
    >>> len(compute_digest({"a": 1}))
    64
"""

from __future__ import annotations

import hashlib
import json
from typing import Any, Literal, get_args

from .interfaces import InvalidInputError

DigestAlgorithm = Literal["sha256", "blake3"]
DIGEST_ALGORITHMS: tuple[str, ...] = get_args(DigestAlgorithm)


def canonical_json(payload: Any) -> str:
    """Encode ``payload`` with sorted keys and compact separators.

    Raises:
        ValueError: If the payload contains NaN or infinity.

    """
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), allow_nan=False)


def compute_digest(payload: Any, algorithm: DigestAlgorithm = "sha256") -> str:
    """Return the hexadecimal digest of the canonical JSON encoding of ``payload``.

    Raises:
        InvalidInputError: If the algorithm is unknown, or is blake3 without the
            ``checksum`` extra installed.

    """
    encoded = canonical_json(payload).encode("utf-8")
    if algorithm == "sha256":
        return hashlib.sha256(encoded).hexdigest()
    if algorithm == "blake3":
        try:
            from blake3 import blake3
        except ImportError as exc:
            raise InvalidInputError(
                "blake3 digests need the checksum extra (pip install f9-fixed-point[checksum])",
            ) from exc
        return blake3(encoded).hexdigest()
    raise InvalidInputError(
        f"Unknown digest algorithm (expected one of {', '.join(DIGEST_ALGORITHMS)})",
        context=algorithm,
    )
