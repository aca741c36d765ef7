"""Problem files, point-set files and run reports.

A problem file is a JSON object describing a map, the contraction
parameters, a condition tag, a pair sample and solver settings. Parsing
validates the whole document up front and reports failures with the JSON
line/column or the dotted field path. The digest of a problem is taken over
its canonical JSON form, so it is stable across runs and survives a
serialise/parse round trip.

Point-set files hold one point per line, coordinates separated by
whitespace or commas; blank lines and ``#`` comments are skipped.

Example:
    >>> problem = parse_problem('{"dimension": 1, "map": {"type": "affine", '
    ...                         '"matrix": [[0.5]], "offset": [1.0]}}')
    >>> problem.dimension
    1

"""

from __future__ import annotations

import json
import logging
import re
from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .conditions import CertificateReport, Condition, PairSample
from .factory import condition_from_spec, resolve_map, sample_from_spec
from .interfaces import InvalidInputError, NormKind, ProblemFileError
from .maps import AnyMap
from .solver import DEFAULT_MAX_ITER, DEFAULT_TOL, IterationTrace, SolveConfig
from .space import PointSet
from .utils import DigestAlgorithm, compute_digest

logger = logging.getLogger(__name__)

_SEPARATOR = re.compile(r"[\s,]+")
_KNOWN_FIELDS = frozenset({"description", "dimension", "norm", "map", "params", "condition", "pairs", "solve"})


@dataclass(frozen=True, eq=False)
class ProblemFile:
    """A validated problem document together with the objects it describes."""

    document: Mapping[str, Any]
    dimension: int
    norm: NormKind
    map: AnyMap
    params: Mapping[str, Any] = field(default_factory=dict)
    condition: Condition | None = None
    pairs: Mapping[str, Any] | None = None
    solve: Mapping[str, Any] | None = None

    @property
    def b(self) -> float:
        """Enrichment constant from ``params`` (0 when absent)."""
        return float(self.params.get("b", 0.0))

    def as_dict(self) -> dict[str, Any]:
        """Return the problem document as parsed."""
        return dict(self.document)

    def digest(self, algorithm: DigestAlgorithm = "sha256") -> str:
        """Return the digest of the canonical JSON form of the document."""
        return compute_digest(self.as_dict(), algorithm)

    def require_condition(self) -> Condition:
        """Return the condition, or raise when the problem names none.

        Raises:
            ProblemFileError: If the ``condition`` field is absent.

        """
        if self.condition is None:
            raise ProblemFileError.missing_field("condition")
        return self.condition

    def build_sample(self, *, seed: int | None = None, count: int | None = None) -> PairSample:
        """Build the pair sample; a tabulated domain is exhaustive by default.

        Raises:
            ProblemFileError: If the sample specification is missing or invalid.

        """
        spec = self.pairs if self.pairs is not None else {"kind": "exhaustive"}
        return sample_from_spec(spec, domain=self.map.domain(), seed=seed, count=count, kind=self.norm)

    def solve_config(
        self,
        *,
        x0: list[float] | None = None,
        tol: float | None = None,
        max_iter: int | None = None,
    ) -> SolveConfig:
        """Return solver settings; explicit arguments override the file.

        Raises:
            ProblemFileError: If no starting point is available or a setting is invalid.

        """
        settings = dict(self.solve or {})
        start = x0 if x0 is not None else settings.get("x0")
        if start is None:
            raise ProblemFileError.missing_field("solve.x0")
        try:
            cfg = SolveConfig(
                x0=start,
                tol=tol if tol is not None else settings.get("tol", DEFAULT_TOL),
                max_iter=max_iter if max_iter is not None else settings.get("max_iter", DEFAULT_MAX_ITER),
                decay_check=settings.get("decay_check"),
            )
        except InvalidInputError as exc:
            raise ProblemFileError.invalid_field("solve", str(exc)) from exc
        if cfg.x0.shape[0] != self.dimension:
            raise ProblemFileError.invalid_field("solve.x0", f"expected {self.dimension} coordinates")
        return cfg


def _decode(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError.bad_json(source, exc.lineno, exc.colno, exc.msg) from exc


def problem_from_dict(document: Mapping[str, Any]) -> ProblemFile:
    """Validate a decoded problem document.

    Raises:
        ProblemFileError: On a missing or invalid field.
        InvalidConditionError: If the contraction parameters are out of range.

    """
    if not isinstance(document, Mapping):
        raise ProblemFileError.invalid_field("<root>", "expected an object")
    unknown = sorted(set(document) - _KNOWN_FIELDS)
    if unknown:
        raise ProblemFileError.invalid_field(unknown[0], "unknown field")
    try:
        norm = NormKind.parse(document.get("norm", NormKind.L2.value))
    except InvalidInputError as exc:
        raise ProblemFileError.invalid_field("norm", str(exc)) from exc
    if "map" not in document:
        raise ProblemFileError.missing_field("map")
    mapping = resolve_map(document["map"], kind=norm)
    dimension = document.get("dimension", mapping.dimension)
    if isinstance(dimension, bool) or not isinstance(dimension, int) or dimension < 1:
        raise ProblemFileError.invalid_field("dimension", "expected a positive integer")
    if mapping.dimension != dimension:
        raise ProblemFileError.invalid_field("map", f"map acts on dimension {mapping.dimension}, not {dimension}")

    params = document.get("params", {})
    if not isinstance(params, Mapping):
        raise ProblemFileError.invalid_field("params", "expected an object")
    tag = document.get("condition")
    condition = condition_from_spec(tag, params) if tag is not None else None

    pairs = document.get("pairs")
    if pairs is not None and not isinstance(pairs, Mapping):
        raise ProblemFileError.invalid_field("pairs", "expected an object")
    solve = document.get("solve")
    if solve is not None and not isinstance(solve, Mapping):
        raise ProblemFileError.invalid_field("solve", "expected an object")

    return ProblemFile(
        document=document,
        dimension=dimension,
        norm=norm,
        map=mapping,
        params=params,
        condition=condition,
        pairs=pairs,
        solve=solve,
    )


def parse_problem(text: str, source: str = "<string>") -> ProblemFile:
    """Decode and validate problem JSON.

    Raises:
        ProblemFileError: With line/column for malformed JSON or the field path
            for schema errors.

    """
    return problem_from_dict(_decode(text, source))


def load_problem(path: str | Path) -> ProblemFile:
    """Read and validate a problem file.

    Raises:
        ProblemFileError: If the file cannot be read, decoded or validated.

    """
    file_path = Path(path)
    try:
        text = file_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ProblemFileError("Cannot read problem file", context=str(file_path)) from exc
    problem = parse_problem(text, str(file_path))
    logger.debug("Loaded problem %s (digest %s)", file_path, problem.digest())
    return problem


def parse_point_set(text: str, source: str = "<string>", *, kind: NormKind = NormKind.L2) -> PointSet:
    """Parse point-set text, one point per line.

    Raises:
        ProblemFileError: On an unparseable line, ragged dimensions or no points.

    """
    rows: list[list[float]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            row = [float(token) for token in _SEPARATOR.split(line) if token]
        except ValueError as exc:
            raise ProblemFileError.bad_line(source, number, str(exc)) from exc
        if rows and len(row) != len(rows[0]):
            raise ProblemFileError.bad_line(source, number, f"expected {len(rows[0])} coordinates")
        rows.append(row)
    if not rows:
        raise ProblemFileError("Point set file is empty", context=source)
    try:
        return PointSet.from_points(rows, kind=kind)
    except InvalidInputError as exc:
        raise ProblemFileError(f"Invalid point set ({exc.message})", context=source) from exc


def load_point_set(path: str | Path, *, kind: NormKind = NormKind.L2) -> PointSet:
    """Read a point-set file.

    Raises:
        ProblemFileError: If the file cannot be read or parsed.

    """
    file_path = Path(path)
    try:
        text = file_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ProblemFileError("Cannot read point set file", context=str(file_path)) from exc
    return parse_point_set(text, str(file_path), kind=kind)


@dataclass(frozen=True)
class RunReport:
    """Outcome of one CLI subcommand.

    ``wall_time`` is kept out of ``as_dict`` so machine output stays
    byte-identical between runs.
    """

    subcommand: str
    digest: str | None = None
    digest_algorithm: DigestAlgorithm = "sha256"
    certificate: CertificateReport | None = None
    trace: IterationTrace | None = None
    wall_time: float = 0.0

    def as_dict(self) -> dict[str, Any]:
        """Return the JSON-serialisable report record."""
        record: dict[str, Any] = {"record": "report", "subcommand": self.subcommand, "digest": self.digest}
        if self.digest is not None:
            record["digest_algorithm"] = self.digest_algorithm
        if self.certificate is not None:
            summary = self.certificate.as_dict(max_witnesses=0)
            summary.pop("violations")
            record["certificate"] = summary
        if self.trace is not None:
            record["trace"] = self.trace.summary()
        return record

    def lines(self, *, max_witnesses: int | None = None) -> list[dict[str, Any]]:
        """Return every JSON-lines record: trace iterates, witnesses, then the report."""
        records: list[dict[str, Any]] = []
        if self.trace is not None:
            records.extend({"record": "iterate", **item} for item in self.trace.records())
        if self.certificate is not None:
            shown = self.certificate.violations
            if max_witnesses is not None:
                shown = shown[:max_witnesses]
            records.extend({"record": "witness", **witness.as_dict()} for witness in shown)
        records.append(self.as_dict())
        return records
