"""Fixed points of enriched contractions: certification and Picard iteration.

This package checks Suzuki-type implicative contraction conditions, and their
enriched (Berinde-type) generalisations, for single- and multivalued maps on
finite-dimensional normed spaces, and computes fixed points by iterating the
averaged operator ``T_lam = (1 - lam) I + lam T`` with ``lam = 1/(b + 1)``.

Core Components:
    - SingleValuedMap / MultiValuedMap: Abstract map interfaces
    - TabulatedMap, AffineMap, PiecewiseOverrideMap: Single-valued maps
    - SetTabulatedMap, AffineFamilyMap: Multivalued maps with finite images
    - Condition subclasses: Banach, Suzuki, SuzukiBerinde, MultiGamma, ...
    - certify / uniqueness_certify: Sample-based verdicts with witnesses
    - picard_solve / picard_solve_multi: Averaged Picard iteration with traces

Quick Start:

    >>> from f9_fixed_point import AffineMap, Banach, certify, random_sample
    >>> T = AffineMap([[0.5]], [1.0])
    >>> report = certify(T, Banach(0.5), random_sample(1000, seed=0, bounds=[[-10, 10]]))
    >>> report.verdict.value
    'certified-on-sample'

    >>> from f9_fixed_point import SolveConfig, picard_solve
    >>> trace = picard_solve(T, b=0.0, cfg=SolveConfig(x0=[0.0]))
    >>> trace.converged
    True

Exception Handling:

    >>> from f9_fixed_point import DomainError, TabulatedMap
    >>> table = TabulatedMap([([0.0], [1.0])])
    >>> try:
    ...     table.evaluate([5.0])
    ... except DomainError:
    ...     print("outside the table")
    outside the table

Certification is always over a finite sample: a "certified-on-sample"
verdict means no violation was found among the stated pairs, not that the
condition holds on the whole space.

"""

from .conditions import (
    CONDITION_TYPES,
    Banach,
    CertificateReport,
    CompactBerinde,
    Condition,
    Edelstein,
    GammaFamily,
    MultiCompactGamma,
    MultiGamma,
    MultiSuzukiBerinde,
    PairSample,
    SampleProvenance,
    Suzuki,
    SuzukiBerinde,
    SuzukiStrict,
    Witness,
    certify,
    exhaustive_sample,
    explicit_sample,
    f_threshold,
    grid_sample,
    make_pair_sample,
    psi_multi,
    psi_single,
    random_sample,
    uniqueness_certify,
)
from .factory import (
    MapFactory,
    condition_from_spec,
    register_map_factory,
    resolve_map,
    sample_from_spec,
)
from .interfaces import (
    EPS_CMP,
    DivergenceError,
    DomainError,
    FixedPointError,
    InvalidConditionError,
    InvalidInputError,
    MultiValuedMap,
    NonFiniteValueError,
    NormKind,
    PreconditionError,
    ProblemFileError,
    SingleValuedMap,
    Vector,
    Verdict,
)
from .maps import (
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
from .problem import (
    ProblemFile,
    RunReport,
    load_point_set,
    load_problem,
    parse_point_set,
    parse_problem,
    problem_from_dict,
)
from .solver import (
    AprioriViolation,
    IterationTrace,
    SolveConfig,
    apriori_bound,
    picard_solve,
    picard_solve_multi,
)
from .space import (
    PointSet,
    as_vector,
    dist,
    dist_point_set,
    excess,
    hausdorff,
    nearest_point,
    norm,
)

__all__ = [
    "CONDITION_TYPES",
    "EPS_CMP",
    "AffineFamilyMap",
    "AffineMap",
    "AprioriViolation",
    "AveragedMap",
    "AveragedMultiMap",
    "Banach",
    "CertificateReport",
    "CompactBerinde",
    "Condition",
    "ContractionParams",
    "DivergenceError",
    "DomainError",
    "Edelstein",
    "FixedPointError",
    "GammaFamily",
    "InvalidConditionError",
    "InvalidInputError",
    "IterationTrace",
    "MapFactory",
    "MultiCompactGamma",
    "MultiGamma",
    "MultiSuzukiBerinde",
    "MultiValuedMap",
    "NonFiniteValueError",
    "NormKind",
    "PairSample",
    "PiecewiseOverrideMap",
    "PointSet",
    "PreconditionError",
    "ProblemFile",
    "ProblemFileError",
    "RunReport",
    "SampleProvenance",
    "SetTabulatedMap",
    "SingleValuedMap",
    "SingletonMultiMap",
    "SolveConfig",
    "Suzuki",
    "SuzukiBerinde",
    "SuzukiStrict",
    "TabulatedMap",
    "Vector",
    "Verdict",
    "Witness",
    "apriori_bound",
    "as_vector",
    "averaged",
    "averaged_apply",
    "averaged_set",
    "certify",
    "condition_from_spec",
    "dist",
    "dist_point_set",
    "evaluate",
    "evaluate_multi",
    "excess",
    "exhaustive_sample",
    "explicit_sample",
    "f_threshold",
    "fixed_point_residual",
    "grid_sample",
    "hausdorff",
    "load_point_set",
    "load_problem",
    "make_pair_sample",
    "nearest_point",
    "norm",
    "parse_point_set",
    "parse_problem",
    "picard_solve",
    "picard_solve_multi",
    "problem_from_dict",
    "psi_multi",
    "psi_single",
    "random_sample",
    "register_map_factory",
    "resolve_map",
    "sample_from_spec",
    "uniqueness_certify",
]
