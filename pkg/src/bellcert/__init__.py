"""Certification toolkit for real projective measurements in Bell scenarios."""

from __future__ import annotations

from .config import DEFAULTS, Settings
from .errors import (
    BadDimension,
    BadParams,
    BellcertError,
    DimMismatch,
    EmptyInput,
    Infeasible,
    InvalidMeasurement,
    NotOrderL,
    NotSymmetric,
    SolverStall,
    TooLarge,
    TrivialRegion,
    Unreachable,
)
from .linalg import (
    EigenDecomposition,
    SignImage,
    frobenius_inner,
    numerical_rank,
    sgn_map,
    sym_eig,
)
from .strategies import (
    CorrelationTable,
    ProjectiveMeasurement,
    SchmidtState,
    Strategy,
    brute_force_correlation,
    correlation,
    correlation_table,
    generalized_observables,
    povm_from_observable,
    require_binary_observable,
    verify_cheating_povm,
    verify_degenerate_pair,
)
from .jordan import (
    SpanBasis,
    contains,
    cut_point_observables,
    degeneracy_possible,
    has_trivial_centralizer,
    jordan_closure,
    jordan_product,
    span_basis,
)
from .simplex import (
    degenerate_pair_3d,
    initial_strategy,
    maximal_independent_subset,
    pair_observables,
    simplex_observables,
    simplex_vectors,
)
from .posthoc import (
    FeasibilityResult,
    RobustnessParams,
    analytic_family_2d,
    analytic_family_region,
    min_trace_Q,
    posthoc_feasible_binary,
    posthoc_feasible_general,
    robustness_bound,
    vector_recovery_bound,
)
from .certify import (
    CertificateReport,
    ExtensionCertificate,
    IterativePlan,
    PlanRound,
    binary_certification_strategy,
    certificate_report,
    iterative_plan,
    measurement_certification_strategy,
    merge_binary_split,
    split_measurement,
)

__all__ = [
    "DEFAULTS",
    "Settings",
    "BadDimension",
    "BadParams",
    "BellcertError",
    "DimMismatch",
    "EmptyInput",
    "Infeasible",
    "InvalidMeasurement",
    "NotOrderL",
    "NotSymmetric",
    "SolverStall",
    "TooLarge",
    "TrivialRegion",
    "Unreachable",
    "EigenDecomposition",
    "SignImage",
    "frobenius_inner",
    "numerical_rank",
    "sgn_map",
    "sym_eig",
    "CorrelationTable",
    "ProjectiveMeasurement",
    "SchmidtState",
    "Strategy",
    "brute_force_correlation",
    "correlation",
    "correlation_table",
    "generalized_observables",
    "povm_from_observable",
    "require_binary_observable",
    "verify_cheating_povm",
    "verify_degenerate_pair",
    "SpanBasis",
    "contains",
    "cut_point_observables",
    "degeneracy_possible",
    "has_trivial_centralizer",
    "jordan_closure",
    "jordan_product",
    "span_basis",
    "degenerate_pair_3d",
    "initial_strategy",
    "maximal_independent_subset",
    "pair_observables",
    "simplex_observables",
    "simplex_vectors",
    "FeasibilityResult",
    "RobustnessParams",
    "analytic_family_2d",
    "analytic_family_region",
    "min_trace_Q",
    "posthoc_feasible_binary",
    "posthoc_feasible_general",
    "robustness_bound",
    "vector_recovery_bound",
    "CertificateReport",
    "ExtensionCertificate",
    "IterativePlan",
    "PlanRound",
    "binary_certification_strategy",
    "certificate_report",
    "iterative_plan",
    "measurement_certification_strategy",
    "merge_binary_split",
    "split_measurement",
]

__version__ = "0.1.0"
