"""Casearch - exact CA certificates, non-existence filters and the residual search."""

from casearch.certificate import (
    CA_CANDIDATE,
    NOT_CA,
    TRIVIAL,
    CACertificate,
    ChainReport,
    OrderEvidence,
    SharedRootCounts,
    certify_ca,
    maximal_chain_check,
    normalize_unit_disc,
    shared_root_counts,
)
from casearch.patterns import MultiplicityPattern, compositions, corollary7_window, window_orders
from casearch.instances import shared_gap_family
from casearch.filters import (
    CandidateStats,
    candidate_stats,
    evaluate_filters,
    pattern_admissible,
    prune_inequalities,
)
from casearch.objective import (
    BatchedObjective,
    all_assignments,
    assignment_residual,
    assignment_terms,
    feasible_assignments,
    validate_assignment,
    verify_residual,
)
from casearch.optimizer import BatchedLevenbergMarquardt, BatchResult
from casearch.search import (
    OracleResult,
    SearchConfig,
    SearchRecord,
    SearchReport,
    brute_force_minimum,
    search,
)

__all__ = [
    "CA_CANDIDATE",
    "NOT_CA",
    "TRIVIAL",
    "CACertificate",
    "ChainReport",
    "OrderEvidence",
    "SharedRootCounts",
    "certify_ca",
    "maximal_chain_check",
    "normalize_unit_disc",
    "shared_root_counts",
    "MultiplicityPattern",
    "compositions",
    "corollary7_window",
    "window_orders",
    "shared_gap_family",
    "CandidateStats",
    "candidate_stats",
    "evaluate_filters",
    "pattern_admissible",
    "prune_inequalities",
    "BatchedObjective",
    "all_assignments",
    "assignment_residual",
    "assignment_terms",
    "feasible_assignments",
    "validate_assignment",
    "verify_residual",
    "BatchedLevenbergMarquardt",
    "BatchResult",
    "OracleResult",
    "SearchConfig",
    "SearchRecord",
    "SearchReport",
    "brute_force_minimum",
    "search",
]
