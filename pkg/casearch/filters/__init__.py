"""Non-existence filters on patterns and on candidate root data."""

from casearch.filters.base import CandidateFilter, PatternFilter
from casearch.filters.pattern import (
    DistinctRootFilter,
    MultiplicityCapFilter,
    TrivialClassFilter,
    default_pattern_filters,
    pattern_admissible,
)
from casearch.filters.candidate import (
    CANDIDATE_FILTERS,
    CandidateStats,
    candidate_stats,
    evaluate_filters,
    prune_inequalities,
)

__all__ = [
    "CandidateFilter",
    "PatternFilter",
    "DistinctRootFilter",
    "MultiplicityCapFilter",
    "TrivialClassFilter",
    "default_pattern_filters",
    "pattern_admissible",
    "CANDIDATE_FILTERS",
    "CandidateStats",
    "candidate_stats",
    "evaluate_filters",
    "prune_inequalities",
]
