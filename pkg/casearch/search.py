"""Multistart residual search for real-rooted CA counterexample candidates."""

import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import islice
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from casearch.filters.candidate import CandidateStats, evaluate_filters, prune_inequalities
from casearch.filters.pattern import PatternFilter, TrivialClassFilter, default_pattern_filters
from casearch.objective import (
    LOGIT_LIMIT,
    Assignment,
    BatchedObjective,
    all_assignments,
    assignments_array,
    feasible_assignments,
    min_separation,
    verify_residual,
)
from casearch.optimizer import BatchedLevenbergMarquardt
from casearch.patterns import MultiplicityPattern, compositions, corollary7_window
from config import get_settings
from polycore import DomainError

logger = logging.getLogger(__name__)

NO_CANDIDATE = "no candidate below theta"
CANDIDATES = "candidates listed"
REPORTING = "reporting mode"
INFEASIBLE = "Rolle interlacing"


@dataclass
class SearchConfig:
    """Parameters of one search run."""

    DEFAULT_MULTISTARTS = 32
    DEFAULT_THETA = 1e-16
    COMPLEX_MAX_DEGREE = 5

    degree: int
    theta: float = DEFAULT_THETA
    seed: int = 0
    multistarts: int = DEFAULT_MULTISTARTS
    max_iterations: int = 60
    assignment_budget: Optional[int] = None  # per pattern; None for unlimited
    use_pattern_filters: bool = True
    use_candidate_filters: bool = True
    trust_four_roots: bool = False  # also reject k = 4 patterns
    complex_roots: bool = False
    threads: int = 1
    verify_digits: int = 50
    chunk_rows: int = 8192

    def __post_init__(self):
        if self.degree < 1:
            raise DomainError(f"Degree must be at least 1, got {self.degree}")
        if not self.theta > 0:
            raise DomainError(f"theta must be positive, got {self.theta}")
        if self.seed < 0:
            raise DomainError(f"Seed must be non-negative, got {self.seed}")
        if self.multistarts < 1:
            raise DomainError(f"Need at least one multistart, got {self.multistarts}")
        if self.assignment_budget is not None and self.assignment_budget < 1:
            raise DomainError(f"Assignment budget must be positive, got {self.assignment_budget}")
        if self.complex_roots and self.degree > self.COMPLEX_MAX_DEGREE:
            raise DomainError(
                f"Complex search is capped at degree {self.COMPLEX_MAX_DEGREE}, got {self.degree}"
            )
        if self.threads < 1:
            raise DomainError(f"Thread count must be positive, got {self.threads}")

    @classmethod
    def from_settings(cls, degree: int, **overrides) -> "SearchConfig":
        """Config with threads and verification digits taken from config.Settings."""
        settings = get_settings()
        values = {"threads": settings.threads, "verify_digits": settings.verify_digits}
        values.update(overrides)
        return cls(degree=degree, **values)

    @property
    def reporting_only(self) -> bool:
        return math.isinf(self.theta)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["theta"] = "inf" if self.reporting_only else self.theta
        data.pop("threads")
        data.pop("chunk_rows")
        return data


@dataclass
class SearchRecord:
    """Outcome for one multiplicity pattern."""

    pattern: MultiplicityPattern
    pruned_by: Optional[str] = None
    feasible_assignments: int = 0
    tried_assignments: int = 0
    complete: bool = True
    best_assignment: Optional[Assignment] = None
    best_residual: Optional[float] = None
    minimizer_roots: Optional[list] = None
    min_separation: Optional[float] = None
    verified_residual: Optional[float] = None
    candidate: bool = False
    candidate_pruned_by: Optional[str] = None
    filter_verdicts: Dict[str, Optional[bool]] = field(default_factory=dict)
    corollary7_window: List[int] = field(default_factory=list)

    @property
    def searched(self) -> bool:
        return self.pruned_by is None

    def to_dict(self) -> dict:
        roots = None
        if self.minimizer_roots is not None:
            roots = [
                [z.real, z.imag] if isinstance(z, complex) else z
                for z in self.minimizer_roots
            ]
        return {
            "pattern": self.pattern.to_json(),
            "pruned_by": self.pruned_by,
            "feasible_assignments": self.feasible_assignments,
            "tried_assignments": self.tried_assignments,
            "complete": self.complete,
            "best_assignment": list(self.best_assignment) if self.best_assignment is not None else None,
            "best_residual": self.best_residual,
            "minimizer_roots": roots,
            "min_separation": self.min_separation,
            "verified_residual": self.verified_residual,
            "candidate": self.candidate,
            "candidate_pruned_by": self.candidate_pruned_by,
            "filter_verdicts": self.filter_verdicts,
            "corollary7_window": self.corollary7_window,
        }


@dataclass
class SearchReport:
    """Per-pattern records in enumeration order and the global verdict."""

    config: SearchConfig
    records: List[SearchRecord]

    @property
    def complete(self) -> bool:
        return all(r.complete for r in self.records)

    @property
    def candidates(self) -> List[SearchRecord]:
        return [r for r in self.records if r.candidate]

    @property
    def verdict(self) -> str:
        if self.config.reporting_only:
            return REPORTING
        return CANDIDATES if self.candidates else NO_CANDIDATE

    @property
    def exit_code(self) -> int:
        """0 when nothing is found, 2 with candidates, 1 for an incomplete search."""
        if self.candidates:
            return 2
        return 0 if self.complete else 1

    def to_dict(self) -> dict:
        return {
            "degree": self.config.degree,
            "verdict": self.verdict,
            "complete": self.complete,
            "config": self.config.to_dict(),
            "records": [r.to_dict() for r in self.records],
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def to_dataframe(self) -> pd.DataFrame:
        """One row per pattern."""
        return pd.DataFrame([
            {
                "pattern": str(r.pattern),
                "k": r.pattern.k,
                "r": r.pattern.r,
                "pruned_by": r.pruned_by,
                "feasible_assignments": r.feasible_assignments,
                "tried_assignments": r.tried_assignments,
                "best_residual": r.best_residual,
                "verified_residual": r.verified_residual,
                "candidate": r.candidate,
                "candidate_pruned_by": r.candidate_pruned_by,
            }
            for r in self.records
        ])

    def summarize(self) -> dict:
        """Counts of pruned, searched and candidate patterns and the smallest residual."""
        df = self.to_dataframe()
        searched = df[df["pruned_by"].isna()]
        residuals = searched["best_residual"].dropna()
        return {
            "degree": self.config.degree,
            "patterns": len(df),
            "pruned": int(df["pruned_by"].notna().sum()),
            "pruned_by": df["pruned_by"].value_counts().to_dict(),
            "searched": len(searched),
            "candidates": int(df["candidate"].sum()),
            "min_residual": float(residuals.min()) if len(residuals) else None,
            "verdict": self.verdict,
            "complete": self.complete,
        }


def _pattern_rng(config: SearchConfig, pattern: MultiplicityPattern) -> np.random.Generator:
    return np.random.default_rng([config.seed, *pattern.multiplicities])


def _minimize_assignments(
    pattern: MultiplicityPattern,
    assignments: Sequence[Assignment],
    config: SearchConfig,
) -> Tuple[float, Assignment, np.ndarray]:
    """(best residual, best assignment, best roots) over assignments x multistarts."""
    objective = BatchedObjective(pattern, complex_roots=config.complex_roots)
    solver = BatchedLevenbergMarquardt(
        max_iterations=config.max_iterations,
        bound=None if config.complex_roots else LOGIT_LIMIT,
    )
    starts = objective.starts(_pattern_rng(config, pattern), config.multistarts)
    table = assignments_array(assignments, pattern.n)
    n_starts = len(starts)

    best = (math.inf, None, None)
    per_chunk = max(1, config.chunk_rows // n_starts)
    for lo in range(0, len(table), per_chunk):
        block = table[lo:lo + per_chunk]
        rows = np.repeat(block, n_starts, axis=0)
        x0 = np.tile(starts, (len(block), 1))
        result = solver.minimize(objective, x0, rows)
        with np.errstate(all="ignore"):
            raw = objective.residual(result.x, rows)
        raw = np.where(np.isfinite(raw), raw, np.inf)
        i = int(np.argmin(raw))
        if raw[i] < best[0]:
            lam = objective.roots(result.x[i:i + 1])[0]
            best = (float(raw[i]), tuple(int(j) for j in rows[i]), lam)
    return best


def _round_roots(lam: np.ndarray) -> list:
    return [complex(z) if np.iscomplexobj(lam) else float(z) for z in lam]


def _search_pattern(
    config: SearchConfig,
    pattern: MultiplicityPattern,
    filters: Sequence[PatternFilter],
) -> SearchRecord:
    record = SearchRecord(pattern, corollary7_window=corollary7_window(pattern))
    for f in filters:
        if f.rejects(pattern):
            record.pruned_by = f.citation
            return record

    generator = feasible_assignments(pattern, complex_roots=config.complex_roots)
    if config.assignment_budget is None:
        assignments = list(generator)
    else:
        assignments = list(islice(generator, config.assignment_budget + 1))
        if len(assignments) > config.assignment_budget:
            logger.warning("Pattern %s exceeds the assignment budget %d", pattern, config.assignment_budget)
            record.complete = False
            assignments = assignments[: config.assignment_budget]
    record.feasible_assignments = len(assignments)
    if not assignments:
        record.pruned_by = INFEASIBLE
        return record

    value, assignment, lam = _minimize_assignments(pattern, assignments, config)
    record.tried_assignments = len(assignments)
    if assignment is None:
        logger.warning("Pattern %s: every start diverged", pattern)
        return record
    record.best_residual = value if math.isfinite(value) else None
    record.best_assignment = assignment
    record.minimizer_roots = _round_roots(lam)
    record.min_separation = min_separation(lam)
    logger.info("Pattern %s: best residual %.3e with assignment %s", pattern, value, assignment)

    if config.reporting_only or not value < config.theta:
        return record
    record.verified_residual = verify_residual(pattern, lam, assignment, config.verify_digits)
    record.candidate = record.verified_residual < config.theta
    if record.candidate and not config.complex_roots and config.use_candidate_filters:
        stats = CandidateStats.from_roots(pattern, lam)
        record.filter_verdicts = evaluate_filters(stats)
        pruned, citation = prune_inequalities(stats)
        if pruned:
            record.candidate = False
            record.candidate_pruned_by = citation
    if record.candidate:
        logger.warning("Candidate for pattern %s: residual %.3e", pattern, record.verified_residual)
    return record


def search(config: SearchConfig) -> SearchReport:
    """
    Search every composition of the degree for a near-solution of the CA system.

    Patterns are filtered first. Each surviving pattern has its feasible
    assignments minimized from seeded multistarts with roots gauged to
    lambda_1 = 0 and lambda_k = 1. Minima below theta are re-evaluated at
    high precision and checked against the candidate filters.

    Args:
        config: SearchConfig

    Returns:
        SearchReport with one record per composition, in enumeration order
    """
    if config.use_pattern_filters and not config.complex_roots:
        filters: List[PatternFilter] = default_pattern_filters(config.trust_four_roots)
    else:
        filters = [TrivialClassFilter()]
    patterns = list(compositions(config.degree))
    logger.info("Searching %d patterns of degree %d", len(patterns), config.degree)

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            records = list(pool.map(lambda p: _search_pattern(config, p, filters), patterns))
    else:
        records = [_search_pattern(config, p, filters) for p in patterns]
    return SearchReport(config, records)


@dataclass
class OracleResult:
    """Exhaustive minimum over every assignment of one pattern."""

    pattern: MultiplicityPattern
    assignments: int
    best_residual: float
    best_assignment: Optional[Assignment]


def brute_force_minimum(pattern, config: SearchConfig) -> OracleResult:
    """
    Minimize over every map m -> j for m >= r, ignoring all filters and the
    interlacing constraints.

    Args:
        pattern: Pattern with at least two distinct roots
        config: Multistart and iteration settings

    Returns:
        OracleResult
    """
    pattern = MultiplicityPattern.of(pattern)
    if pattern.is_trivial:
        raise DomainError(f"Pattern {pattern} is the trivial class")
    assignments = list(all_assignments(pattern))
    value, assignment, _ = _minimize_assignments(pattern, assignments, config)
    return OracleResult(pattern, len(assignments), value, assignment)
