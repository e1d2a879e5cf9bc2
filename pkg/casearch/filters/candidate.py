"""Necessary conditions on the root data of a real-rooted CA candidate.

Every filter below states a condition that a real-rooted CA-polynomial cannot
satisfy. The distances are measured from the centroid x_{n-1}, which such a
polynomial always has among its roots (lambda_1, multiplicity r1). Filters that
need a statistic the candidate does not carry return None.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from casearch.filters.base import CandidateFilter
from casearch.patterns import MultiplicityPattern, window_orders
from polycore import DomainError, Polynomial, root_multiset

logger = logging.getLogger(__name__)

MATCH_TOLERANCE = 1e-6  # relative to 1 + span when matching root values
SLACK = 1e-9  # relative slack before an inequality counts as violated


@dataclass
class CandidateStats:
    """Distances, multiplicities and shared-root counts of one candidate."""

    n: int
    k: int
    r: int
    r0: int
    r1: Optional[int]  # multiplicity of the centroid root; None when the centroid is not a root
    r2: Optional[int]  # multiplicity of the root x_{n-2} shared with f^(n-2)
    r_star: int  # multiplicity of the farthest root lambda_{s0}
    r_low: int  # multiplicity of the opposite extreme root
    D: float
    d: float
    span: float
    gap: float  # |x_{n-1} - x_{n-2}|
    D_m: Dict[int, float] = field(default_factory=dict)  # farthest root of f^(m) from the centroid
    l: Dict[int, int] = field(default_factory=dict)
    all_shared: Dict[int, bool] = field(default_factory=dict)  # every root of f^(m) is a root of f

    @property
    def window(self) -> List[int]:
        return window_orders(self.n, self.r, self.r0)

    @property
    def centred(self) -> bool:
        return self.r1 is not None

    @classmethod
    def from_roots(
        cls,
        pattern,
        roots: Sequence[float],
        match_tolerance: float = MATCH_TOLERANCE,
    ) -> "CandidateStats":
        """
        Build statistics from real root values and their multiplicities.

        Args:
            pattern: Multiplicities matching ``roots``
            roots: Distinct real roots in increasing order

        Returns:
            CandidateStats with D_m for r <= m <= n-2 and l(m) for 0 <= m <= n-1
        """
        pattern = MultiplicityPattern.of(pattern)
        lam = np.asarray(roots, dtype=float)
        mult = np.asarray(pattern.multiplicities)
        if lam.shape != mult.shape:
            raise DomainError(f"Got {lam.size} roots for pattern {pattern}")
        n, k = pattern.n, pattern.k

        centre = float(mult @ lam) / n
        span = float(lam[-1] - lam[0])
        tol = match_tolerance * (1.0 + span)

        diffs = lam[:, None] - lam[None, :]
        pair_sum = float(np.sum(np.triu(np.outer(mult, mult) * diffs ** 2, 1)))
        gap = math.sqrt(pair_sum / (n * n * (n - 1))) if n > 1 else 0.0

        dist = np.abs(lam - centre)
        c_idx = int(np.argmin(dist)) if dist.min() <= tol else None
        others = [j for j in range(k) if j != c_idx]
        if others:
            s0 = max(others, key=lambda j: dist[j])
            D, d = float(dist[s0]), float(min(dist[j] for j in others))
        else:
            s0, D, d = k - 1, 0.0, 0.0
        low = 0 if s0 == k - 1 else k - 1

        r2 = None
        for j in others:
            if abs(dist[j] - gap) <= tol:
                r2 = int(mult[j])
                break

        coeffs = np.poly(np.repeat(lam, mult))
        D_m, l, all_shared = {}, {}, {}
        for m in range(n):
            deriv = np.polyder(coeffs, m) if m else coeffs
            scale = np.polyval(np.abs(deriv), np.abs(lam) + 1.0)
            shared = [
                j for j in others
                if mult[j] > m or abs(np.polyval(deriv, lam[j])) <= match_tolerance * scale[j]
            ]
            l[m] = len(shared)
            if pattern.r <= m <= n - 2:
                xi = np.roots(deriv).real
                D_m[m] = float(np.max(np.abs(xi - centre)))
                all_shared[m] = bool(np.all(np.min(np.abs(xi[:, None] - lam[None, :]), axis=1) <= tol))

        return cls(
            n=n,
            k=k,
            r=pattern.r,
            r0=pattern.r0,
            r1=int(mult[c_idx]) if c_idx is not None else None,
            r2=r2,
            r_star=int(mult[s0]),
            r_low=int(mult[low]),
            D=D,
            d=d,
            span=span,
            gap=gap,
            D_m=D_m,
            l=l,
            all_shared=all_shared,
        )

    def to_dict(self) -> dict:
        data = dict(self.__dict__)
        for key in ("D_m", "l", "all_shared"):
            data[key] = {str(m): v for m, v in data[key].items()}
        return data


def candidate_stats(p: Polynomial, match_tolerance: float = MATCH_TOLERANCE) -> CandidateStats:
    """CandidateStats of a real-rooted polynomial from its root multiset."""
    multiset = root_multiset(p.monic())
    return CandidateStats.from_roots(multiset.multiplicities, multiset.real_values(), match_tolerance)


def _exceeds(lhs: float, rhs: float) -> bool:
    return lhs > rhs + SLACK * (1.0 + abs(rhs))


class ConsecutiveZeroFilter(CandidateFilter):
    """l(m) = l(m+1) = 0 for some m >= r."""

    name = "consecutive_zero_counts"
    citation = "Lemma 11"

    def rejects(self, stats: CandidateStats) -> Optional[bool]:
        if not stats.centred or not stats.l:
            return None
        return any(
            stats.l.get(m) == 0 and stats.l.get(m + 1) == 0
            for m in range(stats.r, stats.n - 1)
        )


class SpanFilter(CandidateFilter):
    """span(f) > ((n - r1 - r0) D + r0 D^(m)) / r* for some m >= r."""

    name = "span_vs_farthest"
    citation = "Proposition 3"

    def rejects(self, stats: CandidateStats) -> Optional[bool]:
        if not stats.centred or not stats.D_m:
            return None
        base = (stats.n - stats.r1 - stats.r0) * stats.D
        return any(
            _exceeds(stats.span, (base + stats.r0 * d_m) / stats.r_star)
            for d_m in stats.D_m.values()
        )


class FarthestRootFilter(CandidateFilter):
    """D < [r* sqrt((n^2 - r1)/(n - r1 - r2)) - r0] |x_{n-1} - x_{n-2}| / (n - r1 - r0)."""

    name = "farthest_vs_gap"
    citation = "Proposition 4"

    def rejects(self, stats: CandidateStats) -> Optional[bool]:
        if not stats.centred or stats.r2 is None:
            return None
        n, r1, r2, r0 = stats.n, stats.r1, stats.r2, stats.r0
        if n - r1 - r2 <= 0 or n - r1 - r0 <= 0:
            return None
        bound = (stats.r_star * math.sqrt((n * n - r1) / (n - r1 - r2)) - r0) * stats.gap / (n - r1 - r0)
        return _exceeds(bound, stats.D)


class DistanceRatioFilter(CandidateFilter):
    """d/D > sqrt(2(n-m-1)/(2(k-1)-1)) with m and m+1 both in the window."""

    name = "distance_ratio"
    citation = "Proposition 5"

    def rejects(self, stats: CandidateStats) -> Optional[bool]:
        window = set(stats.window)
        pairs = [m for m in window if m + 1 in window]
        if not pairs or stats.D <= 0 or stats.k < 3:
            return None
        ratio = stats.d / stats.D
        return any(
            _exceeds(ratio, math.sqrt(2 * (stats.n - m - 1) / (2 * (stats.k - 1) - 1)))
            for m in pairs
        )


class SharedCountFilter(CandidateFilter):
    """l(m) + l(m+1) > ((n - r1) D - r* span) / (r0 (D - D^(m))) for some m >= r."""

    name = "shared_count_linear"
    citation = "Eq. (43)"

    def rejects(self, stats: CandidateStats) -> Optional[bool]:
        if not stats.centred or not stats.D_m or not stats.l:
            return None
        verdicts = []
        for m, d_m in stats.D_m.items():
            if stats.D - d_m <= 0:
                continue
            rhs = ((stats.n - stats.r1) * stats.D - stats.r_star * stats.span) / (stats.r0 * (stats.D - d_m))
            verdicts.append(_exceeds(stats.l[m] + stats.l.get(m + 1, 0), rhs))
        return any(verdicts) if verdicts else None


class SharedCountSquaredFilter(CandidateFilter):
    """Squared-distance form of the shared-count bound."""

    name = "shared_count_squared"
    citation = "Eq. (43) squared"

    def rejects(self, stats: CandidateStats) -> Optional[bool]:
        if not stats.centred or not stats.D_m or not stats.l:
            return None
        n, D, span = stats.n, stats.D, stats.span
        numerator = (
            (n - stats.r1) * D * D
            + stats.r_low * span * span
            - n * (n - 1) * stats.gap ** 2
            - 2 * D * stats.r_low * span
        )
        verdicts = []
        for m, d_m in stats.D_m.items():
            if D * D - d_m * d_m <= 0:
                continue
            rhs = numerator / (stats.r0 * (D * D - d_m * d_m))
            verdicts.append(_exceeds(stats.l[m] + stats.l.get(m + 1, 0), rhs))
        return any(verdicts) if verdicts else None


class PenultimateCountFilter(CandidateFilter):
    """l(n-2) > ((n - r1) D - r* span) / (r0 (D - |x_{n-1} - x_{n-2}|))."""

    name = "penultimate_count"
    citation = "Eq. (45)"

    def rejects(self, stats: CandidateStats) -> Optional[bool]:
        if not stats.centred or stats.n - 2 not in stats.l or stats.D <= stats.gap:
            return None
        rhs = ((stats.n - stats.r1) * stats.D - stats.r_star * stats.span) / (stats.r0 * (stats.D - stats.gap))
        return _exceeds(stats.l[stats.n - 2], rhs)


class WindowSharedFilter(CandidateFilter):
    """Every root of f^(m) is a root of f for some m in the window."""

    name = "window_all_shared"
    citation = "Corollary 7"

    def rejects(self, stats: CandidateStats) -> Optional[bool]:
        window = stats.window
        if not window:
            return None
        known = [stats.all_shared[m] for m in window if m in stats.all_shared]
        return any(known) if known else None


CANDIDATE_FILTERS: Tuple[CandidateFilter, ...] = (
    ConsecutiveZeroFilter(),
    SpanFilter(),
    FarthestRootFilter(),
    DistanceRatioFilter(),
    SharedCountFilter(),
    SharedCountSquaredFilter(),
    PenultimateCountFilter(),
    WindowSharedFilter(),
)


def evaluate_filters(stats: CandidateStats) -> Dict[str, Optional[bool]]:
    """Citation -> True (rejects), False (passes) or None (skipped)."""
    return {f.citation: f.rejects(stats) for f in CANDIDATE_FILTERS}


def prune_inequalities(stats: CandidateStats) -> Tuple[bool, Optional[str]]:
    """
    Apply every candidate filter in order.

    Returns:
        (True, citation) for the first filter that rejects, else (False, None)
    """
    for citation, rejected in evaluate_filters(stats).items():
        if rejected is None:
            logger.debug("Filter %s skipped: missing statistics", citation)
        elif rejected:
            return True, citation
    return False, None
