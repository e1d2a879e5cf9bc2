"""Filters that rule out whole multiplicity patterns."""

from typing import List, Optional, Sequence, Tuple

from casearch.filters.base import PatternFilter
from casearch.patterns import MultiplicityPattern


class TrivialClassFilter(PatternFilter):
    """A single distinct root is the trivial class, never a counterexample."""

    name = "trivial_class"
    citation = "trivial class"

    def rejects(self, pattern: MultiplicityPattern) -> bool:
        return pattern.k == 1


class DistinctRootFilter(PatternFilter):
    """
    Real-rooted CA-polynomials have many distinct roots.

    Two distinct roots are excluded because no root of f^(m), m >= r, can be
    an extreme root; three are excluded through the centroid identities.
    Corollary 11 as stated excludes every k <= 4. By default this filter
    rejects only 2 <= k <= 3, and k = 4 is rejected only when
    ``trust_four_roots`` is set. The stated k = 4 case fails:
    x^4 - 6x^2 + 5x = shared_gap_family(1, 1, 1) has the four real roots
    0, 1, (-1 +- sqrt 21)/2, its centroid 0 is a root of f^(3), and 1 is a
    root of f''. More generally every x^r1 (x-1)^r2 q(x)^t shares roots with
    f^(n-1) and f^(n-2) while having four distinct roots.
    """

    name = "distinct_roots"
    citation = "Corollary 11"

    def __init__(self, trust_four_roots: bool = False):
        self.trust_four_roots = trust_four_roots

    @property
    def min_distinct(self) -> int:
        return 5 if self.trust_four_roots else 4

    def rejects(self, pattern: MultiplicityPattern) -> bool:
        return 2 <= pattern.k < self.min_distinct


class MultiplicityCapFilter(PatternFilter):
    """Roots of f^(m), m >= r, are interior and simple, so r < n - 1 is needed."""

    name = "multiplicity_cap"
    citation = "Corollary 3"

    def rejects(self, pattern: MultiplicityPattern) -> bool:
        return pattern.k >= 2 and pattern.r >= pattern.n - 1


def default_pattern_filters(trust_four_roots: bool = False) -> List[PatternFilter]:
    return [TrivialClassFilter(), MultiplicityCapFilter(), DistinctRootFilter(trust_four_roots)]


def pattern_admissible(
    pattern,
    filters: Optional[Sequence[PatternFilter]] = None,
) -> Tuple[bool, Optional[str]]:
    """
    Run the pattern filters in order.

    Args:
        pattern: MultiplicityPattern or a sequence of multiplicities
        filters: Filters to apply; the default set when omitted

    Returns:
        (True, None) when every filter passes, else (False, citation of the
        first filter that rejects)
    """
    pattern = MultiplicityPattern.of(pattern)
    for f in default_pattern_filters() if filters is None else filters:
        if f.rejects(pattern):
            return False, f.citation
    return True, None
