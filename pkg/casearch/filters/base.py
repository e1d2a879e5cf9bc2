"""Base classes for the non-existence filters."""

from abc import ABC, abstractmethod
from typing import Optional

from casearch.patterns import MultiplicityPattern


class PatternFilter(ABC):
    """
    Abstract base class for filters acting on a multiplicity pattern alone.

    A pattern filter rejects patterns that no real-rooted non-trivial
    CA-polynomial can have, before any root values are searched.
    """

    name: str = "BasePatternFilter"
    citation: str = ""  # provenance recorded on pruned patterns

    @abstractmethod
    def rejects(self, pattern: MultiplicityPattern) -> bool:
        """
        Args:
            pattern: Multiplicities in increasing root order

        Returns:
            True when the pattern is ruled out
        """
        pass

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name='{self.name}')"


class CandidateFilter(ABC):
    """
    Abstract base class for necessary conditions on candidate root data.

    A candidate filter rejects a near-solution whose distances and shared
    root counts violate a condition every CA-polynomial satisfies.
    """

    name: str = "BaseCandidateFilter"
    citation: str = ""

    @abstractmethod
    def rejects(self, stats) -> Optional[bool]:
        """
        Args:
            stats: CandidateStats for the candidate

        Returns:
            True when ruled out, False when it passes, None when the
            statistics the condition needs are missing
        """
        pass

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name='{self.name}')"
