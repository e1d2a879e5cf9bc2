"""Multiplicity patterns (r_1, ..., r_k) of candidate polynomials."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, List, Sequence, Tuple

from polycore import DomainError


@dataclass(frozen=True)
class MultiplicityPattern:
    """Multiplicities of the distinct roots, listed in increasing root order."""

    multiplicities: Tuple[int, ...]

    def __post_init__(self):
        if not self.multiplicities:
            raise DomainError("A multiplicity pattern needs at least one root")
        if any(r < 1 for r in self.multiplicities):
            raise DomainError(f"Multiplicities must be positive, got {self.multiplicities}")

    @classmethod
    def of(cls, values: Sequence[int]) -> "MultiplicityPattern":
        if isinstance(values, MultiplicityPattern):
            return values
        return cls(tuple(int(v) for v in values))

    @property
    def n(self) -> int:
        return sum(self.multiplicities)

    @property
    def k(self) -> int:
        return len(self.multiplicities)

    @property
    def r(self) -> int:
        return max(self.multiplicities)

    @property
    def r0(self) -> int:
        return min(self.multiplicities)

    @property
    def is_trivial(self) -> bool:
        return self.k == 1

    def reversed(self) -> "MultiplicityPattern":
        return MultiplicityPattern(self.multiplicities[::-1])

    def to_json(self) -> List[int]:
        return list(self.multiplicities)

    def __iter__(self):
        return iter(self.multiplicities)

    def __len__(self):
        return self.k

    def __getitem__(self, j):
        return self.multiplicities[j]

    def __str__(self):
        return "(" + ",".join(str(r) for r in self.multiplicities) + ")"


def compositions(n: int) -> Iterator[MultiplicityPattern]:
    """
    Every composition of n, by number of parts and then lexicographically.

    Raises:
        DomainError: for n < 1
    """
    if n < 1:
        raise DomainError(f"Degree must be positive, got {n}")
    for k in range(1, n + 1):
        for cuts in combinations(range(1, n), k - 1):
            bounds = (0,) + cuts + (n,)
            yield MultiplicityPattern(tuple(b - a for a, b in zip(bounds, bounds[1:])))


def window_orders(n: int, r: int, r0: int) -> List[int]:
    """Orders m with r <= m < (1/2)(1 - 1/r0)(n - 1); empty whenever r0 = 1."""
    upper = Fraction(1, 2) * (1 - Fraction(1, r0)) * (n - 1)
    return [m for m in range(r, n - 1) if m < upper]


def corollary7_window(pattern) -> List[int]:
    """
    Window of orders for a pattern.

    For m in the window no real-rooted non-trivial polynomial can have every
    root of f^(m) among its own roots.
    """
    pattern = MultiplicityPattern.of(pattern)
    return window_orders(pattern.n, pattern.r, pattern.r0)
