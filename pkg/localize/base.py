"""Shared root data and the base class for localization bounds."""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from config import Settings, get_settings
from localize.reports import BoundReport
from polycore import (
    CentroidData,
    DomainError,
    GaussianRational,
    Polynomial,
    RootMultiset,
    centroid_data,
    is_real_rooted,
    polynomial_gcd,
    root_multiset,
)
from polycore.roots import ComplexApprox

logger = logging.getLogger(__name__)

# Squared distances and other nonnegative quantities: Fraction when every
# input was rational, float otherwise.
Scalar = Union[Fraction, float]


def real_value(root) -> Scalar:
    """Real part of an exact or approximate root."""
    if isinstance(root, GaussianRational):
        return root.re
    if isinstance(root, (int, Fraction)):
        return Fraction(root)
    if isinstance(root, ComplexApprox):
        return root.value.real
    return complex(root).real


def sq_diff(a: Scalar, b: Scalar) -> Scalar:
    """(a - b)^2, exact for rational a and b."""
    d = a - b
    return d * d


def is_exact(*values) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in values if v is not None)


def leq(a: Scalar, b: Scalar, tolerance: float) -> bool:
    """a <= b; exact for rationals, relative tolerance otherwise."""
    if is_exact(a, b):
        return a <= b
    a, b = float(a), float(b)
    return a <= b + tolerance * max(1.0, abs(a), abs(b))


def _root(value: Optional[Scalar]) -> Optional[float]:
    if value is None:
        return None
    return math.sqrt(max(0.0, float(value)))


def verdict(
    bound_id: str,
    value_sq: Scalar,
    lower_sq: Optional[Scalar] = None,
    upper_sq: Optional[Scalar] = None,
    tolerance: float = 1e-9,
    note: str = "",
    **inputs,
) -> BoundReport:
    """
    Decide lower^2 <= value^2 <= upper^2 and report the square roots.

    All three quantities are nonnegative, so comparing squares decides the
    inequality between the quantities themselves.
    """
    holds = True
    if lower_sq is not None:
        holds = holds and leq(lower_sq, value_sq, tolerance)
    if upper_sq is not None:
        holds = holds and leq(value_sq, upper_sq, tolerance)
    backend = "exact" if is_exact(value_sq, lower_sq, upper_sq) else "numeric"
    return BoundReport(
        bound_id,
        _root(value_sq),
        lower=_root(lower_sq),
        upper=_root(upper_sq),
        holds=holds,
        backend=backend,
        inputs=inputs,
        note=note,
    )


@dataclass
class RootContext:
    """
    A monic polynomial with its roots, centroid and penultimate gap.

    Root entries are sorted increasingly; derivative roots are computed on
    demand and cached per order.
    """

    polynomial: Polynomial
    roots: RootMultiset
    centre: CentroidData
    settings: Settings
    _derivatives: Dict[int, RootMultiset] = field(default_factory=dict, repr=False)
    _shared: Dict[int, List[int]] = field(default_factory=dict, repr=False)

    @classmethod
    def build(cls, p: Polynomial, settings: Optional[Settings] = None, real_only: bool = True) -> "RootContext":
        """
        Raises:
            DomainError: for degree < 2, or non-real roots when real_only
        """
        p.require_degree(2, "root localization")
        f = p.monic()
        if real_only and not is_real_rooted(f):
            raise DomainError(f"Polynomial {f} has non-real roots; the bound requires real roots")
        settings = settings or get_settings()
        return cls(f, root_multiset(f, settings), centroid_data(f), settings)

    @property
    def n(self) -> int:
        return self.polynomial.degree

    @property
    def k(self) -> int:
        return self.roots.k

    @property
    def r(self) -> int:
        return self.roots.r

    @property
    def r0(self) -> int:
        return self.roots.r0

    @property
    def tolerance(self) -> float:
        return self.settings.tolerance

    @property
    def centroid(self) -> Fraction:
        return self.centre.z_n1.re

    @property
    def gap_squared(self) -> Fraction:
        """(x_{n-1} - x_{n-2})^2, exact and real for real-rooted input."""
        return self.centre.gap_squared.re

    def root_value(self, j: int) -> Scalar:
        return real_value(self.roots.entries[j].root)

    def multiplicity(self, j: int) -> int:
        return self.roots.entries[j].multiplicity

    @property
    def centroid_index(self) -> Optional[int]:
        """Index of the root equal to the centroid, if any."""
        target = self.centre.z_n1
        for j, e in enumerate(self.roots.entries):
            if e.is_exact and e.root == target:
                return j
        return None

    @property
    def r1(self) -> int:
        j = self.centroid_index
        return 0 if j is None else self.multiplicity(j)

    def others(self) -> List[int]:
        """Root indices other than the centroid."""
        c = self.centroid_index
        return [j for j in range(self.k) if j != c]

    def derivative(self, m: int) -> RootMultiset:
        """Roots of f^(m), 0 <= m <= n - 1."""
        if not 0 <= m <= self.n - 1:
            raise DomainError(f"Derivative order m={m} outside 0..{self.n - 1}")
        if m not in self._derivatives:
            q = self.polynomial.derive(m)
            self._derivatives[m] = self.roots if m == 0 else root_multiset(q, self.settings)
        return self._derivatives[m]

    def derivative_values(self, m: int) -> List[Scalar]:
        """Roots of f^(m) repeated by multiplicity, increasing."""
        values = []
        for e in self.derivative(m).entries:
            values.extend([real_value(e.root)] * e.multiplicity)
        return sorted(values)

    def shared_indices(self, m: int) -> List[int]:
        """
        Indices of roots of f that are also roots of f^(m).

        Decided by the exact gcd of f and f^(m); only matching the gcd's
        roots back to entries of f uses the root approximations.
        """
        if m in self._shared:
            return self._shared[m]
        if not 0 <= m <= self.n - 1:
            raise DomainError(f"Derivative order m={m} outside 0..{self.n - 1}")
        g = polynomial_gcd(self.polynomial, self.polynomial.derive(m))
        found: List[int] = []
        if g.degree >= 1:
            for e in root_multiset(g, self.settings).entries:
                index = self.roots.find(e.root if e.is_exact else e.value, self.tolerance)
                if index is not None and index not in found:
                    found.append(index)
        self._shared[m] = sorted(found)
        return self._shared[m]

    def penultimate_roots(self) -> Tuple[Scalar, Scalar]:
        """The two roots of f^(n-2), x_{n-2} first."""
        a, b = self.centre.quadratic_roots()
        return real_value(a), real_value(b)


class Bound(ABC):
    """
    Abstract base class for root-localization inequalities.

    Implementations provide evaluate(); calling the bound builds the root
    context from a polynomial when needed.
    """

    name: str = "base"
    description: str = ""
    bound_ids: Tuple[str, ...] = ()

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings

    @abstractmethod
    def evaluate(self, ctx: RootContext, **params) -> List[BoundReport]:
        """
        Evaluate the inequalities on a prepared root context.

        Args:
            ctx: Real-rooted polynomial data
            **params: Orders and root indices specific to the bound

        Returns:
            One BoundReport per inequality
        """
        pass

    def validate_polynomial(self, p: Polynomial) -> None:
        if p.degree < 2:
            raise DomainError(f"{self.name} requires degree >= 2, got {p.degree}")

    def context(self, p) -> RootContext:
        if isinstance(p, RootContext):
            return p
        self.validate_polynomial(p)
        return RootContext.build(p, self.settings)

    def __call__(self, p, **params) -> List[BoundReport]:
        return self.evaluate(self.context(p), **params)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name='{self.name}')"
