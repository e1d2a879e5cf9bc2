"""Spacing bounds between consecutive roots of f and of its derivatives."""

from fractions import Fraction
from typing import List, Optional, Tuple

from config import Settings
from localize.base import Bound, RootContext, Scalar, sq_diff, verdict
from localize.reports import BoundReport
from polycore import DomainError, Polynomial, centroid_data, is_real_rooted, squarefree_part


def _spacings(values: List[Scalar]) -> Tuple[Scalar, Scalar]:
    """(smallest, largest) squared distance between consecutive values."""
    values = sorted(values)
    gaps = [sq_diff(b, a) for a, b in zip(values, values[1:])]
    return min(gaps), max(gaps)


class GapBounds(Bound):
    """
    Two-sided estimates relating the extreme spacings of f, of f^(m) and
    the gap |x_{n-1} - x_{n-2}|.

    delta and Delta are taken over the distinct roots of f; the derivative
    spacings are taken over the roots of f^(m) repeated by multiplicity, so a
    multiple root of f^(m) gives delta^(m) = 0.
    """

    name = "gap_bounds"
    description = "Consecutive-root spacing estimates"
    bound_ids = ("eq26", "eq27", "eq28")

    def evaluate(self, ctx: RootContext, m: int = 1) -> List[BoundReport]:
        n, k = ctx.n, ctx.k
        if n <= 2:
            raise DomainError(f"Spacing bounds need degree n > 2, got {n}")
        if not 1 <= m <= n - 2:
            raise DomainError(f"Order m={m} outside 1..{n - 2}")
        if k < 2:
            raise DomainError("Spacing bounds need at least two distinct roots (k >= 2)")

        small, large = _spacings([ctx.root_value(j) for j in range(k)])
        small_m, large_m = _spacings(ctx.derivative_values(m))
        r, r0 = ctx.r, ctx.r0
        tol = ctx.tolerance
        inputs = {"m": m, "n": n, "k": k, "r": r, "r0": r0}

        spread = Fraction(k * k * (k * k - 1), n * n * (n - m + 1) * (n - 1))
        centre = Fraction(k * k * (k * k - 1), 12 * n * n * (n - 1))
        return [
            verdict("eq26", small_m, upper_sq=large * r * r * spread, tolerance=tol, **inputs),
            verdict("eq27", large_m, lower_sq=small * r0 * r0 * spread, tolerance=tol, **inputs),
            verdict(
                "eq28",
                ctx.gap_squared,
                lower_sq=small * r0 * r0 * centre,
                upper_sq=large * r * r * centre,
                tolerance=tol,
                **inputs,
            ),
        ]


def gap_bounds(p: Polynomial, m: int, settings: Optional[Settings] = None) -> List[BoundReport]:
    """
    Verdicts for the three spacing estimates.

    Raises:
        DomainError: for non-real roots, n <= 2, m outside 1..n-2 or k = 1
    """
    return GapBounds(settings)(p, m=m)


def trivial_by_gap(p: Polynomial) -> bool:
    """
    A real-rooted p is trivial exactly when f^(n-2) has a double root.

    Raises:
        DomainError: for degree < 2 or non-real roots
    """
    p.require_degree(2, "trivial_by_gap")
    if not is_real_rooted(p):
        raise DomainError(f"Polynomial {p} has non-real roots")
    return centroid_data(p).gap_squared.is_zero


def forces_complex_root(p: Polynomial) -> bool:
    """
    True when p has at least two distinct roots while f^(n-2) has a double
    root; such a polynomial must have a non-real root.
    """
    p.require_degree(3, "forces_complex_root")
    return squarefree_part(p).degree >= 2 and centroid_data(p).gap_squared.is_zero
