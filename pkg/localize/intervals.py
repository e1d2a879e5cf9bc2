"""Laguerre-type intervals around the centroid x_{n-1}.

Every interval has the form x_{n-1} +/- w |x_{n-1} - x_{n-2}|, so membership
is decided as (lambda - x_{n-1})^2 <= w^2 gap^2, exactly for rational roots.
"""

import logging
from fractions import Fraction
from typing import List, Optional

from config import Settings
from localize.base import Bound, RootContext, sq_diff, verdict
from localize.reports import BoundReport, gated_bound
from polycore import DomainError, Polynomial, is_trivial

logger = logging.getLogger(__name__)


def _root_index(ctx: RootContext, j: int, low: int = 1) -> int:
    if not low <= j <= ctx.k:
        raise DomainError(f"Root index {j} outside {low}..{ctx.k}")
    return j - 1


class LaguerreInterval(Bound):
    """The root lambda_j, of multiplicity r_j, for any m < r_j."""

    name = "laguerre_interval"
    description = "Laguerre interval for a multiple root"
    bound_ids = ("eq29", "eq30")

    def evaluate(self, ctx: RootContext, j: int = 1, m: int = 0) -> List[BoundReport]:
        index = _root_index(ctx, j)
        n, r_j = ctx.n, ctx.multiplicity(index)
        if not 0 <= m <= r_j - 1:
            raise DomainError(f"Order m={m} must satisfy 0 <= m <= r_j - 1 = {r_j - 1}")
        lam = ctx.root_value(index)
        width_sq = Fraction((n - r_j) * (n - m - 1), r_j - m) * ctx.gap_squared
        bound_id = "eq30" if m == 0 else "eq29"
        return [
            verdict(
                bound_id,
                sq_diff(lam, ctx.centroid),
                upper_sq=width_sq,
                tolerance=ctx.tolerance,
                j=j,
                m=m,
                root=lam,
                multiplicity=r_j,
                centre=ctx.centroid,
            )
        ]


class DerivativeRootInterval(Bound):
    """All roots of f^(m) lie within (n-m-1) gaps of the centroid."""

    name = "derivative_root_interval"
    description = "Laguerre interval for the roots of f^(m)"
    bound_ids = ("eq31",)

    def evaluate(self, ctx: RootContext, m: int = 0) -> List[BoundReport]:
        n = ctx.n
        if not 0 <= m <= n - 2:
            raise DomainError(f"Order m={m} outside 0..{n - 2}")
        farthest = max(sq_diff(v, ctx.centroid) for v in ctx.derivative_values(m))
        width_sq = (n - m - 1) ** 2 * ctx.gap_squared
        return [verdict("eq31", farthest, upper_sq=width_sq, tolerance=ctx.tolerance, m=m, centre=ctx.centroid)]


def _common_order(ctx: RootContext) -> List[int]:
    """Root indices with the centroid first and the rest increasing."""
    c = ctx.centroid_index
    return [c] + ctx.others()


class CommonRootInterval(Bound):
    """
    When the centroid is itself a root of multiplicity r_1, each other root
    lambda_s lies within sqrt((1/r_s - 1/(n-r_1))(n^2-n)) gaps of it.

    Roots are numbered with the centroid as lambda_1 and the remaining
    roots increasing as lambda_2..lambda_k.
    """

    name = "common_root_interval"
    description = "Interval for roots when the centroid is a root"
    bound_ids = ("eq32",)

    def evaluate(self, ctx: RootContext, s: int = 2) -> List[BoundReport]:
        if ctx.centroid_index is None:
            return [gated_bound("eq32", "centroid is not a root of f", s=s)]
        index = _common_order(ctx)[_root_index(ctx, s, low=2)]
        n, r1, r_s = ctx.n, ctx.r1, ctx.multiplicity(index)
        lam = ctx.root_value(index)
        width_sq = (Fraction(1, r_s) - Fraction(1, n - r1)) * (n * n - n) * ctx.gap_squared
        note = "zero-width interval" if width_sq == 0 else ""
        return [
            verdict(
                "eq32",
                sq_diff(lam, ctx.centroid),
                upper_sq=width_sq,
                tolerance=ctx.tolerance,
                note=note,
                s=s,
                root=lam,
                r1=r1,
                r_s=r_s,
            )
        ]


class SharedRootBound(Bound):
    """
    Distance from the centroid root to a root x_m shared by f and f^(m),
    for r <= m <= n-2.

    Every shared root other than the centroid is checked; the report
    carries the one with the least slack.
    """

    name = "ca_mth_bound"
    description = "Laguerre bound for a root shared with f^(m)"
    bound_ids = ("eq33",)

    def evaluate(self, ctx: RootContext, m: int = 1) -> List[BoundReport]:
        n = ctx.n
        if not 0 <= m <= n - 2:
            raise DomainError(f"Order m={m} outside 0..{n - 2}")
        if is_trivial(ctx.polynomial):
            return [verdict("eq33", Fraction(0), upper_sq=Fraction(0), note="trivial polynomial", m=m)]
        if ctx.centroid_index is None:
            return [gated_bound("eq33", "centroid is not a root of f", m=m)]
        if m < ctx.r:
            return [gated_bound("eq33", f"m={m} below the largest multiplicity r={ctx.r}", m=m)]
        shared = [j for j in ctx.shared_indices(m) if j != ctx.centroid_index]
        if not shared:
            return [gated_bound("eq33", "f^(m) shares no root with f besides the centroid", m=m)]

        r1 = ctx.r1
        worst = None
        for j in shared:
            r_km = ctx.multiplicity(j)
            coefficient = Fraction(n - r1 - r_km, (n - r1) ** 2) * (n * n - r1 + (n - r1) * (n - m) * (n - m - 2))
            value_sq = sq_diff(ctx.root_value(j), ctx.centroid)
            upper_sq = coefficient * ctx.gap_squared
            report = verdict(
                "eq33",
                value_sq,
                upper_sq=upper_sq,
                tolerance=ctx.tolerance,
                m=m,
                shared_root=ctx.root_value(j),
                r1=r1,
                r_km=r_km,
            )
            slack = float(upper_sq) - float(value_sq)
            if worst is None or slack < worst[0]:
                worst = (slack, report)
        return [worst[1]]


def laguerre_interval(p: Polynomial, j: int, m: int = 0, settings: Optional[Settings] = None) -> BoundReport:
    """
    Verdict for lambda_j in x_{n-1} +/- sqrt((n-r_j)(n-m-1)/(r_j-m)) gap.

    Args:
        p: Real-rooted polynomial of degree >= 2
        j: Root index 1..k in increasing order
        m: 0 <= m <= r_j - 1; m = 0 is the tightest case

    Raises:
        DomainError: for m >= r_j or a bad index
    """
    return LaguerreInterval(settings)(p, j=j, m=m)[0]


def derivative_root_interval(p: Polynomial, m: int, settings: Optional[Settings] = None) -> BoundReport:
    """Verdict for every root of f^(m) in x_{n-1} +/- (n-m-1) gap."""
    return DerivativeRootInterval(settings)(p, m=m)[0]


def common_root_interval(p: Polynomial, s: int, settings: Optional[Settings] = None) -> BoundReport:
    """Verdict for lambda_s, s = 2..k, when the centroid is the root lambda_1."""
    return CommonRootInterval(settings)(p, s=s)[0]


def ca_mth_bound(p: Polynomial, m: int, settings: Optional[Settings] = None) -> BoundReport:
    """Verdict for a root shared by f and f^(m); gated unless the hypotheses hold."""
    return SharedRootBound(settings)(p, m=m)[0]


def interval_sharpness(p: Polynomial, settings: Optional[Settings] = None) -> List[dict]:
    """
    Compare, root by root, the centroid-root interval with the general
    multiple-root interval.

    Returns:
        One dict per non-centroid root with both squared half-widths (in
        units of gap^2) and the narrower one; empty when the centroid is not
        a root. The spacing estimate eq27 bounds a derivative spacing from
        below while the multiple-root interval only caps distances from the
        centroid, so no comparison between those two is produced.
    """
    ctx = LaguerreInterval(settings).context(p)
    if ctx.centroid_index is None:
        return []
    n, r1 = ctx.n, ctx.r1
    rows = []
    for s, index in enumerate(_common_order(ctx)[1:], start=2):
        r_s = ctx.multiplicity(index)
        common = (Fraction(1, r_s) - Fraction(1, n - r1)) * (n * n - n)
        general = Fraction((n - r_s) * (n - 1), r_s)
        rows.append({
            "s": s,
            "root": ctx.root_value(index),
            "multiplicity": r_s,
            "eq32_width_sq": common,
            "eq30_width_sq": general,
            "narrower": "eq32" if common < general else ("equal" if common == general else "eq30"),
        })
    logger.debug("Interval comparison for %s: %s", p, rows)
    return rows
