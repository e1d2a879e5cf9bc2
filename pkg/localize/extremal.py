"""Extreme distances from the centroid and bounds on them and on the span."""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from config import Settings
from localize.base import Bound, RootContext, Scalar, sq_diff, verdict
from localize.reports import BoundReport, gated_bound
from polycore import DomainError, Polynomial, is_trivial


@dataclass
class ExtremalStats:
    """Distances from x_{n-1} to the roots of f and of f^(m), and spans."""

    order: int  # m
    d: Optional[float]  # nearest root of f other than the centroid; None when k = 1
    D: Optional[float]  # farthest root of f other than the centroid
    d_m: float  # nearest root of f^(m)
    D_m: float  # farthest root of f^(m)
    span: float  # lambda^* - lambda_*
    span_m: float  # span of f^(m)
    lambda_star: float  # largest root of f
    lambda_low: float  # smallest root of f
    r_star: int
    r_low: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _distances_sq(ctx: RootContext) -> List[Tuple[Scalar, int]]:
    """(squared distance to the centroid, index) for roots other than the centroid."""
    return [(sq_diff(ctx.root_value(j), ctx.centroid), j) for j in ctx.others()]


def _derivative_extremes(ctx: RootContext, m: int) -> Tuple[Scalar, Scalar, Scalar]:
    """(d_m^2, D_m^2, span_m^2) for the roots of f^(m)."""
    values = ctx.derivative_values(m)
    dists = [sq_diff(v, ctx.centroid) for v in values]
    return min(dists), max(dists), sq_diff(values[-1], values[0])


def _span_sq(ctx: RootContext) -> Scalar:
    return sq_diff(ctx.root_value(ctx.k - 1), ctx.root_value(0))


def _sqrt(value: Scalar) -> float:
    return math.sqrt(max(0.0, float(value)))


def extremal_stats(p: Polynomial, m: int = 0, settings: Optional[Settings] = None) -> ExtremalStats:
    """
    Distances d, D (over roots other than the centroid), their analogues for
    f^(m), and the spans of f and f^(m).

    Args:
        p: Real-rooted polynomial of degree >= 2
        m: Derivative order, 0 <= m <= n-1

    Returns:
        ExtremalStats; d and D are None for a trivial polynomial
    """
    ctx = ExtremalBounds(settings).context(p)
    if not 0 <= m <= ctx.n - 1:
        raise DomainError(f"Order m={m} outside 0..{ctx.n - 1}")
    dists = [d for d, _ in _distances_sq(ctx)]
    d_m, big_d_m, span_m = _derivative_extremes(ctx, m)
    top, bottom = ctx.roots.entries[-1], ctx.roots.entries[0]
    return ExtremalStats(
        order=m,
        d=_sqrt(min(dists)) if dists else None,
        D=_sqrt(max(dists)) if dists else None,
        d_m=_sqrt(d_m),
        D_m=_sqrt(big_d_m),
        span=_sqrt(_span_sq(ctx)),
        span_m=_sqrt(span_m),
        lambda_star=float(ctx.root_value(ctx.k - 1)),
        lambda_low=float(ctx.root_value(0)),
        r_star=top.multiplicity,
        r_low=bottom.multiplicity,
    )


def _penultimate_root(ctx: RootContext) -> Optional[int]:
    """Index of a root of f that is also a root of f^(n-2), other than the centroid."""
    for j in ctx.shared_indices(ctx.n - 2):
        if j != ctx.centroid_index:
            return j
    return None


class ExtremalBounds(Bound):
    """
    Bounds on D and on span(f) when the centroid and a root x_{n-2} of
    f^(n-2) are both roots of f.
    """

    name = "extremal_bounds"
    description = "Bounds on the farthest root and the span"
    bound_ids = ("eq36", "eq37", "eq38")

    def _hypotheses(self, ctx: RootContext, ids: Tuple[str, ...], need_k3: bool):
        """(r1, r2, index of x_{n-2}) or the gated reports."""
        if ctx.k < 2:
            return [gated_bound(i, "trivial polynomial (k = 1)") for i in ids]
        if need_k3 and ctx.k < 3:
            return [gated_bound(i, f"needs k >= 3 distinct roots, got {ctx.k}") for i in ids]
        if ctx.centroid_index is None:
            return [gated_bound(i, "centroid is not a root of f") for i in ids]
        j2 = _penultimate_root(ctx)
        if j2 is None:
            return [gated_bound(i, "no root of f^(n-2) is a root of f") for i in ids]
        r1, r2 = ctx.r1, ctx.multiplicity(j2)
        if r1 + r2 >= ctx.n:
            return [gated_bound(i, "r1 + r2 must be below n") for i in ids]
        return r1, r2, j2

    def farthest(self, ctx: RootContext) -> List[BoundReport]:
        """Two-sided bounds on D in units of the gap and of the span."""
        state = self._hypotheses(ctx, ("eq36", "eq37"), need_k3=True)
        if isinstance(state, list):
            return state
        r1, r2, j2 = state
        n = ctx.n
        # sum_j r_j |lambda_j - x_{n-1}|^2 = n(n-1) gap^2 puts D above the gap,
        # so the farthest root is never x_{n-2}
        big_d, s0 = max(_distances_sq(ctx), key=lambda item: float(item[0]))
        r_s0 = ctx.multiplicity(s0)
        base = n * n - n - r2
        inputs = {"r1": r1, "r2": r2, "r_s0": r_s0, "x_n2": ctx.root_value(j2), "s0_root": ctx.root_value(s0)}

        eq36 = verdict(
            "eq36",
            big_d,
            lower_sq=Fraction(base, n - r1 - r2) * ctx.gap_squared,
            upper_sq=Fraction(base, r_s0) * ctx.gap_squared,
            tolerance=ctx.tolerance,
            **inputs,
        )
        weight = Fraction(5) + Fraction(r2, base)
        span_sq = _span_sq(ctx)
        eq37 = verdict(
            "eq37",
            big_d,
            lower_sq=Fraction(r_s0, 12 * (n - r1)) * weight * span_sq,
            upper_sq=(1 - Fraction(r_s0, 4 * (n - r1)) * weight) * span_sq,
            tolerance=ctx.tolerance,
            **inputs,
        )
        return [eq36, eq37]

    def span(self, ctx: RootContext) -> List[BoundReport]:
        state = self._hypotheses(ctx, ("eq38",), need_k3=False)
        if isinstance(state, list):
            return state
        r1, r2, j2 = state
        n = ctx.n
        return [
            verdict(
                "eq38",
                _span_sq(ctx),
                lower_sq=Fraction(n * n - r1, n - r1 - r2) * ctx.gap_squared,
                tolerance=ctx.tolerance,
                r1=r1,
                r2=r2,
                x_n2=ctx.root_value(j2),
            )
        ]

    def evaluate(self, ctx: RootContext) -> List[BoundReport]:
        return self.farthest(ctx) + self.span(ctx)


class DerivativeExtremalBounds(Bound):
    """Bounds on D^(m) and span(f^(m)) for r <= m <= n-2."""

    name = "lemma9_bounds"
    description = "Farthest derivative root and derivative span"
    bound_ids = ("eq39", "eq40", "eq41", "eq42")

    def evaluate(self, ctx: RootContext, m: int = 1) -> List[BoundReport]:
        n = ctx.n
        if not 0 <= m <= n - 2:
            raise DomainError(f"Order m={m} outside 0..{n - 2}")
        if is_trivial(ctx.polynomial):
            return [gated_bound(i, "trivial polynomial", m=m) for i in self.bound_ids]
        if m < ctx.r:
            reason = f"m={m} below the largest multiplicity r={ctx.r}"
            return [gated_bound(i, reason, m=m) for i in self.bound_ids]

        _, big_d_m, span_m = _derivative_extremes(ctx, m)
        big_n = n - m
        tol = ctx.tolerance
        centred = ctx.polynomial.derive(m).evaluate(ctx.centre.z_n1).is_zero
        reports = [
            verdict("eq39", big_d_m, lower_sq=(big_n - 1) * ctx.gap_squared, tolerance=tol, m=m),
        ]
        if centred:
            note = "f^(n-2) vanishing at the centroid forces a trivial polynomial" if m == n - 2 else ""
            reports.append(verdict("eq40", big_d_m, lower_sq=big_n * ctx.gap_squared, tolerance=tol, note=note, m=m))
        else:
            reports.append(gated_bound("eq40", "centroid is not a root of f^(m)", m=m))
        reports.append(
            verdict(
                "eq41",
                span_m,
                lower_sq=Fraction(big_n, big_n - 1) ** 2 * big_d_m,
                upper_sq=4 * big_d_m,
                tolerance=tol,
                m=m,
            )
        )
        if centred and m <= n - 3:
            factor = Fraction(big_n * (big_n - 1) + 1, (big_n - 1) * (big_n - 2))
            reports.append(verdict("eq42", span_m, lower_sq=factor * big_d_m, upper_sq=4 * big_d_m, tolerance=tol, m=m))
        elif m > n - 3:
            reports.append(gated_bound("eq42", f"needs m <= n-3, got m={m}", m=m))
        else:
            reports.append(gated_bound("eq42", "centroid is not a root of f^(m)", m=m))
        return reports


def lemma7_bounds(p: Polynomial, settings: Optional[Settings] = None) -> List[BoundReport]:
    """
    Verdicts bounding D by the gap and by span(f).

    Requires the centroid and a root x_{n-2} of f^(n-2) to be roots of f and
    k >= 3; otherwise both reports are gated.
    """
    bounds = ExtremalBounds(settings)
    return bounds.farthest(bounds.context(p))


def span_lower_bound(p: Polynomial, settings: Optional[Settings] = None) -> BoundReport:
    """span(f) >= sqrt((n^2 - r1)/(n - r1 - r2)) gap, under the same hypotheses."""
    bounds = ExtremalBounds(settings)
    return bounds.span(bounds.context(p))[0]


def lemma9_bounds(p: Polynomial, m: int, settings: Optional[Settings] = None) -> List[BoundReport]:
    """Verdicts for the four bounds on D^(m) and span(f^(m)), gated individually."""
    return DerivativeExtremalBounds(settings)(p, m=m)
