"""Localize - Sz.-Nagy identities and Laguerre-type root bounds as checkable reports."""

from localize.reports import (
    BoundReport,
    IdentityReport,
    gated_bound,
    reports_to_dataframe,
    summarize,
)
from localize.base import Bound, RootContext
from localize.identities import lemma2_residual, sz_nagy_residuals, window_identity_residual
from localize.gaps import GapBounds, forces_complex_root, gap_bounds, trivial_by_gap
from localize.intervals import (
    CommonRootInterval,
    DerivativeRootInterval,
    LaguerreInterval,
    SharedRootBound,
    ca_mth_bound,
    common_root_interval,
    derivative_root_interval,
    interval_sharpness,
    laguerre_interval,
)
from localize.extremal import (
    DerivativeExtremalBounds,
    ExtremalBounds,
    ExtremalStats,
    extremal_stats,
    lemma7_bounds,
    lemma9_bounds,
    span_lower_bound,
)

__all__ = [
    "BoundReport",
    "IdentityReport",
    "gated_bound",
    "reports_to_dataframe",
    "summarize",
    "Bound",
    "RootContext",
    "lemma2_residual",
    "sz_nagy_residuals",
    "window_identity_residual",
    "GapBounds",
    "forces_complex_root",
    "gap_bounds",
    "trivial_by_gap",
    "CommonRootInterval",
    "DerivativeRootInterval",
    "LaguerreInterval",
    "SharedRootBound",
    "ca_mth_bound",
    "common_root_interval",
    "derivative_root_interval",
    "interval_sharpness",
    "laguerre_interval",
    "DerivativeExtremalBounds",
    "ExtremalBounds",
    "ExtremalStats",
    "extremal_stats",
    "lemma7_bounds",
    "lemma9_bounds",
    "span_lower_bound",
]
