"""Sz.-Nagy type identities for roots of f and f^(m), checked as residuals.

The exact backend never extracts roots: every sum over roots of f or of a
derivative is a combination of power sums computed from coefficients, so
residuals are exact Gaussian rationals even when the roots are irrational.
"""

import logging
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from config import Settings, get_settings
from localize.reports import IdentityReport
from polycore import (
    DomainError,
    GaussianRational,
    Polynomial,
    centroid,
    centroid_data,
    derivative_roots,
    penultimate_gap_squared,
    polynomial_gcd,
    power_sums,
    root_multiplicity,
    root_multiset,
)

logger = logging.getLogger(__name__)

BACKENDS = ("exact", "numeric")


def _larger(a: GaussianRational, b: GaussianRational) -> GaussianRational:
    return a if a.norm() >= b.norm() else b


def _check_order(p: Polynomial, m: int, low: int = 0) -> int:
    p.require_degree(2, "Sz.-Nagy identities")
    n = p.degree
    if not low <= m <= n - 2:
        raise DomainError(f"Order m={m} outside {low}..{n - 2} for degree {n}")
    return n


def _is_exact_point(z) -> bool:
    return isinstance(z, (GaussianRational, int, Fraction))


def _exact_residuals(f: Polynomial, z, m: int) -> Tuple[GaussianRational, GaussianRational, GaussianRational]:
    n = f.degree
    big_n = n - m
    z = GaussianRational.of(z)
    x, gap_sq = centroid(f), penultimate_gap_squared(f)
    ps = power_sums(f, 2)
    qs = power_sums(f.derive(m), 2)

    eq15 = _larger(
        ps.centered(z, 1) / n - (x - z),
        qs.centered(z, 1) / big_n - (x - z),
    )
    eq16 = _larger(
        (ps.centered(z, 2) - n * (x - z) ** 2) / (n * (n - 1)) - gap_sq,
        (qs.centered(z, 2) - big_n * (x - z) ** 2) / (big_n * (big_n - 1)) - gap_sq,
    )
    # sum_{j<s} r_j r_s (l_j - l_s)^2 = n p_2 - p_1^2
    eq17 = _larger(
        (n * ps[2] - ps[1] ** 2) / (n * n * (n - 1)) - gap_sq,
        (big_n * qs[2] - qs[1] ** 2) / (big_n * big_n * (big_n - 1)) - gap_sq,
    )
    return eq15, eq16, eq17


def _numeric_residuals(f: Polynomial, z, m: int, settings: Settings) -> Tuple[Tuple[float, float], ...]:
    """(residual, scale) for each identity, from certified roots."""
    n = f.degree
    big_n = n - m
    z = complex(z)
    roots = root_multiset(f, settings)
    lam = np.array(roots.values(), dtype=complex)
    r = np.array(roots.multiplicities, dtype=float)
    xi = np.array([a.value for a in derivative_roots(f, m, settings).roots], dtype=complex)
    centre = centroid_data(f)
    x = complex(centre.z_n1)
    z_n2 = complex(centre.z_n2) if centre.is_exact else centre.z_n2.value
    gap_sq = (x - z_n2) ** 2

    a1 = np.sum(r * (lam - z)) / n - (x - z)
    b1 = np.sum(xi - z) / big_n - (x - z)
    s1 = 1 + max(abs(z), abs(x), np.max(np.abs(lam)))

    a2 = (np.sum(r * (lam - z) ** 2) - n * (x - z) ** 2) / (n * (n - 1)) - gap_sq
    b2 = (np.sum((xi - z) ** 2) - big_n * (x - z) ** 2) / (big_n * (big_n - 1)) - gap_sq
    s2 = s1 * s1

    diff = lam[:, None] - lam[None, :]
    pair_f = np.sum(np.triu(np.outer(r, r) * diff ** 2, 1))
    dxi = xi[:, None] - xi[None, :]
    pair_d = np.sum(np.triu(dxi ** 2, 1))
    a3 = pair_f / (n * n * (n - 1)) - gap_sq
    b3 = pair_d / (big_n * big_n * (big_n - 1)) - gap_sq
    return (
        (max(abs(a1), abs(b1)), s1),
        (max(abs(a2), abs(b2)), s2),
        (max(abs(a3), abs(b3)), s2),
    )


def sz_nagy_residuals(
    p: Polynomial,
    z,
    m: int,
    backend: Optional[str] = None,
    settings: Optional[Settings] = None,
) -> List[IdentityReport]:
    """
    Residuals of the three Sz.-Nagy identities at the point z.

    Each identity is a chain of two equalities, one over the roots of f and
    one over the roots of f^(m); the reported residual is the larger of the
    two differences.

    Args:
        p: Polynomial of degree n >= 2 (normalized to monic)
        z: Evaluation point
        m: Derivative order, 0 <= m <= n-2
        backend: "exact" (default for exact z) or "numeric"
        settings: Tolerance and root-finding settings

    Returns:
        Reports for eq15, eq16 and eq17
    """
    n = _check_order(p, m)
    f = p.monic()
    settings = settings or get_settings()
    if backend is None:
        backend = "exact" if _is_exact_point(z) else "numeric"
    if backend not in BACKENDS:
        raise DomainError(f"Unknown backend {backend!r}; expected one of {BACKENDS}")
    inputs = {"m": m, "z": GaussianRational.of(z) if _is_exact_point(z) else str(z), "n": n}

    if backend == "exact":
        if not _is_exact_point(z):
            raise DomainError(f"Exact backend needs an exact point, got {z!r}")
        residuals = _exact_residuals(f, z, m)
        return [
            IdentityReport(ident, "exact", res, inputs=dict(inputs))
            for ident, res in zip(("eq15", "eq16", "eq17"), residuals)
        ]

    results = _numeric_residuals(f, z, m, settings)
    return [
        IdentityReport(ident, "numeric", float(res), tolerance=settings.tolerance * scale, inputs=dict(inputs))
        for ident, (res, scale) in zip(("eq15", "eq16", "eq17"), results)
    ]


def _gated(identity_id: str, backend: str, reason: str, **inputs) -> IdentityReport:
    return IdentityReport(identity_id, backend, None, hypothesis_ok=False, inputs=inputs, note=reason)


def _lemma2_exact(f: Polynomial, m: int, z_m: GaussianRational, r1: int, r_km: int) -> GaussianRational:
    n = f.degree
    big_n = n - m
    big_m = big_n - 1
    c = centroid(f)
    q = f.derive(m).monic().exact_divide(Polynomial((1, -z_m)))
    ps = power_sums(f, 2)
    qs = power_sums(q, 2)
    q1, q2 = qs[1], qs[2]

    def pair_products(lam) -> GaussianRational:
        """sum_{s<t} (lam - xi_s)(lam - xi_t) over the other roots of f^(m)."""
        return ((big_m * lam - q1) ** 2 - (big_m * lam * lam - 2 * lam * q1 + q2)) / 2

    all_pairs = (
        big_m * big_m * ps[2] - 2 * big_m * q1 * ps[1] + q1 * q1 * ps[0]
        - big_m * ps[2] + 2 * q1 * ps[1] - q2 * ps[0]
    ) / 2
    mixed = all_pairs - r1 * pair_products(c) - r_km * pair_products(z_m)

    spread = qs.centered(z_m, 2)  # sum_s (z_m - xi_s)^2
    pairwise = big_m * q2 - q1 * q1  # sum_{s<t} (xi_s - xi_t)^2
    nn1 = n * (n - 1)
    head = GaussianRational.of(big_n - 2) / (big_n * big_n)
    lhs = (head + GaussianRational.of(r_km + r1 - n) / nn1) * spread + head * pairwise
    rhs = (
        GaussianRational.of(big_n * big_n * r_km - (n - r1) * (big_n + 2)) / nn1 * (z_m - c) ** 2
        + GaussianRational.of(2) / nn1 * mixed
    )
    return lhs - rhs


def _lemma2_numeric(f: Polynomial, m: int, z_m: complex, r1: int, r_km: int, settings: Settings) -> Tuple[float, float]:
    n = f.degree
    big_n = n - m
    c = complex(centroid_data(f).z_n1)
    xi = [a.value for a in derivative_roots(f, m, settings).roots]
    drop = int(np.argmin([abs(v - z_m) for v in xi]))
    xi = np.array(xi[:drop] + xi[drop + 1:], dtype=complex)
    roots = root_multiset(f, settings)

    tol = settings.tolerance
    mixed = 0j
    upper = np.triu_indices(len(xi), 1)
    for e in roots.entries:
        lam = e.value
        if abs(lam - c) <= tol * (1 + abs(c)) or abs(lam - z_m) <= tol * (1 + abs(z_m)):
            continue
        prod = np.outer(lam - xi, lam - xi)[upper]
        mixed += e.multiplicity * np.sum(prod)

    spread = np.sum((z_m - xi) ** 2)
    pairwise = np.sum((xi[:, None] - xi[None, :])[upper] ** 2)
    nn1 = n * (n - 1)
    head = (big_n - 2) / big_n ** 2
    lhs = (head + (r_km + r1 - n) / nn1) * spread + head * pairwise
    rhs = (big_n ** 2 * r_km - (n - r1) * (big_n + 2)) / nn1 * (z_m - c) ** 2 + 2 / nn1 * mixed
    scale = 1 + abs(lhs) + abs(rhs)
    return abs(lhs - rhs), scale


def lemma2_residual(
    p: Polynomial,
    m: int,
    shared=None,
    backend: Optional[str] = None,
    settings: Optional[Settings] = None,
) -> IdentityReport:
    """
    Residual of the identity linking the centroid root, a shared root z_m of
    f and f^(m), and the remaining roots of f^(m).

    Args:
        p: Polynomial of degree n >= 3
        m: Order, 1 <= m <= n-2
        shared: Root z_m of both f and f^(m); detected through gcd(f, f^(m)) if omitted
        backend: "exact" (default when z_m is rational) or "numeric"

    Returns:
        IdentityReport eq21; gated when the centroid is not a root of f or
        no root other than the centroid is shared with f^(m)
    """
    n = _check_order(p, m, low=1)
    f = p.monic()
    settings = settings or get_settings()
    c = centroid(f)
    inputs = {"m": m, "n": n}

    r1 = root_multiplicity(f, c)
    if r1 == 0:
        return _gated("eq21", backend or "exact", "centroid is not a root of f", **inputs)
    inputs["r1"] = r1

    g = polynomial_gcd(f, f.derive(m))
    if shared is not None:
        shared = GaussianRational.of(shared) if _is_exact_point(shared) else complex(shared)
        candidates = [shared]
    elif g.degree >= 1:
        candidates = [e.root if e.is_exact else e.value for e in root_multiset(g, settings).entries]
    else:
        candidates = []

    z_m = None
    for cand in candidates:
        if isinstance(cand, GaussianRational):
            if cand == c or not g.evaluate(cand).is_zero:
                continue
        elif abs(cand - complex(c)) <= settings.tolerance * (1 + abs(cand)):
            continue
        z_m = cand
        break
    if z_m is None:
        return _gated("eq21", backend or "exact", "no non-centroid root shared with f^(m)", **inputs)

    exact_root = isinstance(z_m, GaussianRational)
    if backend is None:
        backend = "exact" if exact_root else "numeric"
    if backend == "exact" and not exact_root:
        raise DomainError("Exact backend needs a rational shared root")

    if exact_root:
        r_km = root_multiplicity(f, z_m)
    else:
        roots = root_multiset(f, settings)
        entry = roots.find(z_m, settings.tolerance)
        if entry is None:
            return _gated("eq21", backend, "shared root is not a root of f", **inputs)
        r_km = roots.entries[entry].multiplicity
    inputs.update({"shared_root": z_m if exact_root else str(z_m), "r_km": r_km})
    logger.debug("Lemma 2 on %s with m=%d, z_m=%s", f, m, z_m)

    if backend == "exact":
        return IdentityReport("eq21", "exact", _lemma2_exact(f, m, z_m, r1, r_km), inputs=inputs)
    res, scale = _lemma2_numeric(f, m, complex(z_m), r1, r_km, settings)
    return IdentityReport("eq21", "numeric", float(res), tolerance=settings.tolerance * scale, inputs=inputs)


def window_identity_residual(p: Polynomial, m: int) -> IdentityReport:
    """
    Residual of
    (n-m)(n-m-1)/(n(n-1)) sum_j r_j (l_j - x_{n-1})^2 = sum_nu (xi_nu - x_{n-1})^2.

    Exact for every polynomial of degree n >= 2 and 0 <= m <= n-2.
    """
    n = _check_order(p, m)
    f = p.monic()
    x = centroid(f)
    big_n = n - m
    lhs = GaussianRational.of(big_n * (big_n - 1)) / (n * (n - 1)) * power_sums(f, 2).centered(x, 2)
    rhs = power_sums(f.derive(m), 2).centered(x, 2)
    return IdentityReport("eq25", "exact", lhs - rhs, inputs={"m": m, "n": n})
