"""Exact Casas-Alvero certificates and the bookkeeping built on them."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from config import Settings, get_settings
from polycore import (
    DomainError,
    GaussianRational,
    Polynomial,
    centroid,
    derivative_roots,
    is_real_rooted,
    is_trivial,
    polynomial_gcd,
    root_multiset,
    squarefree_part,
)

logger = logging.getLogger(__name__)

TRIVIAL = "trivial"
CA_CANDIDATE = "ca_nontrivial_candidate"
NOT_CA = "not_ca"


@dataclass
class OrderEvidence:
    """gcd(f, f^(m)) for one order m."""

    order: int
    witness: Polynomial  # monic gcd; constant 1 when nothing is shared

    @property
    def shared(self) -> bool:
        return self.witness.degree >= 1

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "shared": self.shared,
            "witness": str(self.witness) if self.shared else None,
        }


@dataclass
class CACertificate:
    """Per-order evidence and the resulting verdict."""

    polynomial: Polynomial
    evidence: List[OrderEvidence]
    verdict: str  # trivial, ca_nontrivial_candidate or not_ca

    @property
    def missing_orders(self) -> List[int]:
        """Orders m whose derivative shares no root with f."""
        return [e.order for e in self.evidence if not e.shared]

    def to_dict(self) -> dict:
        return {
            "polynomial": str(self.polynomial),
            "degree": self.polynomial.degree,
            "verdict": self.verdict,
            "evidence": [e.to_dict() for e in self.evidence],
        }


def certify_ca(p: Polynomial) -> CACertificate:
    """
    Decide exactly, order by order, whether f shares a root with f^(m).

    Args:
        p: Polynomial of degree >= 1

    Returns:
        CACertificate; verdict trivial for a(z-b)^n, ca_nontrivial_candidate
        when every derivative shares a root and f is not trivial, not_ca
        otherwise
    """
    p.require_degree(1, "certify_ca")
    f = p.monic()
    evidence = [OrderEvidence(m, polynomial_gcd(f, f.derive(m))) for m in range(1, f.degree)]
    if is_trivial(f):
        verdict = TRIVIAL
    elif all(e.shared for e in evidence):
        verdict = CA_CANDIDATE
    else:
        verdict = NOT_CA
    logger.debug("certify_ca(%s) -> %s", f, verdict)
    return CACertificate(f, evidence, verdict)


def _magnitude_above(root, bound: int, strict: bool = True) -> bool:
    """|root| > bound (or >= when not strict), exactly for Gaussian rationals."""
    if isinstance(root, (GaussianRational, int, Fraction)):
        norm = GaussianRational.of(root).norm()
    else:
        norm = abs(complex(getattr(root, "value", root))) ** 2
    return norm > bound * bound if strict else norm >= bound * bound


def normalize_unit_disc(
    p: Polynomial,
    common_roots: Optional[Sequence] = None,
    settings: Optional[Settings] = None,
) -> Tuple[Polynomial, Fraction, list]:
    """
    Scale the roots of p by a rational alpha > 0 so that the given common
    roots land strictly inside the unit disc.

    alpha = 1 when they already do (or are all zero); otherwise
    alpha = 1/(2M) with M the least integer bounding every |z|.

    Args:
        p: Polynomial of degree >= 1
        common_roots: Roots to bring inside; all roots of p when omitted

    Returns:
        (monic alpha-scaled polynomial, alpha, scaled roots)
    """
    p.require_degree(1, "normalize_unit_disc")
    f = p.monic()
    if common_roots is None:
        common_roots = [e.root for e in root_multiset(f, settings or get_settings()).entries]
    roots = list(common_roots)

    alpha = Fraction(1)
    if any(_magnitude_above(z, 1, strict=False) for z in roots):
        bound = 1
        while any(_magnitude_above(z, bound) for z in roots):
            bound += 1
        # |z| <= bound for every root, so |alpha z| <= 1/2
        alpha = Fraction(1, 2 * bound)

    scaled = []
    for z in roots:
        if isinstance(z, (GaussianRational, int, Fraction)):
            scaled.append(GaussianRational.of(z) * alpha)
        elif hasattr(z, "value"):
            scaled.append(z.value * float(alpha))
        else:
            scaled.append(complex(z) * float(alpha))
    return f.rescale(alpha).monic(), alpha, scaled


@dataclass
class ChainReport:
    """Checks on a sequence x_0, x_1, ... of common roots of f and f^(nu)."""

    chain: List[GaussianRational]
    verdict: str  # gated, partial, stationary, contradiction or inconclusive
    hypothesis_ok: bool = True
    sign_condition: Optional[bool] = None  # f^(s+nu)(x_nu) >= 0 for every s
    non_increasing: Optional[bool] = None
    stationary: Optional[bool] = None
    maximal: Optional[List[bool]] = None  # x_nu is the largest real root of f^(nu)
    real_rooted: Optional[bool] = None
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "chain": [z.to_json() for z in self.chain],
            "verdict": self.verdict,
            "hypothesis_ok": self.hypothesis_ok,
            "sign_condition": self.sign_condition,
            "non_increasing": self.non_increasing,
            "stationary": self.stationary,
            "maximal": self.maximal,
            "real_rooted": self.real_rooted,
            "note": self.note,
        }


def maximal_chain_check(p: Polynomial, chain: Sequence, settings: Optional[Settings] = None) -> ChainReport:
    """
    Examine a chain of common roots x_nu of f and f^(nu), nu = 0, 1, ...

    When the chain is complete (length n), the polynomial is real-rooted and
    either every x_nu satisfies f^(s+nu)(x_nu) >= 0 or the chain is
    non-increasing, the chain must be stationary; a non-stationary chain in
    that situation is reported as a contradiction.

    Args:
        p: Polynomial of degree >= 1
        chain: Exact real values x_0, x_1, ...; a prefix is accepted

    Returns:
        ChainReport; gated when some x_nu is not a common root of f and f^(nu)
    """
    p.require_degree(1, "maximal_chain_check")
    f = p.monic()
    n = f.degree
    points = [GaussianRational.of(x) for x in chain]
    if not points:
        raise DomainError("Chain must contain at least one point")
    if len(points) > n:
        raise DomainError(f"Chain of length {len(points)} exceeds degree {n}")
    if any(not x.is_real for x in points):
        return ChainReport(points, "gated", hypothesis_ok=False, note="chain points must be real")

    for nu, x in enumerate(points):
        if not (f.evaluate(x).is_zero and f.derive(nu).evaluate(x).is_zero):
            return ChainReport(
                points,
                "gated",
                hypothesis_ok=False,
                note=f"x_{nu} = {x} is not a common root of f and f^({nu})",
            )

    sign_condition = all(
        f.derive(s + nu).evaluate(x).re >= 0
        for nu, x in enumerate(points)
        for s in range(1, n - nu)
    )
    values = [x.re for x in points]
    non_increasing = all(a >= b for a, b in zip(values, values[1:]))
    stationary = all(v == values[0] for v in values)
    real_rooted = is_real_rooted(f)

    settings = settings or get_settings()
    maximal = []
    for nu, x in enumerate(points):
        roots = [r.value.real for r in derivative_roots(f, nu, settings).roots if abs(r.value.imag) <= settings.tolerance]
        maximal.append(bool(roots) and float(x.re) >= max(roots) - settings.tolerance * (1 + abs(float(x.re))))

    if len(points) < n:
        verdict = "partial"
    elif real_rooted and (sign_condition or non_increasing or all(maximal)):
        verdict = "stationary" if stationary else "contradiction"
    else:
        verdict = "inconclusive"
    if verdict == "contradiction":
        logger.warning("Non-stationary chain %s satisfies the maximal-root conditions", values)
    return ChainReport(
        points,
        verdict,
        sign_condition=sign_condition,
        non_increasing=non_increasing,
        stationary=stationary,
        maximal=maximal,
        real_rooted=real_rooted,
    )


@dataclass
class SharedRootCounts:
    """
    l(m): distinct roots of f^(m) shared with f, other than the centroid root.

    Counts are meaningful only when the centroid x_{n-1} is a root of f.
    """

    degree: int
    k: int
    r: int
    centroid_is_root: bool
    l: Dict[int, int] = field(default_factory=dict)

    @property
    def zero_pairs(self) -> List[int]:
        """Orders m >= r with l(m) = l(m+1) = 0."""
        return [
            m
            for m in range(self.r, self.degree - 1)
            if self.l.get(m) == 0 and self.l.get(m + 1) == 0
        ]

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "k": self.k,
            "r": self.r,
            "centroid_is_root": self.centroid_is_root,
            "l": {str(m): v for m, v in self.l.items()},
            "zero_pairs": self.zero_pairs,
        }


def _distinct_common(f: Polynomial, m: int, c: GaussianRational) -> Tuple[int, bool]:
    g = polynomial_gcd(f, f.derive(m))
    if g.degree < 1:
        return 0, False
    return squarefree_part(g).degree, g.evaluate(c).is_zero


def shared_root_counts(p: Polynomial) -> SharedRootCounts:
    """
    Exact l(m) for m = 0..n-1 from the gcd of f and f^(m).

    Args:
        p: Polynomial of degree >= 1

    Returns:
        SharedRootCounts; when the centroid is not a root the counts include
        every shared root and l-based filters should be skipped
    """
    p.require_degree(1, "shared_root_counts")
    f = p.monic()
    n = f.degree
    c = centroid(f)
    centroid_is_root = f.evaluate(c).is_zero
    k = squarefree_part(f).degree
    multiplicities = [e.multiplicity for e in root_multiset(f).entries]

    counts = {}
    for m in range(n):
        distinct, has_centroid = _distinct_common(f, m, c) if m else (k, centroid_is_root)
        counts[m] = distinct - (1 if has_centroid else 0)
    return SharedRootCounts(n, k, max(multiplicities), centroid_is_root, counts)
