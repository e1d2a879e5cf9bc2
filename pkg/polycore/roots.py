"""Root multisets: exact roots where they exist, certified approximations elsewhere.

Numeric roots come from Aberth-Ehrlich simultaneous iteration on each
square-free factor, with a companion-matrix fallback and an mpmath refinement
pass. Every approximation v of a root of a square-free factor q of degree d is
certified by the inclusion disk |z - v| <= d |q(v)| / |q'(v)|, which always
contains a root of q; disks are required to be pairwise disjoint.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np

from config import Settings, get_settings
from polycore.errors import DomainError, RootFindingError
from polycore.factor import count_real_roots, squarefree_decompose
from polycore.polynomial import Polynomial
from polycore.rational import GaussianRational, round_up

logger = logging.getLogger(__name__)

RATIONALIZE_DENOMINATOR = 10 ** 9


@dataclass(frozen=True)
class ComplexApprox:
    """Numeric root value with a certified error radius."""

    value: complex
    error_radius: float

    @property
    def is_real(self) -> bool:
        return self.value.imag == 0.0

    def to_json(self):
        return {"re": self.value.real, "im": self.value.imag, "error_radius": self.error_radius}

    def __str__(self):
        if self.is_real:
            return f"{self.value.real:.12g}"
        return f"{self.value:.12g}"


Root = Union[GaussianRational, ComplexApprox]


@dataclass(frozen=True)
class RootEntry:
    """One distinct root and its multiplicity."""

    root: Root
    multiplicity: int

    @property
    def is_exact(self) -> bool:
        return isinstance(self.root, GaussianRational)

    @property
    def value(self) -> complex:
        if self.is_exact:
            return complex(self.root)
        return self.root.value

    @property
    def error_radius(self) -> float:
        return 0.0 if self.is_exact else self.root.error_radius

    @property
    def is_real(self) -> bool:
        return self.root.is_real


@dataclass(frozen=True)
class RootMultiset:
    """Distinct roots lambda_j with multiplicities r_j; sum of r_j = degree."""

    entries: Tuple[RootEntry, ...]
    degree: int

    @property
    def k(self) -> int:
        return len(self.entries)

    @property
    def r(self) -> int:
        return max(e.multiplicity for e in self.entries)

    @property
    def r0(self) -> int:
        return min(e.multiplicity for e in self.entries)

    @property
    def multiplicities(self) -> Tuple[int, ...]:
        return tuple(e.multiplicity for e in self.entries)

    @property
    def is_exact(self) -> bool:
        return all(e.is_exact for e in self.entries)

    @property
    def is_real(self) -> bool:
        return all(e.is_real for e in self.entries)

    def values(self) -> List[complex]:
        return [e.value for e in self.entries]

    def expanded(self) -> List[complex]:
        """Root values repeated by multiplicity."""
        return [e.value for e in self.entries for _ in range(e.multiplicity)]

    def real_values(self) -> List[float]:
        """Distinct real roots in increasing order."""
        if not self.is_real:
            raise DomainError("Root multiset contains non-real roots")
        return sorted(e.value.real for e in self.entries)

    def find(self, value, tolerance: float = 1e-9) -> Optional[int]:
        """Index of the entry equal to ``value`` (exact or within tolerance)."""
        query_is_exact = isinstance(value, (GaussianRational, int, Fraction))
        if query_is_exact:
            exact = GaussianRational.of(value)
            for i, e in enumerate(self.entries):
                if e.is_exact and e.root == exact:
                    return i
            value = complex(exact)
        value = complex(value)
        for i, e in enumerate(self.entries):
            if query_is_exact and e.is_exact:
                continue
            slack = max(2 * e.error_radius, tolerance * (1 + abs(value)))
            if abs(e.value - value) <= slack:
                return i
        return None

    def to_json(self) -> list:
        out = []
        for e in self.entries:
            root = e.root.to_json()
            out.append({"root": root, "multiplicity": e.multiplicity, "exact": e.is_exact})
        return out


@dataclass(frozen=True)
class DerivativeRoots:
    """The n - m roots of f^(m), repeated by multiplicity."""

    order: int
    roots: Tuple[ComplexApprox, ...]


def to_mpc(value: GaussianRational):
    """Exact Gaussian rational to an mpmath complex at the current precision."""
    re = mpmath.mpf(value.re.numerator) / value.re.denominator
    im = mpmath.mpf(value.im.numerator) / value.im.denominator
    return mpmath.mpc(re, im)


# -- numeric iteration -------------------------------------------------------


def aberth_roots(coeffs: np.ndarray, max_iter: int = 200, tol: float = 1e-14) -> Tuple[np.ndarray, bool]:
    """
    Aberth-Ehrlich simultaneous iteration.

    Args:
        coeffs: Complex coefficients, leading first
        max_iter: Iteration budget
        tol: Stop when every correction is below tol * (1 + |root|)

    Returns:
        (approximations, converged flag)
    """
    c = np.asarray(coeffs, dtype=complex)
    c = c / c[0]
    n = len(c) - 1
    if n == 1:
        return np.array([-c[1]]), True
    dc = np.polyder(c)
    # Fujiwara-type bound on root moduli
    radius = 2 * max(abs(c[i]) ** (1.0 / i) for i in range(1, n + 1))
    radius = max(radius, 1e-3)
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    z = 0.5 * radius * np.exp(1j * angles)

    for _ in range(max_iter):
        p = np.polyval(c, z)
        dp = np.polyval(dc, z)
        dp = np.where(dp == 0, 1e-300, dp)
        ratio = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        correction = ratio / (1.0 - ratio * inv.sum(axis=1))
        z = z - correction
        if np.all(np.abs(correction) <= tol * (1 + np.abs(z))):
            return z, True
    return z, False


def companion_roots(coeffs: np.ndarray) -> np.ndarray:
    """Eigenvalues of the companion matrix."""
    c = np.asarray(coeffs, dtype=complex)
    c = c / c[0]
    n = len(c) - 1
    companion = np.zeros((n, n), dtype=complex)
    companion[0, :] = -c[1:]
    companion[1:, :-1] = np.eye(n - 1)
    return np.linalg.eigvals(companion)


def inclusion_radius(q: Polynomial, value: complex, digits: int = 30) -> float:
    """d |q(v)| / |q'(v)| evaluated in extended precision and rounded up."""
    with mpmath.workdps(digits):
        coeffs = [to_mpc(c) for c in q.coefficients]
        point = mpmath.mpc(value.real, value.imag)
        val, der = mpmath.polyval(coeffs, point, derivative=True)
        if der == 0:
            return float("inf")
        radius = q.degree * abs(val) / abs(der)
        return round_up(float(radius), 4)


def _disjoint(values: Sequence[complex], radii: Sequence[float]) -> bool:
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if abs(values[i] - values[j]) <= radii[i] + radii[j]:
                return False
    return True


def _mp_refine(q: Polynomial, digits: int) -> List[complex]:
    with mpmath.workdps(digits):
        coeffs = [to_mpc(c) for c in q.coefficients]
        found = mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * digits)
        if not isinstance(found, (list, tuple)):
            found = [found]
        return [complex(z) for z in found]


def certified_roots(q: Polynomial, settings: Optional[Settings] = None) -> List[ComplexApprox]:
    """
    Certified approximations of all roots of a square-free polynomial.

    Real roots (counted exactly by Sturm for real q) are returned with zero
    imaginary part.

    Raises:
        RootFindingError: if no method yields disjoint inclusion disks
    """
    settings = settings or get_settings()
    q = q.monic()
    coeffs = q.to_numpy()

    approx, converged = aberth_roots(coeffs, settings.root_iterations, settings.root_tolerance)
    if not converged:
        logger.info("Aberth did not converge for degree %d; using companion matrix", q.degree)
        approx = companion_roots(coeffs)

    real_count = count_real_roots(q) if q.is_real else 0
    attempts = [list(approx)]
    for attempt in range(3):
        values = _snap_real(attempts[-1], real_count)
        radii = [inclusion_radius(q, v, max(30, settings.precision_digits * 2)) for v in values]
        if all(np.isfinite(radii)) and _disjoint(values, radii):
            ordered = sorted(zip(values, radii), key=lambda vr: (vr[0].real, vr[0].imag))
            return [ComplexApprox(v, r) for v, r in ordered]
        digits = max(settings.precision_digits, 15) * (2 + attempt)
        logger.debug("Refining roots of degree %d at %d digits", q.degree, digits)
        attempts.append(_mp_refine(q, digits))

    raise RootFindingError(
        f"Could not certify roots of degree-{q.degree} factor within budget",
        approximations=attempts[-1],
    )


def _snap_real(values: Sequence[complex], real_count: int) -> List[complex]:
    """Zero the imaginary part of the ``real_count`` most nearly real values."""
    values = [complex(v) for v in values]
    if real_count <= 0:
        return values
    order = sorted(range(len(values)), key=lambda i: abs(values[i].imag))
    for i in order[:real_count]:
        values[i] = complex(values[i].real, 0.0)
    return values


# -- exact extraction --------------------------------------------------------


def _rationalize(value: complex) -> GaussianRational:
    re = Fraction(value.real).limit_denominator(RATIONALIZE_DENOMINATOR)
    im = Fraction(value.imag).limit_denominator(RATIONALIZE_DENOMINATOR)
    return GaussianRational(re, im)


def _exact_quadratic(q: Polynomial) -> Optional[List[GaussianRational]]:
    a, b, c = q.coefficients
    disc = b * b - 4 * a * c
    root = disc.sqrt_exact()
    if root is None:
        return None
    return [(-b - root) / (2 * a), (-b + root) / (2 * a)]


def split_exact(q: Polynomial, settings: Optional[Settings] = None) -> Tuple[List[GaussianRational], Polynomial]:
    """
    Peel exact Gaussian-rational roots off a square-free polynomial.

    Returns:
        (exact roots, remaining cofactor with no Gaussian-rational roots)
    """
    exact: List[GaussianRational] = []
    remaining = q.monic()
    if remaining.degree == 1:
        return [-remaining.coefficients[1]], Polynomial.constant(1)

    settings = settings or get_settings()
    approx, _ = aberth_roots(remaining.to_numpy(), settings.root_iterations)
    for refine in (False, True):
        if remaining.degree < 3:
            break
        if refine:
            approx = _mp_refine(remaining, 30)
        for v in approx:
            if remaining.degree < 1:
                break
            candidate = _rationalize(complex(v))
            if remaining(candidate).is_zero:
                exact.append(candidate)
                remaining = remaining.exact_divide(Polynomial((1, -candidate)))

    if remaining.degree == 2:
        pair = _exact_quadratic(remaining)
        if pair is not None:
            exact.extend(pair)
            remaining = Polynomial.constant(1)
    elif remaining.degree == 1:
        exact.append(-remaining.coefficients[1])
        remaining = Polynomial.constant(1)
    return exact, remaining


def _entry_key(entry: RootEntry):
    v = entry.value
    return (v.real, v.imag)


def root_multiset(p: Polynomial, settings: Optional[Settings] = None) -> RootMultiset:
    """
    Distinct roots of p with exact multiplicities.

    Args:
        p: Polynomial of degree >= 1
        settings: Precision and iteration budget

    Returns:
        RootMultiset sorted by (real part, imaginary part)

    Raises:
        DomainError: for degree < 1
        RootFindingError: when a factor cannot be certified
    """
    p.require_degree(1, "root_multiset")
    entries: List[RootEntry] = []
    for factor, multiplicity in squarefree_decompose(p):
        exact, remaining = split_exact(factor, settings)
        entries.extend(RootEntry(root, multiplicity) for root in exact)
        if remaining.degree >= 1:
            for approx in certified_roots(remaining, settings):
                entries.append(RootEntry(approx, multiplicity))
    entries.sort(key=_entry_key)
    return RootMultiset(tuple(entries), p.degree)


def derivative_roots(p: Polynomial, m: int, settings: Optional[Settings] = None) -> DerivativeRoots:
    """Roots of f^(m) with multiplicity, as ComplexApprox (exact ones get radius 0)."""
    q = p.derive(m)
    if q.degree < 1:
        return DerivativeRoots(m, ())
    multiset = root_multiset(q, settings)
    roots = []
    for e in multiset.entries:
        approx = ComplexApprox(e.value, e.error_radius)
        roots.extend([approx] * e.multiplicity)
    return DerivativeRoots(m, tuple(roots))
