"""The CA residual over root assignments and its batched evaluation.

An assignment maps each order m = 1..n-1 to the index j(m) of the root of f
that is meant to be shared with f^(m). For m < r the choice is forced: a root
of multiplicity r_j > m is already a root of f^(m). For m >= r and real roots
the roots of f^(m) are simple and interior, so j(m) is an interior index with
r_j != m, and consecutive orders use different roots.
"""

import logging
from math import perm
from typing import Iterator, List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from casearch.patterns import MultiplicityPattern
from polycore import DomainError

logger = logging.getLogger(__name__)

LOGIT_LIMIT = 40.0

Assignment = Tuple[int, ...]


def canonical_index(pattern, m: int) -> int:
    """First root whose multiplicity exceeds m."""
    pattern = MultiplicityPattern.of(pattern)
    for j, r_j in enumerate(pattern):
        if r_j > m:
            return j
    raise DomainError(f"No root of {pattern} has multiplicity above {m}")


def _order_choices(pattern: MultiplicityPattern, m: int, complex_roots: bool) -> List[int]:
    indices = range(pattern.k) if complex_roots else range(1, pattern.k - 1)
    return [j for j in indices if pattern[j] != m]


def feasible_assignments(pattern, complex_roots: bool = False) -> Iterator[Assignment]:
    """
    Enumerate admissible assignments, orders m >= r walked from n-1 down.

    Args:
        pattern: Multiplicity pattern
        complex_roots: Drop the real-rooted interior and simplicity constraints

    Yields:
        Tuples (j(1), ..., j(n-1)) of 0-based root indices
    """
    pattern = MultiplicityPattern.of(pattern)
    n, r = pattern.n, pattern.r
    head = tuple(canonical_index(pattern, m) for m in range(1, min(r, n)))
    descending = list(range(n - 1, max(r, 1) - 1, -1))

    def walk(i: int, chosen: List[int]) -> Iterator[Assignment]:
        if i == len(descending):
            yield head + tuple(reversed(chosen))
            return
        for j in _order_choices(pattern, descending[i], complex_roots):
            if not complex_roots and chosen and chosen[-1] == j:
                continue
            yield from walk(i + 1, chosen + [j])

    yield from walk(0, [])


def all_assignments(pattern) -> Iterator[Assignment]:
    """Every map m -> j for m >= r, with the forced choice below r."""
    pattern = MultiplicityPattern.of(pattern)
    n, r, k = pattern.n, pattern.r, pattern.k
    head = tuple(canonical_index(pattern, m) for m in range(1, min(r, n)))
    free = max(0, n - max(r, 1))
    for tail in np.ndindex(*([k] * free)) if free else [()]:
        yield head + tuple(int(j) for j in tail)


def validate_assignment(pattern, assignment: Sequence[int], complex_roots: bool = False) -> None:
    """
    Raises:
        DomainError: when the assignment breaks the forced choices or the
            interior, simplicity or alternation constraints
    """
    pattern = MultiplicityPattern.of(pattern)
    n, r = pattern.n, pattern.r
    if len(assignment) != n - 1:
        raise DomainError(f"Assignment needs {n - 1} entries, got {len(assignment)}")
    for m, j in enumerate(assignment, start=1):
        if not 0 <= j < pattern.k:
            raise DomainError(f"Root index {j} for m={m} outside 0..{pattern.k - 1}")
        if m < r:
            if pattern[j] <= m:
                raise DomainError(f"Root {j} of multiplicity {pattern[j]} is not a root of f^({m})")
        elif j not in _order_choices(pattern, m, complex_roots):
            raise DomainError(f"Root {j} cannot be a root of f^({m}) for pattern {pattern}")
        elif not complex_roots and m > r and assignment[m - 2] == j:
            raise DomainError(f"Orders {m - 1} and {m} share root {j}; roots of f^({m - 1}) are simple")


def _check_roots(roots: np.ndarray, k: int) -> None:
    if roots.shape != (k,):
        raise DomainError(f"Expected {k} roots, got {roots.size}")
    if not np.iscomplexobj(roots) and np.any(np.diff(roots) <= 0):
        raise DomainError(f"Roots must be strictly increasing, got {roots.tolist()}")


def expand(pattern: MultiplicityPattern, lam: np.ndarray) -> np.ndarray:
    """Descending monic coefficients of prod (x - lam_j)^{r_j}, one row per batch entry."""
    batch = lam.shape[0]
    coeffs = np.zeros((batch, pattern.n + 1), dtype=lam.dtype)
    coeffs[:, 0] = 1
    for j, r_j in enumerate(pattern):
        for _ in range(r_j):
            coeffs[:, 1:] = coeffs[:, 1:] - lam[:, j:j + 1] * coeffs[:, :-1]
    return coeffs


def derivative_at(coeffs: np.ndarray, m: int, points: np.ndarray) -> np.ndarray:
    """f^(m)(points) row by row, by Horner on the differentiated coefficients."""
    n = coeffs.shape[1] - 1
    weights = np.array([perm(n - i, m) for i in range(n - m + 1)], dtype=float)
    scaled = coeffs[:, : n - m + 1] * weights
    value = scaled[:, 0].copy()
    for i in range(1, n - m + 1):
        value = value * points + scaled[:, i]
    return value


def assignment_terms(pattern, roots: Sequence, assignment: Sequence[int]) -> np.ndarray:
    """f^(m)(lambda_{j(m)}) for m = 1..n-1."""
    pattern = MultiplicityPattern.of(pattern)
    lam = np.asarray(roots)[None, :]
    coeffs = expand(pattern, lam)
    return np.array([
        derivative_at(coeffs, m, lam[:, j])[0]
        for m, j in enumerate(assignment, start=1)
    ])


def assignment_residual(
    pattern,
    roots: Sequence,
    assignment: Sequence[int],
    strict: bool = True,
) -> float:
    """
    Sum over m = 1..n-1 of |f^(m)(lambda_{j(m)})|^2 for the monic f with the
    given roots and multiplicities.

    Args:
        pattern: Multiplicities r_1..r_k
        roots: lambda_1 < ... < lambda_k (complex values allowed when not strict)
        assignment: j(1)..j(n-1), 0-based
        strict: Reject assignments that break the real-rooted constraints

    Returns:
        Nonnegative residual, zero exactly when the assignment witnesses the
        CA property

    Raises:
        DomainError: on a rejected assignment or malformed roots
    """
    pattern = MultiplicityPattern.of(pattern)
    lam = np.asarray(roots)
    _check_roots(lam, pattern.k)
    if strict:
        validate_assignment(pattern, assignment)
    elif len(assignment) != pattern.n - 1 or any(not 0 <= j < pattern.k for j in assignment):
        raise DomainError(f"Malformed assignment {tuple(assignment)} for pattern {pattern}")
    terms = assignment_terms(pattern, lam, assignment)
    return float(np.sum(np.abs(terms) ** 2))


def verify_residual(pattern, roots: Sequence, assignment: Sequence[int], digits: int = 50) -> float:
    """The residual re-evaluated with mpmath at ``digits`` significant digits."""
    pattern = MultiplicityPattern.of(pattern)
    n = pattern.n
    with mpmath.workdps(digits):
        lam = [mpmath.mpmathify(complex(z) if np.iscomplexobj(z) else float(z)) for z in roots]
        coeffs = [mpmath.mpf(1)]
        for z, r_j in zip(lam, pattern):
            for _ in range(r_j):
                coeffs = [a - z * b for a, b in zip(coeffs + [0], [0] + coeffs)]
        total = mpmath.mpf(0)
        for m, j in enumerate(assignment, start=1):
            deriv = [c * perm(n - i, m) for i, c in enumerate(coeffs[: n - m + 1])]
            total += abs(mpmath.polyval(deriv, lam[j])) ** 2
        return float(total)


class BatchedObjective:
    """
    Normalized residual vectors for many (parameters, assignment) rows at once.

    Roots are gauged to lambda_1 = 0 and lambda_k = 1. In real mode the
    interior roots come from k - 2 gap logits u with the last gap's logit
    fixed at 0, which keeps them strictly increasing. In complex mode the
    interior roots are free, two real parameters each.
    """

    def __init__(self, pattern, complex_roots: bool = False):
        self.pattern = MultiplicityPattern.of(pattern)
        self.complex_roots = complex_roots
        k = self.pattern.k
        self.n_params = 2 * (k - 2) if complex_roots else max(k - 2, 0)
        n = self.pattern.n
        self.norms = np.array([perm(n, m) for m in range(1, n)], dtype=float)

    def roots(self, x: np.ndarray) -> np.ndarray:
        """(B, k) root values for (B, n_params) parameters."""
        batch, k = x.shape[0], self.pattern.k
        if self.complex_roots:
            lam = np.zeros((batch, k), dtype=complex)
            lam[:, 1:-1] = x[:, 0::2] + 1j * x[:, 1::2]
            lam[:, -1] = 1.0
            return lam
        logits = np.concatenate([x, np.zeros((batch, 1))], axis=1)
        gaps = np.exp(logits - logits.max(axis=1, keepdims=True))
        lam = np.zeros((batch, k))
        lam[:, 1:] = np.cumsum(gaps, axis=1) / gaps.sum(axis=1, keepdims=True)
        lam[:, -1] = 1.0
        return lam

    def parameters(self, lam: np.ndarray) -> np.ndarray:
        """Inverse of ``roots`` for gauged roots."""
        lam = np.atleast_2d(lam)
        if self.complex_roots:
            inner = lam[:, 1:-1]
            x = np.empty((lam.shape[0], self.n_params))
            x[:, 0::2], x[:, 1::2] = inner.real, inner.imag
            return x
        gaps = np.diff(lam.real, axis=1)
        return np.clip(np.log(gaps[:, :-1]) - np.log(gaps[:, -1:]), -LOGIT_LIMIT, LOGIT_LIMIT)

    def starts(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """Seeded starting parameters: sorted uniform interior points in (0, 1)."""
        k = self.pattern.k
        if self.complex_roots:
            inner = rng.uniform(0.0, 1.0, (count, k - 2)) + 1j * rng.uniform(-0.5, 0.5, (count, k - 2))
        else:
            inner = np.sort(rng.uniform(0.0, 1.0, (count, k - 2)), axis=1)
        lam = np.concatenate([np.zeros((count, 1)), inner, np.ones((count, 1))], axis=1)
        return self.parameters(lam)

    def terms(self, x: np.ndarray, rows: np.ndarray) -> np.ndarray:
        """(B, n-1) values f^(m)(lambda_{j(m)})."""
        lam = self.roots(x)
        coeffs = expand(self.pattern, lam)
        points = np.take_along_axis(lam, rows, axis=1)
        return np.stack(
            [derivative_at(coeffs, m, points[:, m - 1]) for m in range(1, self.pattern.n)],
            axis=1,
        )

    def __call__(self, x: np.ndarray, rows: np.ndarray) -> np.ndarray:
        """
        Args:
            x: (B, n_params) parameters
            rows: (B, n-1) assignments

        Returns:
            (B, n-1) residuals f^(m) / (n!/(n-m)!), real and imaginary parts
            side by side in complex mode
        """
        values = self.terms(x, rows) / self.norms
        if self.complex_roots:
            return np.concatenate([values.real, values.imag], axis=1)
        return values

    def residual(self, x: np.ndarray, rows: np.ndarray) -> np.ndarray:
        """(B,) unnormalized residuals, as assignment_residual reports them."""
        return np.sum(np.abs(self.terms(x, rows)) ** 2, axis=1)


def assignments_array(assignments: Sequence[Assignment], n: int) -> np.ndarray:
    if not assignments:
        return np.zeros((0, max(n - 1, 0)), dtype=int)
    return np.asarray(assignments, dtype=int).reshape(len(assignments), n - 1)


def min_separation(lam: Sequence) -> Optional[float]:
    """Smallest distance between distinct roots; None for a single root."""
    values = np.asarray(lam)
    if values.size < 2:
        return None
    return float(np.min(np.abs(values[:, None] - values[None, :])[~np.eye(values.size, dtype=bool)]))
