"""Exact real-rooted polynomials that share roots with f^(n-2) and f^(n-1)."""

from fractions import Fraction

from polycore import DomainError, Polynomial


def shared_gap_family(r1: int, r2: int, t: int) -> Polynomial:
    """
    x^r1 (x - 1)^r2 q(x)^t with q(x) = x^2 + (r2/t) x + (r2^2 - t K)/(2 t^2).

    n = r1 + r2 + 2t and K = n^2 - n - r2. The quadratic puts the centroid at
    the root 0 and makes the penultimate gap equal to 1, so x = 1 is a root of
    both f and f^(n-2). q has a positive discriminant (2tK - r2^2)/t^2, so
    every member has exactly four distinct real roots.

    Raises:
        DomainError: unless r1, r2 and t are positive
    """
    if min(r1, r2, t) < 1:
        raise DomainError(f"Multiplicities must be positive, got r1={r1}, r2={r2}, t={t}")
    n = r1 + r2 + 2 * t
    k = n * n - n - r2
    q = Polynomial((1, Fraction(r2, t), Fraction(r2 * r2 - t * k, 2 * t * t)))
    return Polynomial.from_roots([(0, r1), (1, r2)]) * q ** t
