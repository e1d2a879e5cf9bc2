"""Multiplicity structure: square-free decomposition, triviality, Sturm counts."""

from typing import List, Tuple

from polycore.errors import DomainError
from polycore.polynomial import Polynomial, polynomial_gcd
from polycore.rational import GaussianRational


def _derivative_or_zero(p: Polynomial) -> Polynomial:
    if p.degree <= 0:
        return Polynomial.zero()
    return p.derive(1)


def squarefree_decompose(p: Polynomial) -> List[Tuple[Polynomial, int]]:
    """
    Yun's square-free decomposition.

    Args:
        p: Polynomial of degree >= 1

    Returns:
        (monic factor, multiplicity) pairs in increasing multiplicity, one pair
        per multiplicity that actually occurs. The product of factor**mult
        equals the monic form of p; the factors are pairwise coprime and
        square-free.
    """
    p.require_degree(1, "squarefree_decompose")
    f = p.monic()
    fp = f.derive(1)
    a = polynomial_gcd(f, fp)
    b = f.exact_divide(a)
    c = fp.exact_divide(a)
    d = c - _derivative_or_zero(b)

    factors = []
    multiplicity = 1
    while b.degree > 0:
        a = polynomial_gcd(b, d)
        b = b.exact_divide(a)
        c = d.exact_divide(a)
        d = c - _derivative_or_zero(b)
        if a.degree > 0:
            factors.append((a, multiplicity))
        multiplicity += 1
    return factors


def squarefree_part(p: Polynomial) -> Polynomial:
    """Monic product of the distinct irreducible factors of p."""
    p.require_degree(1, "squarefree_part")
    f = p.monic()
    return f.exact_divide(polynomial_gcd(f, f.derive(1)))


def is_trivial(p: Polynomial) -> bool:
    """True iff p = a(z - b)^n, i.e. the first derivative divides p."""
    p.require_degree(1, "is_trivial")
    return (p % p.derive(1)).is_zero


def root_multiplicity(p: Polynomial, root) -> int:
    """Multiplicity of an exact root (0 when it is not a root)."""
    root = GaussianRational.of(root)
    factor = Polynomial((1, -root))
    count = 0
    current = p
    while current.degree >= 1:
        quotient, remainder = divmod(current, factor)
        if not remainder.is_zero:
            break
        current = quotient
        count += 1
    return count


def _sign_changes(values: List[int]) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_sequence(p: Polynomial) -> List[Polynomial]:
    """Sturm chain p, p', -rem(...), ... for a real polynomial."""
    chain = [p, p.derive(1)]
    while not chain[-1].is_zero and chain[-1].degree > 0:
        remainder = chain[-2] % chain[-1]
        if remainder.is_zero:
            break
        chain.append(-remainder)
    return chain


def count_real_roots(p: Polynomial) -> int:
    """
    Exact number of distinct real roots via Sturm's theorem.

    Raises:
        DomainError: for non-real coefficients (after monic normalization)
    """
    p.require_degree(1, "count_real_roots")
    f = p.monic()
    if not f.is_real:
        raise DomainError("Sturm counting needs real coefficients")
    chain = sturm_sequence(f)

    def sign(x) -> int:
        return (x > 0) - (x < 0)

    at_plus = [sign(q.leading.re) for q in chain]
    at_minus = [sign(q.leading.re) * (-1) ** q.degree for q in chain]
    return _sign_changes(at_minus) - _sign_changes(at_plus)


def is_real_rooted(p: Polynomial) -> bool:
    """All roots of p are real (exact decision)."""
    p.require_degree(1, "is_real_rooted")
    f = p.monic()
    if not f.is_real:
        return False
    return count_real_roots(f) == squarefree_part(f).degree
