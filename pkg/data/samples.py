"""Seeded generators for polynomial and node corpora."""

from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from polycore import GaussianRational, Polynomial


def random_rational(rng: np.random.Generator, bound: int = 5, max_den: int = 4) -> Fraction:
    """A rational p/q with |p/q| <= bound and q <= max_den."""
    den = int(rng.integers(1, max_den + 1))
    num = int(rng.integers(-bound * den, bound * den + 1))
    return Fraction(num, den)


def random_pattern(rng: np.random.Generator, n: int, k: Optional[int] = None) -> List[int]:
    """Random composition of n into k positive parts (k random when omitted)."""
    if k is None:
        k = int(rng.integers(1, n + 1))
    cuts = sorted(rng.choice(np.arange(1, n), size=k - 1, replace=False)) if k > 1 else []
    bounds = [0] + [int(c) for c in cuts] + [n]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def random_real_rooted(
    rng: np.random.Generator,
    n_max: int = 10,
    n_min: int = 1,
    min_distinct: int = 1,
) -> Tuple[Polynomial, List[Tuple[Fraction, int]]]:
    """
    Monic polynomial with distinct rational roots and random multiplicities.

    Returns:
        (polynomial, [(root, multiplicity), ...]) with roots increasing
    """
    n = int(rng.integers(max(n_min, min_distinct), n_max + 1))
    k = int(rng.integers(min_distinct, n + 1))
    pattern = random_pattern(rng, n, k)
    roots = set()
    while len(roots) < k:
        roots.add(random_rational(rng))
    spec = list(zip(sorted(roots), pattern))
    return Polynomial.from_roots(spec), spec


def random_trivial(rng: np.random.Generator, n_max: int = 10) -> Tuple[Polynomial, Fraction, int]:
    """(x - b)^n with rational b."""
    n = int(rng.integers(1, n_max + 1))
    b = random_rational(rng)
    return Polynomial.from_roots([(b, n)]), b, n


def random_nodes(rng: np.random.Generator, n: int, gaussian: bool = False) -> Tuple[GaussianRational, ...]:
    """n rational (or Gaussian-rational) Abel-Goncharov nodes."""
    nodes = []
    for _ in range(n):
        im = random_rational(rng, bound=3) if gaussian else 0
        nodes.append(GaussianRational(random_rational(rng, bound=3), im))
    return tuple(nodes)
