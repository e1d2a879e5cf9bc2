"""Genetic-sum representations of G_n, its derivatives and its node values.

The sums run over index tuples (j_1, ..., j_L) with j_0 = 0 and
0 <= j_t <= 1 + j_{t-1}; their number is a Catalan number, so every
enumeration is capped by a degree budget.
"""

import logging
from math import factorial
from typing import Dict, Iterator, List, Optional, Tuple

from goncharov.base import GoncharovConstruction
from goncharov.nodes import NodeSequence, linear_factor
from polycore import DomainError, GaussianRational, Polynomial, ResourceError
from polycore.rational import ONE, ZERO

logger = logging.getLogger(__name__)

DEFAULT_MAX_DEGREE = 12


def genetic_index_tuples(length: int) -> Iterator[Tuple[int, ...]]:
    """
    Depth-first walk over admissible (j_1, ..., j_length).

    Yields tuples in lexicographic order; length 0 yields the empty tuple.
    """
    if length == 0:
        yield ()
        return
    stack = [(0, ())]  # (previous j, partial tuple)
    while stack:
        previous, partial = stack.pop()
        if len(partial) == length:
            yield partial
            continue
        for j in range(1 + previous, -1, -1):
            stack.append((j, partial + (j,)))


def check_budget(n: int, max_degree: Optional[int]) -> None:
    cap = DEFAULT_MAX_DEGREE if max_degree is None else max_degree
    if n > cap:
        raise ResourceError(
            f"Genetic-sum enumeration for n={n} exceeds the degree cap {cap}",
            cap=cap,
        )


def _differences(nodes: NodeSequence, low: int) -> List[GaussianRational]:
    """d_s = z_{n-2-s} - z_{n-1-s} for the s whose nodes stay at index >= low."""
    n = nodes.n
    return [nodes[n - 2 - s] - nodes[n - 1 - s] for s in range(n - 1 - low)]


def _weighted_terms(diffs: List[GaussianRational], tail_offset: int) -> Dict[int, GaussianRational]:
    """
    Sum over index tuples of prod_s d_s^{e_s}/e_s!, grouped by the tail exponent.

    e_s = 1 + j_s - j_{s+1} for the len(diffs) leading factors and the tail
    exponent is tail_offset + j_L, where L = len(diffs).
    """
    grouped: Dict[int, GaussianRational] = {}
    for tup in genetic_index_tuples(len(diffs)):
        js = (0,) + tup
        weight = ONE
        for s, d in enumerate(diffs):
            e = 1 + js[s] - js[s + 1]
            weight = weight * d ** e / factorial(e)
            if weight.is_zero:
                break
        tail = tail_offset + js[-1]
        grouped[tail] = grouped.get(tail, ZERO) + weight
    return grouped


def _genetic_polynomial(nodes: NodeSequence, m: int) -> Polynomial:
    n = nodes.n
    z_m = nodes[m]
    base = linear_factor(z_m)
    result = Polynomial.zero()
    for exponent, weight in sorted(_weighted_terms(_differences(nodes, m), 1).items()):
        if weight.is_zero:
            continue
        result = result + (base ** exponent).scale(weight / factorial(exponent))
    return result.scale(factorial(n))


class GeneticConstruction(GoncharovConstruction):
    """Nested genetic sum, accumulated exactly as a polynomial in z."""

    name = "genetic"
    description = "Genetic-sum representation"
    MAX_DEGREE = DEFAULT_MAX_DEGREE

    def __init__(self, max_degree: Optional[int] = None):
        self.max_degree = self.MAX_DEGREE if max_degree is None else max_degree

    def build(self, nodes: NodeSequence) -> Polynomial:
        check_budget(nodes.n, self.max_degree)
        logger.debug("Genetic sum over n=%d nodes", nodes.n)
        return _genetic_polynomial(nodes, 0)


def build_genetic(nodes, max_degree: Optional[int] = None):
    """GoncharovResult via the genetic sum."""
    return GeneticConstruction(max_degree).construct(nodes)


def derivative_genetic(nodes, m: int, max_degree: Optional[int] = None) -> Polynomial:
    """
    m-th derivative of G_n as its own genetic sum.

    Equals n!/(n-m)! times the Goncharov polynomial on z_m..z_{n-1}.

    Raises:
        DomainError: unless 0 <= m <= n-1, or for float-mode nodes
        ResourceError: when n exceeds the degree cap
    """
    nodes = NodeSequence.coerce(nodes)
    GeneticConstruction(max_degree).validate_nodes(nodes)
    if not 0 <= m <= nodes.n - 1:
        raise DomainError(f"Derivative order m={m} outside 0..{nodes.n - 1}")
    check_budget(nodes.n, max_degree)
    return _genetic_polynomial(nodes, m)


def derivative_at_node(nodes, m: int, s: int, max_degree: Optional[int] = None) -> GaussianRational:
    """
    G_n^(s+m)(z_m) evaluated directly from its genetic sum.

    Terms whose factorial argument 2 + j_L - s is negative are dropped.

    Args:
        nodes: Exact-mode nodes
        m: Node index, 0 <= m <= n-1
        s: Offset, 1 <= s <= n-m

    Returns:
        The exact derivative value
    """
    nodes = NodeSequence.coerce(nodes)
    GeneticConstruction(max_degree).validate_nodes(nodes)
    n = nodes.n
    if not 0 <= m <= n - 1:
        raise DomainError(f"Node index m={m} outside 0..{n - 1}")
    if not 1 <= s <= n - m:
        raise DomainError(f"Offset s={s} outside 1..{n - m}")
    check_budget(n, max_degree)
    if s + m == n:
        return GaussianRational(factorial(n))

    step = nodes[m] - nodes[m + 1]
    total = ZERO
    for tail, weight in _weighted_terms(_differences(nodes, m + 1), 2 - s).items():
        if tail < 0 or weight.is_zero:
            continue
        total = total + weight * step ** tail / factorial(tail)
    return total * factorial(n)
