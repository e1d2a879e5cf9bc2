"""Upper bounds for |G_n(z)|: the classical Goncharov bound and the sharper multinomial one."""

import math
from functools import lru_cache
from typing import Dict, Tuple

from goncharov.genetic import check_budget, genetic_index_tuples
from goncharov.nodes import NodeSequence
from polycore import GaussianRational
from polycore.rational import round_up

EPSILON = 2.0 ** -52


def _magnitude(value) -> float:
    """|value| as a float, rounded up for exact inputs."""
    if isinstance(value, GaussianRational):
        return value.abs_upper()
    return abs(complex(value))


def _as_point(z):
    if isinstance(z, (GaussianRational, complex)):
        return z
    if isinstance(z, float):
        return complex(z)
    return GaussianRational.of(z)


def _distance(a, b) -> float:
    if isinstance(a, GaussianRational) and isinstance(b, GaussianRational):
        return (a - b).abs_upper()
    return abs(complex(a) - complex(b))


def goncharov_bound(nodes, z) -> float:
    """
    (|z - z_0| + sum_s |z_{s+1} - z_s|)^n, rounded upward.

    Args:
        nodes: Exact or float node sequence
        z: Evaluation point

    Returns:
        Nonnegative float
    """
    nodes = NodeSequence.coerce(nodes)
    z = _as_point(z)
    parts = [_distance(z, nodes[0])]
    parts.extend(_distance(nodes[s + 1], nodes[s]) for s in range(nodes.n - 1))
    total = round_up(math.fsum(parts))
    return round_up(total ** nodes.n, 4)


@lru_cache(maxsize=512)
def _sharp_profile(nodes: Tuple, max_degree) -> Dict[int, float]:
    """Node-only part of the multinomial sum, grouped by the exponent of |z - z_0|."""
    n = len(nodes)
    check_budget(n, max_degree)
    mags = [_distance(nodes[n - 2 - s], nodes[n - 1 - s]) for s in range(n - 1)]
    grouped: Dict[int, float] = {}
    for tup in genetic_index_tuples(n - 1):
        js = (0,) + tup
        weight = 1.0
        for s, d in enumerate(mags):
            e = 1 + js[s] - js[s + 1]
            weight *= d ** e / math.factorial(e)
        tail = 1 + js[-1]
        grouped[tail] = grouped.get(tail, 0.0) + weight
    return grouped


def sharp_bound(nodes, z, max_degree=None) -> float:
    """
    n! sum over admissible index tuples of prod_s |d_s|^{k_s} / k_s!.

    d_s = z_{n-2-s} - z_{n-1-s} with z_{-1} = z. The result never exceeds
    goncharov_bound and always dominates |G_n(z)|. Both are rounded upward, so
    where they coincide mathematically the smaller rounding is returned.

    Raises:
        ResourceError: when n exceeds the degree cap
    """
    nodes = NodeSequence.coerce(nodes)
    z = _as_point(z)
    profile = _sharp_profile(nodes.nodes, max_degree)
    r = _distance(z, nodes[0])
    terms = [w * r ** e / math.factorial(e) for e, w in profile.items()]
    total = math.fsum(terms) * math.factorial(nodes.n)
    slack = 1 + 8 * (nodes.n + 1) * EPSILON
    return min(round_up(total * slack), goncharov_bound(nodes, z))
