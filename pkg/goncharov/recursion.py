"""G_n from the recursion over node prefixes."""

from math import comb
from typing import List

from goncharov.base import GoncharovConstruction
from goncharov.nodes import NodeSequence
from polycore import Polynomial


class RecursionConstruction(GoncharovConstruction):
    """
    G_n(z) = z^n - sum_{k<n} C(n, k) z_k^(n-k) G_k(z).

    G_k is the monic polynomial on the prefix z_0..z_{k-1}; the prefixes are
    built once, in order, within a single call.
    """

    name = "recursion"
    description = "Recursion on node prefixes"

    def build(self, nodes: NodeSequence) -> Polynomial:
        prefix: List[Polynomial] = [Polynomial.constant(1)]
        for k in range(1, nodes.n + 1):
            g = Polynomial.monomial(k)
            for j in range(k):
                g = g - prefix[j].scale(comb(k, j) * nodes[j] ** (k - j))
            prefix.append(g)
        return prefix[nodes.n]


def build_recursion(nodes):
    """GoncharovResult via the prefix recursion."""
    return RecursionConstruction().construct(nodes)
