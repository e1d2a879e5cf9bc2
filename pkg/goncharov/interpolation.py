"""G_n from the triangular Abel-Goncharov interpolation system."""

from math import factorial

from goncharov.base import GoncharovConstruction
from goncharov.nodes import NodeSequence
from polycore import GaussianRational, Polynomial
from polycore.rational import ZERO


def _falling(i: int, m: int) -> int:
    """i! / (i - m)!"""
    return factorial(i) // factorial(i - m)


class InterpolationConstruction(GoncharovConstruction):
    """
    Solve for P_{n-1} in G(z) = z^n + P_{n-1}(z).

    Condition m reads G^(m)(z_m) = 0; its unknowns are the coefficients c_i
    with i >= m and the diagonal entry is m!, so back-substitution from
    m = n-1 down to 0 solves the system exactly.
    """

    name = "interpolation"
    description = "Triangular linear system for the interpolation conditions"

    def build(self, nodes: NodeSequence) -> Polynomial:
        n = nodes.n
        c = [ZERO] * n  # c[i] multiplies z^i
        for m in range(n - 1, -1, -1):
            z_m = nodes[m]
            rhs = -_falling(n, m) * z_m ** (n - m)
            for i in range(m + 1, n):
                rhs = rhs - c[i] * _falling(i, m) * z_m ** (i - m)
            c[m] = rhs / GaussianRational(factorial(m))
        return Polynomial.from_ascending(c + [GaussianRational(1)])


def build_interpolation(nodes):
    """GoncharovResult via the interpolation system."""
    return InterpolationConstruction().construct(nodes)
