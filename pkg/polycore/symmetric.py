"""Coefficient-level root statistics: power sums, centroid, penultimate gap."""

import math
from dataclasses import dataclass
from math import comb
from typing import Tuple, Union

from polycore.errors import DomainError
from polycore.polynomial import Polynomial
from polycore.rational import ONE, ZERO, GaussianRational
from polycore.roots import ComplexApprox, certified_roots


@dataclass(frozen=True)
class PowerSums:
    """p[t] = sum_j r_j lambda_j^t for t = 0..t_max."""

    p: Tuple[GaussianRational, ...]

    def __getitem__(self, t: int) -> GaussianRational:
        return self.p[t]

    @property
    def t_max(self) -> int:
        return len(self.p) - 1

    def centered(self, z, t: int) -> GaussianRational:
        """sum_j r_j (lambda_j - z)^t by binomial expansion."""
        if t > self.t_max:
            raise DomainError(f"Power sum of order {t} not computed (t_max={self.t_max})")
        z = GaussianRational.of(z)
        total = ZERO
        for i in range(t + 1):
            total = total + comb(t, i) * (-z) ** (t - i) * self.p[i]
        return total


def power_sums(p: Polynomial, t_max: int) -> PowerSums:
    """
    Power sums of the roots of p from its coefficients (Newton's identities).

    Args:
        p: Polynomial of degree >= 1 (normalized to monic internally)
        t_max: Highest order to compute

    Returns:
        PowerSums with p[0] = deg(p)
    """
    p.require_degree(1, "power_sums")
    if t_max < 0:
        raise DomainError(f"t_max must be nonnegative, got {t_max}")
    f = p.monic()
    n = f.degree
    c = f.coefficients  # c[0] = 1
    sums = [GaussianRational(n)]
    for t in range(1, t_max + 1):
        acc = ZERO
        for i in range(1, min(t - 1, n) + 1):
            acc = acc + c[i] * sums[t - i]
        if t <= n:
            acc = acc + t * c[t]
        sums.append(-acc)
    return PowerSums(tuple(sums))


def elementary_symmetric(p: Polynomial) -> Tuple[GaussianRational, ...]:
    """e_0..e_n of the roots of p (e_0 = 1)."""
    f = p.monic()
    return tuple(ONE if i == 0 else (-1) ** i * c for i, c in enumerate(f.coefficients))


Quadratic = Union[GaussianRational, ComplexApprox]


@dataclass(frozen=True)
class CentroidData:
    """
    Centroid z_{n-1} and the two roots of the quadratic f^(n-2).

    ``z_n2`` is the root with the larger real part (then imaginary part);
    ``mirror_root`` is the other one, 2 z_{n-1} - z_n2.
    """

    z_n1: GaussianRational
    gap_squared: GaussianRational
    z_n2: Quadratic
    mirror_root: Quadratic

    @property
    def gap(self) -> float:
        """|z_{n-1} - z_{n-2}| as a float."""
        return math.sqrt(math.sqrt(float(self.gap_squared.norm())))

    @property
    def is_exact(self) -> bool:
        return isinstance(self.z_n2, GaussianRational)

    def quadratic_roots(self) -> Tuple[Quadratic, Quadratic]:
        return self.z_n2, self.mirror_root


def centroid(p: Polynomial) -> GaussianRational:
    """z_{n-1} = -a_1 / (n a_0), the root of f^(n-1)."""
    p.require_degree(1, "centroid")
    return -p.coefficients[1] / (p.degree * p.coefficients[0])


def penultimate_gap_squared(p: Polynomial) -> GaussianRational:
    """(z_{n-1} - z_{n-2})^2 from the discriminant of f^(n-2), without roots."""
    p.require_degree(2, "penultimate_gap_squared")
    a, b, c = p.derive(p.degree - 2).coefficients
    return (b * b - 4 * a * c) / (4 * a * a)


def centroid_data(p: Polynomial) -> CentroidData:
    """
    Exact centroid and squared penultimate gap of p.

    Raises:
        DomainError: for degree < 2
    """
    p.require_degree(2, "centroid_data")
    n = p.degree
    z_n1 = centroid(p)
    gap_squared = penultimate_gap_squared(p)

    root = gap_squared.sqrt_exact()
    if root is not None:
        if (root.re, root.im) < (0, 0):
            root = -root
        return CentroidData(z_n1, gap_squared, z_n1 + root, z_n1 - root)

    upper, lower = sorted(
        certified_roots(p.derive(n - 2)),
        key=lambda r: (r.value.real, r.value.imag),
        reverse=True,
    )
    return CentroidData(z_n1, gap_squared, upper, lower)
