"""Dense univariate polynomials over the Gaussian rationals."""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from polycore.errors import DomainError
from polycore.rational import ONE, ZERO, GaussianRational

Exact = (GaussianRational, int, Fraction)


@dataclass(frozen=True)
class Polynomial:
    """
    Polynomial a_0 z^n + a_1 z^(n-1) + ... + a_n.

    ``coefficients[i]`` holds a_i, leading coefficient first. Leading zeros are
    stripped on construction; the zero polynomial has no coefficients and
    degree -1.
    """

    coefficients: Tuple[GaussianRational, ...]

    def __post_init__(self):
        coeffs = [GaussianRational.of(c) for c in self.coefficients]
        start = 0
        while start < len(coeffs) and coeffs[start].is_zero:
            start += 1
        object.__setattr__(self, "coefficients", tuple(coeffs[start:]))

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def constant(cls, value) -> "Polynomial":
        return cls((value,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((1, 0))

    @classmethod
    def monomial(cls, degree: int, coefficient=1) -> "Polynomial":
        return cls((coefficient,) + (0,) * degree)

    @classmethod
    def from_ascending(cls, coefficients: Sequence) -> "Polynomial":
        """Build from a_n, ..., a_0 (constant term first)."""
        return cls(tuple(reversed(list(coefficients))))

    @classmethod
    def from_roots(cls, roots: Iterable, leading=1) -> "Polynomial":
        """
        Monic product of (z - root) factors, scaled by ``leading``.

        Args:
            roots: Either plain roots (repeat for multiplicity) or
                (root, multiplicity) pairs.
            leading: Leading coefficient of the result.
        """
        result = cls.constant(leading)
        for item in roots:
            if isinstance(item, tuple):
                root, mult = item
            else:
                root, mult = item, 1
            factor = cls((1, -GaussianRational.of(root)))
            result = result * factor ** mult
        return result

    # -- basic properties ---------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self) -> GaussianRational:
        if self.is_zero:
            return ZERO
        return self.coefficients[0]

    @property
    def is_monic(self) -> bool:
        return self.leading == ONE

    @property
    def is_real(self) -> bool:
        return all(c.is_real for c in self.coefficients)

    def ascending(self) -> List[GaussianRational]:
        """Coefficients from the constant term upward."""
        return list(reversed(self.coefficients))

    def monic(self) -> "Polynomial":
        if self.is_zero:
            raise DomainError("The zero polynomial has no monic form")
        lead = self.leading
        if lead == ONE:
            return self
        return Polynomial(tuple(c / lead for c in self.coefficients))

    def require_degree(self, minimum: int, operation: str) -> None:
        """Raise DomainError when the degree is below ``minimum``."""
        if self.degree < minimum:
            raise DomainError(
                f"{operation} requires degree >= {minimum}, got {self.degree}"
            )

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _as_polynomial(other)
        if other is None:
            return NotImplemented
        a, b = self.ascending(), other.ascending()
        if len(a) < len(b):
            a, b = b, a
        summed = [x + (b[i] if i < len(b) else ZERO) for i, x in enumerate(a)]
        return Polynomial.from_ascending(summed)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        other = _as_polynomial(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_polynomial(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_polynomial(other)
        if other is None:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Polynomial.zero()
        product = [ZERO] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coefficients):
                product[i + j] = product[i + j] + a * b
        return Polynomial(tuple(product))

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise DomainError(f"Negative polynomial power: {exponent}")
        result = Polynomial.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, factor) -> "Polynomial":
        factor = GaussianRational.of(factor)
        return Polynomial(tuple(c * factor for c in self.coefficients))

    def __divmod__(self, divisor: "Polynomial"):
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        remainder = list(self.coefficients)
        lead = divisor.leading
        dd = divisor.degree
        if self.degree < dd:
            return Polynomial.zero(), self
        quotient = []
        for i in range(self.degree - dd + 1):
            q = remainder[i] / lead
            quotient.append(q)
            if q.is_zero:
                continue
            for j, d in enumerate(divisor.coefficients):
                remainder[i + j] = remainder[i + j] - q * d
        return Polynomial(tuple(quotient)), Polynomial(tuple(remainder[len(quotient):]))

    def __floordiv__(self, divisor: "Polynomial") -> "Polynomial":
        return divmod(self, divisor)[0]

    def __mod__(self, divisor: "Polynomial") -> "Polynomial":
        return divmod(self, divisor)[1]

    def exact_divide(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient of a division known to be exact."""
        quotient, remainder = divmod(self, divisor)
        if not remainder.is_zero:
            raise DomainError(f"{divisor} does not divide {self}")
        return quotient

    # -- calculus and evaluation --------------------------------------------

    def derive(self, m: int = 1) -> "Polynomial":
        """Exact m-th derivative."""
        if m < 0:
            raise DomainError(f"Derivative order must be nonnegative, got {m}")
        if m > self.degree:
            raise DomainError(
                f"Derivative order {m} exceeds degree {self.degree}"
            )
        if m == 0:
            return self
        n = self.degree
        coeffs = []
        for i, c in enumerate(self.coefficients[: n - m + 1]):
            power = n - i
            coeffs.append(c * (factorial(power) // factorial(power - m)))
        return Polynomial(tuple(coeffs))

    def __call__(self, point):
        return self.evaluate(point)

    def evaluate(self, point):
        """
        Horner evaluation.

        Exact points (GaussianRational, int, Fraction) give an exact
        GaussianRational; anything else is evaluated in that number type
        (complex, numpy complex, mpmath mpc).
        """
        if isinstance(point, Exact):
            point = GaussianRational.of(point)
            acc = ZERO
            for c in self.coefficients:
                acc = acc * point + c
            return acc
        acc = 0
        for c in self.to_numbers(type(point)):
            acc = acc * point + c
        return acc

    def to_numbers(self, kind=complex) -> list:
        """Coefficients converted to ``kind`` (complex or an mpmath type)."""
        if kind.__module__.startswith("mpmath"):
            from polycore.roots import to_mpc

            return [to_mpc(c) for c in self.coefficients]
        return [complex(c) for c in self.coefficients]

    def to_numpy(self) -> np.ndarray:
        """Coefficients as a complex array, leading first."""
        return np.array([complex(c) for c in self.coefficients], dtype=complex)

    # -- substitutions ------------------------------------------------------

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """p(inner(z)) by Horner's scheme."""
        result = Polynomial.zero()
        for c in self.coefficients:
            result = result * inner + Polynomial.constant(c)
        return result

    def rescale(self, alpha) -> "Polynomial":
        """alpha^n p(z/alpha): the polynomial whose roots are alpha times ours."""
        alpha = GaussianRational.of(alpha)
        if alpha.is_zero:
            raise DomainError("Scale factor must be nonzero")
        return Polynomial(tuple(c * alpha ** i for i, c in enumerate(self.coefficients)))

    def shift(self, c) -> "Polynomial":
        """p(z - c): the polynomial whose roots are ours translated by c."""
        return self.compose(Polynomial((1, -GaussianRational.of(c))))

    # -- output -------------------------------------------------------------

    def to_json(self) -> list:
        return [c.to_json() for c in self.coefficients]

    def __str__(self):
        from polycore.parsing import format_polynomial

        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self})"


def _as_polynomial(value):
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, Exact):
        return Polynomial.constant(value)
    return None


def derive(p: Polynomial, m: int) -> Polynomial:
    """Exact m-th derivative of p; DomainError when m > deg(p)."""
    return p.derive(m)


def polynomial_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor (Euclid over Q(i))."""
    while not b.is_zero:
        a, b = b, a % b
    if a.is_zero:
        return a
    return a.monic()


