"""Exact Gaussian rationals built on fractions.Fraction.

Every coefficient, node and exact root in casaskit is a GaussianRational. Plain
ints and Fractions mix freely with it; floats and complex values are accepted
only through the explicit ``GaussianRational.of`` constructor.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

Number = Union["GaussianRational", Fraction, int]


def round_up(value: float, ulps: int = 2) -> float:
    """Nudge a float upward by a few units in the last place."""
    for _ in range(ulps):
        value = math.nextafter(value, math.inf)
    return value


def fraction_sqrt(value: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if value < 0:
        return None
    num_root = math.isqrt(value.numerator)
    den_root = math.isqrt(value.denominator)
    if num_root * num_root == value.numerator and den_root * den_root == value.denominator:
        return Fraction(num_root, den_root)
    return None


@dataclass(frozen=True, eq=False)
class GaussianRational:
    """An element re + im*i of Q(i)."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def of(cls, value) -> "GaussianRational":
        """Coerce an int, Fraction, float, complex or GaussianRational."""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        if isinstance(value, (int, Fraction, float)):
            return cls(Fraction(value), Fraction(0))
        if isinstance(value, str):
            return cls(Fraction(value), Fraction(0))
        raise TypeError(f"Cannot convert {type(value).__name__} to GaussianRational")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return GaussianRational(self.re * o.re, Fraction(0))
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by zero Gaussian rational")
        if not o.im:
            return GaussianRational(self.re / o.re, self.im / o.re)
        denom = o.norm()
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / denom,
            (self.im * o.re - self.re * o.im) / denom,
        )

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return ONE / (self ** -exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero

    # -- properties ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.re and not self.im

    @property
    def is_real(self) -> bool:
        return not self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus re^2 + im^2, exact."""
        return self.re * self.re + self.im * self.im

    def abs_upper(self) -> float:
        """Modulus as a float rounded upward."""
        return round_up(math.sqrt(float(self.norm())), 3)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __float__(self):
        if self.im:
            raise TypeError(f"{self} is not real")
        return float(self.re)

    def sqrt_exact(self) -> Optional["GaussianRational"]:
        """Principal square root when it lies in Q(i), else None."""
        if not self.im:
            if self.re >= 0:
                root = fraction_sqrt(self.re)
                return None if root is None else GaussianRational(root)
            root = fraction_sqrt(-self.re)
            return None if root is None else GaussianRational(0, root)
        modulus = fraction_sqrt(self.norm())
        if modulus is None:
            return None
        x = fraction_sqrt((self.re + modulus) / 2)
        if x is None or not x:
            return None
        y = self.im / (2 * x)
        return GaussianRational(x, y)

    def to_json(self):
        """Real values as "p/q" strings, non-real as {"re", "im"} strings."""
        if not self.im:
            return str(self.re)
        return {"re": str(self.re), "im": str(self.im)}

    def __str__(self):
        if not self.im:
            return str(self.re)
        return f"({self.re},{self.im})"

    def __repr__(self):
        return f"GaussianRational({self})"


def _coerce(value) -> Optional[GaussianRational]:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(Fraction(value), Fraction(0))
    return None


ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I = GaussianRational(0, 1)
