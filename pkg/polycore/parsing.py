"""Text formats for polynomials and node lists.

Two polynomial forms are accepted:

    x^4 - 3*x^2 + 2*x          expression form, rational coefficients
    poly:[1, 0, -3, 2, 0]      coefficient list a_0..a_n, entries p/q or (re,im)

Node lists use ``nodes:[0, 1, 5/2]`` or ``nodes:[(0,1), (2,-1)]``.
"""

from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from polycore.errors import ParseError
from polycore.polynomial import Polynomial
from polycore.rational import ZERO, GaussianRational

POLY_PREFIX = "poly:"
NODES_PREFIX = "nodes:"


class _Scanner:
    """Cursor over the input text that reports absolute positions."""

    def __init__(self, text: str, pos: int = 0):
        self.text = text
        self.pos = pos

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> Optional[str]:
        self.skip_ws()
        if self.pos < len(self.text):
            return self.text[self.pos]
        return None

    def at_end(self) -> bool:
        return self.peek() is None

    def expect(self, char: str) -> None:
        if self.peek() != char:
            found = self.peek() or "end of input"
            raise ParseError(f"Expected '{char}', found '{found}'", self.pos)
        self.pos += 1

    def unsigned_number(self) -> Fraction:
        """Digits with optional decimal point, optionally followed by /digits."""
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isdigit() or self.text[self.pos] == "."):
            self.pos += 1
        token = self.text[start:self.pos]
        if not token or token == ".":
            raise ParseError("Expected a number", start)
        try:
            value = Fraction(token)
        except ValueError:
            raise ParseError(f"Malformed number '{token}'", start)
        if self.peek() == "/":
            self.pos += 1
            self.skip_ws()
            den_start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            den_token = self.text[den_start:self.pos]
            if not den_token:
                raise ParseError("Expected a denominator", den_start)
            denominator = int(den_token)
            if denominator == 0:
                raise ParseError("Zero denominator", den_start)
            value = value / denominator
        return value

    def signed_number(self) -> Fraction:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.text[self.pos] == "-":
                sign = -sign
            self.pos += 1
        return sign * self.unsigned_number()

    def gaussian(self) -> GaussianRational:
        """Either a signed rational or a parenthesised (re,im) pair."""
        if self.peek() == "(":
            self.pos += 1
            re = self.signed_number()
            self.expect(",")
            im = self.signed_number()
            self.expect(")")
            return GaussianRational(re, im)
        return GaussianRational(self.signed_number())

    def bracketed_list(self) -> List[GaussianRational]:
        self.expect("[")
        values = []
        if self.peek() == "]":
            self.pos += 1
            return values
        while True:
            values.append(self.gaussian())
            if self.peek() == ",":
                self.pos += 1
                continue
            self.expect("]")
            return values


def parse_polynomial(text: str, variable: str = "x") -> Polynomial:
    """
    Parse either polynomial text form.

    Args:
        text: Expression or ``poly:[...]`` coefficient list
        variable: Name of the indeterminate in expression form

    Returns:
        The parsed Polynomial (may be the zero polynomial)

    Raises:
        ParseError: with the 0-based position of the first offending character
    """
    prefix_at = text.find(POLY_PREFIX)
    if prefix_at >= 0:
        scanner = _Scanner(text, prefix_at + len(POLY_PREFIX))
        coefficients = scanner.bracketed_list()
        if not scanner.at_end():
            raise ParseError("Unexpected trailing text", scanner.pos)
        if not coefficients:
            raise ParseError("Empty coefficient list", prefix_at)
        return Polynomial(tuple(coefficients))
    return _parse_expression(text, variable)


def _parse_expression(text: str, variable: str) -> Polynomial:
    scanner = _Scanner(text)
    terms: Dict[int, Fraction] = {}
    first = True
    while not scanner.at_end():
        sign = 1
        ch = scanner.peek()
        if ch in ("+", "-"):
            sign = -1 if ch == "-" else 1
            scanner.pos += 1
        elif not first:
            raise ParseError(f"Expected '+' or '-', found '{ch}'", scanner.pos)

        coefficient = None
        ch = scanner.peek()
        if ch is not None and (ch.isdigit() or ch == "."):
            coefficient = scanner.unsigned_number()
            if scanner.peek() == "*":
                scanner.pos += 1
                if scanner.peek() != variable:
                    raise ParseError(f"Expected '{variable}' after '*'", scanner.pos)

        power = 0
        if scanner.peek() == variable:
            scanner.pos += 1
            power = 1
            if scanner.peek() == "^":
                scanner.pos += 1
                exp_start = scanner.pos
                exponent = scanner.unsigned_number()
                if exponent.denominator != 1:
                    raise ParseError("Exponent must be a nonnegative integer", exp_start)
                power = int(exponent)
        elif coefficient is None:
            found = scanner.peek() or "end of input"
            raise ParseError(f"Expected a coefficient or '{variable}', found '{found}'", scanner.pos)

        if coefficient is None:
            coefficient = Fraction(1)
        terms[power] = terms.get(power, Fraction(0)) + sign * coefficient
        first = False

    if first:
        raise ParseError("Empty polynomial", 0)
    degree = max(terms)
    return Polynomial.from_ascending([terms.get(i, 0) for i in range(degree + 1)])


def _format_coefficient(value: GaussianRational) -> str:
    return str(value)


def format_polynomial(p: Polynomial, variable: str = "x") -> str:
    """
    Canonical text form.

    Real coefficients give the expression form; any non-real coefficient
    switches to the ``poly:[...]`` list form.
    """
    if not p.is_real:
        return POLY_PREFIX + "[" + ", ".join(_format_coefficient(c) for c in p.coefficients) + "]"
    if p.is_zero:
        return "0"
    parts: List[str] = []
    for i, c in enumerate(p.coefficients):
        if c == ZERO:
            continue
        power = p.degree - i
        value = c.re
        magnitude = abs(value)
        if power == 0:
            body = str(magnitude)
        else:
            monomial = variable if power == 1 else f"{variable}^{power}"
            body = monomial if magnitude == 1 else f"{magnitude}*{monomial}"
        if not parts:
            parts.append(("-" if value < 0 else "") + body)
        else:
            parts.append((" - " if value < 0 else " + ") + body)
    return "".join(parts)


def parse_nodes(text: str) -> Tuple[GaussianRational, ...]:
    """Parse ``nodes:[...]``; the prefix is optional."""
    prefix_at = text.find(NODES_PREFIX)
    start = prefix_at + len(NODES_PREFIX) if prefix_at >= 0 else 0
    scanner = _Scanner(text, start)
    values = scanner.bracketed_list()
    if not scanner.at_end():
        raise ParseError("Unexpected trailing text", scanner.pos)
    if not values:
        raise ParseError("Node list must not be empty", start)
    return tuple(values)


def format_nodes(nodes) -> str:
    return NODES_PREFIX + "[" + ", ".join(str(GaussianRational.of(z)) for z in nodes) + "]"


def parse_point(text: str) -> GaussianRational:
    """A single rational or (re,im) value, as used by ``--bound-at``."""
    scanner = _Scanner(text)
    value = scanner.gaussian()
    if not scanner.at_end():
        raise ParseError("Unexpected trailing text", scanner.pos)
    return value
