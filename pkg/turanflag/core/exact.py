"""
Turanflag Exact Arithmetic - Rationals and elements of real quadratic fields

Rationals are ``fractions.Fraction`` (always in lowest terms, exact). A
``FieldElement`` is a + b*sqrt(d) with rational a, b and a square-free
discriminant d; d = 0 encodes the plain rationals so that certificates over
Q and Q[sqrt(d)] share one code path. Nothing in this module touches floating
point except the explicit ``float()`` conversion and ``rationalize``.
"""

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Union

import sympy

from ..errors import FieldError

Rational = Fraction

Number = Union[int, Fraction, "FieldElement"]

_FIELD_RE = re.compile(
    r"^([+-]?\d+)(?:/(\d+))?(?:([+-])(\d+)(?:/(\d+))?\*sqrt\((\d+)\))?$"
)


@lru_cache(maxsize=None)
def is_square_free(d: int) -> bool:
    """True for d = 0 and for square-free d > 1"""
    if d == 0:
        return True
    if d < 2:
        return False
    return all(exponent == 1 for exponent in sympy.factorint(d).values())


class FieldElement:
    """Immutable element a + b*sqrt(d) of Q[sqrt(d)]"""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Union[int, Fraction] = 0, b: Union[int, Fraction] = 0,
                 d: int = 0):
        a = Fraction(a)
        b = Fraction(b)
        d = int(d)
        if not is_square_free(d):
            raise FieldError(f"discriminant {d} is not 0 or a square-free integer > 1")
        if d == 0 and b != 0:
            raise FieldError("irrational part requires a nonzero discriminant")
        if b == 0:
            d = 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def __reduce__(self):
        return (FieldElement, (self.a, self.b, self.d))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    # ========================================================================
    # Arithmetic
    # ========================================================================

    def __add__(self, other: Number) -> "FieldElement":
        other = as_field(other)
        return FieldElement(self.a + other.a, self.b + other.b, _common_d(self, other))

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        return FieldElement(-self.a, -self.b, self.d)

    def __sub__(self, other: Number) -> "FieldElement":
        return self + (-as_field(other))

    def __rsub__(self, other: Number) -> "FieldElement":
        return as_field(other) - self

    def __mul__(self, other: Number) -> "FieldElement":
        other = as_field(other)
        d = _common_d(self, other)
        return FieldElement(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise FieldError("inverse of zero")
        return FieldElement(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other: Number) -> "FieldElement":
        return self * as_field(other).inverse()

    def __rtruediv__(self, other: Number) -> "FieldElement":
        return as_field(other) * self.inverse()

    # ========================================================================
    # Comparison
    # ========================================================================

    def sign(self) -> int:
        return field_sign(self)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, FieldElement):
            return NotImplemented
        return (self.a, self.b, self.d) == (other.a, other.b, other.d)

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other: Number) -> bool:
        return field_sign(self - other) < 0

    def __le__(self, other: Number) -> bool:
        return field_sign(self - other) <= 0

    def __gt__(self, other: Number) -> bool:
        return field_sign(self - other) > 0

    def __ge__(self, other: Number) -> bool:
        return field_sign(self - other) >= 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self) -> str:
        return f"FieldElement({format_field_element(self)})"

    def __str__(self) -> str:
        return format_field_element(self)


ZERO = FieldElement(0)
ONE = FieldElement(1)


def as_field(x: Number) -> FieldElement:
    """Coerce an int, Fraction or FieldElement to a FieldElement"""
    if isinstance(x, FieldElement):
        return x
    if isinstance(x, (int, Fraction)):
        return FieldElement(x)
    raise FieldError(f"cannot use {type(x).__name__} as an exact field element")


def _common_d(x: FieldElement, y: FieldElement) -> int:
    if x.d == 0:
        return y.d
    if y.d == 0 or x.d == y.d:
        return x.d
    raise FieldError(f"mismatched discriminants {x.d} and {y.d}")


def field_add(x: Number, y: Number) -> FieldElement:
    return as_field(x) + y


def field_mul(x: Number, y: Number) -> FieldElement:
    return as_field(x) * y


def field_neg(x: Number) -> FieldElement:
    return -as_field(x)


def field_inv(x: Number) -> FieldElement:
    return as_field(x).inverse()


def _sgn(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def field_sign(x: Number) -> int:
    """
    Exact sign of a + b*sqrt(d).

    When a and b have opposite signs the answer is decided by comparing
    a^2 with b^2*d after clearing denominators, in integers.
    """
    x = as_field(x)
    sa = _sgn(x.a)
    sb = _sgn(x.b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    lhs = x.a.numerator ** 2 * x.b.denominator ** 2
    rhs = x.b.numerator ** 2 * x.d * x.a.denominator ** 2
    if lhs == rhs:
        return 0
    return sa if lhs > rhs else sb


def field_floor(x: Number) -> int:
    """Exact floor of a field element"""
    x = as_field(x)
    if x.b == 0:
        return math.floor(x.a)
    guess = math.floor(float(x))
    while field_sign(x - guess) < 0:
        guess -= 1
    while field_sign(x - (guess + 1)) >= 0:
        guess += 1
    return guess


def rationalize(x: float, max_denominator: int) -> Fraction:
    """
    Best rational approximation of x with bounded denominator.

    Args:
        x: Finite double-precision value
        max_denominator: Largest allowed denominator (>= 1)

    Returns:
        The closest Fraction with denominator <= max_denominator
    """
    if max_denominator < 1:
        raise FieldError("max_denominator must be at least 1")
    if not math.isfinite(x):
        raise FieldError(f"cannot rationalize non-finite value {x}")
    return Fraction(x).limit_denominator(max_denominator)


# ============================================================================
# Text syntax: p/q  or  p/q+r/s*sqrt(d)
# ============================================================================

def parse_field_element(text: str) -> FieldElement:
    """Parse the whitespace-free field-element syntax used in certificates"""
    match = _FIELD_RE.match(text.strip())
    if not match:
        raise FieldError(f"malformed field element {text!r}")
    num, den, op, bnum, bden, d = match.groups()
    den = den or "1"
    bden = bden or "1"
    if int(den) == 0 or int(bden) == 0:
        raise FieldError(f"zero denominator in {text!r}")
    a = Fraction(int(num), int(den))
    if op is None:
        return FieldElement(a)
    b = Fraction(int(bnum), int(bden))
    if op == "-":
        b = -b
    if b == 0:
        return FieldElement(a)
    return FieldElement(a, b, int(d))


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def format_field_element(x: Number) -> str:
    x = as_field(x)
    text = format_fraction(x.a)
    if x.b != 0:
        op = "+" if x.b > 0 else "-"
        text += f"{op}{abs(x.b.numerator)}/{x.b.denominator}*sqrt({x.d})"
    return text
