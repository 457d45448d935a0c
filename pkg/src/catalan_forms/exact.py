"""Exact scalars: rationals, Gaussian rationals and linear forms in 1 and G.

Rationals are plain :class:`fractions.Fraction` values, which are always
stored in lowest terms with a positive denominator.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

from .errors import DomainError

Rational = Fraction

__all__ = [
    "Rational",
    "GaussianRational",
    "LinearForm",
    "I",
    "as_scalar",
    "lcm_upto",
    "linear_form_decimal",
    "format_rational",
    "parse_rational",
]


@dataclass(frozen=True)
class GaussianRational:
    """An element ``re + im*i`` of Q(i)."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def _lift(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction, _RationalABC)):
            return GaussianRational(Fraction(other), Fraction(0))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        num = self * o.conjugate()
        return GaussianRational(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return GaussianRational(1) / self ** (-n)
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """|z|^2 as an exact rational."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re} {sign} {abs(self.im)}*i)"


I = GaussianRational(0, 1)

Scalar = Union[Fraction, GaussianRational]


def as_scalar(value) -> Scalar:
    """Coerce ints/rationals to Fraction, keep Gaussian rationals, and demote
    Gaussian rationals with zero imaginary part to Fraction."""
    if isinstance(value, GaussianRational):
        return value.re if value.im == 0 else value
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"not an exact scalar: {value!r}")


# ---------------------------------------------------------------------------
# lcm(1..m), memoized incrementally

_lcm_table = [1, 1]  # _lcm_table[m] = lcm(1..m); index 0 is a placeholder
_lcm_lock = threading.Lock()


def lcm_upto(m: int) -> int:
    """Return L_m = lcm(1, ..., m)."""
    if not isinstance(m, int) or m < 1:
        raise DomainError(f"lcm_upto requires m >= 1, got {m!r}")
    if m < len(_lcm_table):
        return _lcm_table[m]
    with _lcm_lock:
        while len(_lcm_table) <= m:
            k = len(_lcm_table)
            _lcm_table.append(math.lcm(_lcm_table[-1], k))
        return _lcm_table[m]


# ---------------------------------------------------------------------------
# Linear forms a + b*G


@dataclass(frozen=True)
class LinearForm:
    """The exact value ``a + b*G`` with rational ``a`` and ``b``."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def __add__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return LinearForm(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return LinearForm(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return LinearForm(-self.a, -self.b)

    def __mul__(self, c):
        if isinstance(c, LinearForm):
            return NotImplemented
        c = Fraction(c)
        return LinearForm(self.a * c, self.b * c)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_zero(self) -> bool:
        return not self

    def decimal(self, digits: int = 30) -> str:
        return linear_form_decimal(self, digits)

    def __str__(self):
        return f"{format_rational(self.a)} + {format_rational(self.b)}*G"


def format_rational(r: Fraction) -> str:
    """Serialize as ``num/den`` (always with an explicit denominator)."""
    r = Fraction(r)
    return f"{r.numerator}/{r.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def linear_form_decimal(form: LinearForm, digits: int) -> str:
    """Decimal expansion of ``a + b*G`` rounded half-even to ``digits`` places."""
    from .oracle import catalan_decimal

    if not isinstance(digits, int) or digits < 1:
        raise DomainError(f"digits must be a positive integer, got {digits!r}")
    a, b = form.a, form.b
    # G's error is amplified by |b|; widen the guard accordingly.
    guard = 10 + len(str(abs(b.numerator))) + len(str(b.denominator))
    g = catalan_decimal(digits + guard)
    magnitude = len(str(abs(a.numerator) // a.denominator + abs(b.numerator) // b.denominator + 1))
    with localcontext() as ctx:
        ctx.prec = digits + guard + magnitude + 10
        value = Decimal(a.numerator) / Decimal(a.denominator)
        value += Decimal(b.numerator) * g / Decimal(b.denominator)
        rounded = value.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN)
    if rounded.is_zero():
        rounded = abs(rounded)
    return format(rounded, "f")
