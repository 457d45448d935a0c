from decimal import Decimal, localcontext
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from catalan_forms.errors import DomainError
from catalan_forms.exact import (
    GaussianRational,
    I,
    LinearForm,
    format_rational,
    lcm_upto,
    linear_form_decimal,
    parse_rational,
)

fractions = st.fractions(min_value=-1000, max_value=1000, max_denominator=1000)


@pytest.mark.parametrize("m, expected", [(1, 1), (6, 60), (10, 2520), (2, 2), (20, 232792560)])
def test_lcm_upto_values(m, expected):
    assert lcm_upto(m) == expected


def test_lcm_upto_rejects_nonpositive():
    with pytest.raises(DomainError):
        lcm_upto(0)


@given(st.integers(1, 200))
def test_lcm_upto_divisibility(m):
    L = lcm_upto(m)
    assert all(L % k == 0 for k in range(1, m + 1))
    ratio = lcm_upto(m + 1) // L
    # the ratio is 1 or the prime m + 1 is a prime power's base
    assert ratio == 1 or all(ratio % p for p in range(2, ratio) if p * p <= ratio)


@pytest.mark.parametrize(
    "form, digits, expected",
    [
        (LinearForm(0, 1), 10, "0.9159655942"),
        (LinearForm(1, 0), 5, "1.00000"),
        (LinearForm(-5, 6), 4, "0.4958"),
    ],
)
def test_linear_form_decimal_examples(form, digits, expected):
    assert linear_form_decimal(form, digits) == expected


def test_linear_form_decimal_rejects_bad_digits():
    with pytest.raises(DomainError):
        linear_form_decimal(LinearForm(1, 1), 0)


@given(fractions, fractions, fractions, fractions)
def test_decimal_is_additive(a1, b1, a2, b2):
    f1, f2 = LinearForm(a1, b1), LinearForm(a2, b2)
    with localcontext() as ctx:
        ctx.prec = 60
        total = Decimal(linear_form_decimal(f1 + f2, 25))
        parts = Decimal(linear_form_decimal(f1, 25)) + Decimal(linear_form_decimal(f2, 25))
        # each rounding contributes at most half a unit in the last place
        assert abs(total - parts) <= Decimal("1.5e-25")


@given(fractions, fractions, fractions)
def test_linear_form_arithmetic_is_exact(a, b, c):
    f = LinearForm(a, b)
    assert f * c == LinearForm(a * c, b * c)
    assert f - f == LinearForm()
    assert not (f - f)
    assert -f + f == LinearForm(0, 0)


@given(fractions)
def test_rationals_stay_reduced(r):
    s = r * 3 / 7 + Fraction(1, 6)
    assert s.denominator > 0
    from math import gcd
    assert gcd(s.numerator, s.denominator) == 1
    assert parse_rational(format_rational(s)) == s


def test_format_rational_always_has_denominator():
    assert format_rational(Fraction(3)) == "3/1"
    assert format_rational(Fraction(-5, 48)) == "-5/48"


def test_gaussian_arithmetic():
    assert I * I == GaussianRational(-1)
    assert I**4 == GaussianRational(1)
    z = GaussianRational(Fraction(1, 2), 3)
    assert z * z.conjugate() == GaussianRational(z.norm())
    assert (z / z) == GaussianRational(1)
    assert z - z == GaussianRational(0)


@given(fractions, fractions, fractions, fractions)
def test_gaussian_field_axioms(a, b, c, d):
    u, v = GaussianRational(a, b), GaussianRational(c, d)
    assert u * v == v * u
    assert (u + v).conjugate() == u.conjugate() + v.conjugate()
    if v:
        assert (u / v) * v == u
