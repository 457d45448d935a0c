import math
import random
from decimal import Decimal

import mpmath
import pytest

from catalan_forms.bipoly import BiPoly, simplex_integral_poly
from catalan_forms.errors import DomainError
from catalan_forms.exact import LinearForm
from catalan_forms.oracle import (
    catalan,
    catalan_crvz,
    catalan_euler,
    check_linear_form,
    period_matrix_check,
    quadrature_poly,
    quadrature_simplex,
)
from catalan_forms.parser import parse_poly as P
from catalan_forms.reduction import IntegrandSpec, linear_form_integrable

G = 0.915965594177219015054603514932


def test_catalan_examples():
    assert catalan(16) == "0.9159655941772190"
    assert catalan(1) == "0.9"
    with pytest.raises(DomainError):
        catalan(0)


@pytest.mark.parametrize("d", [10, 50, 100])
def test_catalan_stable_under_extension(d):
    short, long = catalan(d), catalan(d + 10)
    # the last digit of the short string may round up
    assert abs(Decimal(short) - Decimal(long)) <= Decimal(10) ** -d / 2


def test_catalan_schemes_agree():
    with mpmath.workdps(120):
        assert abs(catalan_crvz(120) - catalan_euler(120)) < mpmath.mpf(10) ** -115
        assert abs(catalan_crvz(120) - mpmath.catalan) < mpmath.mpf(10) ** -115


def test_quadrature_of_constant_is_catalan():
    q = quadrature_simplex(IntegrandSpec(P("1"), 0), rel_tol=1e-10)
    assert abs(q.value - G) < 1e-9


def test_quadrature_table_entry():
    q = quadrature_simplex(IntegrandSpec(P("x^2*y^2"), 0), rel_tol=1e-10)
    assert abs(q.value - (-5 / 48 + G / 8)) < 1e-12


@pytest.mark.parametrize("F, t", [("x^2*y^2", 0), ("x^4*y^4", 0), ("x^4*y^4", 2)])
@pytest.mark.parametrize("rel_tol", [1e-6, 1e-9, 1e-12])
def test_error_estimate_is_conservative(F, t, rel_tol):
    s = IntegrandSpec(P(F), t)
    q = quadrature_simplex(s, rel_tol=rel_tol)
    exact = Decimal(linear_form_integrable(s).decimal(30))
    assert float(abs(Decimal(q.value) - exact)) <= q.error


def test_quadrature_of_polynomials():
    rng = random.Random(2)
    for deg in range(0, 11):
        F = BiPoly({(i, deg - i): rng.randint(-9, 9) for i in range(deg + 1)}) + rng.randint(1, 9)
        exact = float(simplex_integral_poly(F))
        q = quadrature_poly(F)
        assert abs(q.value - exact) <= 1e-12 * max(abs(exact), 1e-300)


@pytest.mark.parametrize("F, t", [("x^2*y^2", 0), ("x^4*y^4", 2), ("x^3*y - x*y^3", 0)])
def test_check_linear_form_examples(F, t):
    rep = check_linear_form(IntegrandSpec(P(F), t), tol=1e-8)
    assert rep.passed
    if F == "x^3*y - x*y^3":
        assert rep.exact == LinearForm()


def test_period_matrix_attainable_entries():
    reps = {r.label: r for r in period_matrix_check(1e-8)}
    assert reps["2 dxdy"].passed
    assert reps["xy dxdy/g"].passed
    assert reps["dxdy/g"].passed


def test_first_order_period_independent_value():
    # the inner integral in x is (1/2) log((1 + y)/(2y)); the total is (log 2)/2
    inner = lambda y: mpmath.log((1 + y) / (2 * y)) / 2
    with mpmath.workdps(25):
        closed = float(mpmath.quad(inner, [0, 1]))
    assert abs(closed - math.log(2) / 2) < 1e-15
    for F in ("x", "y"):
        q = quadrature_simplex(IntegrandSpec(P(F), 0), rel_tol=1e-11)
        assert abs(q.value - math.log(2) / 2) < 1e-9
