from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from catalan_forms.bipoly import (
    G_POLY,
    Basis,
    BiPoly,
    exact_div,
    from_zw,
    integrate_01,
    is_integrable,
    is_sigma_invariant,
    ord_at_P,
    ord_at_Q,
    restrict_hypotenuse,
    sigma_act,
    simplex_integral_poly,
    symmetric_basis,
    tau_act,
    tau_split,
    to_xyg_basis,
    to_zw,
    zw_invariance_flags,
)
from catalan_forms.errors import DivisibilityError, DomainError, PreconditionError
from catalan_forms.exact import I
from catalan_forms.parser import parse_poly

from polygen import polys, sigma_invariant_polys

P = parse_poly
QUARTIC = P("(1-x-y)*(1-x+y)*(1+x-y)*(1+x+y)")


def zw(text_terms):
    return BiPoly(text_terms, "zw")


@pytest.mark.parametrize(
    "F, expected",
    [("x^2*y^2", "x^2*y^2"), ("x", "-y"), ("x^3*y - x*y^3", "x^3*y - x*y^3")],
)
def test_sigma_act_examples(F, expected):
    assert sigma_act(P(F)) == P(expected)


@pytest.mark.parametrize(
    "F, expected",
    [("x^2*y^4", "x^4*y^2"), ("x^2*y^2", "x^2*y^2"), ("x^3*y - x*y^3", "-(x^3*y - x*y^3)")],
)
def test_tau_act_examples(F, expected):
    assert tau_act(P(F)) == P(expected)


@pytest.mark.parametrize("F, expected", [("x^2*y^2", True), ("x", False), ("x^4 + y^4", True)])
def test_is_sigma_invariant_examples(F, expected):
    assert is_sigma_invariant(P(F)) is expected


@pytest.mark.parametrize(
    "F, plus, minus",
    [
        ("x^2*y^2", "x^2*y^2", "0"),
        ("x^3*y", "(x^3*y + x*y^3)/2", "(x^3*y - x*y^3)/2"),
        ("x^3*y - x*y^3", "0", "x^3*y - x*y^3"),
    ],
)
def test_tau_split_examples(F, plus, minus):
    # the grammar has no division by expressions, so scale by 2 where needed
    p, m = tau_split(P(F))
    scale = 2 if "/2" in plus else 1
    assert p * scale == P(plus.replace("/2", ""))
    assert m * scale == P(minus.replace("/2", ""))


def test_symmetric_basis_examples():
    assert symmetric_basis(Basis.PHI, 2, 2) == P("2*x^2*y^2")
    assert symmetric_basis(Basis.PSI, 3, 1) == P("x^3*y - x*y^3")
    assert symmetric_basis(Basis.PSI, 1, 1).is_zero()


def test_to_zw_examples():
    h = Fraction(1, 16)
    assert to_zw(P("x^2*y^2")) == zw({(4, 0): -h, (2, 2): 2 * h, (0, 4): -h})
    assert to_zw(P("x")) == zw({(1, 0): Fraction(1, 2), (0, 1): Fraction(1, 2)})
    assert to_zw(P("x^2 + y^2")) == zw({(1, 1): 1})


def test_zw_invariance_flags_examples():
    assert zw_invariance_flags(to_zw(P("x^2*y^2"))) == (True, True, False, True)
    assert zw_invariance_flags(zw({(1, 1): 1})) == (True, True, False, True)
    assert zw_invariance_flags(zw({(4, 0): 1})) == (True, False, False, False)


def test_orders_examples():
    assert ord_at_P(G_POLY) == 1 and ord_at_Q(G_POLY) == 1
    assert ord_at_P(P("x^3*y^3")) == 3
    assert ord_at_P(QUARTIC) == 2 and ord_at_Q(QUARTIC) == 2
    with pytest.raises(DomainError):
        ord_at_P(BiPoly.zero())


def test_is_integrable_examples():
    assert is_integrable(P("x^4*y^4"), 2)
    assert is_integrable(QUARTIC, 2)
    assert not is_integrable(P("x^2*y^2"), 3)
    assert is_integrable(P("x"), 0)


def test_to_xyg_basis_examples():
    assert dict(to_xyg_basis(P("x^2 + y^2")).terms) == {(0, 0): 1, (0, 1): -1}
    assert dict(to_xyg_basis(P("x^2*y^2")).terms) == {(2, 0): 1}
    assert dict(to_xyg_basis(P("x^4 + y^4")).terms) == {(0, 0): 1, (0, 1): -2, (0, 2): 1, (2, 0): -2}
    with pytest.raises(PreconditionError):
        to_xyg_basis(P("x^3*y - x*y^3"))


def test_simplex_integral_examples():
    assert simplex_integral_poly(P("1")) == Fraction(1, 2)
    assert simplex_integral_poly(P("x")) == Fraction(1, 6)
    assert simplex_integral_poly(P("x^2*y^2")) == Fraction(1, 180)


def test_restrict_hypotenuse_examples():
    assert restrict_hypotenuse(P("x + y")) == P("1")
    assert restrict_hypotenuse(G_POLY) == P("2*y*(1-y)")
    assert restrict_hypotenuse(P("x*y")) == P("y - y^2")


def test_integrate_01_examples():
    assert integrate_01(P("1")) == 1
    assert integrate_01(P("2*y-1")) == 0
    assert integrate_01(P("(1-2*y)^2")) == Fraction(1, 3)


def test_exact_div_examples():
    assert exact_div(P("x^2*y^2"), P("x*y")) == P("x*y")
    assert exact_div(P("y - y^3"), P("y")) == P("1 - y^2")
    with pytest.raises(DivisibilityError):
        exact_div(P("x^2 + y^2"), P("x"))
    with pytest.raises(ZeroDivisionError):
        exact_div(P("x"), BiPoly.zero())


def test_negative_power_rejected():
    with pytest.raises(DomainError):
        P("x") ** -1


@given(polys(rational=True))
def test_sigma_has_order_four(F):
    assert sigma_act(sigma_act(sigma_act(sigma_act(F)))) == F
    assert tau_act(tau_act(F)) == F


@given(polys())
def test_coefficient_test_matches_structural_test(F):
    assert is_sigma_invariant(F) == (sigma_act(F) == F)


@given(sigma_invariant_polys())
def test_generated_polys_are_invariant(F):
    assert is_sigma_invariant(F)


@given(polys(rational=True))
def test_zw_round_trip(F):
    assert from_zw(to_zw(F)) == F
    assert zw_invariance_flags(to_zw(F))[3]


@given(polys(max_deg=4), polys(max_deg=4))
def test_orders_are_additive(F, G):
    if F.is_zero() or G.is_zero():
        return
    assert ord_at_P(F * G) == ord_at_P(F) + ord_at_P(G)
    assert ord_at_Q(F * G) == ord_at_Q(F) + ord_at_Q(G)


@given(sigma_invariant_polys())
def test_xyg_basis_reconstructs(F):
    plus, _ = tau_split(F)
    rep = to_xyg_basis(plus)
    assert rep.reconstruct() == plus
    assert all(m % 2 == 0 for m, _ in rep.terms)


@given(polys(max_deg=4), polys(max_deg=3))
def test_exact_div_inverts_multiplication(Q, D):
    if D.is_zero():
        return
    assert exact_div(Q * D, D) == Q


@given(polys(max_deg=6, rational=True))
def test_simplex_integral_is_linear(F):
    assert simplex_integral_poly(F * 3 + G_POLY) == 3 * simplex_integral_poly(F) + simplex_integral_poly(G_POLY)


def test_gaussian_coefficients_allowed():
    F = BiPoly({(1, 0): I}, "zw")
    assert not F.is_rational()
    assert (F * F).coeff(2, 0) == -1
