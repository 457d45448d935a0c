from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from catalan_forms.bipoly import G_POLY, BiPoly
from catalan_forms.parser import (
    Add,
    Mul,
    Neg,
    PolyExpr,
    PolySyntaxError,
    Pow,
    Rat,
    Var,
    parse_expr,
    parse_poly,
    render,
)


def test_simple_monomial():
    assert parse_poly("x^2*y^2") == BiPoly.monomial(2, 2)


def test_quartic():
    F = parse_poly("(1-x-y)*(1-x+y)*(1+x-y)*(1+x+y)")
    assert F == G_POLY**2 - BiPoly.monomial(2, 2) * 4


def test_rationals_and_whitespace():
    assert parse_poly(" 5 / 7 * x ") == BiPoly.monomial(1, 0, Fraction(5, 7))
    assert parse_poly("-x^2") == BiPoly.monomial(2, 0, -1)
    assert parse_poly("(-x)^2") == BiPoly.monomial(2, 0)
    assert parse_poly("2 - -y") == BiPoly({(0, 0): 2, (0, 1): 1})


@pytest.mark.parametrize(
    "text, column",
    [("x^-1", 3), ("x y", 3), ("2x", 2), ("x^", 3), ("(x", 3), ("1/0", 3), ("x + z", 5), ("", 1), ("x^y", 3)],
)
def test_syntax_errors_report_column(text, column):
    with pytest.raises(PolySyntaxError) as info:
        parse_poly(text)
    assert info.value.column == column


def test_ast_shape():
    assert parse_expr("x") == Var("x")
    assert parse_expr("3/4") == Rat(3, 4)
    assert parse_expr("-x^2") == Neg(Pow(Var("x"), 2))
    assert parse_expr("x*y - 1") == Add((("+", Mul((Var("x"), Var("y")))), ("-", Rat(1))))


def test_polyexpr_round_trip():
    e = PolyExpr.parse("(1 - x)^3 * -y + 2/3")
    assert PolyExpr.parse(e.render()).ast == e.ast
    assert e.to_bipoly() == parse_poly(e.source)


_atoms = st.one_of(
    st.sampled_from([Var("x"), Var("y")]),
    st.builds(Rat, st.integers(0, 20)),
    st.builds(Rat, st.integers(0, 20), st.integers(1, 9)),
)


def _extend(children):
    return st.one_of(
        st.builds(Neg, children),
        st.builds(Pow, children, st.integers(0, 3)),
        st.builds(lambda fs: Mul(tuple(fs)), st.lists(children, min_size=2, max_size=3)),
        st.builds(
            lambda ts: Add(tuple(ts)),
            st.lists(st.tuples(st.sampled_from("+-"), children), min_size=2, max_size=3).map(
                lambda ts: [("+", ts[0][1])] + ts[1:]
            ),
        ),
    )


trees = st.recursive(_atoms, _extend, max_leaves=8)


@given(trees)
def test_render_parse_fixpoint(node):
    once = parse_expr(render(node))
    assert parse_expr(render(once)) == once


@given(trees, st.fractions(-3, 3, max_denominator=5), st.fractions(-3, 3, max_denominator=5))
def test_evaluation_matches_bipoly(node, x, y):
    from catalan_forms.parser import to_bipoly

    def ev(n):
        if isinstance(n, Var):
            return x if n.name == "x" else y
        if isinstance(n, Rat):
            return n.value
        if isinstance(n, Neg):
            return -ev(n.operand)
        if isinstance(n, Pow):
            return ev(n.base) ** n.exponent
        if isinstance(n, Mul):
            out = Fraction(1)
            for f in n.factors:
                out *= ev(f)
            return out
        out = Fraction(0)
        for sign, t in n.terms:
            out += ev(t) if sign == "+" else -ev(t)
        return out

    assert to_bipoly(node)(x, y) == ev(node)
    assert parse_poly(render(node))(x, y) == ev(node)
