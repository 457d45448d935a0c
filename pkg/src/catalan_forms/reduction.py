"""Higher-order poles: reduce F dxdy/g^(t+1) to the simple-pole case.

Each reduction step writes the integral over the simplex as an exact
rational boundary contribution plus a rational multiple of an integral
with a lower pole order.  Even t drops by two with the operator
D2 D1, odd t by one with D1 + D2, where D1 F = d/dx (F/x) and
D2 F = d/dy (F/y).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List

from .bipoly import (
    G_POLY,
    BiPoly,
    exact_div,
    integrate_01,
    is_integrable,
    is_sigma_invariant,
    restrict_hypotenuse,
    simplex_integral_poly,
    tau_split,
    to_xyg_basis,
)
from .errors import ConsistencyError, DivisibilityError, DomainError, PreconditionError
from .exact import LinearForm, linear_form_decimal
from .linform0 import linear_form_t0

__all__ = [
    "IntegrandSpec",
    "ReductionStep",
    "d1",
    "d2",
    "reduce_even",
    "reduce_odd",
    "reduction_chain",
    "linear_form",
    "linear_form_integrable",
    "cleared_form",
    "ClearedForm",
]

_X = BiPoly.monomial(1, 0)
_Y = BiPoly.monomial(0, 1)


@dataclass(frozen=True)
class IntegrandSpec:
    """The form F dxdy / g^(t+1)."""

    F: BiPoly
    t: int

    def __post_init__(self):
        if not isinstance(self.t, int) or self.t < 0:
            raise DomainError(f"t must be a nonnegative integer, got {self.t!r}")
        if self.F.variables != "xy" or not self.F.is_rational():
            raise DomainError("F must be a rational polynomial in x, y")


@dataclass(frozen=True)
class ReductionStep:
    """integral(current) = boundary + scale * integral(next)."""

    boundary: Fraction
    scale: Fraction
    next: IntegrandSpec


def _divide(F: BiPoly, D: BiPoly, what: str) -> BiPoly:
    try:
        return exact_div(F, D)
    except DivisibilityError:
        raise PreconditionError(f"{what} does not divide F") from None


def d1(F: BiPoly) -> BiPoly:
    """d/dx (F/x); requires x | F."""
    return _divide(F, _X, "x").diff(0)


def d2(F: BiPoly) -> BiPoly:
    """d/dy (F/y); requires y | F."""
    return _divide(F, _Y, "y").diff(1)


def _xy_power(n: int) -> BiPoly:
    return BiPoly.monomial(n, n)


def reduce_even(spec: IntegrandSpec) -> ReductionStep:
    F, t = spec.F, spec.t
    if t < 2 or t % 2:
        raise DomainError(f"reduce_even needs even t >= 2, got {t}")
    try:
        f = exact_div(F, _xy_power(t))
    except DivisibilityError:
        raise DomainError(f"x^{t} y^{t} does not divide F (needed for t = {t})") from None
    # hypotenuse term plus the contribution of the exceptional divisor over Q;
    # the divisor over P contributes nothing
    edge = Fraction(integrate_01(restrict_hypotenuse(f.diff(0))))
    at_q = Fraction(f(Fraction(0), Fraction(1)))
    scale = Fraction(1, 4 * t * (t - 1))
    boundary = scale * Fraction(-1, 2 ** (t - 1)) * (edge + at_q)
    nxt = d2(d1(F))
    return ReductionStep(boundary=boundary, scale=scale, next=IntegrandSpec(nxt, t - 2))


def reduce_odd(spec: IntegrandSpec) -> ReductionStep:
    F, t = spec.F, spec.t
    if t < 1 or t % 2 == 0:
        raise DomainError(f"reduce_odd needs odd t >= 1, got {t}")
    try:
        f = exact_div(F, _xy_power(t + 1))
    except DivisibilityError:
        raise DomainError(f"x^{t + 1} y^{t + 1} does not divide F (needed for t = {t})") from None
    # d(F dy/(x g^t)) gives (1/2^t) int y f, d(F dx/(y g^t)) gives -(1/2^t) int (1-y) f;
    # their difference is (1/2^t) int f
    edge = Fraction(integrate_01(restrict_hypotenuse(f)))
    boundary = Fraction(1, 4 * t) * Fraction(1, 2**t) * edge
    nxt = d1(F) + d2(F)
    return ReductionStep(boundary=boundary, scale=Fraction(-1, 4 * t), next=IntegrandSpec(nxt, t - 1))


def _required_power(t: int) -> int:
    return 2 * math.ceil(t / 2)


def reduction_chain(spec: IntegrandSpec) -> List[ReductionStep]:
    """All reduction steps from ``spec`` down to t = 0."""
    steps = []
    cur = spec
    while cur.t > 0:
        need = _required_power(cur.t)
        if not exact_div_ok(cur.F, _xy_power(need)):
            raise DomainError(
                f"x^{need} y^{need} does not divide the polynomial at pole order t = {cur.t}"
            )
        step = reduce_even(cur) if cur.t % 2 == 0 else reduce_odd(cur)
        steps.append(step)
        cur = step.next
    return steps


def exact_div_ok(F: BiPoly, D: BiPoly) -> bool:
    try:
        exact_div(F, D)
    except DivisibilityError:
        return False
    return True


def linear_form(spec: IntegrandSpec) -> LinearForm:
    """Exact (a, b) for sigma-invariant F divisible by x^(2ceil(t/2)) y^(2ceil(t/2))."""
    F, t = spec.F, spec.t
    if not is_sigma_invariant(F):
        raise PreconditionError("F is not sigma-invariant")
    need = _required_power(t)
    if t and not exact_div_ok(F, _xy_power(need)):
        raise PreconditionError(f"x^{need} y^{need} does not divide F (needed for t = {t})")
    acc_a = Fraction(0)
    mult = Fraction(1)
    cur = spec
    for step in reduction_chain(spec):
        acc_a += mult * step.boundary
        mult *= step.scale
        cur = step.next
    base = linear_form_t0(cur.F)
    return LinearForm(acc_a, 0) + base * mult


@lru_cache(maxsize=None)
def _monomial_form(m: int, s: int) -> LinearForm:
    return linear_form(IntegrandSpec(_xy_power(m), s))


def linear_form_integrable(spec: IntegrandSpec) -> LinearForm:
    """Exact (a, b) for sigma-invariant F with F dxdy/g^(t+1) integrable."""
    F, t = spec.F, spec.t
    if not is_sigma_invariant(F):
        raise PreconditionError("F is not sigma-invariant")
    if not is_integrable(F, t):
        raise DomainError(f"F dxdy/g^{t + 1} is not integrable over the simplex")
    plus, _ = tau_split(F)  # the tau-antisymmetric part integrates to zero
    if plus.is_zero():
        return LinearForm()
    rep = to_xyg_basis(plus)
    total = LinearForm()
    leftover = BiPoly.zero()
    for (m, r), e in sorted(rep.terms.items()):
        if r <= t:
            s = t - r
            if m < s:
                raise ConsistencyError(
                    f"basis term (xy)^{m} g^{r} is not integrable at pole order {t}"
                )
            total = total + _monomial_form(m, s) * e
        else:
            leftover = leftover + BiPoly.monomial(m, m, e) * G_POLY ** (r - t - 1)
    if leftover:
        total = total + LinearForm(simplex_integral_poly(leftover), 0)
    return total


@dataclass(frozen=True)
class ClearedForm:
    """Primitive integer form p + q*G proportional to a linear form."""

    p: int
    q: int
    value: str

    def as_form(self) -> LinearForm:
        return LinearForm(self.p, self.q)


def cleared_form(form: LinearForm, digits: int = 30) -> ClearedForm:
    """Clear denominators of (a, b) and strip the common content."""
    D = math.lcm(form.a.denominator, form.b.denominator)
    p = int(form.a * D)
    q = int(form.b * D)
    g = math.gcd(p, q)
    if g > 1:
        p //= g
        q //= g
    value = linear_form_decimal(LinearForm(p, q), digits)
    return ClearedForm(p, q, value)
