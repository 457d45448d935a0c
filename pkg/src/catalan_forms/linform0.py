"""Simple-pole case: integral of F/g over the simplex as a + b*G.

``b`` is the constant term of F((z+w)/2, (z-w)/(2i)) restricted to w = 1/z,
that is the sum of the diagonal z/w coefficients.  ``a`` is assembled from
two families of exactly computable integrals indexed by the off-diagonal
and diagonal z/w coefficients of the tau-symmetric part of F.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .bipoly import (
    BiPoly,
    integrate_01,
    is_sigma_invariant,
    restrict_hypotenuse,
    tau_split,
    to_zw,
    exact_div,
)
from .errors import ConsistencyError, DomainError, PreconditionError
from .exact import GaussianRational, I, LinearForm, lcm_upto

__all__ = [
    "DenominatorCertificate",
    "b_coefficient",
    "integral_type1",
    "integral_type2",
    "linear_form_t0",
    "denominator_certificate",
]


def b_coefficient(F: BiPoly) -> Fraction:
    """Coefficient of G in the integral of F/g; defined for any rational F."""
    lam = to_zw(F)
    total = GaussianRational(0)
    for (k, l), c in lam.items():
        if k == l:
            total = total + c
    if total.im != 0:
        raise ConsistencyError(f"constant term has imaginary part {total.im}")
    return total.re


_Z = BiPoly({(1, 0): 1, (0, 1): I})
_W = BiPoly({(1, 0): 1, (0, 1): -I})
_Y_TIMES_1_MINUS_Y = BiPoly({(0, 1): 1, (0, 2): -1})
_I_TIMES_2Y_MINUS_1 = BiPoly({(0, 1): 2 * I, (0, 0): -I})


@lru_cache(maxsize=None)
def integral_type1(k: int, l: int) -> Fraction:
    """Integral over the simplex of (z^k w^l + z^l w^k)/(1 - zw), k > l >= 0, 4 | k - l."""
    if not (k > l >= 0) or (k - l) % 4:
        raise DomainError(f"integral_type1 needs k > l >= 0 and k = l (mod 4), got ({k}, {l})")
    f = _Z**k * _W**l - _Z**l * _W**k
    on_edge = restrict_hypotenuse(f)
    integrand = exact_div(on_edge, _Y_TIMES_1_MINUS_Y) * _I_TIMES_2Y_MINUS_1
    for c in integrand.coeffs.values():
        if not isinstance(c, Fraction) or c.denominator != 1:
            raise ConsistencyError(f"type-1 integrand coefficient {c} is not an integer")
    if integrand.degree > k + l - 1:
        raise ConsistencyError(f"type-1 integrand has degree {integrand.degree} > {k + l - 1}")
    return Fraction(integrate_01(integrand)) / (2 * (k - l))


@lru_cache(maxsize=None)
def integral_type2(k: int) -> Fraction:
    """Integral over the simplex of (z^k w^k - 1)/(1 - zw) for k >= 1."""
    if k < 1:
        raise DomainError(f"integral_type2 needs k >= 1, got {k}")
    q = BiPoly({(0, 2): 2, (0, 1): -2, (0, 0): 1})
    total = BiPoly.zero()
    power = BiPoly.constant(1)
    for j in range(k):
        total = total + power * Fraction(1, j + 1)
        power = power * q
    return -Fraction(integrate_01(total)) / 2


def linear_form_t0(F: BiPoly) -> LinearForm:
    """(a, b) with integral of F dxdy/(1 - x^2 - y^2) over the simplex = a + b*G."""
    if not F.is_rational():
        raise PreconditionError("F must have rational coefficients")
    if not is_sigma_invariant(F):
        raise PreconditionError("F is not sigma-invariant")
    b = b_coefficient(F)
    plus, _ = tau_split(F)
    lam = to_zw(plus)
    a = Fraction(0)
    for (k, l), c in lam.items():
        if not isinstance(c, Fraction):
            raise ConsistencyError(f"lambda[{k},{l}] = {c} is not rational")
        if lam.coeffs.get((l, k)) != c:
            raise ConsistencyError(f"lambda[{k},{l}] != lambda[{l},{k}]")
        if (k - l) % 4:
            raise ConsistencyError(f"lambda[{k},{l}] nonzero with k - l = {k - l} not divisible by 4")
        if k > l:
            a += c * integral_type1(k, l)
        elif k == l and k > 0:
            a += c * integral_type2(k)
    return LinearForm(a, b)


@dataclass(frozen=True)
class DenominatorCertificate:
    N: int
    b_bound: int
    a_bound: int
    b_ok: bool
    a_ok: bool

    @property
    def ok(self) -> bool:
        return self.a_ok and self.b_ok


def _lcm_or_one(m: int) -> int:
    # empty lcm for constant F
    return lcm_upto(m) if m >= 1 else 1


def denominator_certificate(F: BiPoly, form: LinearForm) -> DenominatorCertificate:
    """Check that 2^N b and 2^(N+3) L_N L_(N/2) a are integers (N = deg F)."""
    if not F.is_integral():
        raise PreconditionError("denominator certificate needs integer coefficients")
    if not is_sigma_invariant(F):
        raise PreconditionError("F is not sigma-invariant")
    if F.is_zero():
        raise PreconditionError("F is zero")
    N = F.degree
    b_bound = 2**N
    a_bound = 2 ** (N + 3) * _lcm_or_one(N) * _lcm_or_one(N // 2)
    return DenominatorCertificate(
        N=N,
        b_bound=b_bound,
        a_bound=a_bound,
        b_ok=(form.b * b_bound).denominator == 1,
        a_ok=(form.a * a_bound).denominator == 1,
    )
