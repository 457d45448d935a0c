"""Numerical cross-checks: Catalan's constant and quadrature over the simplex.

Nothing in the exact pipeline depends on this module; it exists to verify
exact results independently.

Quadrature uses the substitution ``x = a``, ``y = (1 - a)(1 - b)`` which maps
the unit square onto the simplex with Jacobian ``1 - a``.  In these
coordinates ``g = (1 - a) h(a, b)`` with

    h = a (2 - 2b + b^2) + b (2 - b),

so the corner P = (1, 0) becomes the regular edge a = 1 and the only
singularity of an integrable form sits at the origin (the corner Q).  The
numerator ``F / (1 - a)^t`` is expanded exactly in (a, b) and evaluated in
floating point; grading the mesh geometrically toward the origin resolves
the remaining homogeneous singularity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from typing import Callable, List, Optional, Tuple

import mpmath
import numpy as np

from .bipoly import BiPoly, exact_div, is_integrable
from .errors import AccuracyError, ConsistencyError, DomainError
from .exact import LinearForm, linear_form_decimal

__all__ = [
    "CATALAN_MAX_DIGITS",
    "SimplexDomain",
    "QuadratureResult",
    "VerificationReport",
    "catalan",
    "catalan_decimal",
    "catalan_crvz",
    "catalan_euler",
    "quadrature_simplex",
    "quadrature_poly",
    "check_linear_form",
    "period_matrix_check",
]

CATALAN_MAX_DIGITS = 10_000


# ---------------------------------------------------------------------------
# Catalan's constant: two accelerations of sum (-1)^k / (2k+1)^2


def catalan_crvz(dps: int) -> mpmath.mpf:
    """Chebyshev-polynomial acceleration (Cohen, Rodriguez Villegas, Zagier)."""
    with mpmath.workdps(dps + 10):
        n = int(math.ceil((dps + 10) / math.log10(3 + math.sqrt(8)))) + 2
        d = (3 + mpmath.sqrt(8)) ** n
        d = (d + 1 / d) / 2
        b = mpmath.mpf(-1)
        c = -d
        s = mpmath.mpf(0)
        for k in range(n):
            c = b - c
            s += c / (2 * k + 1) ** 2
            b = b * ((k + n) * (k - n)) / ((k + mpmath.mpf(0.5)) * (k + 1))
        return +(s / d)


def catalan_euler(dps: int) -> mpmath.mpf:
    """Euler transform of the alternating series, with its differences in closed form.

    The n-th forward difference of 1/(2k+1)^2 at k = 0 gives the term
    (1/2) * n!/(2n+1)!! * sum_{j<=n} 1/(2j+1), converging like 2^-n.
    """
    with mpmath.workdps(dps + 10):
        n_terms = int(math.ceil((dps + 10) * math.log2(10))) + 16
        term = mpmath.mpf(1)  # n!/(2n+1)!!
        harmonic = mpmath.mpf(1)  # sum_{j<=n} 1/(2j+1)
        s = term * harmonic
        for n in range(1, n_terms):
            term = term * n / (2 * n + 1)
            harmonic += mpmath.mpf(1) / (2 * n + 1)
            s += term * harmonic
        return +(s / 2)


@lru_cache(maxsize=32)
def catalan(digits: int) -> str:
    """G rounded half-even to ``digits`` decimal places, as a string."""
    if not isinstance(digits, int) or digits < 1:
        raise DomainError(f"digits must be a positive integer, got {digits!r}")
    if digits > CATALAN_MAX_DIGITS:
        raise DomainError(f"digits > {CATALAN_MAX_DIGITS} not supported")
    work = digits + 15
    g1 = catalan_crvz(work)
    g2 = catalan_euler(work)
    with mpmath.workdps(work):
        if abs(g1 - g2) > mpmath.mpf(10) ** (-(digits + 5)):
            raise ConsistencyError("Catalan schemes disagree")
        text = mpmath.nstr(g1, work, min_fixed=-1, max_fixed=2, strip_zeros=False)
    with localcontext() as ctx:
        ctx.prec = work + 10
        value = Decimal(text).quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN)
    return format(value, "f")


def catalan_decimal(digits: int) -> Decimal:
    return Decimal(catalan(digits))


# ---------------------------------------------------------------------------
# quadrature


@dataclass(frozen=True)
class SimplexDomain:
    vertices: Tuple[Tuple[int, int], ...] = ((0, 0), (1, 0), (0, 1))
    P: Tuple[int, int] = (1, 0)
    Q: Tuple[int, int] = (0, 1)

    def contains(self, x: float, y: float) -> bool:
        return x >= 0 and y >= 0 and x + y <= 1


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error: float
    cells: int

    def __float__(self):
        return self.value


@lru_cache(maxsize=None)
def _gauss(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    x = (x + 1) / 2
    w = w / 2
    return np.meshgrid(x, x, indexing="ij"), np.outer(w, w)


class _CellIntegrator:
    """Adaptive tensor Gauss-Legendre on squares, comparing two orders."""

    def __init__(self, func, n_lo=10, n_hi=16, max_depth=10):
        self.func = func
        self.n_lo = n_lo
        self.n_hi = n_hi
        self.max_depth = max_depth
        self.cells = 0
        self.unconverged = 0

    def rule(self, a0, b0, side, n):
        (X, Y), W = _gauss(n)
        vals = self.func(a0 + side * X, b0 + side * Y)
        return float(np.sum(W * vals)) * side * side

    def __call__(self, a0, b0, side, tol, depth=0) -> Tuple[float, float, float]:
        """Returns (value, error estimate, sum of |value| over accepted leaves)."""
        lo = self.rule(a0, b0, side, self.n_lo)
        hi = self.rule(a0, b0, side, self.n_hi)
        diff = abs(hi - lo)
        if diff <= tol or depth >= self.max_depth:
            self.cells += 1
            if diff > tol:
                self.unconverged += 1
            return hi, diff, abs(hi)
        half = side / 2
        parts = [
            self(a0 + da, b0 + db, half, tol / 4, depth + 1)
            for da, db in ((0, 0), (half, 0), (0, half), (half, half))
        ]
        return (
            math.fsum(p[0] for p in parts),
            math.fsum(p[1] for p in parts),
            math.fsum(p[2] for p in parts),
        )


def _integrate_graded(func, tol: float, max_layers: int = 80) -> QuadratureResult:
    """Integrate ``func(a, b)`` over [0, 1]^2, singular at most at the origin."""
    cell = _CellIntegrator(func)
    values: List[float] = []
    errors: List[float] = []
    magnitude = 0.0
    r = 1.0
    for k in range(max_layers):
        h = r / 2
        cell_tol = tol * r / 16
        layer_abs = 0.0
        for a0, b0 in ((h, 0.0), (h, h), (0.0, h)):
            v, e, m = cell(a0, b0, h, cell_tol)
            values.append(v)
            errors.append(e)
            layer_abs += m
        magnitude += layer_abs
        inner = cell.rule(0.0, 0.0, h, cell.n_hi)
        r = h
        if k >= 2 and layer_abs <= tol / 16 and abs(inner) <= tol / 16:
            values.append(inner)
            errors.append(abs(inner) + layer_abs)
            break
    else:
        raise AccuracyError(
            "corner refinement did not converge", math.fsum(values), math.fsum(errors)
        )
    value = math.fsum(values)
    error = math.fsum(errors) + 64 * np.finfo(float).eps * magnitude
    if cell.unconverged and error > tol:
        raise AccuracyError(f"quadrature error {error:.3g} exceeds {tol:.3g}", value, error)
    return QuadratureResult(value, error, cell.cells)


def _poly_evaluator(P: BiPoly) -> Callable:
    items = [(i, j, float(c)) for (i, j), c in sorted(P.items())]
    max_i = max((i for i, _, _ in items), default=0)
    max_j = max((j for _, j, _ in items), default=0)

    def evaluate(u, v):
        up = [np.ones_like(u)]
        for _ in range(max_i):
            up.append(up[-1] * u)
        vp = [np.ones_like(v)]
        for _ in range(max_j):
            vp.append(vp[-1] * v)
        out = np.zeros_like(u)
        for i, j, c in items:
            out = out + c * up[i] * vp[j]
        return out

    return evaluate


_A = BiPoly.monomial(1, 0)
_ONE_MINUS_A = BiPoly({(0, 0): 1, (1, 0): -1})
_Y_OF_AB = BiPoly({(0, 0): 1, (1, 0): -1, (0, 1): -1, (1, 1): 1})  # (1-a)(1-b)


def _h(a, b):
    return a * (2 - 2 * b + b * b) + b * (2 - b)


def _square_integrand(F: BiPoly, t: int) -> Callable:
    numerator = exact_div(F.compose(_A, _Y_OF_AB), _ONE_MINUS_A**t)
    if numerator and numerator.low_order() < t:
        raise ConsistencyError("local expansion at Q has the wrong order")
    evaluate = _poly_evaluator(numerator)
    power = t + 1

    def integrand(a, b):
        return evaluate(a, b) / _h(a, b) ** power

    return integrand


def _target(rel_tol: float, abs_tol: float, estimate: float) -> float:
    return max(rel_tol * abs(estimate), abs_tol, 1e-15)


def quadrature_simplex(spec, rel_tol: float = 1e-10, abs_tol: float = 0.0) -> QuadratureResult:
    """Numerical integral of F dxdy / g^(t+1) over the simplex."""
    F, t = spec.F, spec.t
    if not is_integrable(F, t):
        raise DomainError(f"F dxdy/g^{t + 1} is not integrable over the simplex")
    if F.is_zero():
        return QuadratureResult(0.0, 0.0, 0)
    integrand = _square_integrand(F, t)
    rough = _integrate_graded(integrand, 1e-4)
    target = _target(rel_tol, abs_tol, rough.value)
    if rough.error <= target:
        return rough
    return _integrate_graded(integrand, target)


def quadrature_poly(F: BiPoly, rel_tol: float = 1e-13) -> QuadratureResult:
    """Numerical integral of a polynomial over the simplex."""
    if F.is_zero():
        return QuadratureResult(0.0, 0.0, 0)
    evaluate = _poly_evaluator(F)

    def integrand(a, b):
        return evaluate(a, (1 - a) * (1 - b)) * (1 - a)

    cell = _CellIntegrator(integrand)
    rough = cell.rule(0.0, 0.0, 1.0, cell.n_hi)
    value, err, mag = cell(0.0, 0.0, 1.0, _target(rel_tol, 0.0, rough))
    err += 64 * np.finfo(float).eps * mag
    return QuadratureResult(value, err, cell.cells)


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class VerificationReport:
    label: str
    exact: Optional[LinearForm]
    expected: float
    numeric: float
    abs_error: float
    tolerance: float
    quad_error: float
    passed: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "passed", self.abs_error <= self.tolerance)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status}  {self.label}: expected {self.expected:.15g}, "
            f"quadrature {self.numeric:.15g}, |diff| {self.abs_error:.3g} (tol {self.tolerance:.1g})"
        )


def _form_value(form: LinearForm) -> float:
    return float(Decimal(linear_form_decimal(form, 30)))


def check_linear_form(spec, tol: float = 1e-8, label: Optional[str] = None) -> VerificationReport:
    """Compare the exact linear form of ``spec`` with quadrature."""
    from .reduction import linear_form_integrable

    form = linear_form_integrable(spec)
    expected = _form_value(form)
    quad = quadrature_simplex(spec, rel_tol=tol / 10, abs_tol=tol / 10)
    return VerificationReport(
        label=label or f"F = {spec.F}, t = {spec.t}",
        exact=form,
        expected=expected,
        numeric=quad.value,
        abs_error=abs(quad.value - expected),
        tolerance=tol,
        quad_error=quad.error,
    )


def period_matrix_check(tol: float = 1e-8) -> List[VerificationReport]:
    """Integrals over the simplex of 2, x/g, y/g, xy/g and 1/g against closed forms."""
    from .reduction import IntegrandSpec

    with mpmath.workdps(30):
        log2 = mpmath.log(2)
        targets = [
            ("2 dxdy", None, 1.0),
            ("x dxdy/g", BiPoly.monomial(1, 0), float((-4 + 3 * log2) / 2)),
            ("y dxdy/g", BiPoly.monomial(0, 1), float((-4 + 3 * log2) / 2)),
            ("xy dxdy/g", BiPoly.monomial(1, 1), float((1 - log2) / 4)),
            ("dxdy/g", BiPoly.constant(1), float(mpmath.catalan)),
        ]
    reports = []
    for label, F, expected in targets:
        if F is None:
            quad = quadrature_poly(BiPoly.constant(2))
            exact = LinearForm(1, 0)
        else:
            quad = quadrature_simplex(IntegrandSpec(F, 0), rel_tol=tol / 10, abs_tol=tol / 10)
            exact = LinearForm(0, 1) if label == "dxdy/g" else None
        reports.append(
            VerificationReport(
                label=label,
                exact=exact,
                expected=expected,
                numeric=quad.value,
                abs_error=abs(quad.value - expected),
                tolerance=tol,
                quad_error=quad.error,
            )
        )
    return reports
