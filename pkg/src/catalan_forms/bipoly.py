"""Sparse bivariate polynomials over Q and Q(i).

A :class:`BiPoly` maps exponent pairs ``(i, j)`` to nonzero exact scalars.
The same class carries polynomials in ``(x, y)`` and in the complex
coordinates ``z = x + iy``, ``w = x - iy``; the ``variables`` tag records
which.  Univariate polynomials in ``y`` are BiPolys whose keys all have
``i == 0``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from .errors import DivisibilityError, DomainError, PreconditionError
from .exact import GaussianRational, I, Scalar, as_scalar

Monomial = Tuple[int, int]

#: degree of the zero polynomial
NEG_INF = float("-inf")

__all__ = [
    "BiPoly",
    "Basis",
    "XygRepresentation",
    "NEG_INF",
    "X",
    "Y",
    "ONE",
    "G_POLY",
    "sigma_act",
    "tau_act",
    "is_sigma_invariant",
    "is_tau_invariant",
    "tau_split",
    "symmetric_basis",
    "sigma_orbit_sum",
    "to_zw",
    "from_zw",
    "zw_invariance_flags",
    "ord_at_P",
    "ord_at_Q",
    "is_integrable",
    "to_xyg_basis",
    "simplex_integral_poly",
    "restrict_hypotenuse",
    "integrate_01",
    "exact_div",
]


class BiPoly:
    """Immutable sparse polynomial in two variables."""

    __slots__ = ("_coeffs", "variables", "_hash")

    def __init__(self, coeffs: Mapping[Monomial, object] | None = None, variables: str = "xy"):
        if variables not in ("xy", "zw"):
            raise ValueError(f"unknown variable pair {variables!r}")
        clean: Dict[Monomial, Scalar] = {}
        for (i, j), c in (coeffs or {}).items():
            if i < 0 or j < 0:
                raise DomainError(f"negative exponent in monomial {(i, j)}")
            c = as_scalar(c)
            if c:
                clean[(int(i), int(j))] = c
        self._coeffs = MappingProxyType(clean)
        self.variables = variables
        self._hash = None

    def __reduce__(self):
        return (BiPoly, (dict(self._coeffs), self.variables))

    # -- constructors -----------------------------------------------------
    @classmethod
    def _raw(cls, coeffs: Dict[Monomial, Scalar], variables: str) -> "BiPoly":
        # trusted path: coeffs already normalized
        obj = cls.__new__(cls)
        obj._coeffs = MappingProxyType({k: (v.re if isinstance(v, GaussianRational) and v.im == 0 else v)
                                        for k, v in coeffs.items() if v})
        obj.variables = variables
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, i: int, j: int, c=1, variables: str = "xy") -> "BiPoly":
        return cls({(i, j): c}, variables)

    @classmethod
    def constant(cls, c, variables: str = "xy") -> "BiPoly":
        return cls({(0, 0): c}, variables)

    @classmethod
    def zero(cls, variables: str = "xy") -> "BiPoly":
        return cls({}, variables)

    # -- inspection -------------------------------------------------------
    @property
    def coeffs(self) -> Mapping[Monomial, Scalar]:
        return self._coeffs

    def coeff(self, i: int, j: int) -> Scalar:
        return self._coeffs.get((i, j), Fraction(0))

    def items(self):
        return self._coeffs.items()

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    @property
    def degree(self):
        """Total degree; :data:`NEG_INF` for the zero polynomial."""
        if not self._coeffs:
            return NEG_INF
        return max(i + j for i, j in self._coeffs)

    def degree_in(self, var: int) -> int:
        if not self._coeffs:
            return NEG_INF
        return max(k[var] for k in self._coeffs)

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self._coeffs.values())

    def is_integral(self) -> bool:
        return self.is_rational() and all(c.denominator == 1 for c in self._coeffs.values())

    def low_order(self):
        """Smallest total degree of a nonzero term."""
        if not self._coeffs:
            return NEG_INF
        return min(i + j for i, j in self._coeffs)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "BiPoly"):
        if other.variables != self.variables:
            raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")

    def _coerce(self, other):
        if isinstance(other, BiPoly):
            self._check(other)
            return other
        try:
            return BiPoly.constant(as_scalar(other), self.variables)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, 0) + c
        return BiPoly._raw(out, self.variables)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({k: -c for k, c in self._coeffs.items()}, self.variables)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            try:
                c = as_scalar(other)
            except TypeError:
                return NotImplemented
            if not c:
                return BiPoly.zero(self.variables)
            return BiPoly._raw({k: v * c for k, v in self._coeffs.items()}, self.variables)
        self._check(other)
        out: Dict[Monomial, Scalar] = {}
        for (i1, j1), c1 in self._coeffs.items():
            for (i2, j2), c2 in other._coeffs.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiPoly._raw(out, self.variables)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, BiPoly):
            return NotImplemented
        c = as_scalar(other)
        return self * (1 / c if isinstance(c, GaussianRational) else Fraction(1) / c)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise DomainError(f"exponent must be a nonnegative integer, got {n!r}")
        result = BiPoly.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.variables == other.variables and dict(self._coeffs) == dict(other._coeffs)
        try:
            other = BiPoly.constant(as_scalar(other), self.variables)
        except TypeError:
            return NotImplemented
        return self == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._coeffs.items())))
        return self._hash

    # -- calculus / substitution -------------------------------------------
    def diff(self, var: int) -> "BiPoly":
        """Partial derivative with respect to the first (0) or second (1) variable."""
        out = {}
        for (i, j), c in self._coeffs.items():
            e = (i, j)[var]
            if e:
                k = (i - 1, j) if var == 0 else (i, j - 1)
                out[k] = c * e
        return BiPoly._raw(out, self.variables)

    def compose(self, p: "BiPoly", q: "BiPoly", variables: str | None = None) -> "BiPoly":
        """Return ``self(p, q)`` for polynomials ``p`` and ``q``."""
        variables = variables or p.variables
        if not self._coeffs:
            return BiPoly.zero(variables)
        max_i = max(i for i, _ in self._coeffs)
        max_j = max(j for _, j in self._coeffs)
        one = BiPoly.constant(1, variables)
        p_pows = [one]
        for _ in range(max_i):
            p_pows.append(p_pows[-1] * p)
        q_pows = [one]
        for _ in range(max_j):
            q_pows.append(q_pows[-1] * q)
        out: Dict[Monomial, Scalar] = {}
        for (i, j), c in self._coeffs.items():
            for k, v in (p_pows[i] * q_pows[j])._coeffs.items():
                out[k] = out.get(k, 0) + c * v
        return BiPoly._raw(out, variables)

    def translate(self, dx, dy) -> "BiPoly":
        """Return ``self(X + dx, Y + dy)`` (Taylor expansion about ``(dx, dy)``)."""
        v = self.variables
        return self.compose(BiPoly({(1, 0): 1, (0, 0): dx}, v), BiPoly({(0, 1): 1, (0, 0): dy}, v))

    def __call__(self, x, y):
        total = 0
        for (i, j), c in self._coeffs.items():
            total = total + c * x**i * y**j
        return total

    def conjugate(self) -> "BiPoly":
        return BiPoly._raw(
            {k: (c.conjugate() if isinstance(c, GaussianRational) else c) for k, c in self._coeffs.items()},
            self.variables,
        )

    def with_variables(self, variables: str) -> "BiPoly":
        return BiPoly._raw(dict(self._coeffs), variables)

    # -- display ----------------------------------------------------------
    def __repr__(self):
        return f"BiPoly({self.to_text()!r}, variables={self.variables!r})"

    def to_text(self) -> str:
        if not self._coeffs:
            return "0"
        names = ("x", "y") if self.variables == "xy" else ("z", "w")
        parts = []
        for (i, j) in sorted(self._coeffs, key=lambda k: (-(k[0] + k[1]), -k[0])):
            c = self._coeffs[(i, j)]
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, (i, j)) if e
            )
            if isinstance(c, GaussianRational):
                cs = f"({c})"
                neg = False
            else:
                neg = c < 0
                cs = str(abs(c))
                if "/" in cs:
                    cs = f"({cs})"
            if mono:
                term = mono if cs == "1" else f"{cs}*{mono}"
            else:
                term = cs
            parts.append(("- " if neg else "+ ") + term)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    __str__ = to_text


X = BiPoly.monomial(1, 0)
Y = BiPoly.monomial(0, 1)
ONE = BiPoly.constant(1)
#: g = 1 - x^2 - y^2
G_POLY = BiPoly({(0, 0): 1, (2, 0): -1, (0, 2): -1})


def _require_xy(F: BiPoly):
    if F.variables != "xy":
        raise DomainError("expected a polynomial in x, y")


# ---------------------------------------------------------------------------
# symmetries


def sigma_act(F: BiPoly) -> BiPoly:
    """Apply sigma: (x, y) -> (-y, x)."""
    _require_xy(F)
    return BiPoly._raw({(j, i): (-c if i % 2 else c) for (i, j), c in F.items()}, "xy")


def tau_act(F: BiPoly) -> BiPoly:
    """Apply tau: (x, y) -> (y, x)."""
    _require_xy(F)
    return BiPoly._raw({(j, i): c for (i, j), c in F.items()}, "xy")


def is_sigma_invariant(F: BiPoly) -> bool:
    """Coefficient test: c[n, m] == (-1)^m c[m, n] for every (m, n)."""
    _require_xy(F)
    keys = set(F.coeffs) | {(n, m) for m, n in F.coeffs}
    for m, n in keys:
        c = F.coeff(m, n)
        if F.coeff(n, m) != (-c if m % 2 else c):
            return False
    return True


def is_tau_invariant(F: BiPoly) -> bool:
    return tau_act(F) == F


def tau_split(F: BiPoly) -> Tuple[BiPoly, BiPoly]:
    """Split ``F`` into tau-symmetric and tau-antisymmetric parts."""
    t = tau_act(F)
    half = Fraction(1, 2)
    return (F + t) * half, (F - t) * half


class Basis(enum.Enum):
    PHI = "phi"
    PSI = "psi"


def symmetric_basis(kind, m: int, n: int) -> BiPoly:
    """phi_{m,n} = x^m y^n + x^n y^m, psi_{m,n} = x^m y^n - x^n y^m."""
    kind = Basis(kind.value if isinstance(kind, Basis) else str(kind).lower())
    if m < 0 or n < 0:
        raise DomainError(f"exponents must be nonnegative, got ({m}, {n})")
    sign = 1 if kind is Basis.PHI else -1
    return BiPoly.monomial(m, n) + BiPoly.monomial(n, m) * sign


def sigma_orbit_sum(F: BiPoly) -> BiPoly:
    """sum_{i=0}^{3} sigma^i(F); always sigma-invariant."""
    total = F
    cur = F
    for _ in range(3):
        cur = sigma_act(cur)
        total = total + cur
    return total


# ---------------------------------------------------------------------------
# complex coordinates z = x + iy, w = x - iy

_HALF = Fraction(1, 2)
# x = (z + w)/2, y = (z - w)/(2i) = -i (z - w)/2
_X_IN_ZW = BiPoly({(1, 0): _HALF, (0, 1): _HALF}, "zw")
_Y_IN_ZW = BiPoly({(1, 0): GaussianRational(0, -_HALF), (0, 1): GaussianRational(0, _HALF)}, "zw")
_Z_IN_XY = BiPoly({(1, 0): 1, (0, 1): I}, "xy")
_W_IN_XY = BiPoly({(1, 0): 1, (0, 1): -I}, "xy")


def to_zw(F: BiPoly) -> BiPoly:
    """Rewrite F(x, y) as a polynomial in z = x + iy and w = x - iy."""
    _require_xy(F)
    return F.compose(_X_IN_ZW, _Y_IN_ZW, "zw")


def from_zw(F: BiPoly) -> BiPoly:
    if F.variables != "zw":
        raise DomainError("expected a polynomial in z, w")
    return F.compose(_Z_IN_XY, _W_IN_XY, "xy")


_I_POWERS = (GaussianRational(1), I, GaussianRational(-1), -I)


def zw_invariance_flags(F: BiPoly) -> Tuple[bool, bool, bool, bool]:
    """(sigma_fixed, tau_fixed, tau_anti, rational_xy) read off the z/w coefficients."""
    if F.variables != "zw":
        raise DomainError("expected a polynomial in z, w")
    lam = F.coeffs
    keys = set(lam) | {(l, k) for k, l in lam}

    def get(k, l):
        return GaussianRational._lift(lam.get((k, l), 0))

    sigma_fixed = all((k - l) % 4 == 0 for k, l in lam)
    tau_fixed = all(get(l, k) == _I_POWERS[(k - l) % 4] * get(k, l) for k, l in keys)
    tau_anti = all(-get(l, k) == _I_POWERS[(k - l) % 4] * get(k, l) for k, l in keys)
    rational_xy = all(get(l, k) == get(k, l).conjugate() for k, l in keys)
    return sigma_fixed, tau_fixed, tau_anti, rational_xy


# ---------------------------------------------------------------------------
# vanishing orders at P = (1, 0) and Q = (0, 1)


def ord_at_P(F: BiPoly) -> int:
    """Multiplicity of F at P = (1, 0)."""
    _require_xy(F)
    if F.is_zero():
        raise DomainError("order of the zero polynomial is undefined")
    return F.translate(1, 0).low_order()


def ord_at_Q(F: BiPoly) -> int:
    """Multiplicity of F at Q = (0, 1)."""
    _require_xy(F)
    if F.is_zero():
        raise DomainError("order of the zero polynomial is undefined")
    return F.translate(0, 1).low_order()


def is_integrable(F: BiPoly, t: int) -> bool:
    """Whether F dxdy / g^(t+1) converges over the simplex."""
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    if F.is_zero() or t == 0:
        return True
    return ord_at_P(F) >= t and ord_at_Q(F) >= t


# ---------------------------------------------------------------------------
# the (x^2 y^2, g) basis for sigma,tau-invariant polynomials


@dataclass(frozen=True)
class XygRepresentation:
    """Coefficients e[m, r] with F = sum e[m, r] (xy)^m g^r, m even."""

    terms: Mapping[Tuple[int, int], Fraction] = field(default_factory=dict)

    def reconstruct(self) -> BiPoly:
        total = BiPoly.zero()
        for (m, r), e in self.terms.items():
            total = total + BiPoly.monomial(m, m, e) * G_POLY**r
        return total

    def __getitem__(self, key):
        return self.terms.get(key, Fraction(0))

    def __len__(self):
        return len(self.terms)


def to_xyg_basis(F: BiPoly) -> XygRepresentation:
    _require_xy(F)
    if not F.is_rational():
        raise PreconditionError("to_xyg_basis needs rational coefficients")
    if not (is_sigma_invariant(F) and is_tau_invariant(F)):
        raise PreconditionError("F is not sigma- and tau-invariant")
    if any(i % 2 or j % 2 for i, j in F.coeffs):
        raise PreconditionError("F is not a polynomial in x^2, y^2")

    # work with X = x^2, Y = y^2; peel off P(X, 0) as a polynomial in e1 = X + Y,
    # then divide the remainder by e2 = XY
    P: Dict[Monomial, Fraction] = {(i // 2, j // 2): c for (i, j), c in F.items()}
    in_e: Dict[Tuple[int, int], Fraction] = {}  # (j, k) -> coeff of e2^j e1^k
    level = 0
    while P:
        edge = {a: c for (a, b), c in P.items() if b == 0}
        for a, c in edge.items():
            in_e[(level, a)] = c
            for s in range(a + 1):
                key = (a - s, s)
                P[key] = P.get(key, 0) - c * comb(a, s)
        P = {k: v for k, v in P.items() if v}
        shifted = {}
        for (a, b), c in P.items():
            if a == 0 or b == 0:
                raise PreconditionError("F is not symmetric in x^2, y^2")
            shifted[(a - 1, b - 1)] = c
        P = shifted
        level += 1

    # e1 = 1 - g
    terms: Dict[Tuple[int, int], Fraction] = {}
    for (j, k), c in in_e.items():
        for r in range(k + 1):
            key = (2 * j, r)
            terms[key] = terms.get(key, 0) + c * comb(k, r) * (-1) ** r
    return XygRepresentation({k: v for k, v in terms.items() if v})


# ---------------------------------------------------------------------------
# elementary exact integrals


def simplex_integral_poly(F: BiPoly) -> Fraction:
    """Exact integral of F over the simplex x, y >= 0, x + y <= 1."""
    _require_xy(F)
    if not F.is_rational():
        raise DomainError("simplex_integral_poly needs rational coefficients")
    total = Fraction(0)
    for (a, b), c in F.items():
        total += c * Fraction(factorial(a) * factorial(b), factorial(a + b + 2))
    return total


_HYP_X = BiPoly({(0, 0): 1, (0, 1): -1})  # 1 - y
_HYP_Y = BiPoly({(0, 1): 1})


def restrict_hypotenuse(F: BiPoly) -> BiPoly:
    """F(1 - y, y), returned as a polynomial in y alone."""
    _require_xy(F)
    return F.compose(_HYP_X, _HYP_Y, "xy")


def integrate_01(p: Union[BiPoly, Sequence]) -> Scalar:
    """Exact integral over [0, 1] of a univariate polynomial in y.

    ``p`` is either a BiPoly without x-dependence or a coefficient sequence
    ``[c0, c1, ...]``.
    """
    if isinstance(p, BiPoly):
        if any(i for i, _ in p.coeffs):
            raise DomainError("integrate_01 expects a polynomial in y only")
        items: Iterable = ((j, c) for (_, j), c in p.items())
    else:
        items = enumerate(p)
    total = Fraction(0)
    for j, c in items:
        total = total + as_scalar(c) * Fraction(1, j + 1)
    return as_scalar(total)


def _lead(F: BiPoly) -> Monomial:
    return max(F.coeffs)  # lex order, x > y


def exact_div(F: BiPoly, D: BiPoly) -> BiPoly:
    """Return Q with Q * D == F, or raise DivisibilityError."""
    if D.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    F._check(D)
    lead_d = _lead(D)
    cd = D.coeffs[lead_d]
    quotient: Dict[Monomial, Scalar] = {}
    R = F
    while R:
        lr = _lead(R)
        di, dj = lr[0] - lead_d[0], lr[1] - lead_d[1]
        if di < 0 or dj < 0:
            raise DivisibilityError(f"{D} does not divide {F}")
        c = R.coeffs[lr] / cd
        quotient[(di, dj)] = c
        R = R - BiPoly.monomial(di, dj, c, F.variables) * D
    return BiPoly._raw(quotient, F.variables)
