"""Exact linear forms a + b*G for integrals of F dxdy/(1-x^2-y^2)^(t+1) over the simplex."""

from .bipoly import (
    G_POLY,
    BiPoly,
    is_integrable,
    is_sigma_invariant,
    sigma_act,
    sigma_orbit_sum,
    tau_act,
    to_xyg_basis,
    to_zw,
)
from .errors import (
    AccuracyError,
    CatalanFormsError,
    ConsistencyError,
    DivisibilityError,
    DomainError,
    PreconditionError,
)
from .exact import GaussianRational, LinearForm, Rational, lcm_upto, linear_form_decimal
from .linform0 import b_coefficient, denominator_certificate, linear_form_t0
from .oracle import catalan, check_linear_form, period_matrix_check, quadrature_simplex
from .parser import parse_poly
from .reduction import ClearedForm, IntegrandSpec, cleared_form, linear_form, linear_form_integrable
from .search import SearchConfig, SearchReport, objective, run_search, sigma_symmetrize_square

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "BiPoly",
    "CatalanFormsError",
    "ClearedForm",
    "ConsistencyError",
    "DivisibilityError",
    "DomainError",
    "G_POLY",
    "GaussianRational",
    "IntegrandSpec",
    "LinearForm",
    "PreconditionError",
    "Rational",
    "SearchConfig",
    "SearchReport",
    "b_coefficient",
    "catalan",
    "check_linear_form",
    "cleared_form",
    "denominator_certificate",
    "is_integrable",
    "is_sigma_invariant",
    "lcm_upto",
    "linear_form",
    "linear_form_decimal",
    "linear_form_integrable",
    "linear_form_t0",
    "objective",
    "parse_poly",
    "period_matrix_check",
    "quadrature_simplex",
    "run_search",
    "sigma_act",
    "sigma_orbit_sum",
    "sigma_symmetrize_square",
    "tau_act",
    "to_xyg_basis",
    "to_zw",
]
