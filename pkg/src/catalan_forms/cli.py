"""Command-line interface: ``catalan-forms <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence

from .bipoly import BiPoly
from .errors import CatalanFormsError, DomainError
from .exact import LinearForm, format_rational, linear_form_decimal
from .linform0 import denominator_certificate
from .oracle import CATALAN_MAX_DIGITS, catalan, check_linear_form, period_matrix_check
from .parser import PolySyntaxError, parse_poly
from .reduction import IntegrandSpec, cleared_form, linear_form, linear_form_integrable
from .search import Family, SearchConfig, Strategy, run_search

__all__ = ["main", "dispatch", "eval_payload", "REGRESSION_CORPUS", "TABLE"]

TABLE = (
    ("x^2*y^2", 0),
    ("x^4*y^4", 0),
    ("x^4*y^4", 2),
)

REGRESSION_CORPUS = (
    ("1", 0),
    ("x^2*y^2", 0),
    ("x^4*y^4", 0),
    ("x^4*y^4", 2),
    ("x^2 + y^2", 0),
    ("x^4 + y^4", 0),
    ("x^3*y - x*y^3", 0),
    ("x^2*y^2", 1),
    ("x^4*y^4", 1),
    ("x^4*y^4", 3),
    ("x^6*y^6 + x^4*y^4", 4),
    ("(1-x-y)*(1-x+y)*(1+x-y)*(1+x+y)", 2),
    ("(1-x^2-y^2)*x^2*y^2", 1),
    ("x^6 + y^6 + 3*x^2*y^2", 0),
)


def _exit_error(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _compute(F: BiPoly, t: int, mode: str) -> LinearForm:
    spec = IntegrandSpec(F, t)
    return linear_form(spec) if mode == "theorem1" else linear_form_integrable(spec)


def eval_payload(poly: str, t: int, mode: str = "integrable", digits: int = 30) -> dict:
    """The JSON-ready result of ``eval``."""
    F = parse_poly(poly)
    form = _compute(F, t, mode)
    cleared = cleared_form(form, digits)
    cert = None
    if t == 0 and F.is_integral() and not F.is_zero():
        c = denominator_certificate(F, form)
        cert = {"N": c.N, "a_ok": c.a_ok, "b_ok": c.b_ok}
    return {
        "poly": poly,
        "t": t,
        "a": format_rational(form.a),
        "b": format_rational(form.b),
        "decimal": linear_form_decimal(form, digits),
        "digits": digits,
        "cleared": {"p": str(cleared.p), "q": str(cleared.q), "value": cleared.value},
        "certificate": cert,
    }


def _format_text(payload: dict) -> str:
    cl = payload["cleared"]
    lines = [
        f"F       = {payload['poly']}",
        f"t       = {payload['t']}",
        f"a       = {payload['a']}",
        f"b       = {payload['b']}",
        f"a + b*G = {payload['decimal']}",
        f"cleared = {cl['p']} + {cl['q']}*G = {cl['value']}",
    ]
    cert = payload["certificate"]
    if cert is None:
        lines.append("certificate: n/a")
    else:
        lines.append(f"certificate: N = {cert['N']}, a_ok = {cert['a_ok']}, b_ok = {cert['b_ok']}")
    return "\n".join(lines)


def _cmd_eval(args) -> int:
    payload = eval_payload(args.poly, args.t, args.mode, args.digits)
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(_format_text(payload))
    return 0


def _verify_one(task):
    poly, t, tol = task
    F = parse_poly(poly)
    return check_linear_form(IntegrandSpec(F, t), tol=tol, label=f"F = {poly}, t = {t}")


def _cmd_verify(args) -> int:
    if args.suite:
        tasks = [(p, t, args.tol) for p, t in REGRESSION_CORPUS]
    else:
        if args.poly is None or args.t is None:
            raise _UsageError("verify needs --poly and --t, or --suite")
        tasks = [(args.poly, args.t, args.tol)]
    threads = args.threads or 1
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(_verify_one, tasks))
    else:
        reports = [_verify_one(task) for task in tasks]
    for rep in reports:
        print(rep.line())
        if rep.exact is not None:
            print(f"      exact a + b*G = {rep.exact} = {linear_form_decimal(rep.exact, args.digits)}")
    failed = sum(not r.passed for r in reports)
    if failed:
        return _exit_error(f"{failed} of {len(reports)} checks failed", 1)
    return 0


def _cmd_table(args) -> int:
    print(f"{'F':<10} {'t':>2}  {'a':>14} {'b':>8}  {'cleared form':<14} value")
    for poly, t in TABLE:
        payload = eval_payload(poly, t, "integrable", args.digits)
        cl = payload["cleared"]
        form = f"{cl['p']} + {cl['q']}*G"
        print(f"{poly:<10} {t:>2}  {payload['a']:>14} {payload['b']:>8}  {form:<14} {cl['value']}")
    return 0


def _cmd_catalan(args) -> int:
    if not 1 <= args.digits <= CATALAN_MAX_DIGITS:
        raise DomainError(f"digits must be in [1, {CATALAN_MAX_DIGITS}]")
    print(catalan(args.digits))
    return 0


def _cmd_period_check(args) -> int:
    reports = period_matrix_check(args.tol)
    for rep in reports:
        print(rep.line())
    failed = sum(not r.passed for r in reports)
    if failed:
        return _exit_error(f"{failed} of {len(reports)} period checks failed", 1)
    return 0


def _parse_support(text: Optional[str]):
    if text is None:
        return None
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        try:
            i, j = (int(v) for v in part.split(","))
        except ValueError:
            raise _UsageError(f"bad support monomial {part!r}; expected 'i,j'") from None
        out.append((i, j))
    return tuple(out)


def _cmd_search(args) -> int:
    if args.out is not None and not args.out.endswith((".csv", ".json")):
        raise _UsageError("--out must name a .csv or .json file")
    config = SearchConfig(
        max_degree=args.max_deg,
        t_min=args.t_min,
        t_max=args.t_max,
        strategy=Strategy(args.strategy),
        budget=args.budget,
        seed=args.seed,
        workers=args.threads or os.cpu_count() or 1,
        height=args.height,
        top_k=args.top_k,
        family=Family(args.family),
        support=_parse_support(args.support),
        validate=not args.no_validate,
    )
    report = run_search(config)
    print(f"strategy {config.strategy.value}, seed {config.seed}: "
          f"{report.evaluations} evaluations, {report.feasible} feasible (F, t)")
    for rank, e in enumerate(report.entries, 1):
        print(f"{rank:>3}. t = {e.t}  {e.cleared.p} + {e.cleared.q}*G = {e.cleared.value}  F = {e.F}")
    if args.out:
        report.write(args.out)
    return 0


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="catalan-forms", description="Exact linear forms in 1 and Catalan's constant.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="exact (a, b) for F dxdy/g^(t+1)")
    p.add_argument("--poly", required=True)
    p.add_argument("--t", type=_nonneg_int, required=True)
    p.add_argument("--mode", choices=("theorem1", "integrable"), default="integrable")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--digits", type=int, default=30)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("verify", help="compare the exact form with quadrature")
    p.add_argument("--poly")
    p.add_argument("--t", type=_nonneg_int)
    p.add_argument("--suite", action="store_true", help="run the built-in regression corpus")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--digits", type=int, default=30)
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("table", help="the three reference linear forms")
    p.add_argument("--digits", type=int, default=30)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("catalan", help="decimal digits of G")
    p.add_argument("--digits", type=int, required=True)
    p.set_defaults(func=_cmd_catalan)

    p = sub.add_parser("period-check", help="first row of the period matrix by quadrature")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=_cmd_period_check)

    p = sub.add_parser("search", help="search for small cleared linear forms")
    p.add_argument("--max-deg", type=int, required=True)
    p.add_argument("--t-min", type=_nonneg_int, default=0)
    p.add_argument("--t-max", type=_nonneg_int, default=0)
    p.add_argument("--strategy", choices=[s.value for s in Strategy], default="exhaustive")
    p.add_argument("--budget", type=_nonneg_int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--height", type=int, default=1)
    p.add_argument("--top-k", type=int, default=10)
    p.add_argument("--family", choices=[f.value for f in Family], default="squares")
    p.add_argument("--support", help="monomials 'i,j;i,j;...' (default: all up to the degree bound)")
    p.add_argument("--no-validate", action="store_true", help="skip quadrature re-validation")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_search)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        return _exit_error(str(exc), 2)
    except PolySyntaxError as exc:
        return _exit_error(f"syntax error at {exc}", 2)
    except (CatalanFormsError, DomainError, ArithmeticError) as exc:
        return _exit_error(str(exc), 1)


dispatch = main


if __name__ == "__main__":
    sys.exit(main())
