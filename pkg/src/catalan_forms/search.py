"""Search integer polynomial families for small linear forms in 1 and G.

Each candidate is an integer coefficient vector over a monomial support.
In the default family the vector defines a generator polynomial G0 and
F = sum_{i<4} sigma^i(G0^2), which is sigma-invariant and nonnegative on
the simplex.  For every admissible pole order t the exact form a + b*G is
computed, cleared to a primitive integer form p + q*G and ranked by
|p + q*G|.
"""

from __future__ import annotations

import csv
import enum
import io
import itertools
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .bipoly import BiPoly, is_integrable, sigma_orbit_sum
from .errors import DomainError
from .exact import LinearForm, format_rational, linear_form_decimal
from .linform0 import DenominatorCertificate, denominator_certificate
from .oracle import check_linear_form
from .reduction import ClearedForm, IntegrandSpec, cleared_form, linear_form_integrable

__all__ = [
    "Strategy",
    "Family",
    "SearchConfig",
    "SearchEntry",
    "SearchReport",
    "sigma_symmetrize_square",
    "objective",
    "default_support",
    "run_search",
]

DIGITS = 30
_INF = Decimal("Infinity")


class Strategy(str, enum.Enum):
    EXHAUSTIVE = "exhaustive"
    RANDOM = "random"
    HILLCLIMB = "hillclimb"


class Family(str, enum.Enum):
    SQUARES = "squares"  # F = sigma-orbit sum of G0^2
    SIGMA = "sigma"  # F = integer combination of sigma-orbit sums


@dataclass(frozen=True)
class SearchConfig:
    max_degree: int
    t_min: int = 0
    t_max: int = 0
    strategy: Strategy = Strategy.EXHAUSTIVE
    budget: int = 1000
    seed: int = 0
    workers: int = 1
    height: int = 1
    top_k: int = 10
    family: Family = Family.SQUARES
    support: Optional[Tuple[Tuple[int, int], ...]] = None
    validate: bool = True

    def __post_init__(self):
        object.__setattr__(self, "strategy", Strategy(self.strategy))
        object.__setattr__(self, "family", Family(self.family))
        if self.support is not None:
            object.__setattr__(self, "support", tuple(tuple(int(e) for e in m) for m in self.support))
        if not isinstance(self.max_degree, int) or self.max_degree < 2 or self.max_degree % 2:
            raise DomainError(f"max_degree must be an even positive integer, got {self.max_degree!r}")
        if self.t_min < 0 or self.t_max < self.t_min:
            raise DomainError(f"bad t range [{self.t_min}, {self.t_max}]")
        if self.budget < 0:
            raise DomainError("budget must be nonnegative")
        if self.workers < 1:
            raise DomainError("workers must be positive")
        if self.height < 1:
            raise DomainError("height must be positive")
        if self.top_k < 1:
            raise DomainError("top_k must be positive")
        if not -(2**63) <= self.seed < 2**64:
            raise DomainError("seed must fit in 64 bits")

    @property
    def t_range(self) -> range:
        return range(self.t_min, self.t_max + 1)


def sigma_symmetrize_square(G0: BiPoly) -> BiPoly:
    """sum_{i=0}^{3} sigma^i(G0^2)."""
    if not G0.is_integral():
        raise DomainError("generator polynomial must have integer coefficients")
    return sigma_orbit_sum(G0 * G0)


def objective(F: BiPoly, t: int) -> Tuple[Decimal, Optional[Decimal]]:
    """(|p + q*G| of the cleared form, |G + a/b| or None when b = 0)."""
    form = linear_form_integrable(IntegrandSpec(F, t))
    return _objective_of(form, cleared_form(form, DIGITS))


def _objective_of(form: LinearForm, cleared: ClearedForm) -> Tuple[Decimal, Optional[Decimal]]:
    value = abs(Decimal(cleared.value))
    if form.b == 0:
        return value, None
    approx = abs(Decimal(linear_form_decimal(LinearForm(form.a / form.b, 1), DIGITS)))
    return value, approx


def default_support(max_degree: int, family: Family = Family.SQUARES) -> Tuple[BiPoly, ...]:
    """Basis polynomials whose integer combinations form the candidate space."""
    family = Family(family)
    if family is Family.SQUARES:
        d = max_degree // 2
        return tuple(
            BiPoly.monomial(i, n - i) for n in range(d + 1) for i in range(n, -1, -1)
        )
    basis: List[BiPoly] = []
    seen = set()
    for n in range(0, max_degree + 1, 2):
        for i in range(n, -1, -1):
            B = sigma_orbit_sum(BiPoly.monomial(i, n - i))
            if B.is_zero() or B in seen or -B in seen:
                continue
            seen.add(B)
            basis.append(B)
    return tuple(basis)


def _basis_for(config: SearchConfig) -> Tuple[BiPoly, ...]:
    if config.support is None:
        return default_support(config.max_degree, config.family)
    out = []
    for i, j in config.support:
        m = BiPoly.monomial(i, j)
        if config.family is Family.SQUARES:
            if i + j > config.max_degree // 2:
                raise DomainError(f"support monomial x^{i} y^{j} exceeds degree {config.max_degree // 2}")
            out.append(m)
        else:
            if i + j > config.max_degree:
                raise DomainError(f"support monomial x^{i} y^{j} exceeds degree {config.max_degree}")
            B = sigma_orbit_sum(m)
            if B.is_zero():
                raise DomainError(f"sigma-orbit sum of x^{i} y^{j} vanishes")
            out.append(B)
    return tuple(out)


def _polynomial(family: Family, basis: Sequence[BiPoly], vec: Sequence[int]) -> BiPoly:
    G0 = BiPoly.zero()
    for c, B in zip(vec, basis):
        if c:
            G0 = G0 + B * c
    return sigma_symmetrize_square(G0) if family is Family.SQUARES else G0


@dataclass(frozen=True)
class _Hit:
    t: int
    form: LinearForm
    cleared: ClearedForm
    cleared_abs: Decimal
    approx_error: Optional[Decimal]


def _evaluate(task) -> Tuple[BiPoly, List[_Hit]]:
    family, basis, vec, t_values = task
    F = _polynomial(family, basis, vec)
    hits = []
    if F.is_zero():
        return F, hits
    for t in t_values:
        if not is_integrable(F, t):
            continue
        try:
            form = linear_form_integrable(IntegrandSpec(F, t))
        except DomainError:
            continue
        if form.is_zero():
            continue
        cleared = cleared_form(form, DIGITS)
        value, approx = _objective_of(form, cleared)
        hits.append(_Hit(t, form, cleared, value, approx))
    return F, hits


def _validate(task) -> Tuple[Optional[DenominatorCertificate], bool, float]:
    F, t, form = task
    cert = None
    if t == 0 and F.is_integral():
        cert = denominator_certificate(F, form)
    report = check_linear_form(IntegrandSpec(F, t), tol=1e-8)
    return cert, report.passed, report.abs_error


@dataclass(frozen=True)
class SearchEntry:
    index: int
    coeffs: Tuple[int, ...]
    F: BiPoly
    t: int
    form: LinearForm
    cleared: ClearedForm
    cleared_abs: Decimal
    approx_error: Optional[Decimal]
    certificate: Optional[DenominatorCertificate] = None
    verified: Optional[bool] = None
    check_error: Optional[float] = None

    def to_dict(self) -> dict:
        cert = None
        if self.certificate is not None:
            c = self.certificate
            cert = {"N": c.N, "a_ok": c.a_ok, "b_ok": c.b_ok}
        return {
            "index": self.index,
            "coeffs": list(self.coeffs),
            "F": self.F.to_text(),
            "t": self.t,
            "a": format_rational(self.form.a),
            "b": format_rational(self.form.b),
            "denominators": {"a": str(self.form.a.denominator), "b": str(self.form.b.denominator)},
            "cleared": {"p": str(self.cleared.p), "q": str(self.cleared.q), "value": self.cleared.value},
            "cleared_abs": str(self.cleared_abs),
            "approx_error": None if self.approx_error is None else str(self.approx_error),
            "digits": DIGITS,
            "certificate": cert,
            "verified": self.verified,
            "check_error": None if self.check_error is None else f"{self.check_error:.3e}",
        }


_CSV_FIELDS = [
    "rank", "index", "coeffs", "F", "t", "a", "b", "p", "q", "cleared_value",
    "cleared_abs", "approx_error", "certificate_ok", "verified",
]


@dataclass
class SearchReport:
    config: SearchConfig
    entries: List[SearchEntry] = field(default_factory=list)
    evaluations: int = 0
    feasible: int = 0
    elapsed: float = 0.0

    @property
    def best(self) -> Optional[SearchEntry]:
        return self.entries[0] if self.entries else None

    def to_dict(self, include_elapsed: bool = False) -> dict:
        cfg = self.config
        out = {
            "provenance": {
                "strategy": cfg.strategy.value,
                "seed": cfg.seed,
                "family": cfg.family.value,
                "max_degree": cfg.max_degree,
                "t_range": [cfg.t_min, cfg.t_max],
                "height": cfg.height,
                "budget": cfg.budget,
                "support": None if cfg.support is None else [list(m) for m in cfg.support],
            },
            "stats": {"evaluations": self.evaluations, "feasible": self.feasible},
            "entries": [dict(rank=r + 1, **e.to_dict()) for r, e in enumerate(self.entries)],
        }
        if include_elapsed:
            out["stats"]["elapsed"] = self.elapsed
        return out

    def to_json(self, include_elapsed: bool = False) -> str:
        return json.dumps(self.to_dict(include_elapsed), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=_CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        for r, e in enumerate(self.entries):
            writer.writerow({
                "rank": r + 1,
                "index": e.index,
                "coeffs": " ".join(map(str, e.coeffs)),
                "F": e.F.to_text(),
                "t": e.t,
                "a": format_rational(e.form.a),
                "b": format_rational(e.form.b),
                "p": e.cleared.p,
                "q": e.cleared.q,
                "cleared_value": e.cleared.value,
                "cleared_abs": str(e.cleared_abs),
                "approx_error": "" if e.approx_error is None else str(e.approx_error),
                "certificate_ok": "" if e.certificate is None else e.certificate.ok,
                "verified": "" if e.verified is None else e.verified,
            })
        return buf.getvalue()

    def write(self, path) -> None:
        path = Path(path)
        if path.suffix == ".json":
            path.write_text(self.to_json())
        elif path.suffix == ".csv":
            path.write_text(self.to_csv())
        else:
            raise DomainError(f"report file must end in .csv or .json, got {path.name}")


class _Evaluator:
    """Memoized, budgeted candidate evaluation with ordered parallel map."""

    def __init__(self, config: SearchConfig, basis: Tuple[BiPoly, ...], pool):
        self.config = config
        self.basis = basis
        self.pool = pool
        self.t_values = tuple(config.t_range)
        self.results: Dict[Tuple[int, ...], Tuple[int, BiPoly, List[_Hit]]] = {}
        self.evaluations = 0

    @property
    def remaining(self) -> int:
        return self.config.budget - self.evaluations

    def run(self, vectors: Iterable[Tuple[int, ...]]) -> None:
        todo = []
        seen = set()
        for v in vectors:
            if v in self.results or v in seen or not any(v):
                continue
            if len(todo) >= self.remaining:
                break
            seen.add(v)
            todo.append(v)
        if not todo:
            return
        tasks = [(self.config.family, self.basis, v, self.t_values) for v in todo]
        mapper = self.pool.map if self.pool is not None else map
        for v, (F, hits) in zip(todo, mapper(_evaluate, tasks)):
            self.results[v] = (len(self.results), F, hits)
        self.evaluations += len(todo)

    def score(self, v: Tuple[int, ...]) -> Decimal:
        _, _, hits = self.results[v]
        return min((h.cleared_abs for h in hits), default=_INF)


def _canonical(v: Tuple[int, ...]) -> bool:
    for c in v:
        if c:
            return c > 0
    return False


def _exhaustive(ev: _Evaluator, n: int, h: int) -> None:
    vectors = (v for v in itertools.product(range(-h, h + 1), repeat=n) if _canonical(v))
    ev.run(itertools.islice(vectors, ev.config.budget))


def _random_vector(rng: random.Random, n: int, h: int) -> Tuple[int, ...]:
    while True:
        v = tuple(rng.randint(-h, h) for _ in range(n))
        if any(v):
            return v


def _random(ev: _Evaluator, n: int, h: int) -> None:
    rng = random.Random(ev.config.seed)
    ev.run([_random_vector(rng, n, h) for _ in range(ev.config.budget)])


def _neighbours(v: Tuple[int, ...], h: int) -> List[Tuple[int, ...]]:
    out = []
    for i in range(len(v)):
        for step in (-1, 1):
            c = v[i] + step
            if -h <= c <= h:
                w = v[:i] + (c,) + v[i + 1:]
                if any(w):
                    out.append(w)
    return out


def _hillclimb(ev: _Evaluator, n: int, h: int) -> None:
    rng = random.Random(ev.config.seed)
    # restarts that land on cached points cost nothing, so cap the attempts
    attempts = 0
    max_attempts = 10 * ev.config.budget + 100
    while ev.remaining > 0 and attempts < max_attempts:
        attempts += 1
        current = _random_vector(rng, n, h)
        ev.run([current])
        if current not in ev.results:
            break
        while ev.remaining > 0:
            nbrs = _neighbours(current, h)
            ev.run(nbrs)
            scored = [(ev.score(w), w) for w in nbrs if w in ev.results]
            if not scored:
                break
            best_score, best = min(scored)
            if best_score < ev.score(current):
                current = best
            else:
                break


def run_search(config: SearchConfig) -> SearchReport:
    """Explore the candidate family and return the top-k ranked linear forms."""
    start = time.perf_counter()
    report = SearchReport(config)
    if config.budget == 0:
        report.elapsed = time.perf_counter() - start
        return report
    basis = _basis_for(config)
    n = len(basis)
    pool = ProcessPoolExecutor(max_workers=config.workers) if config.workers > 1 else None
    try:
        ev = _Evaluator(config, basis, pool)
        if config.strategy is Strategy.EXHAUSTIVE:
            _exhaustive(ev, n, config.height)
        elif config.strategy is Strategy.RANDOM:
            _random(ev, n, config.height)
        else:
            _hillclimb(ev, n, config.height)

        entries: Dict[Tuple[BiPoly, int], SearchEntry] = {}
        for v, (index, F, hits) in ev.results.items():
            for hit in hits:
                key = (F, hit.t)
                if key in entries and entries[key].index < index:
                    continue
                entries[key] = SearchEntry(
                    index, v, F, hit.t, hit.form, hit.cleared, hit.cleared_abs, hit.approx_error
                )
        ranked = sorted(entries.values(), key=lambda e: (e.cleared_abs, e.index, e.t))
        top = ranked[: config.top_k]
        if config.validate and top:
            mapper = pool.map if pool is not None else map
            checks = list(mapper(_validate, [(e.F, e.t, e.form) for e in top]))
            top = [
                SearchEntry(
                    e.index, e.coeffs, e.F, e.t, e.form, e.cleared, e.cleared_abs, e.approx_error,
                    certificate=cert, verified=passed, check_error=err,
                )
                for e, (cert, passed, err) in zip(top, checks)
            ]
        report.entries = top
        report.evaluations = ev.evaluations
        report.feasible = len(entries)
    finally:
        if pool is not None:
            pool.shutdown()
    report.elapsed = time.perf_counter() - start
    return report
