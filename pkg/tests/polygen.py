"""Seeded generators of sigma-invariant test polynomials."""

import math
import random

from hypothesis import strategies as st

from catalan_forms.bipoly import G_POLY, BiPoly, sigma_orbit_sum


def orbit_monomials(max_deg):
    """Exponent pairs (i, j), i + j <= max_deg, whose sigma-orbit sum is nonzero."""
    out = []
    for n in range(0, max_deg + 1, 2):
        for i in range(n + 1):
            j = n - i
            if i == j and i % 2:
                continue
            out.append((i, j))
    return out


def random_sigma_invariant(rng: random.Random, max_deg: int, terms: int = 3, height: int = 5) -> BiPoly:
    mons = orbit_monomials(max_deg)
    while True:
        F = BiPoly.zero()
        for _ in range(terms):
            i, j = rng.choice(mons)
            F = F + sigma_orbit_sum(BiPoly.monomial(i, j)) * rng.randint(-height, height)
        if not F.is_zero():
            return F


def xy_power(n):
    return BiPoly.monomial(n, n)


def random_admissible(rng: random.Random, max_deg: int = 10, max_t: int = 4):
    """(F, t) with x^(2ceil(t/2)) y^(2ceil(t/2)) | F, F sigma-invariant, deg F <= max_deg."""
    while True:
        t = rng.randint(0, max_t)
        k = math.ceil(t / 2)
        rest = max_deg - 4 * k
        if rest >= 0:
            break
    H = random_sigma_invariant(rng, rest, terms=rng.randint(1, 3))
    return xy_power(2 * k) * H, t


def random_integrable(rng: random.Random, max_deg: int = 10, max_t: int = 4):
    """(F, t) integrable but generally not divisible by a power of xy: F = g^s (xy)^(2k) H."""
    while True:
        t = rng.randint(1, max_t)
        s = rng.randint(1, t)
        k = math.ceil((t - s) / 2)
        rest = max_deg - 2 * s - 4 * k
        if rest >= 0:
            break
    H = random_sigma_invariant(rng, rest, terms=rng.randint(1, 3))
    return G_POLY**s * xy_power(2 * k) * H, t


# hypothesis strategies

@st.composite
def sigma_invariant_polys(draw, max_deg=8):
    mons = orbit_monomials(max_deg)
    picks = draw(st.lists(st.tuples(st.sampled_from(mons), st.integers(-6, 6)), min_size=1, max_size=4))
    F = BiPoly.zero()
    for (i, j), c in picks:
        F = F + sigma_orbit_sum(BiPoly.monomial(i, j)) * c
    return F


@st.composite
def polys(draw, max_deg=5, rational=False):
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=6) if rational else st.integers(-5, 5)
    terms = draw(st.dictionaries(
        st.tuples(st.integers(0, max_deg), st.integers(0, max_deg)).filter(lambda m: m[0] + m[1] <= max_deg),
        coeff,
        max_size=5,
    ))
    return BiPoly(terms)


@st.composite
def admissible_specs(draw, max_deg=8, max_t=3):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_admissible(random.Random(seed), max_deg, max_t)
