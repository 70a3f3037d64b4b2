import os
import random

import pytest

from hadsearch.polynom import Domain, MultilinearPoly, load_poly

DATA = os.path.join(os.path.dirname(__file__), "data")


def data_poly(name: str) -> MultilinearPoly:
    return load_poly(os.path.join(DATA, name))


def random_poly(
    rng: random.Random,
    domain: Domain,
    max_vars: int = 6,
    max_degree: int = 4,
    max_terms: int = 10,
    coeff_range: tuple[int, int] = (-50, 50),
) -> MultilinearPoly:
    """Random multilinear polynomial for property tests."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        size = rng.randint(0, max_degree)
        mono = tuple(sorted(rng.sample(range(max_vars), size)))
        coeff = 0
        while coeff == 0:
            coeff = rng.randint(*coeff_range)
        terms[mono] = coeff
    return MultilinearPoly(domain, terms)


def random_assignment(rng: random.Random, nvars: int, domain: Domain) -> dict[int, int]:
    lo, hi = domain.values
    return {i: rng.choice((lo, hi)) for i in range(nvars)}


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
