from __future__ import annotations

import random
from fractions import Fraction

import pytest

from sasano_galois.algnum import AlgNum, TowerSpec, canonical_tower, wasow_tower


@pytest.fixture(scope="session")
def tower() -> TowerSpec:
    return canonical_tower()


@pytest.fixture(scope="session")
def alt_tower() -> TowerSpec:
    return wasow_tower()


def random_algnum(tw: TowerSpec, rng: random.Random, terms: int = 3, span: int = 9) -> AlgNum:
    """Sparse random tower element with small rational coordinates."""
    total = AlgNum.from_rational(tw, 0)
    for _ in range(terms):
        exps = tuple(rng.randrange(d) for d in tw.degrees)
        q = Fraction(rng.randint(-span, span), rng.randint(1, span))
        total = total + AlgNum(tw, tw.monomial_value(exps, q))
    return total


def random_nonzero_algnum(tw: TowerSpec, rng: random.Random, terms: int = 3) -> AlgNum:
    while True:
        a = random_algnum(tw, rng, terms)
        if not a.is_zero():
            return a
