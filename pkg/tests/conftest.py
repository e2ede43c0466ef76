import pathlib
import random

import pytest

from evanescent import magma, poly
from evanescent.rationals import Q

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "corpus"


def random_monomial(rng, variables=(1, 2, 3), max_degree=6):
    degree = rng.randint(1, max_degree)

    def build(d):
        if d == 1:
            return magma.leaf(rng.choice(variables))
        split = rng.randint(1, d - 1)
        return magma.product(build(split), build(d - split))

    return build(degree)


def random_polynomial(rng, variables=(1, 2, 3), max_degree=5, max_terms=4):
    total = poly.Polynomial.zero()
    for _ in range(rng.randint(1, max_terms)):
        coeff = Q(rng.randint(-4, 4), rng.choice((1, 1, 2)))
        total = total + poly.Polynomial.monomial(
            random_monomial(rng, variables, max_degree), coeff
        )
    return total


@pytest.fixture
def rng():
    return random.Random(20260809)


def corpus_lines(kind, name):
    path = CORPUS / kind / f"{name}.txt"
    return [l for l in path.read_text(encoding="utf-8").splitlines() if l.strip()]
