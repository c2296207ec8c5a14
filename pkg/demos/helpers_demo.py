"""Small shared helpers for the demo scripts."""

import random
from fractions import Fraction

from acceptset import FiniteDistribution

DENOMS = (1, 2, 3, 4, 5, 8, 10)


def random_law(rng: random.Random, max_atoms: int = 8) -> FiniteDistribution:
    k = rng.randint(1, max_atoms)
    values = set()
    while len(values) < k:
        values.add(Fraction(rng.randint(-60, 60), rng.choice(DENOMS)))
    weights = [rng.randint(1, 9) for _ in range(k)]
    total = sum(weights)
    return FiniteDistribution((v, Fraction(w, total)) for v, w in zip(sorted(values), weights))
