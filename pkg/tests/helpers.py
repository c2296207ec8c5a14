"""Shared test oracles: independent implementations used to freeze expected values.

Everything here deliberately avoids the library's own evaluation paths:
quantiles by definitional linear scan over fresh cumulative sums, expectations
by direct summation, integrals by Riemann sums.
"""

from __future__ import annotations

import random
from fractions import Fraction

from acceptset import FiniteDistribution, NEG_INF, POS_INF

DENOMS = (1, 2, 3, 4, 5, 8, 10)


def random_law(rng: random.Random, max_atoms: int = 8) -> FiniteDistribution:
    k = rng.randint(1, max_atoms)
    values = set()
    while len(values) < k:
        values.add(Fraction(rng.randint(-60, 60), rng.choice(DENOMS)))
    weights = [rng.randint(1, 9) for _ in range(k)]
    total = sum(weights)
    return FiniteDistribution((v, Fraction(w, total)) for v, w in zip(sorted(values), weights))


def oracle_cdf(atoms, x) -> Fraction:
    """P(X <= x) by direct summation."""
    return sum((p for v, p in atoms if v <= x), Fraction(0))


def oracle_cdf_left(atoms, x) -> Fraction:
    """P(X < x) by direct summation."""
    return sum((p for v, p in atoms if v < x), Fraction(0))


def oracle_quantile_left(atoms, t):
    """inf{x : F(x) >= t} by linear scan over a fresh cumulative sum."""
    if t == 0:
        return NEG_INF
    running = Fraction(0)
    for v, p in sorted(atoms):
        running += p
        if running >= t:
            return v
    raise AssertionError("level above total mass")


def oracle_quantile_right(atoms, t):
    """inf{x : F(x) > t} by linear scan."""
    if t == 1:
        return POS_INF
    running = Fraction(0)
    for v, p in sorted(atoms):
        running += p
        if running > t:
            return v
    raise AssertionError("level above total mass")


def oracle_var_lower(atoms, alpha):
    """Left quantile of the loss law -X, built from scratch."""
    neg = sorted((-v, p) for v, p in atoms)
    return oracle_quantile_left(neg, alpha)


def oracle_var_upper(atoms, alpha):
    neg = sorted((-v, p) for v, p in atoms)
    return oracle_quantile_right(neg, alpha)


def oracle_es_riemann(atoms, beta: float, steps: int = 20_000) -> float:
    """Average lower VaR over (beta, 1) by midpoint Riemann sum (float)."""
    import bisect

    loss_sorted = sorted((float(-v), float(p)) for v, p in atoms)
    cums = []
    running = 0.0
    for _, p in loss_sorted:
        running += p
        cums.append(running)
    cums[-1] = 1.0
    total = 0.0
    width = (1.0 - beta) / steps
    for i in range(steps):
        level = beta + (i + 0.5) * width
        q = loss_sorted[bisect.bisect_left(cums, level)][0]
        total += q * width
    return total / (1.0 - beta)


def oracle_truncated_mean(atoms, cap: Fraction) -> Fraction:
    """Clamp-then-average: the identity-distortion value of the truncated law."""
    return sum(p * min(max(-cap, v), cap) for v, p in atoms)
