"""Falsifier-style checkers for the acceptance-set axioms.

Each checker searches for a concrete violation of one property — surplus
invariance, law invariance, conicity, numeraire invariance, truncation
closedness, or closedness under convergence in probability — over positions on
an equi-probable space.  Pointwise relations like ``Y- <= X-`` are decidable
there, which bare laws cannot offer; law invariance bridges the two views via
state permutations.

Checks are exhaustive whenever the effective search space is at most
``exhaustive_limit`` (default 10^6), and seeded-random otherwise.  A violated
verdict always carries a witness that re-verifies via the ``replay_*``
functions.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .acceptance import (
    AcceptanceSet,
    OracleSet,
    VarUniformStrict,
    member,
)
from .distribution import (
    FiniteDistribution,
    Position,
    kyfan_law_distance,
)
from .extended import RationalLike, as_rational

__all__ = [
    "PositionUniverse",
    "PropertyReport",
    "SurplusWitness",
    "LawWitness",
    "ConicityWitness",
    "NumeraireWitness",
    "TruncationWitness",
    "CipWitness",
    "ConvergentSequence",
    "NonConvergentSequenceError",
    "check_surplus_invariance",
    "check_law_invariance",
    "check_conicity",
    "check_numeraire_invariance",
    "check_truncation_closedness",
    "check_cip_closedness",
    "replay_surplus",
    "replay_law",
    "replay_conicity",
    "replay_numeraire",
    "replay_truncation",
    "replay_cip",
    "accepts",
]

EXHAUSTIVE_LIMIT = 10 ** 6
DEFAULT_TRIALS = 10 ** 4
DEFAULT_LAMBDAS = (Fraction(1, 4), Fraction(1, 2), Fraction(2), Fraction(3), Fraction(10))
DEFAULT_Z_VALUES = (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3))
DEFAULT_CAPS = (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(4))


@dataclass(frozen=True)
class PositionUniverse:
    """All positions on an n-state equi-probable space with values in a grid."""

    n: int
    grid: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one state")
        grid = tuple(sorted({as_rational(v) for v in self.grid}))
        if not grid:
            raise ValueError("need a nonempty value grid")
        object.__setattr__(self, "grid", grid)

    @property
    def size(self) -> int:
        return len(self.grid) ** self.n

    def __iter__(self):
        for values in itertools.product(self.grid, repeat=self.n):
            yield Position(values)

    def positions(self) -> Tuple[Position, ...]:
        return tuple(self)

    def sample(self, rng: random.Random) -> Position:
        return Position([rng.choice(self.grid) for _ in range(self.n)])


@dataclass(frozen=True)
class SurplusWitness:
    x: Position
    y: Position


@dataclass(frozen=True)
class LawWitness:
    x: Position
    permutation: Tuple[int, ...]


@dataclass(frozen=True)
class ConicityWitness:
    x: Position
    factor: Fraction


@dataclass(frozen=True)
class NumeraireWitness:
    x: Position
    z: Position


@dataclass(frozen=True)
class TruncationWitness:
    x: Position
    caps: Tuple[Fraction, ...]


@dataclass(frozen=True)
class CipWitness:
    sequence_index: int
    limit: FiniteDistribution
    distances: Tuple[Fraction, ...]


@dataclass(frozen=True)
class PropertyReport:
    property_name: str
    verdict: str  # "no_violation" | "violated"
    trials: int
    mode: str  # "exhaustive" | "randomized" | "sequences"
    seed: Optional[int]
    witness: Optional[object] = None
    notes: Tuple[str, ...] = ()

    @property
    def violated(self) -> bool:
        return self.verdict == "violated"


class NonConvergentSequenceError(ValueError):
    pass


@dataclass(frozen=True)
class ConvergentSequence:
    """A finite prefix of a law sequence converging to ``limit`` in probability."""

    members: Tuple[FiniteDistribution, ...]
    limit: FiniteDistribution


# ---------------------------------------------------------------------------
# Membership with per-run caching
# ---------------------------------------------------------------------------


class _Cache:
    """Memoizes acceptance per position; law-invariant sets key on sorted values."""

    def __init__(self, spec: AcceptanceSet):
        self.spec = spec
        self.law_based = not isinstance(spec, OracleSet)
        self._table: Dict[Tuple[Fraction, ...], bool] = {}

    def accepted(self, position: Position) -> bool:
        key = tuple(sorted(position.values)) if self.law_based else position.values
        hit = self._table.get(key)
        if hit is None:
            hit = accepts(self.spec, position)
            self._table[key] = hit
        return hit


def accepts(spec: AcceptanceSet, position: Position) -> bool:
    """Acceptance of a position, using the raw predicate for oracle sets.

    Property checks range over derived positions (scaled, permuted, truncated)
    that may leave an oracle's declared universe; the defining predicate is
    total, so it is consulted directly here.
    """
    if isinstance(spec, OracleSet):
        return spec.holds(position)
    return member(spec, position.law()).accepted


# ---------------------------------------------------------------------------
# Surplus invariance
# ---------------------------------------------------------------------------


def _allowed_shrunk_values(grid: Sequence[Fraction], coord: Fraction) -> List[Fraction]:
    """Grid values y with y- <= x- at this state, i.e. y >= min(x, 0)."""
    floor = min(coord, Fraction(0))
    return [v for v in grid if v >= floor]


def check_surplus_invariance(
    spec: AcceptanceSet,
    universe: PositionUniverse,
    *,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
) -> PropertyReport:
    """Search for accepted X and rejected Y with Y- <= X- pointwise.

    Pairs are generated by shrinking the negative states of X and freely
    re-drawing the nonnegative ones.
    """
    grid = universe.grid
    per_value = {v: _allowed_shrunk_values(grid, v) for v in grid}
    pair_space = sum(len(vs) for vs in per_value.values()) ** universe.n
    cache = _Cache(spec)

    if pair_space <= exhaustive_limit:
        checked = 0
        for x in universe:
            if not cache.accepted(x):
                continue
            for y_values in itertools.product(*(per_value[v] for v in x.values)):
                checked += 1
                y = Position(y_values)
                if not cache.accepted(y):
                    return PropertyReport(
                        "surplus_invariance", "violated", checked, "exhaustive", None,
                        SurplusWitness(x, y),
                    )
        return PropertyReport("surplus_invariance", "no_violation", checked, "exhaustive", None)

    rng = random.Random(seed)
    for trial in range(1, trials + 1):
        x = universe.sample(rng)
        if not cache.accepted(x):
            continue
        if rng.random() < 0.25:
            # crush the surplus entirely: smallest admissible value per state
            y = Position([per_value[v][0] for v in x.values])
        else:
            y = Position([rng.choice(per_value[v]) for v in x.values])
        if not cache.accepted(y):
            return PropertyReport(
                "surplus_invariance", "violated", trial, "randomized", seed,
                SurplusWitness(x, y),
            )
    return PropertyReport("surplus_invariance", "no_violation", trials, "randomized", seed)


def replay_surplus(spec: AcceptanceSet, witness: SurplusWitness) -> bool:
    """Re-verify a surplus-invariance violation from scratch."""
    x, y = witness.x, witness.y
    valid = all(
        yv >= min(xv, Fraction(0)) for xv, yv in zip(x.values, y.values)
    )
    return valid and accepts(spec, x) and not accepts(spec, y)


# ---------------------------------------------------------------------------
# Law invariance
# ---------------------------------------------------------------------------


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def check_law_invariance(
    spec: AcceptanceSet,
    universe: PositionUniverse,
    *,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
) -> PropertyReport:
    """Search for accepted X and a state permutation with X∘sigma rejected.

    Permutations are exactly the law-preserving maps between positions on an
    equi-probable space.
    """
    space = universe.size * _factorial(universe.n)
    cache = _Cache(spec)
    states = range(universe.n)

    if universe.n == 1 or space <= exhaustive_limit:
        checked = 0
        for x in universe:
            if not cache.accepted(x):
                continue
            for perm in itertools.permutations(states):
                checked += 1
                y = x.permuted(perm)
                if not cache.accepted(y):
                    return PropertyReport(
                        "law_invariance", "violated", checked, "exhaustive", None,
                        LawWitness(x, tuple(perm)),
                    )
        return PropertyReport("law_invariance", "no_violation", checked, "exhaustive", None)

    rng = random.Random(seed)
    for trial in range(1, trials + 1):
        x = universe.sample(rng)
        if not cache.accepted(x):
            continue
        perm = list(states)
        rng.shuffle(perm)
        y = x.permuted(perm)
        if not cache.accepted(y):
            return PropertyReport(
                "law_invariance", "violated", trial, "randomized", seed,
                LawWitness(x, tuple(perm)),
            )
    return PropertyReport("law_invariance", "no_violation", trials, "randomized", seed)


def replay_law(spec: AcceptanceSet, witness: LawWitness) -> bool:
    y = witness.x.permuted(witness.permutation)
    return accepts(spec, witness.x) and not accepts(spec, y)


# ---------------------------------------------------------------------------
# Conicity
# ---------------------------------------------------------------------------


def check_conicity(
    spec: AcceptanceSet,
    universe: PositionUniverse,
    *,
    lambdas: Sequence[RationalLike] = DEFAULT_LAMBDAS,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
) -> PropertyReport:
    """Search for accepted X and a positive factor with the scaled X rejected."""
    factors = [as_rational(l) for l in lambdas]
    if any(f <= 0 for f in factors):
        raise ValueError("scaling factors must be positive")
    space = universe.size * len(factors)
    cache = _Cache(spec)

    if space <= exhaustive_limit:
        checked = 0
        for x in universe:
            if not cache.accepted(x):
                continue
            for f in factors:
                checked += 1
                if not cache.accepted(x.scaled(f)):
                    return PropertyReport(
                        "conicity", "violated", checked, "exhaustive", None,
                        ConicityWitness(x, f),
                    )
        return PropertyReport("conicity", "no_violation", checked, "exhaustive", None)

    rng = random.Random(seed)
    for trial in range(1, trials + 1):
        x = universe.sample(rng)
        if not cache.accepted(x):
            continue
        f = rng.choice(factors)
        if not cache.accepted(x.scaled(f)):
            return PropertyReport(
                "conicity", "violated", trial, "randomized", seed, ConicityWitness(x, f)
            )
    return PropertyReport("conicity", "no_violation", trials, "randomized", seed)


def replay_conicity(spec: AcceptanceSet, witness: ConicityWitness) -> bool:
    return (
        witness.factor > 0
        and accepts(spec, witness.x)
        and not accepts(spec, witness.x.scaled(witness.factor))
    )


# ---------------------------------------------------------------------------
# Numeraire invariance
# ---------------------------------------------------------------------------


def check_numeraire_invariance(
    spec: AcceptanceSet,
    universe: PositionUniverse,
    *,
    z_values: Sequence[RationalLike] = DEFAULT_Z_VALUES,
    z_generator: Optional[Callable[[random.Random], Position]] = None,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
) -> PropertyReport:
    """Search for accepted X and strictly positive Z with Z*X rejected.

    Z models a random exchange rate: acceptance should not depend on the
    denominating currency.
    """
    zs = tuple(as_rational(z) for z in z_values)
    if any(z <= 0 for z in zs):
        raise ValueError("numeraire values must be strictly positive")
    cache = _Cache(spec)
    notes: Tuple[str, ...] = ()
    if isinstance(spec, VarUniformStrict):
        notes = (
            "on finite equi-probable spaces the uniform-strict family coincides with "
            "the strict family, which is numeraire-invariant; the continuous-law "
            "counterexample lives in counterexamples.uniform_numeraire_counterexample",
        )

    def validate(z: Position) -> Position:
        if any(v <= 0 for v in z.values):
            raise ValueError("numeraire generator produced a nonpositive state value")
        return z

    space = universe.size * (len(zs) ** universe.n)
    if z_generator is None and space <= exhaustive_limit:
        checked = 0
        for x in universe:
            if not cache.accepted(x):
                continue
            for z_vals in itertools.product(zs, repeat=universe.n):
                checked += 1
                z = Position(z_vals)
                if not cache.accepted(x.pointwise_mul(z)):
                    return PropertyReport(
                        "numeraire_invariance", "violated", checked, "exhaustive", None,
                        NumeraireWitness(x, z), notes,
                    )
        return PropertyReport(
            "numeraire_invariance", "no_violation", checked, "exhaustive", None, None, notes
        )

    rng = random.Random(seed)
    for trial in range(1, trials + 1):
        x = universe.sample(rng)
        if not cache.accepted(x):
            continue
        if z_generator is not None:
            z = validate(z_generator(rng))
        else:
            z = Position([rng.choice(zs) for _ in range(universe.n)])
        if not cache.accepted(x.pointwise_mul(z)):
            return PropertyReport(
                "numeraire_invariance", "violated", trial, "randomized", seed,
                NumeraireWitness(x, z), notes,
            )
    return PropertyReport(
        "numeraire_invariance", "no_violation", trials, "randomized", seed, None, notes
    )


def replay_numeraire(spec: AcceptanceSet, witness: NumeraireWitness) -> bool:
    return (
        all(v > 0 for v in witness.z.values)
        and accepts(spec, witness.x)
        and not accepts(spec, witness.x.pointwise_mul(witness.z))
    )


# ---------------------------------------------------------------------------
# Truncation closedness
# ---------------------------------------------------------------------------


def check_truncation_closedness(
    spec: AcceptanceSet,
    universe: PositionUniverse,
    *,
    caps: Sequence[RationalLike] = DEFAULT_CAPS,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
) -> PropertyReport:
    """Search for X rejected although every truncation of X is accepted.

    On a finite value grid the largest cap usually dominates every |value|, in
    which case that truncation is X itself and no violation can exist; the
    report says so.
    """
    cap_list = tuple(as_rational(c) for c in caps)
    if any(c <= 0 for c in cap_list):
        raise ValueError("caps must be positive")
    if any(b <= a for a, b in zip(cap_list, cap_list[1:])):
        raise ValueError("caps must be strictly increasing")
    cache = _Cache(spec)
    bound = max(abs(v) for v in universe.grid)
    notes: Tuple[str, ...] = ()
    if cap_list[-1] >= bound:
        notes = (
            f"vacuous: cap {cap_list[-1]} reaches the universe bound {bound}, so the "
            "largest truncation is the identity and closedness holds automatically",
        )

    def violates(x: Position) -> bool:
        if cache.accepted(x):
            return False
        return all(cache.accepted(x.truncated(c)) for c in cap_list)

    if universe.size <= exhaustive_limit:
        checked = 0
        for x in universe:
            checked += 1
            if violates(x):
                return PropertyReport(
                    "truncation_closedness", "violated", checked, "exhaustive", None,
                    TruncationWitness(x, cap_list), notes,
                )
        return PropertyReport(
            "truncation_closedness", "no_violation", checked, "exhaustive", None, None, notes
        )

    rng = random.Random(seed)
    for trial in range(1, trials + 1):
        x = universe.sample(rng)
        if violates(x):
            return PropertyReport(
                "truncation_closedness", "violated", trial, "randomized", seed,
                TruncationWitness(x, cap_list), notes,
            )
    return PropertyReport(
        "truncation_closedness", "no_violation", trials, "randomized", seed, None, notes
    )


def replay_truncation(spec: AcceptanceSet, witness: TruncationWitness) -> bool:
    x = witness.x
    return (
        not accepts(spec, x)
        and all(accepts(spec, x.truncated(c)) for c in witness.caps)
    )


# ---------------------------------------------------------------------------
# Convergence-in-probability closedness
# ---------------------------------------------------------------------------


def check_cip_closedness(
    spec: AcceptanceSet,
    sequences: Iterable[ConvergentSequence],
) -> PropertyReport:
    """Search for a convergent sequence inside the set whose limit is rejected.

    Sequences are checked for convergence under the comonotone-coupling Ky Fan
    distance before use; a prefix whose final distance exceeds 1/len is
    rejected as non-convergent evidence.
    """
    checked = 0
    for idx, seq in enumerate(sequences):
        if not seq.members:
            raise NonConvergentSequenceError("empty sequence")
        distances = tuple(kyfan_law_distance(m, seq.limit) for m in seq.members)
        if distances[-1] > Fraction(1, len(seq.members)):
            raise NonConvergentSequenceError(
                f"sequence {idx}: final Ky Fan distance {distances[-1]} too large "
                f"for a convergent prefix of length {len(seq.members)}"
            )
        checked += 1
        if all(member(spec, m).accepted for m in seq.members) and not member(
            spec, seq.limit
        ).accepted:
            return PropertyReport(
                "cip_closedness", "violated", checked, "sequences", None,
                CipWitness(idx, seq.limit, distances),
            )
    return PropertyReport("cip_closedness", "no_violation", checked, "sequences", None)


def replay_cip(spec: AcceptanceSet, sequences: Sequence[ConvergentSequence], witness: CipWitness) -> bool:
    seq = sequences[witness.sequence_index]
    return all(member(spec, m).accepted for m in seq.members) and not member(
        spec, seq.limit
    ).accepted
