"""Replays of the characterization machinery on finite equi-probable spaces.

The headline fact being verified: a surplus-invariant, law-invariant, conic
acceptance set on an equi-probable space is either empty or the weak VaR set
at some level.  The pieces here are

* :func:`critical_level` — extract the candidate level as one minus the
  largest default probability among accepted positions;
* :func:`classify` — sandwich the set between the strict and weak families at
  the extracted level and name its exact form when possible;
* :func:`strict_to_weak_level` — the lattice-adjusted level at which a strict
  default-probability bound becomes an equivalent weak one;
* :func:`comonotone_rearrangement` — couple a position to uniform grids so it
  equals its own quantile function evaluated there;
* :func:`surplus_dominance_scale` — the scaling step that squeezes an
  acceptable candidate's option-to-default under an accepted position's;
* :func:`approximate_from_below` — the closure step: strict-family members
  converging in probability to a weak-family target.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import List, Optional, Sequence, Tuple, Union

from .acceptance import OracleSet, VarStrict, VarWeak, member
from .distribution import (
    Affine,
    Constant,
    Distribution,
    FiniteDistribution,
    NegSqrt,
    NotRepresentableError,
    PiecewiseQuantile,
    Position,
    Segment,
)
from .extended import RationalLike, as_rational
from .properties import ConvergentSequence

__all__ = [
    "ClassificationReport",
    "critical_level",
    "classify",
    "strict_to_weak_level",
    "RearrangedPosition",
    "comonotone_rearrangement",
    "DominanceError",
    "surplus_dominance_scale",
    "approximate_from_below",
    "approximation_distance",
    "closure_sequence",
]


# ---------------------------------------------------------------------------
# Level extraction and classification
# ---------------------------------------------------------------------------


def critical_level(oracle: OracleSet) -> Fraction:
    """1 - sup of P(X < 0) over accepted positions; 1 for the empty set."""
    worst: Optional[Fraction] = None
    for pos in oracle.universe:
        if oracle.holds(pos):
            p = Fraction(sum(1 for v in pos.values if v < 0), pos.n)
            worst = p if worst is None else max(worst, p)
    if worst is None:
        return Fraction(1)
    return 1 - worst


@dataclass(frozen=True)
class ClassificationReport:
    alpha_hat: Fraction
    lower_sandwich_ok: bool  # strict family at alpha_hat sits inside the set
    upper_sandwich_ok: bool  # the set sits inside the weak family at alpha_hat
    exact_form: Optional[Tuple]  # ("empty",) | ("var_weak", a) | ("var_strict", a) | ("strictly_between",)
    lower_witness: Optional[Position] = None
    upper_witness: Optional[Position] = None


def _require_permutation_closed(universe: Sequence[Position], n: int) -> None:
    groups = Counter(tuple(sorted(p.values)) for p in universe)
    seen = set(p.values for p in universe)
    if len(seen) != len(universe):
        raise ValueError("universe contains duplicate positions")
    for key, count in groups.items():
        expected = _distinct_arrangements(key)
        if count != expected:
            raise ValueError(
                f"universe not permutation-closed: {key} appears in {count} of "
                f"{expected} arrangements"
            )
    del n


def _distinct_arrangements(values: Tuple[Fraction, ...]) -> int:
    total = 1
    for k in range(2, len(values) + 1):
        total *= k
    for mult in Counter(values).values():
        for k in range(2, mult + 1):
            total //= k
    return total


def classify(oracle: OracleSet) -> ClassificationReport:
    """Sandwich an oracle set between the strict and weak VaR families.

    Extracts the critical level, verifies both sandwich inclusions over the
    oracle's universe, and reports the exact form when the set coincides with
    one of the families.  The universe must be permutation-closed (and should
    be closed under the shrinkings of negative states, as any full value-grid
    universe is).
    """
    universe = oracle.universe
    if not universe:
        raise ValueError("oracle universe is empty")
    n = universe[0].n
    if any(p.n != n for p in universe):
        raise ValueError("universe mixes state-space sizes")
    _require_permutation_closed(universe, n)

    alpha_hat = critical_level(oracle)
    accepted = set()
    strict = set()
    weak = set()
    law_cache: dict = {}
    for pos in universe:
        key = tuple(sorted(pos.values))
        verdicts = law_cache.get(key)
        if verdicts is None:
            law = pos.law()
            verdicts = (
                member(VarStrict(alpha_hat), law).accepted,
                member(VarWeak(alpha_hat), law).accepted,
            )
            law_cache[key] = verdicts
        if oracle.holds(pos):
            accepted.add(pos.values)
        if verdicts[0]:
            strict.add(pos.values)
        if verdicts[1]:
            weak.add(pos.values)

    lower_witness = None
    for pos in universe:
        if pos.values in strict and pos.values not in accepted:
            lower_witness = pos
            break
    upper_witness = None
    for pos in universe:
        if pos.values in accepted and pos.values not in weak:
            upper_witness = pos
            break
    lower_ok = lower_witness is None
    upper_ok = upper_witness is None

    if not accepted:
        form: Optional[Tuple] = ("empty",)
    elif accepted == weak:
        form = ("var_weak", alpha_hat)
    elif accepted == strict:
        form = ("var_strict", alpha_hat)
    elif lower_ok and upper_ok:
        form = ("strictly_between",)
    else:
        form = None
    return ClassificationReport(alpha_hat, lower_ok, upper_ok, form, lower_witness, upper_witness)


def strict_to_weak_level(n: int, alpha: RationalLike) -> Fraction:
    """The level a' > alpha with {P < 1-alpha} = {P <= 1-a'} on the 1/n lattice.

    a' = 1 - (ceil(n(1-alpha)) - 1)/n.  For every probability that is a
    multiple of 1/n, the strict bound at alpha and the weak bound at a' accept
    exactly the same values.
    """
    alpha = as_rational(alpha)
    if not 0 <= alpha < 1:
        raise ValueError("level must lie in [0, 1)")
    if n < 1:
        raise ValueError("need at least one state")
    return 1 - Fraction(ceil(n * (1 - alpha)) - 1, n)


# ---------------------------------------------------------------------------
# Comonotone rearrangement
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RearrangedPosition:
    """A position relabeled so it equals its quantile function on uniform grids.

    ``grid_left`` holds i/n and reproduces the sorted values through the left
    quantile; ``grid_right`` holds (i-1)/n and reproduces them through the
    right quantile.
    """

    sorted_position: Position
    grid_left: Position
    grid_right: Position


def comonotone_rearrangement(x: Position) -> RearrangedPosition:
    n = x.n
    sorted_pos = x.sorted()
    grid_left = Position([Fraction(i, n) for i in range(1, n + 1)])
    grid_right = Position([Fraction(i - 1, n) for i in range(1, n + 1)])
    law = sorted_pos.law()
    for i, v in enumerate(sorted_pos.values):
        if law.quantile_left(grid_left.values[i]) != v:
            raise AssertionError("left-quantile coupling failed to reproduce the position")
        if law.quantile_right(grid_right.values[i]) != v:
            raise AssertionError("right-quantile coupling failed to reproduce the position")
    return RearrangedPosition(sorted_pos, grid_left, grid_right)


# ---------------------------------------------------------------------------
# Surplus-dominance scaling
# ---------------------------------------------------------------------------


class DominanceError(ValueError):
    """Preconditions of the scaling step do not hold."""


def surplus_dominance_scale(x_accepted: Position, y_target: Position, alpha: RationalLike) -> Fraction:
    """Positive scale eps with (eps*Y)- <= X- after comonotone coupling.

    Requires the accepted position to be strictly negative at the critical
    quantile (q_X(1-alpha) < 0) and the target to be nonnegative beyond it
    (q_Y((1-alpha)+) >= 0).  Returns eps = q_X(1-alpha) / essinf(Y) (a ratio
    of two negatives), or 1 when Y is nonnegative; the pointwise dominance
    min(eps*q_Y(z), 0) >= min(q_X(z), 0) is re-verified on the full common
    quantile lattice before returning.
    """
    alpha = as_rational(alpha)
    if not 0 <= alpha < 1:
        raise DominanceError("level must lie in [0, 1)")
    level = 1 - alpha
    qx = x_accepted.law()
    qy = y_target.law()
    if not qx.quantile_left(level) < 0:
        raise DominanceError("accepted position is not strictly negative at the critical quantile")
    if not qy.quantile_right(level) >= 0:
        raise DominanceError("target position is negative beyond the critical quantile")
    y_min = min(y_target.values)
    if y_min >= 0:
        return Fraction(1)
    eps = qx.quantile_left(level) / y_min  # both strictly negative
    lattice = _common_lattice(x_accepted.n, y_target.n)
    zero = Fraction(0)
    for z in lattice:
        lhs = min(eps * qy.quantile_left(z), zero)
        rhs = min(qx.quantile_left(z), zero)
        if lhs < rhs:
            raise AssertionError(
                f"dominance verification failed at level {z}: {lhs} < {rhs}"
            )
    return eps


def _common_lattice(n1: int, n2: int) -> List[Fraction]:
    m = n1 * n2 // _gcd(n1, n2)
    return [Fraction(i, m) for i in range(1, m + 1)]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# Approximation from below (the closure step)
# ---------------------------------------------------------------------------


def approximate_from_below(y: Distribution, alpha: RationalLike, k: int) -> Distribution:
    """The k-th strict-family approximant of a law with P(Y < 0) = 1 - alpha.

    Removes a sliver of probability mass from the bottom of the law and parks
    it at zero: when the essential infimum a carries an atom, a fraction
    1/(k+1) of that atom moves; otherwise everything below a + 1/k moves.
    The result satisfies P(Z < 0) < 1 - alpha (strict-family membership) and
    converges back to the law as k grows.
    """
    alpha = as_rational(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError("level must lie in [0, 1]")
    if k < 1:
        raise ValueError("approximation index must be a positive integer")
    p_neg = y.cdf_left(0)
    if p_neg != 1 - alpha:
        raise ValueError(f"law has default probability {p_neg}, expected {1 - alpha}")
    a = _exact_essinf(y)
    if a >= 0:
        raise ValueError("law is nonnegative; nothing to approximate")
    atom = y.cdf(a) - y.cdf_left(a)
    if atom > 0:
        moved = atom / (k + 1)
    else:
        moved = y.cdf_left(a + Fraction(1, k))
    if isinstance(y, FiniteDistribution):
        return _remove_bottom_mass_finite(y, moved)
    return _remove_bottom_mass_quantile(y, moved)


def approximation_distance(y: Distribution, k: int) -> Union[Fraction, float]:
    """Ky Fan distance E[min(|Z_k - Y|, 1)] of the coupled approximation pair."""
    if k < 1:
        raise ValueError("approximation index must be a positive integer")
    a = _exact_essinf(y)
    if a >= 0:
        raise ValueError("law is nonnegative; nothing to approximate")
    atom = y.cdf(a) - y.cdf_left(a)
    if atom > 0:
        return (atom / (k + 1)) * min(abs(a), Fraction(1))
    moved = y.cdf_left(a + Fraction(1, k))
    return _integral_min_abs_one(y, Fraction(0), moved)


def closure_sequence(
    target: FiniteDistribution, alpha: RationalLike, ks: Sequence[int]
) -> ConvergentSequence:
    """Package approximants at the given indices as a convergent sequence."""
    if not ks or any(b <= a for a, b in zip(ks, ks[1:])) or ks[0] < 1:
        raise ValueError("need strictly increasing positive indices")
    members = tuple(approximate_from_below(target, alpha, k) for k in ks)
    return ConvergentSequence(members, target)


def _exact_essinf(y: Distribution) -> Fraction:
    if isinstance(y, FiniteDistribution):
        return y.essinf()
    exact = y.essinf_exact()
    if exact is None:
        raise NotRepresentableError(
            "essential infimum is irrational; the cut levels would leave the exact family"
        )
    return exact


def _remove_bottom_mass_finite(law: FiniteDistribution, moved: Fraction) -> FiniteDistribution:
    out: List[Tuple[Fraction, Fraction]] = []
    left = moved
    for v, p in law.atoms:
        if left > 0:
            if left >= p:
                left -= p
                continue
            out.append((v, p - left))
            left = Fraction(0)
        else:
            out.append((v, p))
    out.append((Fraction(0), moved))
    return FiniteDistribution(out)


def _slice_levels(
    pq: PiecewiseQuantile, lo: Fraction, hi: Fraction, new_lo: Fraction
) -> List[Segment]:
    """Segments of the restriction of q to (lo, hi], translated to start at new_lo."""
    shift = lo - new_lo
    out: List[Segment] = []
    for s in pq.segments:
        a, b = max(s.z_lo, lo), min(s.z_hi, hi)
        if b <= a:
            continue
        shape = s.shape
        if isinstance(shape, Affine):
            new_shape = Affine(shape.intercept + shape.slope * shift, shape.slope)
        elif isinstance(shape, NegSqrt):
            new_shape = NegSqrt(shape.offset - shift)
        else:
            new_shape = shape
        out.append(Segment(a - shift, b - shift, new_shape))
    return out


def _remove_bottom_mass_quantile(pq: PiecewiseQuantile, moved: Fraction) -> PiecewiseQuantile:
    p_neg = pq.cdf_left(0)
    p_zero_end = pq.cdf(0)
    if moved < p_neg:
        segs = _slice_levels(pq, moved, p_neg, Fraction(0))
        segs.append(Segment(p_neg - moved, p_zero_end, Constant(Fraction(0))))
        segs.extend(_slice_levels(pq, p_zero_end, Fraction(1), p_zero_end))
    else:
        segs = [Segment(Fraction(0), moved, Constant(Fraction(0)))]
        segs.extend(_slice_levels(pq, moved, Fraction(1), moved))
    return PiecewiseQuantile(segs)


def _integral_min_abs_one(
    d: Distribution, lo: Fraction, hi: Fraction
) -> Union[Fraction, float]:
    """Integral of min(|q(z)|, 1) over the level interval (lo, hi]."""
    if hi <= lo:
        return Fraction(0)
    below_m1 = d.cdf(Fraction(-1))      # q <= -1 up to here
    neg_end = d.cdf_left(0)             # q < 0 up to here
    zero_end = d.cdf(0)                 # q <= 0 up to here
    below_p1 = d.cdf_left(Fraction(1))  # q < 1 up to here

    def overlap(a: Fraction, b: Fraction) -> Tuple[Fraction, Fraction]:
        return max(a, lo), min(b, hi)

    total: Union[Fraction, float] = Fraction(0)
    a, b = overlap(Fraction(0), below_m1)
    if b > a:
        total += b - a
    a, b = overlap(below_m1, neg_end)
    if b > a:
        total += -d.integral_quantile(a, b)
    a, b = overlap(zero_end, below_p1)
    if b > a:
        total += d.integral_quantile(a, b)
    a, b = overlap(below_p1, Fraction(1))
    if b > a:
        total += b - a
    return total
