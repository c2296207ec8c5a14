"""Exact distributions of capital positions.

Three representations cover everything the package verifies:

* :class:`FiniteDistribution` — atoms with exact rational values and
  probabilities; cumulative distribution and both quantile functions are
  evaluated in exact arithmetic, so strict-versus-weak inequalities in
  acceptance tests are decided without tolerances.
* :class:`PiecewiseQuantile` — a left-continuous nondecreasing quantile
  function assembled from constant, affine, and negative-square-root pieces,
  which is enough to represent the uniform and sqrt-tailed laws used by the
  continuous counterexamples.  Probabilities of events like ``{X <= -eps}``
  remain exact rationals even when the quantile values themselves are
  irrational.
* :class:`Position` — an explicit vector of values on an n-state
  equi-probable space, for pointwise (almost-sure) relations that a law alone
  cannot express.

Conventions: cumulative distribution functions are right-continuous;
``quantile_left`` is the left-continuous inverse with ``q(0) = -inf`` and
``q(1)`` the essential supremum; ``quantile_right`` is the right-continuous
inverse with ``q(1) = +inf`` by convention and ``q(0)`` the essential infimum.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

from .extended import (
    NEG_INF,
    POS_INF,
    ExtendedRational,
    Infinite,
    RationalLike,
    as_rational,
)

__all__ = [
    "FiniteDistribution",
    "PiecewiseQuantile",
    "Position",
    "MonotoneMap",
    "Constant",
    "Affine",
    "NegSqrt",
    "Segment",
    "NotRepresentableError",
    "quantile_left",
    "quantile_right",
    "cdf",
    "cdf_left",
    "transform_increasing",
    "transform_decreasing",
    "truncate",
    "negative_part_quantile",
    "kyfan_distance",
    "kyfan_law_distance",
]

Distribution = Union["FiniteDistribution", "PiecewiseQuantile"]


class NotRepresentableError(ValueError):
    """Raised when an operation would leave the exact representable family."""


def _exact_sqrt(value: Fraction) -> Optional[Fraction]:
    """Square root of a nonnegative rational, or None if irrational."""
    if value < 0:
        raise ValueError("negative value has no real square root")
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _to_float(value: Fraction) -> float:
    try:
        return float(value)
    except OverflowError:
        return math.inf if value > 0 else -math.inf


def _idx_ge_f(exact: Sequence[Fraction], shadow: Sequence[float], t: Fraction, tf: float) -> int:
    """First index with exact[i] >= t, given a float approximation tf of t.

    A float bisect picks the starting point; integer cross-multiplication walks
    to the true boundary, so the result never depends on float accuracy.
    """
    tn, td = t.numerator, t.denominator
    idx = bisect.bisect_left(shadow, tf)
    while idx > 0:
        e = exact[idx - 1]
        if e.numerator * td >= tn * e.denominator:
            idx -= 1
        else:
            break
    n = len(exact)
    while idx < n:
        e = exact[idx]
        if e.numerator * td < tn * e.denominator:
            idx += 1
        else:
            break
    return idx


def _idx_gt_f(exact: Sequence[Fraction], shadow: Sequence[float], t: Fraction, tf: float) -> int:
    """First index with exact[i] > t, float-assisted but exactly decided."""
    tn, td = t.numerator, t.denominator
    idx = bisect.bisect_right(shadow, tf)
    while idx > 0:
        e = exact[idx - 1]
        if e.numerator * td > tn * e.denominator:
            idx -= 1
        else:
            break
    n = len(exact)
    while idx < n:
        e = exact[idx]
        if e.numerator * td <= tn * e.denominator:
            idx += 1
        else:
            break
    return idx


def _idx_ge(exact: Sequence[Fraction], shadow: Sequence[float], t: Fraction) -> int:
    return _idx_ge_f(exact, shadow, t, _to_float(t))


def _idx_gt(exact: Sequence[Fraction], shadow: Sequence[float], t: Fraction) -> int:
    return _idx_gt_f(exact, shadow, t, _to_float(t))


# ---------------------------------------------------------------------------
# Finite distributions
# ---------------------------------------------------------------------------


class FiniteDistribution:
    """Law of a random variable with finitely many exact rational atoms.

    The constructor canonicalizes: equal values are merged (their
    probabilities summed), atoms are sorted by value, every probability must
    end up positive, and the probabilities must sum to exactly one.
    """

    __slots__ = ("_values", "_probs", "_cum", "_values_f", "_cum_f")

    def __init__(self, atoms: Iterable[Tuple[RationalLike, RationalLike]]):
        merged: dict = {}
        for value, prob in atoms:
            v, p = as_rational(value), as_rational(prob)
            merged[v] = merged.get(v, Fraction(0)) + p
        if not merged:
            raise ValueError("a distribution needs at least one atom")
        values = tuple(sorted(merged))
        probs = tuple(merged[v] for v in values)
        if any(p <= 0 for p in probs):
            raise ValueError("atom probabilities must be positive")
        total = sum(probs)
        if total != 1:
            raise ValueError(f"probabilities sum to {total}, expected exactly 1")
        cum: List[Fraction] = []
        running = Fraction(0)
        for p in probs:
            running += p
            cum.append(running)
        object.__setattr__(self, "_values", values)
        object.__setattr__(self, "_probs", probs)
        object.__setattr__(self, "_cum", tuple(cum))
        # float shadows speed up bisects; exactness is restored by fix-up walks
        object.__setattr__(self, "_values_f", tuple(_to_float(v) for v in values))
        object.__setattr__(self, "_cum_f", tuple(_to_float(c) for c in cum))

    def __setattr__(self, name, value):
        raise AttributeError("FiniteDistribution is immutable")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def point_mass(cls, value: RationalLike) -> "FiniteDistribution":
        return cls([(value, 1)])

    @classmethod
    def equiprobable(cls, values: Sequence[RationalLike]) -> "FiniteDistribution":
        n = len(values)
        if n == 0:
            raise ValueError("need at least one value")
        return cls([(v, Fraction(1, n)) for v in values])

    # -- basic accessors -----------------------------------------------------

    @property
    def atoms(self) -> Tuple[Tuple[Fraction, Fraction], ...]:
        return tuple(zip(self._values, self._probs))

    @property
    def values(self) -> Tuple[Fraction, ...]:
        return self._values

    @property
    def probs(self) -> Tuple[Fraction, ...]:
        return self._probs

    @property
    def cumulative(self) -> Tuple[Fraction, ...]:
        return self._cum

    def essinf(self) -> Fraction:
        return self._values[0]

    def esssup(self) -> Fraction:
        return self._values[-1]

    def mean(self) -> Fraction:
        return sum(v * p for v, p in zip(self._values, self._probs))

    def expectation(self, fn: Callable[[Fraction], Fraction]) -> Fraction:
        return sum(fn(v) * p for v, p in zip(self._values, self._probs))

    # -- distribution and quantile functions ---------------------------------

    def cdf(self, x: RationalLike) -> Fraction:
        """P(X <= x), exact."""
        x = as_rational(x)
        idx = _idx_gt(self._values, self._values_f, x)
        return self._cum[idx - 1] if idx else Fraction(0)

    def cdf_left(self, x: RationalLike) -> Fraction:
        """P(X < x), exact."""
        x = as_rational(x)
        idx = _idx_ge(self._values, self._values_f, x)
        return self._cum[idx - 1] if idx else Fraction(0)

    def quantile_left(self, t: RationalLike) -> ExtendedRational:
        """Left-continuous quantile: sup{x : F(x) < t}; -inf at t = 0."""
        t = as_rational(t)
        if not 0 <= t <= 1:
            raise ValueError("level must lie in [0, 1]")
        if t == 0:
            return NEG_INF
        return self._values[_idx_ge(self._cum, self._cum_f, t)]

    def quantile_right(self, t: RationalLike) -> ExtendedRational:
        """Right-continuous quantile: inf{x : F(x) > t}; +inf at t = 1."""
        t = as_rational(t)
        if not 0 <= t <= 1:
            raise ValueError("level must lie in [0, 1]")
        if t == 1:
            return POS_INF
        return self._values[_idx_gt(self._cum, self._cum_f, t)]

    # -- algebra -------------------------------------------------------------

    def negate(self) -> "FiniteDistribution":
        """Law of -X."""
        return FiniteDistribution((-v, p) for v, p in self.atoms)

    def scale(self, factor: RationalLike) -> "FiniteDistribution":
        factor = as_rational(factor)
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return FiniteDistribution((factor * v, p) for v, p in self.atoms)

    def truncate(self, cap: RationalLike) -> "FiniteDistribution":
        """Law of min(max(-cap, X), cap)."""
        cap = as_rational(cap)
        if cap <= 0:
            raise ValueError("cap must be positive")
        return FiniteDistribution((min(max(-cap, v), cap), p) for v, p in self.atoms)

    def negative_part_quantile(self) -> "FiniteDistribution":
        """Law of min(X, 0), whose quantile is z -> min(q(z), 0)."""
        return FiniteDistribution((min(v, Fraction(0)), p) for v, p in self.atoms)

    def integral_quantile(self, lo: RationalLike, hi: RationalLike) -> Fraction:
        """Exact integral of the (step) quantile over the level interval (lo, hi]."""
        lo, hi = as_rational(lo), as_rational(hi)
        if not 0 <= lo <= hi <= 1:
            raise ValueError("need 0 <= lo <= hi <= 1")
        total = Fraction(0)
        prev = Fraction(0)
        for v, c in zip(self._values, self._cum):
            seg_lo = max(prev, lo)
            seg_hi = min(c, hi)
            if seg_hi > seg_lo:
                total += v * (seg_hi - seg_lo)
            prev = c
        return total

    # -- dunder --------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, FiniteDistribution):
            return self._values == other._values and self._probs == other._probs
        return NotImplemented

    def __hash__(self):
        return hash((self._values, self._probs))

    def __repr__(self):
        inner = ", ".join(f"{v}: {p}" for v, p in self.atoms)
        return f"FiniteDistribution({{{inner}}})"


# ---------------------------------------------------------------------------
# Equi-probable positions
# ---------------------------------------------------------------------------


class Position:
    """Values of a capital position on an n-state equi-probable space."""

    __slots__ = ("_values",)

    def __init__(self, values: Sequence[RationalLike]):
        vals = tuple(as_rational(v) for v in values)
        if not vals:
            raise ValueError("a position needs at least one state")
        object.__setattr__(self, "_values", vals)

    def __setattr__(self, name, value):
        raise AttributeError("Position is immutable")

    @property
    def values(self) -> Tuple[Fraction, ...]:
        return self._values

    @property
    def n(self) -> int:
        return len(self._values)

    def law(self) -> FiniteDistribution:
        n = self.n
        return FiniteDistribution((v, Fraction(1, n)) for v in self._values)

    def sorted(self) -> "Position":
        return Position(sorted(self._values))

    def permuted(self, perm: Sequence[int]) -> "Position":
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation of the states")
        return Position([self._values[i] for i in perm])

    def scaled(self, factor: RationalLike) -> "Position":
        factor = as_rational(factor)
        return Position([factor * v for v in self._values])

    def pointwise_mul(self, other: "Position") -> "Position":
        if other.n != self.n:
            raise ValueError("state-count mismatch")
        return Position([a * b for a, b in zip(self._values, other._values)])

    def negative_part(self) -> "Position":
        """X- = max(-X, 0) per state (the option to default)."""
        return Position([max(-v, Fraction(0)) for v in self._values])

    def floor_at_zero(self) -> "Position":
        """min(X, 0) per state."""
        return Position([min(v, Fraction(0)) for v in self._values])

    def truncated(self, cap: RationalLike) -> "Position":
        cap = as_rational(cap)
        if cap <= 0:
            raise ValueError("cap must be positive")
        return Position([min(max(-cap, v), cap) for v in self._values])

    def __eq__(self, other):
        if isinstance(other, Position):
            return self._values == other._values
        return NotImplemented

    def __hash__(self):
        return hash(self._values)

    def __repr__(self):
        return "Position(" + ", ".join(str(v) for v in self._values) + ")"


def kyfan_distance(x: Position, y: Position) -> Fraction:
    """Ky Fan metric E[min(|X - Y|, 1)] for positions on the same space."""
    if x.n != y.n:
        raise ValueError("positions live on spaces of different sizes")
    n = x.n
    return sum(min(abs(a - b), Fraction(1)) for a, b in zip(x.values, y.values)) / n


def kyfan_law_distance(d1: FiniteDistribution, d2: FiniteDistribution) -> Fraction:
    """Ky Fan metric of the comonotone coupling of two finite laws.

    Couples both laws to the same uniform level variable, so the distance is
    the integral over levels of min(|q1 - q2|, 1).  Exact.
    """
    levels = sorted(set(d1.cumulative) | set(d2.cumulative))
    total = Fraction(0)
    prev = Fraction(0)
    for level in levels:
        if level > prev:
            # both step quantiles are constant on (prev, level]
            gap = abs(d1.quantile_left(level) - d2.quantile_left(level))
            total += min(gap, Fraction(1)) * (level - prev)
        prev = level
    return total


# ---------------------------------------------------------------------------
# Piecewise-analytic quantile functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Constant:
    value: Fraction


@dataclass(frozen=True)
class Affine:
    intercept: Fraction
    slope: Fraction  # must be >= 0


@dataclass(frozen=True)
class NegSqrt:
    offset: Fraction  # q(z) = -sqrt(offset - z); requires offset >= segment end


Shape = Union[Constant, Affine, NegSqrt]


@dataclass(frozen=True)
class Segment:
    z_lo: Fraction
    z_hi: Fraction
    shape: Shape


def _shape_value_float(shape: Shape, z: Fraction) -> float:
    if isinstance(shape, Constant):
        return float(shape.value)
    if isinstance(shape, Affine):
        return float(shape.intercept + shape.slope * z)
    return -math.sqrt(float(shape.offset - z))


def _shape_value(shape: Shape, z: Fraction) -> Union[Fraction, float]:
    """Exact rational value for constant/affine pieces, float for sqrt pieces."""
    if isinstance(shape, Constant):
        return shape.value
    if isinstance(shape, Affine):
        return shape.intercept + shape.slope * z
    w = shape.offset - z
    root = _exact_sqrt(w)
    return -root if root is not None else -math.sqrt(float(w))

def _shape_cmp(shape: Shape, z: Fraction, x: Fraction) -> int:
    """Exact sign of shape(z) - x, even for irrational sqrt values."""
    if isinstance(shape, Constant):
        v = shape.value
        return (v > x) - (v < x)
    if isinstance(shape, Affine):
        v = shape.intercept + shape.slope * z
        return (v > x) - (v < x)
    w = shape.offset - z  # value is -sqrt(w), w >= 0
    if x > 0:
        return -1
    xx = x * x
    if w > xx:
        return -1
    if w < xx:
        return 1
    return 0


def _shape_pair_cmp(a: Shape, b: Shape, z: Fraction) -> int:
    """Exact sign of a(z) - b(z)."""
    ra: Optional[Fraction] = None
    if isinstance(a, Constant):
        ra = a.value
    elif isinstance(a, Affine):
        ra = a.intercept + a.slope * z
    rb: Optional[Fraction] = None
    if isinstance(b, Constant):
        rb = b.value
    elif isinstance(b, Affine):
        rb = b.intercept + b.slope * z
    if ra is not None and rb is not None:
        return (ra > rb) - (ra < rb)
    if ra is not None:
        return -_shape_cmp(b, z, ra)
    if rb is not None:
        return _shape_cmp(a, z, rb)
    wa, wb = a.offset - z, b.offset - z  # -sqrt(wa) vs -sqrt(wb)
    return (wb > wa) - (wb < wa)


def _measure_below(seg: Segment, x: Fraction, strict: bool) -> Fraction:
    """Lebesgue measure of {z in (z_lo, z_hi] : shape(z) < x} (or <= x)."""
    length = seg.z_hi - seg.z_lo
    shape = seg.shape
    if isinstance(shape, Constant) or (isinstance(shape, Affine) and shape.slope == 0):
        c = shape.value if isinstance(shape, Constant) else shape.intercept
        hit = c < x if strict else c <= x
        return length if hit else Fraction(0)
    if isinstance(shape, Affine):
        boundary = (x - shape.intercept) / shape.slope
    else:
        if x > 0:
            return length
        boundary = shape.offset - x * x
    hi_eff = min(boundary, seg.z_hi)
    return max(Fraction(0), hi_eff - seg.z_lo)


class PiecewiseQuantile:
    """Left-continuous nondecreasing quantile function on (0, 1].

    Segments must partition (0, 1]; each carries a constant, affine
    (nonnegative slope), or negative-square-root shape.  Monotonicity across
    segment junctions is validated exactly at construction; a sampled
    verification on a dense grid is available via :meth:`verify_monotone`.
    """

    __slots__ = ("_segments", "_z_his")

    def __init__(self, segments: Iterable[Union[Segment, Tuple[RationalLike, RationalLike, Shape]]]):
        segs: List[Segment] = []
        for item in segments:
            if isinstance(item, Segment):
                seg = Segment(as_rational(item.z_lo), as_rational(item.z_hi), item.shape)
            else:
                lo, hi, shape = item
                seg = Segment(as_rational(lo), as_rational(hi), shape)
            segs.append(seg)
        if not segs:
            raise ValueError("need at least one segment")
        if segs[0].z_lo != 0 or segs[-1].z_hi != 1:
            raise ValueError("segments must cover exactly (0, 1]")
        for s in segs:
            if not s.z_lo < s.z_hi:
                raise ValueError("segment endpoints must satisfy z_lo < z_hi")
            if isinstance(s.shape, Affine) and s.shape.slope < 0:
                raise ValueError("affine segments need nonnegative slope")
            if isinstance(s.shape, NegSqrt) and s.shape.offset < s.z_hi:
                raise ValueError("sqrt segment undefined past its offset")
        for a, b in zip(segs, segs[1:]):
            if a.z_hi != b.z_lo:
                raise ValueError("segments must be contiguous")
            if _shape_pair_cmp(a.shape, b.shape, a.z_hi) > 0:
                raise ValueError("quantile would decrease across a segment junction")
        object.__setattr__(self, "_segments", tuple(segs))
        object.__setattr__(self, "_z_his", tuple(s.z_hi for s in segs))

    def __setattr__(self, name, value):
        raise AttributeError("PiecewiseQuantile is immutable")

    @classmethod
    def uniform(cls, lo: RationalLike, hi: RationalLike) -> "PiecewiseQuantile":
        """Uniform law on (lo, hi): quantile z -> lo + (hi - lo) z."""
        lo, hi = as_rational(lo), as_rational(hi)
        if not lo < hi:
            raise ValueError("need lo < hi")
        return cls([(0, 1, Affine(lo, hi - lo))])

    @property
    def segments(self) -> Tuple[Segment, ...]:
        return self._segments

    def _segment_at_left(self, t: Fraction) -> Segment:
        idx = bisect.bisect_left(self._z_his, t)
        return self._segments[idx]

    def _segment_at_right(self, t: Fraction) -> Segment:
        idx = bisect.bisect_right(self._z_his, t)
        return self._segments[idx]

    # -- evaluation ----------------------------------------------------------

    def quantile_left(self, t: RationalLike) -> Union[ExtendedRational, float]:
        t = as_rational(t)
        if not 0 <= t <= 1:
            raise ValueError("level must lie in [0, 1]")
        if t == 0:
            return NEG_INF
        return _shape_value(self._segment_at_left(t).shape, t)

    def quantile_right(self, t: RationalLike) -> Union[ExtendedRational, float]:
        t = as_rational(t)
        if not 0 <= t <= 1:
            raise ValueError("level must lie in [0, 1]")
        if t == 1:
            return POS_INF
        return _shape_value(self._segment_at_right(t).shape, t)

    def cmp_quantile_left(self, t: RationalLike, x: RationalLike) -> int:
        """Exact sign of q(t) - x for t in (0, 1]."""
        t, x = as_rational(t), as_rational(x)
        if not 0 < t <= 1:
            raise ValueError("level must lie in (0, 1]")
        return _shape_cmp(self._segment_at_left(t).shape, t, x)

    def cmp_quantile_right(self, t: RationalLike, x: RationalLike) -> int:
        """Exact sign of q(t+) - x for t in [0, 1)."""
        t, x = as_rational(t), as_rational(x)
        if not 0 <= t < 1:
            raise ValueError("level must lie in [0, 1)")
        return _shape_cmp(self._segment_at_right(t).shape, t, x)

    # -- law queries (exact rationals) ----------------------------------------

    def cdf(self, x: RationalLike) -> Fraction:
        """P(X <= x): measure of {z : q(z) <= x}, exact."""
        x = as_rational(x)
        return sum(_measure_below(s, x, strict=False) for s in self._segments)

    def cdf_left(self, x: RationalLike) -> Fraction:
        """P(X < x), exact."""
        x = as_rational(x)
        return sum(_measure_below(s, x, strict=True) for s in self._segments)

    def essinf_exact(self) -> Optional[Fraction]:
        first = self._segments[0].shape
        if isinstance(first, Constant):
            return first.value
        if isinstance(first, Affine):
            return first.intercept
        root = _exact_sqrt(first.offset)
        return -root if root is not None else None

    def essinf(self) -> Union[Fraction, float]:
        exact = self.essinf_exact()
        if exact is not None:
            return exact
        return _shape_value_float(self._segments[0].shape, Fraction(0))

    def esssup(self) -> Union[Fraction, float]:
        return _shape_value(self._segments[-1].shape, Fraction(1))

    def integral_quantile(self, lo: RationalLike, hi: RationalLike) -> Union[Fraction, float]:
        """Integral of q over (lo, hi]; exact unless a sqrt piece is irrational."""
        lo, hi = as_rational(lo), as_rational(hi)
        if not 0 <= lo <= hi <= 1:
            raise ValueError("need 0 <= lo <= hi <= 1")
        total: Union[Fraction, float] = Fraction(0)
        for s in self._segments:
            a, b = max(s.z_lo, lo), min(s.z_hi, hi)
            if b <= a:
                continue
            if isinstance(s.shape, Constant):
                total += s.shape.value * (b - a)
            elif isinstance(s.shape, Affine):
                total += s.shape.intercept * (b - a) + s.shape.slope * (b * b - a * a) / 2
            else:
                wa, wb = s.shape.offset - a, s.shape.offset - b
                ra, rb = _exact_sqrt(wa), _exact_sqrt(wb)
                if ra is not None and rb is not None:
                    total += Fraction(2, 3) * (wb * rb - wa * ra)
                else:
                    total += (2.0 / 3.0) * (float(wb) ** 1.5 - float(wa) ** 1.5)
        return total

    # -- verification ----------------------------------------------------------

    def verify_monotone(self, points_per_segment: int = 1024, tol: float = 1e-12) -> bool:
        """Sampled monotonicity check: endpoints plus a dense interior grid."""
        prev = -math.inf
        for s in self._segments:
            width = s.z_hi - s.z_lo
            zs = [s.z_lo + Fraction(k, points_per_segment + 1) * width
                  for k in range(points_per_segment + 2)]
            for z in zs:
                if z == 0:
                    continue
                v = _shape_value_float(s.shape, z)
                if v < prev - tol:
                    return False
                prev = v
        return True

    # -- dunder ----------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, PiecewiseQuantile):
            return self._segments == other._segments
        return NotImplemented

    def __hash__(self):
        return hash(self._segments)

    def __repr__(self):
        parts = ", ".join(
            f"({s.z_lo},{s.z_hi}]:{s.shape}" for s in self._segments
        )
        return f"PiecewiseQuantile({parts})"


# ---------------------------------------------------------------------------
# Monotone transforms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonotoneMap:
    """x -> scale * clamp(x) + shift, with clamp(x) = min(max(-cap, x), cap).

    The closed family of continuous monotone maps used by the transform rules:
    affine maps (scale != 0), negation, and cap-truncations composed with
    affine maps.  Increasing iff scale > 0.
    """

    scale: Fraction
    shift: Fraction = Fraction(0)
    cap: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "scale", as_rational(self.scale))
        object.__setattr__(self, "shift", as_rational(self.shift))
        if self.cap is not None:
            object.__setattr__(self, "cap", as_rational(self.cap))
            if self.cap <= 0:
                raise ValueError("cap must be positive")
        if self.scale == 0:
            raise ValueError("scale 0 would not be a monotone injection")

    @property
    def is_increasing(self) -> bool:
        return self.scale > 0

    @classmethod
    def identity(cls) -> "MonotoneMap":
        return cls(Fraction(1))

    @classmethod
    def negation(cls) -> "MonotoneMap":
        return cls(Fraction(-1))

    @classmethod
    def affine(cls, intercept: RationalLike, slope: RationalLike) -> "MonotoneMap":
        return cls(as_rational(slope), as_rational(intercept))

    @classmethod
    def truncation(cls, cap: RationalLike) -> "MonotoneMap":
        return cls(Fraction(1), Fraction(0), as_rational(cap))

    def __call__(self, x: Union[RationalLike, Infinite]) -> ExtendedRational:
        if isinstance(x, Infinite):
            if self.cap is not None:
                clamped: Fraction = self.cap if x.sign > 0 else -self.cap
                return self.scale * clamped + self.shift
            return x if self.scale > 0 else -x
        x = as_rational(x)
        if self.cap is not None:
            x = min(max(-self.cap, x), self.cap)
        return self.scale * x + self.shift


def _increasing_cross(shape: Shape, level: Fraction) -> Optional[Fraction]:
    """z where a strictly increasing shape crosses ``level``; None if it never reaches it."""
    if isinstance(shape, Affine):
        return (level - shape.intercept) / shape.slope
    if level > 0:
        return None  # sqrt pieces stay <= 0
    return shape.offset - level * level


def _clamp_segments(
    segments: Sequence[Segment],
    lo: Optional[Fraction],
    hi: Optional[Fraction],
) -> List[Segment]:
    """Clamp a quantile into [lo, hi], splitting segments at exact crossings."""
    out: List[Segment] = []
    for seg in segments:
        shape = seg.shape
        if isinstance(shape, Constant) or (isinstance(shape, Affine) and shape.slope == 0):
            c = shape.value if isinstance(shape, Constant) else shape.intercept
            if lo is not None and c < lo:
                c = lo
            if hi is not None and c > hi:
                c = hi
            out.append(Segment(seg.z_lo, seg.z_hi, Constant(c)))
            continue
        cut_lo = seg.z_lo  # end of the lo-clamped prefix
        if lo is not None:
            boundary = _increasing_cross(shape, lo)
            cut_lo = seg.z_hi if boundary is None else min(max(boundary, seg.z_lo), seg.z_hi)
        cut_hi = seg.z_hi  # start of the hi-clamped suffix
        if hi is not None:
            boundary = _increasing_cross(shape, hi)
            cut_hi = seg.z_hi if boundary is None else min(max(boundary, cut_lo), seg.z_hi)
        if cut_lo > seg.z_lo:
            out.append(Segment(seg.z_lo, cut_lo, Constant(lo)))
        if cut_hi > cut_lo:
            out.append(Segment(cut_lo, cut_hi, shape))
        if seg.z_hi > cut_hi:
            out.append(Segment(cut_hi, seg.z_hi, Constant(hi)))
    merged: List[Segment] = []
    for seg in out:
        if (
            merged
            and isinstance(seg.shape, Constant)
            and isinstance(merged[-1].shape, Constant)
            and merged[-1].shape.value == seg.shape.value
            and merged[-1].z_hi == seg.z_lo
        ):
            merged[-1] = Segment(merged[-1].z_lo, seg.z_hi, seg.shape)
        else:
            merged.append(seg)
    return merged


def _affine_image_segments(segments: Sequence[Segment], scale: Fraction, shift: Fraction) -> List[Segment]:
    """Apply x -> scale*x + shift (scale > 0) to every shape; sqrt pieces only survive the identity."""
    out: List[Segment] = []
    for seg in segments:
        shape = seg.shape
        if isinstance(shape, Constant):
            new: Shape = Constant(scale * shape.value + shift)
        elif isinstance(shape, Affine):
            new = Affine(scale * shape.intercept + shift, scale * shape.slope)
        else:
            if scale == 1 and shift == 0:
                new = shape
            else:
                raise NotRepresentableError(
                    "affine image of a sqrt quantile piece leaves the representable family"
                )
        out.append(Segment(seg.z_lo, seg.z_hi, new))
    return out


def transform_increasing(d: Distribution, phi: MonotoneMap) -> Distribution:
    """Law of phi(X) for a continuous increasing map from the closed family.

    The returned law's left quantile satisfies q_{phi(X)}(z) = phi(q_X(z)) for
    every z in (0, 1).
    """
    if not phi.is_increasing:
        raise ValueError("map is not increasing; use transform_decreasing")
    if isinstance(d, FiniteDistribution):
        return FiniteDistribution((phi(v), p) for v, p in d.atoms)
    segs: Sequence[Segment] = d.segments
    if phi.cap is not None:
        segs = _clamp_segments(segs, -phi.cap, phi.cap)
    segs = _affine_image_segments(segs, phi.scale, phi.shift)
    return PiecewiseQuantile(segs)


def transform_decreasing(d: Distribution, psi: MonotoneMap) -> Distribution:
    """Law of psi(X) for a continuous decreasing map from the closed family.

    The returned law's left quantile satisfies
    q_{psi(X)}(z) = psi(q_X((1 - z)+)) for every z in (0, 1).
    """
    if psi.is_increasing:
        raise ValueError("map is not decreasing; use transform_increasing")
    if isinstance(d, FiniteDistribution):
        return FiniteDistribution((psi(v), p) for v, p in d.atoms)
    segs: Sequence[Segment] = d.segments
    if psi.cap is not None:
        segs = _clamp_segments(segs, -psi.cap, psi.cap)
    flipped: List[Segment] = []
    for seg in reversed(segs):
        shape = seg.shape
        if isinstance(shape, Constant):
            new: Shape = Constant(psi.scale * shape.value + psi.shift)
        elif isinstance(shape, Affine):
            # psi(q(1 - z)) with q affine stays affine with slope -scale*b >= 0
            new = Affine(
                psi.scale * (shape.intercept + shape.slope) + psi.shift,
                -psi.scale * shape.slope,
            )
        else:
            raise NotRepresentableError(
                "decreasing image of a sqrt quantile piece leaves the representable family"
            )
        flipped.append(Segment(1 - seg.z_hi, 1 - seg.z_lo, new))
    return PiecewiseQuantile(flipped)


def truncate(d: Distribution, cap: RationalLike) -> Distribution:
    """Law of min(max(-cap, X), cap); preserves P(X < 0) for every cap > 0."""
    cap = as_rational(cap)
    if cap <= 0:
        raise ValueError("cap must be positive")
    if isinstance(d, FiniteDistribution):
        return d.truncate(cap)
    return PiecewiseQuantile(_clamp_segments(d.segments, -cap, cap))


def negative_part_quantile(d: Distribution) -> Distribution:
    """Law whose quantile is z -> min(q(z), 0), i.e. the law of min(X, 0)."""
    if isinstance(d, FiniteDistribution):
        return d.negative_part_quantile()
    return PiecewiseQuantile(_clamp_segments(d.segments, None, Fraction(0)))


# ---------------------------------------------------------------------------
# Uniform function-style accessors (work on both representations)
# ---------------------------------------------------------------------------


def quantile_left(d: Distribution, t: RationalLike):
    return d.quantile_left(t)


def quantile_right(d: Distribution, t: RationalLike):
    return d.quantile_right(t)


def cdf(d: Distribution, x: RationalLike) -> Fraction:
    return d.cdf(x)


def cdf_left(d: Distribution, x: RationalLike) -> Fraction:
    return d.cdf_left(x)
