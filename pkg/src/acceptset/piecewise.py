"""Piecewise-linear functions with exact rational knots.

Used for distortion functions, shortfall loss curves, and the test functions
that pair against step positions in the weak-star approximation demo.  All
evaluation and integration is closed-form rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from .extended import RationalLike, as_rational

__all__ = ["PiecewiseLinear"]


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous piecewise-linear function given by knots with strictly increasing x.

    Between knots the function interpolates linearly; outside the knot range it
    extrapolates with the first/last segment slope (constant if only one knot).
    """

    knots: Tuple[Tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        if not self.knots:
            raise ValueError("need at least one knot")
        xs = [x for x, _ in self.knots]
        for a, b in zip(xs, xs[1:]):
            if not a < b:
                raise ValueError("knot x-coordinates must be strictly increasing")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[RationalLike, RationalLike]]) -> "PiecewiseLinear":
        return cls(tuple((as_rational(x), as_rational(y)) for x, y in pairs))

    @classmethod
    def identity(cls) -> "PiecewiseLinear":
        return cls(((Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))))

    def _segment_slope(self, i: int) -> Fraction:
        (x0, y0), (x1, y1) = self.knots[i], self.knots[i + 1]
        return (y1 - y0) / (x1 - x0)

    def __call__(self, x: RationalLike) -> Fraction:
        x = as_rational(x)
        ks = self.knots
        if len(ks) == 1:
            return ks[0][1]
        if x <= ks[0][0]:
            s = self._segment_slope(0)
            return ks[0][1] + s * (x - ks[0][0])
        if x >= ks[-1][0]:
            s = self._segment_slope(len(ks) - 2)
            return ks[-1][1] + s * (x - ks[-1][0])
        # binary search would do; knot lists here are tiny
        for i in range(len(ks) - 1):
            if ks[i][0] <= x <= ks[i + 1][0]:
                s = self._segment_slope(i)
                return ks[i][1] + s * (x - ks[i][0])
        raise AssertionError("unreachable")

    def is_nondecreasing(self) -> bool:
        ys = [y for _, y in self.knots]
        return all(a <= b for a, b in zip(ys, ys[1:]))

    def is_constant(self) -> bool:
        ys = {y for _, y in self.knots}
        return len(ys) == 1

    def slopes(self) -> Tuple[Fraction, ...]:
        if len(self.knots) == 1:
            return (Fraction(0),)
        return tuple(self._segment_slope(i) for i in range(len(self.knots) - 1))

    def breakpoints(self) -> Sequence[Fraction]:
        return [x for x, _ in self.knots]

    def integral(self, a: RationalLike, b: RationalLike) -> Fraction:
        """Exact integral over [a, b] (a <= b), including extrapolated regions."""
        a, b = as_rational(a), as_rational(b)
        if a > b:
            raise ValueError("integration bounds must satisfy a <= b")
        if a == b:
            return Fraction(0)
        cuts = [a] + [x for x in self.breakpoints() if a < x < b] + [b]
        total = Fraction(0)
        for lo, hi in zip(cuts, cuts[1:]):
            mid = (lo + hi) / 2
            total += self(mid) * (hi - lo)  # trapezoid == exact for linear pieces
        return total
