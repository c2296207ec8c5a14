"""Value-at-risk, expected shortfall, and distortion risk measures.

All quantities are exact rationals on finite laws.  The two VaR flavours are
the left- and right-continuous quantiles of the loss -X:

    var_lower(X, a) = q_{-X}(a)  = -q_X((1-a)+)
    var_upper(X, a) = q_{-X}(a+) = -q_X(1-a)

Expected shortfall averages the lower VaR over levels above beta and is
integrated in closed form over the step quantile, never by quadrature.
Distortion measures follow the survival-function integral verbatim on finite
laws (so the identity distortion returns +E[X]); piecewise quantile laws use
the equivalent quantile-side Choquet form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .distribution import (
    Distribution,
    FiniteDistribution,
    MonotoneMap,
    PiecewiseQuantile,
    transform_decreasing,
    truncate,
)
from .extended import ExtendedRational, RationalLike, as_rational
from .piecewise import PiecewiseLinear

__all__ = [
    "var_lower",
    "var_upper",
    "var_lower_via_loss_law",
    "var_upper_via_loss_law",
    "expected_shortfall",
    "DistortionFunction",
    "distortion_measure",
    "distortion_measure_quantile_form",
    "distortion_truncation_limit_check",
    "VaRLowerSpec",
    "VaRUpperSpec",
    "ESSpec",
    "DistortionSpec",
    "RiskMeasureSpec",
    "evaluate_measure",
]


def _check_level(level: Fraction) -> Fraction:
    if not 0 <= level <= 1:
        raise ValueError("risk-measure level must lie in [0, 1]")
    return level


def var_lower(d: Distribution, alpha: RationalLike) -> Union[ExtendedRational, float]:
    """Lower VaR at confidence alpha: -q_X((1-alpha)+).  -inf at alpha = 0."""
    alpha = _check_level(as_rational(alpha))
    return -d.quantile_right(1 - alpha)


def var_upper(d: Distribution, alpha: RationalLike) -> Union[ExtendedRational, float]:
    """Upper VaR at confidence alpha: -q_X(1-alpha).  +inf at alpha = 1."""
    alpha = _check_level(as_rational(alpha))
    return -d.quantile_left(1 - alpha)


def var_lower_via_loss_law(d: Distribution, alpha: RationalLike) -> Union[ExtendedRational, float]:
    """Cross-check route: left quantile of the law of -X at alpha.

    Must agree exactly with :func:`var_lower`; kept as an independent
    evaluation path for verification.
    """
    alpha = _check_level(as_rational(alpha))
    loss_law = transform_decreasing(d, MonotoneMap.negation())
    return loss_law.quantile_left(alpha)


def var_upper_via_loss_law(d: Distribution, alpha: RationalLike) -> Union[ExtendedRational, float]:
    """Cross-check route: right quantile of the law of -X at alpha."""
    alpha = _check_level(as_rational(alpha))
    loss_law = transform_decreasing(d, MonotoneMap.negation())
    return loss_law.quantile_right(alpha)


def expected_shortfall(d: Distribution, beta: RationalLike) -> Union[Fraction, float]:
    """Average of lower VaR over levels in (beta, 1); -essinf at beta = 1.

    Closed form: ES_beta = -(1/(1-beta)) * integral of q_X over (0, 1-beta].
    Exact rational for finite laws.
    """
    beta = _check_level(as_rational(beta))
    if beta == 1:
        return -d.essinf()
    width = 1 - beta
    return -d.integral_quantile(0, width) / width


# ---------------------------------------------------------------------------
# Distortion measures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DistortionFunction:
    """Nondecreasing piecewise-linear distortion with h(0) = 0 and h(1) = 1."""

    curve: PiecewiseLinear

    def __post_init__(self):
        knots = self.curve.knots
        if knots[0] != (Fraction(0), Fraction(0)):
            raise ValueError("distortion must have h(0) = 0 as its first knot")
        if knots[-1] != (Fraction(1), Fraction(1)):
            raise ValueError("distortion must have h(1) = 1 as its last knot")
        if not self.curve.is_nondecreasing():
            raise ValueError("distortion must be nondecreasing")

    @classmethod
    def from_pairs(cls, pairs) -> "DistortionFunction":
        return cls(PiecewiseLinear.from_pairs(pairs))

    @classmethod
    def identity(cls) -> "DistortionFunction":
        return cls(PiecewiseLinear.identity())

    def __call__(self, u: RationalLike) -> Fraction:
        u = as_rational(u)
        if not 0 <= u <= 1:
            raise ValueError("distortion argument must lie in [0, 1]")
        return self.curve(u)

    def dual(self) -> PiecewiseLinear:
        """g(z) = 1 - h(1 - z); satisfies g(0) = 0, g(1) = 1, nondecreasing."""
        pairs = [(1 - x, 1 - y) for x, y in reversed(self.curve.knots)]
        return PiecewiseLinear(tuple(pairs))


def distortion_measure(d: Distribution, h: DistortionFunction) -> Union[Fraction, float]:
    """Choquet-type integral of the survival function under the distortion h.

    rho_h(X) = int_0^inf h(P(X > x)) dx + int_{-inf}^0 (h(P(X > x)) - 1) dx.

    Finite laws are integrated verbatim in exact arithmetic (the survival
    function is a step function and h is piecewise linear on each step, i.e.
    constant in x).  Piecewise quantile laws go through the equivalent
    quantile-side form.  Requires bounded support.
    """
    if isinstance(d, PiecewiseQuantile):
        return distortion_measure_quantile_form(d, h)
    total = Fraction(0)
    values = d.values
    # positive half: breakpoints at 0 and every positive atom
    pos_points = [Fraction(0)] + [v for v in values if v > 0]
    for lo, hi in zip(pos_points, pos_points[1:]):
        survival = 1 - d.cdf(lo)
        total += h(survival) * (hi - lo)
    # negative half: breakpoints at every negative atom and 0
    neg_points = [v for v in values if v < 0] + [Fraction(0)]
    for lo, hi in zip(neg_points, neg_points[1:]):
        survival = 1 - d.cdf(lo)
        total += (h(survival) - 1) * (hi - lo)
    return total


def distortion_measure_quantile_form(d: Distribution, h: DistortionFunction) -> Union[Fraction, float]:
    """Equivalent quantile-side evaluation: int_0^1 q_X(z) dg(z), g = 1 - h(1-.).

    Agrees exactly with :func:`distortion_measure` on finite laws; used as the
    evaluation route for piecewise quantile laws (and as a cross-check route in
    tests).
    """
    g = h.dual()
    if isinstance(d, FiniteDistribution):
        total = Fraction(0)
        prev = Fraction(0)
        for v, c in zip(d.values, d.cumulative):
            total += v * (g(c) - g(prev))
            prev = c
        return total
    xs = g.breakpoints()
    slopes = g.slopes()
    total: Union[Fraction, float] = Fraction(0)
    for (lo, hi), slope in zip(zip(xs, xs[1:]), slopes):
        if slope != 0:
            total += slope * d.integral_quantile(lo, hi)
    return total


def distortion_truncation_limit_check(
    d: Distribution, h: DistortionFunction, caps: Sequence[RationalLike]
) -> bool:
    """Certify rho_h(min(max(-cap, X), cap)) -> rho_h(X) along increasing caps.

    True iff the cap sequence reaches the support bound and every cap at or
    beyond it reproduces rho_h(d) exactly (truncation is then the identity in
    law, witnessing the limit).  Values below the bound may approach in any
    pattern.
    """
    caps = [as_rational(c) for c in caps]
    if not caps:
        raise ValueError("need at least one cap")
    if any(c <= 0 for c in caps):
        raise ValueError("caps must be positive")
    if any(b <= a for a, b in zip(caps, caps[1:])):
        raise ValueError("caps must be strictly increasing")
    bound = max(abs(d.essinf()), abs(d.esssup()))
    base = distortion_measure(d, h)
    if caps[-1] < bound:
        return False
    return all(distortion_measure(truncate(d, c), h) == base for c in caps if c >= bound)


# ---------------------------------------------------------------------------
# Measure specifications (used by the CLI's `measure` command)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VaRLowerSpec:
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_level(as_rational(self.alpha)))


@dataclass(frozen=True)
class VaRUpperSpec:
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_level(as_rational(self.alpha)))


@dataclass(frozen=True)
class ESSpec:
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "beta", _check_level(as_rational(self.beta)))


@dataclass(frozen=True)
class DistortionSpec:
    h: DistortionFunction


RiskMeasureSpec = Union[VaRLowerSpec, VaRUpperSpec, ESSpec, DistortionSpec]


def evaluate_measure(spec: RiskMeasureSpec, d: Distribution):
    if isinstance(spec, VaRLowerSpec):
        return var_lower(d, spec.alpha)
    if isinstance(spec, VaRUpperSpec):
        return var_upper(d, spec.alpha)
    if isinstance(spec, ESSpec):
        return expected_shortfall(d, spec.beta)
    if isinstance(spec, DistortionSpec):
        return distortion_measure(d, spec.h)
    raise TypeError(f"unknown risk measure spec: {spec!r}")
