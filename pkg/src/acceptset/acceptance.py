"""Acceptance sets for capital adequacy tests.

The three VaR-induced families, parameterized by a confidence level alpha,
accept a capital position X according to its default probability:

* :class:`VarStrict`        — P(X < 0)      <  1 - alpha
* :class:`VarUniformStrict` — P(X <= -eps)  <  1 - alpha for every eps > 0
* :class:`VarWeak`          — P(X < 0)      <= 1 - alpha

Each of these has an equivalent VaR formulation (upper VaR at some level
above alpha nonpositive / upper VaR at alpha nonpositive / lower VaR at alpha
nonpositive).  ``member`` evaluates both the default-probability route and the
VaR route in exact arithmetic and insists they agree.

Also provided: shortfall sets E[l(X-)] <= c, expected-shortfall- and
distortion-induced sets, and oracle sets defined by an arbitrary predicate
over a declared finite universe of positions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from . import distribution as _dist
from .distribution import (
    Affine,
    Constant,
    Distribution,
    FiniteDistribution,
    NegSqrt,
    NotRepresentableError,
    PiecewiseQuantile,
    Position,
    _increasing_cross,
)
from .extended import NEG_INF, POS_INF, RationalLike, as_rational, format_extended
from .risk_measures import (
    DistortionFunction,
    distortion_measure,
    expected_shortfall,
    var_lower,
    var_upper,
)

__all__ = [
    "VarStrict",
    "VarUniformStrict",
    "VarWeak",
    "Shortfall",
    "ExpectedShortfallSet",
    "DistortionSet",
    "OracleSet",
    "AcceptanceSet",
    "MembershipVerdict",
    "MembershipError",
    "RouteDisagreement",
    "member",
    "shortfall_member",
    "inclusion_check",
    "InclusionReport",
    "finite_support_collapse_check",
    "CollapseReport",
    "describe_set",
]


class MembershipError(ValueError):
    """Membership is undefined for the given set/position combination."""


class RouteDisagreement(AssertionError):
    """The default-probability and VaR routes disagreed (implementation bug)."""


def _check_alpha(alpha) -> Fraction:
    alpha = as_rational(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError("confidence level must lie in [0, 1]")
    return alpha


@dataclass(frozen=True)
class VarStrict:
    """Accepts X iff P(X < 0) < 1 - alpha (strict default-probability bound)."""

    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_alpha(self.alpha))
        object.__setattr__(self, "level", 1 - self.alpha)
        object.__setattr__(self, "level_f", float(self.level))


@dataclass(frozen=True)
class VarUniformStrict:
    """Accepts X iff P(X <= -eps) < 1 - alpha for every eps > 0.

    Equivalently: the upper VaR at alpha is nonpositive.
    """

    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_alpha(self.alpha))
        object.__setattr__(self, "level", 1 - self.alpha)
        object.__setattr__(self, "level_f", float(self.level))


@dataclass(frozen=True)
class VarWeak:
    """Accepts X iff P(X < 0) <= 1 - alpha (weak default-probability bound)."""

    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_alpha(self.alpha))
        object.__setattr__(self, "level", 1 - self.alpha)
        object.__setattr__(self, "level_f", float(self.level))


@dataclass(frozen=True)
class Shortfall:
    """Accepts X iff E[l(X-)] <= bound for a nondecreasing, nonconstant loss l.

    The loss may be any callable producing exact rationals on exact rational
    inputs (piecewise-linear curves and polynomial maps both qualify).
    """

    loss: Callable[[Fraction], Fraction]
    bound: Fraction

    def __post_init__(self):
        object.__setattr__(self, "bound", as_rational(self.bound))


@dataclass(frozen=True)
class ExpectedShortfallSet:
    """Accepts X iff ES_beta(X) <= 0."""

    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "beta", _check_alpha(self.beta))


@dataclass(frozen=True)
class DistortionSet:
    """Accepts X iff rho_h(X) <= 0."""

    h: DistortionFunction


@dataclass(frozen=True)
class OracleSet:
    """Membership by arbitrary predicate, declared over a finite universe.

    ``member`` only answers for positions inside the universe; property and
    classification checks may consult the raw predicate on derived positions
    (scaled values, permutations) because the predicate itself is total.
    """

    predicate: Callable[[Position], bool] = field(compare=False)
    universe: Tuple[Position, ...]
    name: str = "oracle"

    def holds(self, position: Position) -> bool:
        return bool(self.predicate(position))


AcceptanceSet = Union[
    VarStrict, VarUniformStrict, VarWeak, Shortfall, ExpectedShortfallSet, DistortionSet, OracleSet
]

VAR_FAMILIES = (VarStrict, VarUniformStrict, VarWeak)


def describe_set(spec: AcceptanceSet) -> str:
    if isinstance(spec, VarStrict):
        return f"var_strict(alpha={format_extended(spec.alpha)})"
    if isinstance(spec, VarUniformStrict):
        return f"var_uniform_strict(alpha={format_extended(spec.alpha)})"
    if isinstance(spec, VarWeak):
        return f"var_weak(alpha={format_extended(spec.alpha)})"
    if isinstance(spec, Shortfall):
        return f"shortfall(bound={format_extended(spec.bound)})"
    if isinstance(spec, ExpectedShortfallSet):
        return f"expected_shortfall(beta={format_extended(spec.beta)})"
    if isinstance(spec, DistortionSet):
        return "distortion"
    if isinstance(spec, OracleSet):
        return f"oracle({spec.name})"
    raise TypeError(f"unknown acceptance set: {spec!r}")


@dataclass(frozen=True)
class MembershipVerdict:
    accepted: bool
    set_spec: AcceptanceSet
    decided_by: str  # "default_probability" | "var_form" | "statistic" | "oracle"
    route_probability: Optional[bool]
    route_var: Optional[bool]
    diagnostics: Tuple[Tuple[str, object], ...]  # values are exact/extended numbers

    @property
    def set_description(self) -> str:
        return describe_set(self.set_spec)

    @property
    def routes_agree(self) -> bool:
        if self.route_probability is None or self.route_var is None:
            return True
        return self.route_probability == self.route_var


# ---------------------------------------------------------------------------
# VaR-route helpers (exact, quantile-side)
# ---------------------------------------------------------------------------


def _first_nonneg_level(pq: PiecewiseQuantile) -> Optional[Fraction]:
    """inf{z in (0,1] : q(z) >= 0}, or None if the quantile stays negative."""
    for seg in pq.segments:
        shape = seg.shape
        if isinstance(shape, Constant) or (isinstance(shape, Affine) and shape.slope == 0):
            c = shape.value if isinstance(shape, Constant) else shape.intercept
            if c >= 0:
                return seg.z_lo
            continue
        boundary = _increasing_cross(shape, Fraction(0))
        if isinstance(shape, NegSqrt):
            # reaches zero exactly at z = offset
            if boundary is not None and boundary <= seg.z_hi:
                return boundary
            continue
        if boundary <= seg.z_lo:
            return seg.z_lo
        if boundary <= seg.z_hi:
            return boundary
    return None


def _var_route_strict(d: Distribution, level: Fraction) -> bool:
    """Exists delta in (0, 1-alpha) with upper VaR at alpha+delta nonpositive."""
    if level == 0:
        return False
    if isinstance(d, FiniteDistribution):
        # step quantiles are constant on a left neighbourhood of every level
        return d.quantile_left(level) >= 0
    start = _first_nonneg_level(d)
    return start is not None and start < level


def _var_route_uniform(d: Distribution, level: Fraction) -> bool:
    """Upper VaR at alpha nonpositive, i.e. q(1-alpha) >= 0."""
    if level == 0:
        return False
    if isinstance(d, FiniteDistribution):
        return d.quantile_left(level) >= 0
    return d.cmp_quantile_left(level, 0) >= 0


def _var_route_weak(d: Distribution, level: Fraction) -> bool:
    """Lower VaR at alpha nonpositive, i.e. q((1-alpha)+) >= 0."""
    if level == 1:
        return True  # q(1+) = +inf
    if isinstance(d, FiniteDistribution):
        return d.quantile_right(level) >= 0
    return d.cmp_quantile_right(level, 0) >= 0


def _prob_route_uniform(d: Distribution, level: Fraction) -> bool:
    """Decide 'P(X <= -eps) < level for all eps > 0' exactly."""
    if level == 0:
        return False  # no probability is < 0
    if isinstance(d, FiniteDistribution):
        idx = _dist._idx_ge_f(d.values, d._values_f, _ZERO, 0.0)
        if idx == 0:
            return True  # no negative atoms
        worst = d.values[idx - 1]  # the eps = -worst choice attains the sup
        return d.cdf(worst) < level
    p = d.cdf_left(0)
    if p < level:
        return True
    if p > level:
        return False
    # sup over eps equals P(X < 0) == level; acceptance iff the sup is not
    # attained, i.e. the negative values accumulate at 0 (q(p) == 0).
    return p > 0 and d.cmp_quantile_left(p, 0) == 0


_UNIFORM_EPS_GRID = tuple(Fraction(1, 2 ** j) for j in range(1, 21))
_ZERO = Fraction(0)


def _member_var_finite(spec, law: FiniteDistribution, level: Fraction) -> MembershipVerdict:
    """Hot path: float-assisted exact bisects, integer cross-multiplied compares."""
    values = law.values
    cum = law.cumulative
    cum_f = law._cum_f
    level_f = spec.level_f
    ln, ld = level.numerator, level.denominator
    idx0 = _dist._idx_ge_f(values, law._values_f, _ZERO, 0.0)
    p_neg = cum[idx0 - 1] if idx0 else _ZERO
    ql = NEG_INF if ln == 0 else values[_dist._idx_ge_f(cum, cum_f, level, level_f)]
    qr = POS_INF if ln == ld else values[_dist._idx_gt_f(cum, cum_f, level, level_f)]
    diagnostics = (
        ("default_prob", p_neg),
        ("var_lower", -qr),
        ("var_upper", -ql),
    )
    pn, pd = p_neg.numerator, p_neg.denominator
    if isinstance(spec, VarStrict):
        prob = pn * ld < ln * pd
        # step quantiles are constant on a left neighbourhood of every level,
        # so 'upper VaR nonpositive at some alpha + delta' reduces to ql >= 0
        var = False if ln == 0 else ql.numerator >= 0
    elif isinstance(spec, VarUniformStrict):
        prob = _prob_route_uniform(law, level)
        var = False if ln == 0 else ql.numerator >= 0
    else:
        prob = pn * ld <= ln * pd
        var = True if ln == ld else qr.numerator >= 0
    if prob != var:
        raise RouteDisagreement(
            f"routes disagree for {describe_set(spec)} on {law!r}: "
            f"default-probability={prob}, var-form={var}"
        )
    return MembershipVerdict(prob, spec, "default_probability", prob, var, diagnostics)


def _member_var_quantile(spec, law: PiecewiseQuantile, level: Fraction) -> MembershipVerdict:
    p_neg = law.cdf_left(0)
    diagnostics: List[Tuple[str, object]] = [
        ("default_prob", p_neg),
        ("var_lower", var_lower(law, spec.alpha)),
        ("var_upper", var_upper(law, spec.alpha)),
    ]
    if isinstance(spec, VarStrict):
        prob = p_neg < level
        var = _var_route_strict(law, level)
        decided_by = "default_probability"
    elif isinstance(spec, VarUniformStrict):
        prob = _prob_route_uniform(law, level)
        var = _var_route_uniform(law, level)
        decided_by = "var_form"
        grid_ok = all(law.cdf(-eps) < level for eps in _UNIFORM_EPS_GRID)
        diagnostics.append(("eps_grid_consistent", grid_ok))
        if var and not grid_ok:
            raise RouteDisagreement("eps-grid cross-check contradicts the VaR-form acceptance")
    else:
        prob = p_neg <= level
        var = _var_route_weak(law, level)
        decided_by = "default_probability"
    if prob != var:
        raise RouteDisagreement(
            f"routes disagree for {describe_set(spec)} on {law!r}: "
            f"default-probability={prob}, var-form={var}"
        )
    accepted = var if decided_by == "var_form" else prob
    return MembershipVerdict(accepted, spec, decided_by, prob, var, tuple(diagnostics))


def member(spec: AcceptanceSet, d: Union[Distribution, Position]) -> MembershipVerdict:
    """Decide membership of a capital position's law in an acceptance set.

    For the VaR families both the default-probability condition and the VaR
    condition are evaluated exactly; a disagreement raises
    :class:`RouteDisagreement` since the two are provably equivalent.
    Oracle sets require a position inside their declared universe.
    """
    if isinstance(spec, OracleSet):
        if not isinstance(d, Position):
            raise MembershipError("oracle sets decide positions, not bare laws")
        if d not in spec.universe:
            raise MembershipError(f"position outside the declared universe of {spec.name}")
        accepted = spec.holds(d)
        return MembershipVerdict(accepted, spec, "oracle", None, None, ())

    law: Distribution = d.law() if isinstance(d, Position) else d

    if isinstance(spec, VAR_FAMILIES):
        level: Fraction = spec.level
        if isinstance(law, FiniteDistribution):
            return _member_var_finite(spec, law, level)
        return _member_var_quantile(spec, law, level)

    if isinstance(spec, Shortfall):
        if isinstance(law, PiecewiseQuantile):
            raise NotRepresentableError(
                "shortfall expectations are implemented for finite laws and positions"
            )
        stat = _shortfall_expectation(spec.loss, law)
        accepted = stat <= spec.bound
        return MembershipVerdict(
            accepted, spec, "statistic", None, None, (("expected_loss", stat),)
        )

    if isinstance(spec, ExpectedShortfallSet):
        stat = expected_shortfall(law, spec.beta)
        accepted = stat <= 0
        return MembershipVerdict(
            accepted, spec, "statistic", None, None, (("expected_shortfall", stat),)
        )

    if isinstance(spec, DistortionSet):
        stat = distortion_measure(law, spec.h)
        accepted = stat <= 0
        return MembershipVerdict(
            accepted, spec, "statistic", None, None, (("distortion_value", stat),)
        )

    raise TypeError(f"unknown acceptance set: {spec!r}")


def _shortfall_expectation(loss: Callable[[Fraction], Fraction], law: FiniteDistribution) -> Fraction:
    inputs = sorted({max(-v, Fraction(0)) for v in law.values})
    outputs = [as_rational(loss(x)) for x in inputs]
    for a, b in zip(outputs, outputs[1:]):
        if a > b:
            raise ValueError("shortfall loss function is not nondecreasing on the realized values")
    table = dict(zip(inputs, outputs))
    return law.expectation(lambda v: table[max(-v, Fraction(0))])


def shortfall_member(
    loss: Callable[[Fraction], Fraction], bound: RationalLike, d: Union[Distribution, Position]
) -> bool:
    """Exact shortfall test E[l(X-)] <= bound."""
    return member(Shortfall(loss, as_rational(bound)), d).accepted


# ---------------------------------------------------------------------------
# Family-level consistency checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InclusionReport:
    ok: bool
    checked_distributions: int
    checked_levels: int
    violation: Optional[Tuple[str, str]] = None  # (description, distribution repr)


def inclusion_check(
    alphas: Sequence[RationalLike], universe: Iterable[Union[Distribution, Position]]
) -> InclusionReport:
    """Verify the nesting of the three families on every universe element.

    Checks strict <= uniform-strict <= weak at every level, and that the weak
    set at a higher level sits inside the strict set at any lower level.
    Returns the first violation found, scanning in canonical order.
    """
    levels = sorted({_check_alpha(a) for a in alphas})
    if not levels:
        raise ValueError("need at least one confidence level")
    laws = [d.law() if isinstance(d, Position) else d for d in universe]
    if not laws:
        raise ValueError("need a nonempty universe")
    for idx, law in enumerate(laws):
        strict: Dict[Fraction, bool] = {}
        uniform: Dict[Fraction, bool] = {}
        weak: Dict[Fraction, bool] = {}
        for a in levels:
            strict[a] = member(VarStrict(a), law).accepted
            uniform[a] = member(VarUniformStrict(a), law).accepted
            weak[a] = member(VarWeak(a), law).accepted
            if strict[a] and not uniform[a]:
                return InclusionReport(
                    False, idx + 1, len(levels),
                    (f"strict(alpha={a}) not inside uniform-strict", repr(law)),
                )
            if uniform[a] and not weak[a]:
                return InclusionReport(
                    False, idx + 1, len(levels),
                    (f"uniform-strict(alpha={a}) not inside weak", repr(law)),
                )
        for i, a1 in enumerate(levels):
            for a2 in levels[i + 1:]:
                if weak[a2] and not strict[a1]:
                    return InclusionReport(
                        False, idx + 1, len(levels),
                        (f"weak(alpha={a2}) not inside strict(alpha={a1})", repr(law)),
                    )
    return InclusionReport(True, len(laws), len(levels))


@dataclass(frozen=True)
class CollapseReport:
    ok: bool
    checked: int
    violation: Optional[Tuple[str, str]] = None


def finite_support_collapse_check(
    universe: Iterable[Union[FiniteDistribution, Position]],
    alphas: Sequence[RationalLike],
) -> CollapseReport:
    """On finite-support laws the strict and uniform-strict families coincide."""
    levels = sorted({_check_alpha(a) for a in alphas})
    count = 0
    for d in universe:
        law = d.law() if isinstance(d, Position) else d
        if not isinstance(law, FiniteDistribution):
            raise TypeError("collapse check applies to finite-support laws")
        count += 1
        for a in levels:
            m = member(VarStrict(a), law).accepted
            z = member(VarUniformStrict(a), law).accepted
            if m != z:
                return CollapseReport(
                    False, count, (f"strict != uniform-strict at alpha={a}", repr(law))
                )
    return CollapseReport(True, count)
