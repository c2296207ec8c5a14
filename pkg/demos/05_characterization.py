"""Why axiom-satisfying acceptance tests are VaR tests in disguise.

Any surplus-invariant, law-invariant, conic acceptance set on an equi-probable
space must be empty or the weak VaR family at some level.  This script runs the
pipeline on a predicate that is *not* written as a VaR test and watches the
classification discover that it is one, then replays the constructive steps.
"""

from fractions import Fraction as F

from acceptset import (
    FiniteDistribution,
    OracleSet,
    Position,
    PositionUniverse,
    VarStrict,
    approximate_from_below,
    approximation_distance,
    check_conicity,
    check_law_invariance,
    check_surplus_invariance,
    classify,
    comonotone_rearrangement,
    critical_level,
    member,
    strict_to_weak_level,
    surplus_dominance_scale,
)

universe = PositionUniverse(4, (F(-1), F(0), F(1)))
positions = tuple(universe)

# a regulator's ad-hoc rule: fail a firm when more than half its scenarios lose
rule = OracleSet(
    lambda p: 2 * sum(1 for v in p.values if v < 0) <= p.n,
    positions,
    "at-most-half-losing",
)

print("ad-hoc rule: accept iff at most half the scenarios lose money")
for name, checker in (
    ("surplus invariance", check_surplus_invariance),
    ("law invariance", check_law_invariance),
    ("conicity", check_conicity),
):
    rep = checker(rule, universe)
    print(f"  {name}: {rep.verdict} ({rep.mode}, {rep.trials} checks)")

print("\nextracted critical level:", critical_level(rule))
report = classify(rule)
print("classification:", report.exact_form, "sandwich ok:",
      report.lower_sandwich_ok and report.upper_sandwich_ok)
print("the ad-hoc rule IS the weak VaR test at level", report.alpha_hat)

print("\na strict-threshold rule lands on the lattice-adjusted level:")
n, alpha = 4, F(17, 20)
adjusted = strict_to_weak_level(n, alpha)
print(f"  on {n} states, 'P(X<0) < {1 - alpha}' equals 'P(X<0) <= {1 - adjusted}',")
print(f"  i.e. the strict family at {alpha} is the weak family at {adjusted}")

print("\nconstructive steps behind the result:")
x = Position([3, -1, -1])
out = comonotone_rearrangement(x)
print("  comonotone rearrangement of", x, "->", out.sorted_position,
      "coupled to levels", out.grid_left)

x_accepted = Position([-4, -4, 1, 1])
y_target = Position([-1, 1, 1, 1])
eps = surplus_dominance_scale(x_accepted, y_target, F(1, 2))
print(f"  dominance scaling: eps = {eps} shrinks {y_target}'s losses under {x_accepted}'s")

target = FiniteDistribution([(-1, F(1, 2)), (1, F(1, 2))])
print("  closure sequence toward the boundary law", target, ":")
for k in (1, 2, 4, 8):
    z = approximate_from_below(target, F(1, 2), k)
    dist = approximation_distance(target, k)
    inside = member(VarStrict(F(1, 2)), z).accepted
    print(f"    k={k}: P(Z<0)={z.cdf_left(0)}, strict member={inside}, distance={dist}")
