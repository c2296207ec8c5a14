"""Lower/upper VaR, expected shortfall, and distortion measures, exactly.

Both VaR flavours are quantiles of the loss -X; expected shortfall integrates
the step quantile in closed form; distortion measures integrate the survival
function under a piecewise-linear distortion.  Everything returns Fractions.
"""

from fractions import Fraction as F

from acceptset import (
    DistortionFunction,
    FiniteDistribution,
    distortion_measure,
    distortion_truncation_limit_check,
    expected_shortfall,
    var_lower,
    var_upper,
)

book = FiniteDistribution([(-2, F(1, 4)), (-1, F(1, 4)), (0, F(1, 4)), (3, F(1, 4))])
skewed = FiniteDistribution([(-1, F(1, 100)), (1, F(99, 100))])

print("VaR at selected confidence levels (lower / upper):")
for alpha in (F(1, 2), F(3, 4), F(99, 100), F(1)):
    print(f"  alpha={alpha}: {var_lower(book, alpha)} / {var_upper(book, alpha)}")
print("the two flavours differ exactly where the loss law has an atom")

print("\nskewed book at the 99% level:")
print("  var_lower =", var_lower(skewed, F(99, 100)), " var_upper =", var_upper(skewed, F(99, 100)))

print("\nexpected shortfall averages the lower VaR over the tail:")
for beta in (F(0), F(1, 2), F(3, 4), F(1)):
    print(f"  ES_{beta} =", expected_shortfall(book, beta))
print("ES at 0 is the negated mean:", expected_shortfall(book, 0) == -book.mean())

print("\nordering var_lower <= var_upper <= ES at every level below one:")
for beta in (F(0), F(1, 4), F(1, 2), F(3, 4)):
    vl, vu, es = var_lower(book, beta), var_upper(book, beta), expected_shortfall(book, beta)
    assert vl <= vu <= es
    print(f"  beta={beta}: {vl} <= {vu} <= {es}")

identity = DistortionFunction.identity()
print("\nidentity distortion returns the mean:", distortion_measure(book, identity))

kinked = DistortionFunction.from_pairs([(0, 0), ("1/2", 0), (1, 1)])
print("tail-blind distortion (flat to 1/2):", distortion_measure(book, kinked))

wide = FiniteDistribution([(-5, F(1, 2)), (3, F(1, 2))])
caps = [F(1), F(4), F(10)]
print("\ntruncation limit along caps", caps, "reaches the untruncated value:",
      distortion_truncation_limit_check(wide, identity, caps))
