"""Exact quantile calculus for capital positions.

A capital position's law is a list of (value, probability) atoms in exact
rational arithmetic.  Left and right quantiles, the CDF at and strictly below
a point, monotone transforms, and truncation are all closed-form.
"""

from fractions import Fraction as F

from acceptset import (
    FiniteDistribution,
    MonotoneMap,
    PiecewiseQuantile,
    negative_part_quantile,
    transform_decreasing,
    transform_increasing,
    truncate,
)

book = FiniteDistribution([(-2, F(1, 4)), (-1, F(1, 4)), (0, F(1, 4)), (3, F(1, 4))])
print("book:", book)

print("\nleft quantile at k/4:")
for k in range(5):
    print(f"  q({k}/4) =", book.quantile_left(F(k, 4)))
print("right quantile at 1/4:", book.quantile_right(F(1, 4)))
print("q(0) and q(1+):", book.quantile_left(0), book.quantile_right(1))

print("\nCDF at 0 vs strictly below 0:")
print("  P(X <= 0) =", book.cdf(0), "  P(X < 0) =", book.cdf_left(0))

# the quantile/CDF duality that exact arithmetic keeps literally true:
#   F(x) < t  iff  q(t) > x
for x in (-1, 0):
    for t in (F(1, 4), F(1, 2), F(3, 4)):
        assert (book.cdf(x) < t) == (book.quantile_left(t) > x)
print("duality F(x) < t  <=>  q(t) > x holds at all probed points")

print("\nmonotone transforms push through quantiles:")
doubled = transform_increasing(book, MonotoneMap.affine(0, 2))
print("  law of 2X:", doubled)
flipped = transform_decreasing(book, MonotoneMap.negation())
print("  law of -X:", flipped)
print("  q_{-X}(1/4) == -q_X((3/4)+):", flipped.quantile_left(F(1, 4)) == -book.quantile_right(F(3, 4)))

capped = truncate(book, F(3, 2))
print("\ntruncation at 3/2 clamps values but keeps the default probability:")
print("  law:", capped)
print("  P(X<0) before/after:", book.cdf_left(0), capped.cdf_left(0))

print("\nthe option to default -X^- has quantile min(q(z), 0):")
print("  law of min(X,0):", negative_part_quantile(book))

# continuous laws enter through piecewise quantile functions
uniform = PiecewiseQuantile.uniform(F(-2, 5), F(3, 5))
print("\nuniform law on (-2/5, 3/5):")
print("  P(X < 0) =", uniform.cdf_left(0))
print("  P(X <= -1/10) =", uniform.cdf(F(-1, 10)))
print("  quantile at 2/5 =", uniform.quantile_left(F(2, 5)))
