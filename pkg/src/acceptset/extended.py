"""Extended rational arithmetic for the money line.

Quantile functions take the values -inf (at level 0) and +inf (right limit at
level 1), so every quantity in this package lives on the extended rational
line.  The infinities are explicit singleton objects, never sentinel floats,
so ordering against exact ``Fraction`` values stays exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

__all__ = [
    "Infinite",
    "NEG_INF",
    "POS_INF",
    "ExtendedRational",
    "as_rational",
    "is_finite",
    "format_extended",
]


class Infinite:
    """A signed infinity comparable with rationals and other infinities."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        if sign not in (-1, 1):
            raise ValueError("sign must be -1 or +1")
        object.__setattr__(self, "sign", sign)

    def __setattr__(self, name, value):
        raise AttributeError("Infinite is immutable")

    # Ordering against Fraction/int works because every finite rational lies
    # strictly between the two infinities.
    def __lt__(self, other):
        if isinstance(other, Infinite):
            return self.sign < other.sign
        if isinstance(other, (int, Fraction)):
            return self.sign < 0
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, Infinite):
            return self.sign <= other.sign
        if isinstance(other, (int, Fraction)):
            return self.sign < 0
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, Infinite):
            return self.sign > other.sign
        if isinstance(other, (int, Fraction)):
            return self.sign > 0
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, Infinite):
            return self.sign >= other.sign
        if isinstance(other, (int, Fraction)):
            return self.sign > 0
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Infinite):
            return self.sign == other.sign
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash(("acceptset.Infinite", self.sign))

    def __neg__(self) -> "Infinite":
        return NEG_INF if self.sign > 0 else POS_INF

    def __abs__(self) -> "Infinite":
        return POS_INF

    def __repr__(self) -> str:
        return "+inf" if self.sign > 0 else "-inf"


NEG_INF = Infinite(-1)
POS_INF = Infinite(+1)

ExtendedRational = Union[Fraction, Infinite]
RationalLike = Union[int, str, Fraction]


def as_rational(value: RationalLike) -> Fraction:
    """Convert ints, exact decimal/fraction strings, or Fractions to Fraction.

    Decimal strings parse losslessly ("0.1" -> 1/10), as do "p/q" forms; binary
    floats are rejected because they silently lose exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational amount")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational (use str or Fraction, not float)")


def is_finite(value: ExtendedRational) -> bool:
    return not isinstance(value, Infinite)


def format_extended(value: ExtendedRational) -> str:
    """Render an extended rational as 'p/q', an integer string, or '+/-inf'."""
    if isinstance(value, Infinite):
        return repr(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
