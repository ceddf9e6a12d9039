"""Exact evaluation of the identity sum_{r>=1} floor(x/2^r + 1/2) = floor(x).

Arguments are nonnegative rationals given as int or fractions.Fraction.
Floats are rejected: a binary float x/2^r + 1/2 can round across a floor
boundary, and downstream bound formulas depend on exact terms.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError

Rational = int | Fraction


def _as_ratio(x: Rational) -> tuple[int, int]:
    """Normalize to a (numerator, denominator) pair of nonnegative ints."""
    if isinstance(x, bool):
        raise DomainError(f"x must be an int or Fraction, got {x!r}")
    if isinstance(x, int):
        num, den = x, 1
    elif isinstance(x, Fraction):
        num, den = x.numerator, x.denominator
    else:
        raise DomainError(f"x must be an int or Fraction, got {type(x).__name__}")
    if num < 0:
        raise DomainError(f"x must be >= 0, got {x}")
    return num, den


def truncation_index(x: Rational) -> int:
    """Smallest R >= 1 with x < 2^(R-1); every term with r >= R is zero."""
    num, den = _as_ratio(x)
    r = 1
    while num >= den << (r - 1):
        r += 1
    return r


def floor_half_series(x: Rational) -> int:
    """Evaluate sum_{r>=1} floor(x/2^r + 1/2) exactly; equals floor(x).

    Division by 2^r scales the denominator, so numerators stay bounded.
    Each term floor(n/(d*2^r) + 1/2) is the integer (2n + d*2^r) // (d*2^(r+1)).
    """
    num, den = _as_ratio(x)
    total = 0
    two_num = 2 * num
    for r in range(1, truncation_index(x)):
        shifted = den << r
        total += (two_num + shifted) // (shifted << 1)
    return total
