"""Prime generation by segmented sieve, with optional residue-class filter."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterator, Optional, Tuple

import numpy as np

from .errors import DomainError

# Segment length in integers; keeps each flag array cache-resident.
_SEGMENT = 1 << 18


def _base_primes(limit: int) -> list[int]:
    """All primes <= limit by a plain sieve; limit is O(sqrt(hi))."""
    if limit < 2:
        return []
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = False
    return [int(v) for v in np.flatnonzero(flags)]


def iter_primes(
    lo: int,
    hi: int,
    residue: Optional[int] = None,
    modulus: Optional[int] = None,
) -> Iterator[int]:
    """Yield primes in [lo, hi] ascending, filtered to p % modulus == residue.

    An inverted range yields nothing. The filter is applied after sieving,
    so no qualifying prime is skipped.
    """
    if (residue is None) != (modulus is None):
        raise DomainError("residue and modulus must be given together")
    if modulus is not None:
        if modulus <= 0:
            raise DomainError(f"modulus must be positive, got {modulus}")
        residue %= modulus
    if lo < 0 or hi < 0:
        raise DomainError("bounds must be nonnegative")
    lo = max(lo, 2)
    if lo > hi:
        return
    base = _base_primes(isqrt(hi))
    for start in range(lo, hi + 1, _SEGMENT):
        stop = min(start + _SEGMENT - 1, hi)
        flags = np.ones(stop - start + 1, dtype=bool)
        for q in base:
            if q * q > stop:
                break
            first = max(q * q, ((start + q - 1) // q) * q)
            flags[first - start :: q] = False
        found = np.flatnonzero(flags) + start
        if modulus is not None:
            found = found[found % modulus == residue]
        for v in found.tolist():
            yield v


def primes_in_range(
    lo: int,
    hi: int,
    residue: Optional[int] = None,
    modulus: Optional[int] = None,
) -> list[int]:
    """Exactly the primes in [lo, hi] matching the filter, ascending."""
    return list(iter_primes(lo, hi, residue, modulus))


@dataclass(frozen=True)
class PrimeStream:
    """A restartable, side-effect-free stream of primes in [lo, hi].

    residue_filter, when set, restricts the stream to p % m == r.
    Independent instances may be consumed concurrently; each iteration
    sieves from scratch, so workers can own disjoint subranges.
    """

    lo: int
    hi: int
    residue_filter: Optional[Tuple[int, int]] = None

    def __iter__(self) -> Iterator[int]:
        if self.residue_filter is None:
            return iter_primes(self.lo, self.hi)
        r, m = self.residue_filter
        return iter_primes(self.lo, self.hi, r, m)
