"""Bitmask helpers.

Carriers are index sets 0..n-1 and subsets are plain ints, one bit per
element. Everything downstream (orders, relations, closures) is AND/OR
arithmetic on these masks.
"""

from __future__ import annotations

from typing import Iterator


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of `mask` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def submasks(mask: int) -> Iterator[int]:
    """All submasks of `mask`, including 0 and `mask` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0
