"""Binary relations between finite carriers, stored row-wise as bitmasks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .bitset import bits
from .errors import DimensionMismatch
from .lattice import FiniteLattice


@dataclass(frozen=True)
class Relation:
    source_size: int
    target_size: int
    rows: tuple[int, ...]  # rows[a] = {b : a R b}

    def __post_init__(self):
        if len(self.rows) != self.source_size:
            raise DimensionMismatch("one row per source element required")
        full = (1 << self.target_size) - 1
        if any(r & ~full for r in self.rows):
            raise DimensionMismatch("row mask exceeds target carrier")

    def has(self, a: int, b: int) -> bool:
        return bool(self.rows[a] >> b & 1)

    def pairs(self) -> Iterator[tuple[int, int]]:
        for a, row in enumerate(self.rows):
            for b in bits(row):
                yield (a, b)

    def converse(self) -> "Relation":
        cols = [0] * self.target_size
        for a, row in enumerate(self.rows):
            for b in bits(row):
                cols[b] |= 1 << a
        return Relation(self.target_size, self.source_size, tuple(cols))

    def image(self, mask: int) -> int:
        """R[A] = union of rows over a in A."""
        out = 0
        for a in bits(mask):
            out |= self.rows[a]
        return out

    def preimage(self, mask: int) -> int:
        """R^{-1}[B] = {a : row a meets B}."""
        out = 0
        for a, row in enumerate(self.rows):
            if row & mask:
                out |= 1 << a
        return out

    def is_empty(self) -> bool:
        return all(r == 0 for r in self.rows)


def relation_from_pairs(source_size: int, target_size: int, pairs) -> Relation:
    rows = [0] * source_size
    for a, b in pairs:
        if not (0 <= a < source_size and 0 <= b < target_size):
            raise DimensionMismatch(f"pair ({a},{b}) outside carriers")
        rows[a] |= 1 << b
    return Relation(source_size, target_size, tuple(rows))


def full_relation(source_size: int, target_size: int) -> Relation:
    full = (1 << target_size) - 1
    return Relation(source_size, target_size, (full,) * source_size)


def empty_relation(source_size: int, target_size: int) -> Relation:
    return Relation(source_size, target_size, (0,) * source_size)


def order_relation(lat: FiniteLattice) -> Relation:
    """The lattice order <= as a relation on the carrier."""
    return Relation(lat.size, lat.size, lat.up)


def compose(r: Relation, s: Relation) -> Relation:
    """a (r;s) c iff a r b and b s c for some b. r runs first."""
    if r.target_size != s.source_size:
        raise DimensionMismatch(
            f"cannot compose {r.target_size}-target with {s.source_size}-source")
    rows = []
    for row in r.rows:
        out = 0
        for b in bits(row):
            out |= s.rows[b]
        rows.append(out)
    return Relation(r.source_size, s.target_size, tuple(rows))
