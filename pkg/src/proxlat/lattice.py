"""Finite bounded lattices and order primitives.

A lattice lives on the carrier 0..n-1. The order is stored twice, as
up-set masks and down-set masks, so that bound computations are single
AND operations; meet and join are precomputed tables. All values are
immutable after construction and every function here is pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .bitset import bits, is_subset
from .errors import NotALattice, NotAPartialOrder


@dataclass(frozen=True)
class FiniteLattice:
    size: int
    up: tuple[int, ...]    # up[a] = {b : a <= b}
    down: tuple[int, ...]  # down[a] = {b : b <= a}
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    bot: int
    top: int
    labels: tuple[str, ...]

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def leq(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    def meet_mask(self, mask: int) -> int:
        """Meet of a subset given as a bitmask; the empty meet is top."""
        out = self.top
        for a in bits(mask):
            out = self.meet[out][a]
        return out

    def join_mask(self, mask: int) -> int:
        """Join of a subset given as a bitmask; the empty join is bot."""
        out = self.bot
        for a in bits(mask):
            out = self.join[out][a]
        return out

    def covers(self) -> list[tuple[int, int]]:
        """Pairs (a, b) with a < b and nothing strictly between."""
        out = []
        for a in range(self.size):
            strict = self.up[a] & ~(1 << a)
            for b in bits(strict):
                between = strict & self.down[b] & ~(1 << b)
                if between == 0:
                    out.append((a, b))
        return out

    def label(self, a: int) -> str:
        return self.labels[a]


@dataclass(frozen=True)
class LatticeMap:
    """A total function between lattice carriers, given by its table."""

    source: FiniteLattice
    target: FiniteLattice
    table: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.table[a]


@dataclass(frozen=True)
class Preorder:
    """A reflexive transitive relation on 0..n-1, stored as up-set masks."""

    size: int
    up: tuple[int, ...]
    labels: tuple[str, ...]

    def rel(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    def down_masks(self) -> tuple[int, ...]:
        d = [0] * self.size
        for a in range(self.size):
            for b in bits(self.up[a]):
                d[b] |= 1 << a
        return tuple(d)


def _order_masks(n: int, pairs) -> list[int]:
    up = [0] * n
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise NotAPartialOrder(f"pair ({a},{b}) outside carrier of size {n}")
        up[a] |= 1 << b
    return up


def _check_preorder(n: int, up: Sequence[int]) -> None:
    for a in range(n):
        if not up[a] >> a & 1:
            raise NotAPartialOrder(f"relation is not reflexive at {a}")
        for b in bits(up[a]):
            if not is_subset(up[b], up[a]):
                raise NotAPartialOrder(
                    f"relation is not transitive at ({a},{b})")


def preorder(labels: Sequence[str], pairs) -> Preorder:
    n = len(labels)
    up = _order_masks(n, pairs)
    _check_preorder(n, up)
    return Preorder(n, tuple(up), tuple(labels))


def preorder_from_up(labels: Sequence[str], up: Sequence[int]) -> Preorder:
    _check_preorder(len(labels), up)
    return Preorder(len(labels), tuple(up), tuple(labels))


def lattice_from_order(labels: Sequence[str], pairs) -> FiniteLattice:
    """Build a FiniteLattice from a partial order given as (a, b) pairs.

    The pairs must already be a partial order (reflexive, antisymmetric,
    transitive); raises NotAPartialOrder otherwise and NotALattice, with
    a witness pair, if some pair of elements has no meet or no join.
    """
    n = len(labels)
    if n == 0:
        raise NotALattice("a bounded lattice needs at least one element")
    up = _order_masks(n, pairs)
    _check_preorder(n, up)
    for a in range(n):
        for b in bits(up[a]):
            if a != b and up[b] >> a & 1:
                raise NotAPartialOrder(f"antisymmetry fails at ({a},{b})")
    return lattice_from_up(labels, up)


def lattice_from_up(labels: Sequence[str], up: Sequence[int]) -> FiniteLattice:
    """Like lattice_from_order but from validated up-set masks."""
    n = len(labels)
    down = [0] * n
    for a in range(n):
        for b in bits(up[a]):
            down[b] |= 1 << a

    def bound(a: int, b: int, cone: Sequence[int], kind: str) -> int:
        common = cone[a] & cone[b]
        for m in bits(common):
            if is_subset(common, cone[m]):
                return m
        raise NotALattice(
            f"elements {labels[a]!r} and {labels[b]!r} have no {kind}",
            witness=(a, b), missing=kind)

    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            m = bound(a, b, down, "meet")
            j = bound(a, b, up, "join")
            meet[a][b] = meet[b][a] = m
            join[a][b] = join[b][a] = j
    bot = 0
    top = 0
    for a in range(n):
        bot = meet[bot][a]
        top = join[top][a]
    return FiniteLattice(
        size=n,
        up=tuple(up),
        down=tuple(down),
        meet=tuple(tuple(r) for r in meet),
        join=tuple(tuple(r) for r in join),
        bot=bot,
        top=top,
        labels=tuple(labels),
    )


def is_distributive(lat: FiniteLattice) -> bool:
    """True iff meet distributes over join on the whole carrier."""
    n = lat.size
    meet, join = lat.meet, lat.join
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
                    return False
    return True


def opposite(lat: FiniteLattice) -> FiniteLattice:
    """Same carrier with the order reversed; an involution."""
    return FiniteLattice(
        size=lat.size,
        up=lat.down,
        down=lat.up,
        meet=lat.join,
        join=lat.meet,
        bot=lat.top,
        top=lat.bot,
        labels=lat.labels,
    )


def is_homomorphism(f: LatticeMap) -> bool:
    """True iff f preserves binary meets and joins and both bounds."""
    src, tgt, t = f.source, f.target, f.table
    if t[src.bot] != tgt.bot or t[src.top] != tgt.top:
        return False
    for a in range(src.size):
        for b in range(a, src.size):
            if t[src.meet[a][b]] != tgt.meet[t[a]][t[b]]:
                return False
            if t[src.join[a][b]] != tgt.join[t[a]][t[b]]:
                return False
    return True


def compose_maps(f: LatticeMap, g: LatticeMap) -> LatticeMap:
    """The map a -> g(f(a)); f runs first."""
    if f.target is not g.source and f.target != g.source:
        raise NotAPartialOrder("composable maps must share the middle lattice")
    return LatticeMap(f.source, g.target, tuple(g.table[x] for x in f.table))


# ---------------------------------------------------------------------------
# Dedekind-MacNeille completion of a preorder
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MacNeilleCompletion:
    lattice: FiniteLattice
    cuts: tuple[int, ...]      # cut index -> member mask over Q
    embed: tuple[int, ...]     # q in Q -> cut index of the principal cut


def _closed_family(n: int, close) -> list[int]:
    """All fixpoints of a closure operator on subsets of 0..n-1.

    Found by saturating closure(seed | {x}) from closure(0); complete
    because any closed set is reached by adding its members one at a
    time (each step stays inside the target, closure being monotone).
    """
    start = close(0)
    seen = {start}
    queue = [start]
    while queue:
        cur = queue.pop()
        rest = ((1 << n) - 1) & ~cur
        for x in bits(rest):
            nxt = close(cur | 1 << x)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return sorted(seen, key=lambda m: (m.bit_count(), m))


def _set_label(mask: int, labels: Sequence[str]) -> str:
    return "{" + ",".join(labels[i] for i in bits(mask)) + "}"


def _lattice_of_sets(masks: Sequence[int], labels: Sequence[str]) -> FiniteLattice:
    """Lattice of a family of sets under inclusion."""
    idx = range(len(masks))
    up = [0] * len(masks)
    for i in idx:
        for j in idx:
            if is_subset(masks[i], masks[j]):
                up[i] |= 1 << j
    return lattice_from_up([_set_label(m, labels) for m in masks], up)


def dedekind_macneille(q: Preorder) -> MacNeilleCompletion:
    """Complete lattice of cuts of a preorder, with the canonical map.

    A cut is a subset closed under lower-bounds-of-upper-bounds; each
    element maps to the cut it generates, which for a preorder is its
    down-set. Every cut is a join of embedded elements below it and a
    meet of embedded elements above it.
    """
    n = q.size
    full = (1 << n) - 1
    down = q.down_masks()

    def ub(mask: int) -> int:
        out = full
        for x in bits(mask):
            out &= q.up[x]
        return out

    def lb(mask: int) -> int:
        out = full
        for x in bits(mask):
            out &= down[x]
        return out

    def close(mask: int) -> int:
        return lb(ub(mask))

    cuts = _closed_family(n, close)
    position = {m: i for i, m in enumerate(cuts)}
    lat = _lattice_of_sets(cuts, q.labels)
    embed = tuple(position[close(1 << x)] for x in range(n))
    return MacNeilleCompletion(lattice=lat, cuts=tuple(cuts), embed=embed)


# ---------------------------------------------------------------------------
# Isomorphism search
# ---------------------------------------------------------------------------

def find_isomorphism(a: FiniteLattice, b: FiniteLattice,
                     pins: Optional[dict[int, int]] = None) -> Optional[LatticeMap]:
    """Order isomorphism a -> b found by backtracking, or None.

    `pins` forces values on some source elements; conflicting or
    non-injective pins make the search fail immediately. An order
    isomorphism between lattices preserves meets and joins, so nothing
    more needs checking.
    """
    if a.size != b.size:
        return None

    def profile(lat: FiniteLattice, x: int) -> tuple[int, int]:
        return (lat.down[x].bit_count(), lat.up[x].bit_count())

    prof_a = [profile(a, x) for x in range(a.size)]
    prof_b = [profile(b, x) for x in range(b.size)]
    if sorted(prof_a) != sorted(prof_b):
        return None

    table: list[int] = [-1] * a.size
    used = [False] * b.size
    if pins:
        for x, y in pins.items():
            if table[x] not in (-1, y):
                return None
            if table[x] == -1 and used[y]:
                return None
            if table[x] == -1:
                table[x] = y
                used[y] = True

    assigned = [x for x in range(a.size) if table[x] != -1]
    for x in assigned:
        y = table[x]
        if prof_a[x] != prof_b[y]:
            return None
        for x2 in assigned:
            if a.leq(x, x2) != b.leq(y, table[x2]):
                return None
            if a.leq(x2, x) != b.leq(table[x2], y):
                return None

    # rarest profiles first keeps the branching factor low
    order = sorted((x for x in range(a.size) if table[x] == -1),
                   key=lambda x: (sum(1 for p in prof_b if p == prof_a[x]), x))

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        x = order[k]
        for y in range(b.size):
            if used[y] or prof_b[y] != prof_a[x]:
                continue
            ok = True
            for x2 in range(a.size):
                y2 = table[x2]
                if y2 == -1:
                    continue
                if a.leq(x, x2) != b.leq(y, y2) or a.leq(x2, x) != b.leq(y2, y):
                    ok = False
                    break
            if ok:
                table[x] = y
                used[y] = True
                if extend(k + 1):
                    return True
                table[x] = -1
                used[y] = False
        return False

    if not extend(0):
        return None
    return LatticeMap(a, b, tuple(table))


def lattice_laws_hold(lat: FiniteLattice) -> bool:
    """Commutativity, associativity, idempotence and absorption of the tables."""
    n = lat.size
    meet, join = lat.meet, lat.join
    for a in range(n):
        if meet[a][a] != a or join[a][a] != a:
            return False
        for b in range(n):
            if meet[a][b] != meet[b][a] or join[a][b] != join[b][a]:
                return False
            if meet[a][join[a][b]] != a or join[a][meet[a][b]] != a:
                return False
    for a, b, c in itertools.product(range(n), repeat=3):
        if meet[meet[a][b]][c] != meet[a][meet[b][c]]:
            return False
        if join[join[a][b]][c] != join[a][join[b][c]]:
            return False
    return True
