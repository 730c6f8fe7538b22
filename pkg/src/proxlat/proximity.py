"""Proximity relations on finite lattices.

A proximity lattice is a lattice with a relation R that is idempotent
under relational composition (R;R = R) and compatible with finite joins
on the left and finite meets on the right:

    (join A) R b  iff  a R b for every a in A      (any finite A)
    a R (meet B)  iff  a R b for every b in B      (any finite B)

Join-strongness additionally lets R decompose joins on the right: from
a R (join B) one can find B' inside R^{-1}[B] with a R (join B').
Meet-strongness is the order dual.

Quantifiers over finite subsets are checked at the empty and binary
instances. For the compatibility axioms this is exact: they are
biconditionals and the general instance follows by induction on the
subset. For the strongness axioms the binary instance is the natural
reduction once the compatibility axioms hold (preimages R^{-1}[b] are
then join-closed and contain bottom), but the induction step from the
binary case to larger sets is not obvious; ``exhaustive=True`` checks
every subset directly and the test suite uses it to validate the
reduction on small carriers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .bitset import bits, is_subset, submasks
from .errors import (
    DimensionMismatch,
    InternalCheckError,
    InvalidRoundSubset,
    NotAJMorphism,
    NotALattice,
    NotAProximityLattice,
    NotJoinStrong,
    TransposeError,
)
from .lattice import (
    FiniteLattice,
    LatticeMap,
    is_distributive,
    is_homomorphism,
    lattice_from_up,
)
from .relations import Relation, compose, order_relation

_EXHAUSTIVE_LIMIT = 10


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of the axiom checks, with a least witness per failure.

    Witness tuples are element indices: (a, b) for idempotence and
    increasing, (a, a2, b) / (a, b1, b2) for the binary instances,
    (a,) for reflexivity.
    """

    idempotent: bool
    join_compatible: bool
    meet_compatible: bool
    join_strong: bool
    meet_strong: bool
    increasing: bool
    reflexive: bool
    distributive: bool
    witnesses: tuple[tuple[str, tuple[int, ...]], ...]

    @property
    def axioms_ok(self) -> bool:
        return self.idempotent and self.join_compatible and self.meet_compatible

    @property
    def doubly_strong(self) -> bool:
        return self.join_strong and self.meet_strong

    def witness(self, name: str) -> Optional[tuple[int, ...]]:
        for key, value in self.witnesses:
            if key == name:
                return value
        return None

    def flags(self) -> dict[str, bool]:
        return {
            "axioms_ok": self.axioms_ok,
            "idempotent": self.idempotent,
            "join_compatible": self.join_compatible,
            "meet_compatible": self.meet_compatible,
            "join_strong": self.join_strong,
            "meet_strong": self.meet_strong,
            "increasing": self.increasing,
            "reflexive": self.reflexive,
            "distributive": self.distributive,
        }


def _first_diff(r1: Relation, r2: Relation) -> tuple[int, int]:
    for a in range(r1.source_size):
        delta = r1.rows[a] ^ r2.rows[a]
        if delta:
            return (a, (delta & -delta).bit_length() - 1)
    raise ValueError("relations are equal")


def verify_axioms(lat: FiniteLattice, rel: Relation, *,
                  exhaustive: bool = False) -> AxiomReport:
    """Check the proximity axioms and the strongness/shape flags.

    Never raises on failures; everything is reported with witnesses.
    With ``exhaustive=True`` (carrier <= 10) the finite-subset
    quantifiers are checked over every subset instead of the
    empty+binary reduction.
    """
    if rel.source_size != lat.size or rel.target_size != lat.size:
        raise DimensionMismatch("relation carrier does not match the lattice")
    n = lat.size
    fullmask = lat.full
    rows = rel.rows
    cols = rel.converse().rows
    witnesses: list[tuple[str, tuple[int, ...]]] = []

    comp = compose(rel, rel)
    idempotent = comp.rows == rel.rows
    if not idempotent:
        witnesses.append(("idempotent", _first_diff(comp, rel)))

    join_compatible = True
    if rows[lat.bot] != fullmask:
        join_compatible = False
        missing = fullmask & ~rows[lat.bot]
        witnesses.append(("join_compatible",
                          (lat.bot, (missing & -missing).bit_length() - 1)))
    if join_compatible:
        for a in range(n):
            for a2 in range(a, n):
                want = rows[a] & rows[a2]
                got = rows[lat.join[a][a2]]
                if got != want:
                    delta = got ^ want
                    witnesses.append(
                        ("join_compatible",
                         (a, a2, (delta & -delta).bit_length() - 1)))
                    join_compatible = False
                    break
            if not join_compatible:
                break

    meet_compatible = True
    if cols[lat.top] != fullmask:
        meet_compatible = False
        missing = fullmask & ~cols[lat.top]
        witnesses.append(("meet_compatible",
                          ((missing & -missing).bit_length() - 1, lat.top)))
    if meet_compatible:
        for b in range(n):
            for b2 in range(b, n):
                want = cols[b] & cols[b2]
                got = cols[lat.meet[b][b2]]
                if got != want:
                    delta = got ^ want
                    witnesses.append(
                        ("meet_compatible",
                         ((delta & -delta).bit_length() - 1, b, b2)))
                    meet_compatible = False
                    break
            if not meet_compatible:
                break

    if exhaustive:
        if n > _EXHAUSTIVE_LIMIT:
            raise ValueError("exhaustive mode is limited to small carriers")
        join_strong, js_wit = _join_strong_exhaustive(lat, rows, cols)
        meet_strong, ms_wit = _meet_strong_exhaustive(lat, rows, cols)
        join_compatible, meet_compatible = _compat_exhaustive(
            lat, rows, cols, join_compatible, meet_compatible)
    else:
        join_strong, js_wit = _join_strong_binary(lat, rows, cols)
        meet_strong, ms_wit = _meet_strong_binary(lat, rows, cols)
    if not join_strong and js_wit is not None:
        witnesses.append(("join_strong", js_wit))
    if not meet_strong and ms_wit is not None:
        witnesses.append(("meet_strong", ms_wit))

    increasing = True
    for a in range(n):
        stray = rows[a] & ~lat.up[a]
        if stray:
            increasing = False
            witnesses.append(("increasing", (a, (stray & -stray).bit_length() - 1)))
            break

    reflexive = True
    for a in range(n):
        if not rows[a] >> a & 1:
            reflexive = False
            witnesses.append(("reflexive", (a,)))
            break

    return AxiomReport(
        idempotent=idempotent,
        join_compatible=join_compatible,
        meet_compatible=meet_compatible,
        join_strong=join_strong,
        meet_strong=meet_strong,
        increasing=increasing,
        reflexive=reflexive,
        distributive=is_distributive(lat),
        witnesses=tuple(witnesses),
    )


def _join_strong_binary(lat, rows, cols):
    """a R (b1 v b2) demands u R b1, v R b2 with a R (u v v)."""
    n = lat.size
    join = lat.join
    for b1 in range(n):
        for b2 in range(b1, n):
            who = cols[join[b1][b2]]
            if not who:
                continue
            joined = 0
            for u in bits(cols[b1]):
                for v in bits(cols[b2]):
                    joined |= 1 << join[u][v]
            for a in bits(who):
                if not rows[a] & joined:
                    return False, (a, b1, b2)
    return True, None


def _meet_strong_binary(lat, rows, cols):
    n = lat.size
    meet = lat.meet
    for a1 in range(n):
        for a2 in range(a1, n):
            what = rows[meet[a1][a2]]
            if not what:
                continue
            met = 0
            for u in bits(rows[a1]):
                for v in bits(rows[a2]):
                    met |= 1 << meet[u][v]
            for b in bits(what):
                if not cols[b] & met:
                    return False, (a1, a2, b)
    return True, None


def _join_table(lat: FiniteLattice) -> list[int]:
    out = [lat.bot] * (1 << lat.size)
    for mask in range(1, 1 << lat.size):
        low = (mask & -mask).bit_length() - 1
        out[mask] = lat.join[out[mask & (mask - 1)]][low]
    return out


def _meet_table(lat: FiniteLattice) -> list[int]:
    out = [lat.top] * (1 << lat.size)
    for mask in range(1, 1 << lat.size):
        low = (mask & -mask).bit_length() - 1
        out[mask] = lat.meet[out[mask & (mask - 1)]][low]
    return out


def _compat_exhaustive(lat, rows, cols, jc, mc):
    n = lat.size
    joins = _join_table(lat)
    meets = _meet_table(lat)
    for mask in range(1 << n):
        for b in range(n):
            if bool(rows[joins[mask]] >> b & 1) != is_subset(mask, cols[b]):
                jc = False
        for a in range(n):
            if bool(rows[a] >> meets[mask] & 1) != is_subset(mask, rows[a]):
                mc = False
    return jc, mc


def _join_strong_exhaustive(lat, rows, cols):
    n = lat.size
    joins = _join_table(lat)
    for bmask in range(1 << n):
        pre = 0
        for b in bits(bmask):
            pre |= cols[b]
        for a in bits(cols[joins[bmask]]):
            if not any(rows[a] >> joins[sub] & 1 for sub in submasks(pre)):
                return False, (a,) + tuple(bits(bmask))
    return True, None


def _meet_strong_exhaustive(lat, rows, cols):
    n = lat.size
    meets = _meet_table(lat)
    for amask in range(1 << n):
        post = 0
        for a in bits(amask):
            post |= rows[a]
        for b in bits(rows[meets[amask]]):
            if not any(cols[b] >> meets[sub] & 1 for sub in submasks(post)):
                return False, tuple(bits(amask)) + (b,)
    return True, None


# ---------------------------------------------------------------------------
# Proximity lattices and round subsets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProximityLattice:
    lattice: FiniteLattice
    R: Relation
    report: AxiomReport

    @property
    def size(self) -> int:
        return self.lattice.size

    @property
    def join_strong(self) -> bool:
        return self.report.join_strong

    @property
    def meet_strong(self) -> bool:
        return self.report.meet_strong

    @property
    def doubly_strong(self) -> bool:
        return self.report.doubly_strong

    @property
    def increasing(self) -> bool:
        return self.report.increasing

    @property
    def reflexive(self) -> bool:
        return self.report.reflexive

    @property
    def distributive(self) -> bool:
        return self.report.distributive

    def same_carrier(self, other: "ProximityLattice") -> bool:
        return self.lattice == other.lattice and self.R == other.R


def proximity_lattice(lat: FiniteLattice, rel: Relation) -> ProximityLattice:
    """Validate the axioms and wrap; raises NotAProximityLattice otherwise."""
    report = verify_axioms(lat, rel)
    if not report.axioms_ok:
        raise NotAProximityLattice(
            "relation violates the proximity axioms", report.witnesses)
    return ProximityLattice(lat, rel, report)


def order_proximity(lat: FiniteLattice) -> ProximityLattice:
    """(L, <=): the canonical reflexive, doubly strong proximity lattice."""
    return proximity_lattice(lat, order_relation(lat))


def opposite_proximity(p: ProximityLattice) -> ProximityLattice:
    """(L^op, R^-1); swaps join-strong with meet-strong."""
    from .lattice import opposite
    return proximity_lattice(opposite(p.lattice), p.R.converse())


def is_round_ideal(p: ProximityLattice, mask: int) -> bool:
    """Definition check: nonempty, R-preimage fixpoint, join-closed."""
    if mask == 0:
        return False
    if p.R.preimage(mask) != mask:
        return False
    for a in bits(mask):
        for b in bits(mask):
            if not mask >> p.lattice.join[a][b] & 1:
                return False
    return True


def is_round_filter(p: ProximityLattice, mask: int) -> bool:
    if mask == 0:
        return False
    if p.R.image(mask) != mask:
        return False
    for a in bits(mask):
        for b in bits(mask):
            if not mask >> p.lattice.meet[a][b] & 1:
                return False
    return True


def round_ideal_masks(p: ProximityLattice) -> tuple[int, ...]:
    """All round ideals, each as a member mask, in canonical order.

    A round ideal is a lattice ideal, and a lattice ideal of a finite
    lattice is a principal down-set, so only down-sets need testing
    against the fixpoint condition. ``round_subsets_slow`` filters all
    subsets instead and is kept as the validation oracle.
    """
    out = []
    for m in range(p.size):
        mask = p.lattice.down[m]
        if p.R.preimage(mask) == mask:
            out.append(mask)
    return tuple(sorted(out, key=lambda m: (m.bit_count(), m)))


def round_filter_masks(p: ProximityLattice) -> tuple[int, ...]:
    out = []
    for m in range(p.size):
        mask = p.lattice.up[m]
        if p.R.image(mask) == mask:
            out.append(mask)
    return tuple(sorted(out, key=lambda m: (m.bit_count(), m)))


def round_subsets_slow(p: ProximityLattice, kind: str) -> tuple[int, ...]:
    """Filter every nonempty join-closed (meet-closed) subset through the
    image fixpoint condition. Exponential; small carriers only."""
    if p.size > 16:
        raise ValueError("slow enumeration is limited to small carriers")
    test = is_round_ideal if kind == "ideal" else is_round_filter
    found = [m for m in range(1, 1 << p.size) if test(p, m)]
    return tuple(sorted(found, key=lambda m: (m.bit_count(), m)))


@dataclass(frozen=True)
class RoundSubset:
    carrier: ProximityLattice
    members: int
    kind: str  # "ideal" | "filter"


def round_subset(p: ProximityLattice, members: int, kind: str) -> RoundSubset:
    ok = is_round_ideal(p, members) if kind == "ideal" else is_round_filter(p, members)
    if not ok:
        raise InvalidRoundSubset(f"{members:#x} is not a round {kind}")
    return RoundSubset(p, members, kind)


def round_subsets(p: ProximityLattice, kind: str) -> tuple[RoundSubset, ...]:
    """Exhaustive list of round ideals or round filters of p."""
    if kind not in ("ideal", "filter"):
        raise ValueError("kind must be 'ideal' or 'filter'")
    masks = round_ideal_masks(p) if kind == "ideal" else round_filter_masks(p)
    return tuple(RoundSubset(p, m, kind) for m in masks)


def smallest_round_ideal_containing(p: ProximityLattice, seed: int) -> int:
    """Closure iteration: join-closure then R-preimage, until stable.

    Sound when the seed is a union of round ideals (each step is then
    inflationary); used for joins in the round-ideal lattice.
    """
    joins = p.lattice.join
    cur = seed
    while True:
        jc = cur
        while True:
            nxt = jc
            for a in bits(jc):
                for b in bits(jc):
                    nxt |= 1 << joins[a][b]
            if nxt == jc:
                break
            jc = nxt
        nxt = p.R.preimage(jc)
        if nxt == cur:
            return cur
        cur = nxt


@dataclass(frozen=True)
class RoundIdealLattice:
    carrier: ProximityLattice
    lattice: FiniteLattice           # ideals under inclusion
    ideals: tuple[int, ...]          # element index -> member mask
    way_below: Relation              # I << J iff I inside R^-1[d] for some d in J

    def index_of(self, mask: int) -> int:
        return self.ideals.index(mask)


def round_ideal_lattice(p: ProximityLattice) -> RoundIdealLattice:
    """The (finite, hence complete) lattice of round ideals under inclusion.

    Meet is the largest round ideal inside the intersection, join the
    smallest round ideal containing the union; both are exposed through
    the computed tables. Also computes the way-below relation.
    """
    ideals = round_ideal_masks(p)
    n = len(ideals)
    up = [0] * n
    for i, mi in enumerate(ideals):
        for j, mj in enumerate(ideals):
            if is_subset(mi, mj):
                up[i] |= 1 << j
    labels = ["{" + ",".join(p.lattice.labels[x] for x in bits(m)) + "}"
              for m in ideals]
    try:
        lat = lattice_from_up(labels, up)
    except NotALattice as exc:  # pragma: no cover - theorem guard
        raise InternalCheckError(
            "round ideals failed to form a lattice", exc.witness) from exc

    cols = p.R.converse().rows
    wb_rows = []
    for mi in ideals:
        row = 0
        for j, mj in enumerate(ideals):
            if any(is_subset(mi, cols[d]) for d in bits(mj)):
                row |= 1 << j
        wb_rows.append(row)
    return RoundIdealLattice(p, lat, ideals, Relation(n, n, tuple(wb_rows)))


# ---------------------------------------------------------------------------
# Morphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MorphismReport:
    proximity: bool
    proximity_via_round_sets: bool
    join_approximable: bool
    meet_approximable: bool
    witnesses: tuple[tuple[str, tuple[int, ...]], ...]

    @property
    def j_morphism(self) -> bool:
        return self.proximity and self.join_approximable

    @property
    def m_morphism(self) -> bool:
        return self.proximity and self.meet_approximable

    def flags(self) -> dict[str, bool]:
        return {
            "proximity": self.proximity,
            "j_morphism": self.j_morphism,
            "m_morphism": self.m_morphism,
        }


def verify_morphism(src: ProximityLattice, tgt: ProximityLattice,
                    rel: Relation, *, exhaustive: bool = False) -> MorphismReport:
    """Classify a relation between two proximity lattices.

    Proximity morphisms are checked two ways and the outcomes must
    agree: by the raw axioms on the converse relation (composition
    fixpoints plus join/meet compatibility) and by the round-subset
    characterisation (every row is a round ideal of the target, every
    column a round filter of the source). Disagreement is a bug and
    raises InternalCheckError.
    """
    if rel.source_size != src.size or rel.target_size != tgt.size:
        raise DimensionMismatch("relation does not match the two carriers")
    witnesses: list[tuple[str, tuple[int, ...]]] = []
    rows = rel.rows
    cols = rel.converse().rows

    raw = True
    left = compose(src.R.converse(), rel)
    if left.rows != rows:
        raw = False
        witnesses.append(("left_composition", _first_diff(left, rel)))
    right = compose(rel, tgt.R.converse())
    if right.rows != rows:
        raw = False
        witnesses.append(("right_composition", _first_diff(right, rel)))
    for a, row in enumerate(rows):
        if not _is_lattice_ideal(tgt.lattice, row):
            raw = False
            witnesses.append(("row_ideal", (a,)))
            break
    for b, col in enumerate(cols):
        if not _is_lattice_filter(src.lattice, col):
            raw = False
            witnesses.append(("column_filter", (b,)))
            break

    via = all(is_round_ideal(tgt, row) for row in rows) and \
        all(is_round_filter(src, col) for col in cols)
    if raw != via:
        raise InternalCheckError(
            "raw morphism axioms and round-subset characterisation disagree",
            witness=tuple(witnesses))

    if exhaustive:
        japprox, j_wit = _join_approx_exhaustive(src, tgt, rows, cols)
        mapprox, m_wit = _meet_approx_exhaustive(src, tgt, rows, cols)
    else:
        japprox, j_wit = _join_approx_binary(src, tgt, rows, cols)
        mapprox, m_wit = _meet_approx_binary(src, tgt, rows, cols)
    if not japprox and j_wit is not None:
        witnesses.append(("join_approximable", j_wit))
    if not mapprox and m_wit is not None:
        witnesses.append(("meet_approximable", m_wit))

    return MorphismReport(
        proximity=raw,
        proximity_via_round_sets=via,
        join_approximable=japprox,
        meet_approximable=mapprox,
        witnesses=tuple(witnesses),
    )


def _is_lattice_ideal(lat: FiniteLattice, mask: int) -> bool:
    """Down-closed, join-closed, contains bottom."""
    if not mask >> lat.bot & 1:
        return False
    for b in bits(mask):
        if not is_subset(lat.down[b], mask):
            return False
        for b2 in bits(mask):
            if not mask >> lat.join[b][b2] & 1:
                return False
    return True


def _is_lattice_filter(lat: FiniteLattice, mask: int) -> bool:
    if not mask >> lat.top & 1:
        return False
    for a in bits(mask):
        if not is_subset(lat.up[a], mask):
            return False
        for a2 in bits(mask):
            if not mask >> lat.meet[a][a2] & 1:
                return False
    return True


def _join_approx_binary(src, tgt, rows, cols):
    """(b1 v b2) T m demands u in T[b1], v in T[b2] with m S (u v v);
    the empty instance demands m S bot for every m in T[bot]."""
    sl, tl = src.lattice, tgt.lattice
    for m in bits(rows[sl.bot]):
        if not tgt.R.rows[m] >> tl.bot & 1:
            return False, (m,)
    for b1 in range(sl.size):
        for b2 in range(b1, sl.size):
            targets = rows[sl.join[b1][b2]]
            if not targets:
                continue
            joined = 0
            for u in bits(rows[b1]):
                for v in bits(rows[b2]):
                    joined |= 1 << tl.join[u][v]
            for m in bits(targets):
                if not tgt.R.rows[m] & joined:
                    return False, (b1, b2, m)
    return True, None


def _meet_approx_binary(src, tgt, rows, cols):
    sl, tl = src.lattice, tgt.lattice
    src_cols = src.R.converse().rows
    for b in bits(cols[tl.top]):
        if not src_cols[b] >> sl.top & 1:
            return False, (b,)
    for a1 in range(tl.size):
        for a2 in range(a1, tl.size):
            sources = cols[tl.meet[a1][a2]]
            if not sources:
                continue
            met = 0
            for u in bits(cols[a1]):
                for v in bits(cols[a2]):
                    met |= 1 << sl.meet[u][v]
            for b in bits(sources):
                if not src_cols[b] & met:
                    return False, (a1, a2, b)
    return True, None


def _join_approx_exhaustive(src, tgt, rows, cols):
    sl, tl = src.lattice, tgt.lattice
    if sl.size > _EXHAUSTIVE_LIMIT or tl.size > _EXHAUSTIVE_LIMIT:
        raise ValueError("exhaustive mode is limited to small carriers")
    src_joins = _join_table(sl)
    tgt_joins = _join_table(tl)
    for bmask in range(1 << sl.size):
        img = 0
        for b in bits(bmask):
            img |= rows[b]
        for m in bits(rows[src_joins[bmask]]):
            if not any(tgt.R.rows[m] >> tgt_joins[sub] & 1
                       for sub in submasks(img)):
                return False, tuple(bits(bmask)) + (m,)
    return True, None


def _meet_approx_exhaustive(src, tgt, rows, cols):
    sl, tl = src.lattice, tgt.lattice
    if sl.size > _EXHAUSTIVE_LIMIT or tl.size > _EXHAUSTIVE_LIMIT:
        raise ValueError("exhaustive mode is limited to small carriers")
    tgt_meets = _meet_table(tl)
    src_meets = _meet_table(sl)
    src_cols = src.R.converse().rows
    for amask in range(1 << tl.size):
        pre = 0
        for a in bits(amask):
            pre |= cols[a]
        for b in bits(cols[tgt_meets[amask]]):
            if not any(src_cols[b] >> src_meets[sub] & 1
                       for sub in submasks(pre)):
                return False, tuple(bits(amask)) + (b,)
    return True, None


@dataclass(frozen=True)
class ProximityMorphism:
    """A relation between proximity lattices with its verified class flags."""

    source: ProximityLattice
    target: ProximityLattice
    T: Relation
    report: MorphismReport

    @property
    def is_proximity(self) -> bool:
        return self.report.proximity

    @property
    def is_j(self) -> bool:
        return self.report.j_morphism

    @property
    def is_m(self) -> bool:
        return self.report.m_morphism


def proximity_morphism(src: ProximityLattice, tgt: ProximityLattice,
                       rel: Relation) -> ProximityMorphism:
    return ProximityMorphism(src, tgt, rel, verify_morphism(src, tgt, rel))


def morph_compose(t: ProximityMorphism, u: ProximityMorphism) -> ProximityMorphism:
    """Relational composite; t runs first."""
    if not t.target.same_carrier(u.source):
        raise DimensionMismatch("middle proximity lattices differ")
    return proximity_morphism(t.source, u.target, compose(t.T, u.T))


def identity_morphism(p: ProximityLattice) -> ProximityMorphism:
    """R^-1, the identity for composition of j-morphisms."""
    if not p.join_strong:
        raise NotJoinStrong("identity morphism needs a join-strong carrier")
    ident = proximity_morphism(p, p, p.R.converse())
    if not ident.is_j:  # pragma: no cover - theorem guard
        raise InternalCheckError("converse of R failed to be a j-morphism")
    return ident


def hom_as_morphism(h: LatticeMap) -> ProximityMorphism:
    """Turn a lattice map h into the relation {(a, b) : b <= h(a)}
    between the order proximity lattices of its endpoints.

    The relation is a j-morphism exactly when h is a homomorphism;
    the report carries the verdict either way.
    """
    src = order_proximity(h.source)
    tgt = order_proximity(h.target)
    rows = tuple(h.target.down[h.table[a]] for a in range(h.source.size))
    rel = Relation(h.source.size, h.target.size, rows)
    return ProximityMorphism(src, tgt, rel, verify_morphism(src, tgt, rel))


@dataclass(frozen=True)
class IdealLatticeHom:
    map: LatticeMap
    source_ideals: RoundIdealLattice
    target_ideals: RoundIdealLattice


def ideal_lattice_hom(t: ProximityMorphism) -> IdealLatticeHom:
    """Push a j-morphism forward to a homomorphism of round-ideal lattices,
    sending an ideal I to the image T[I]."""
    if not t.is_j:
        raise NotAJMorphism("only j-morphisms act on round-ideal lattices")
    ridl_src = round_ideal_lattice(t.source)
    ridl_tgt = round_ideal_lattice(t.target)
    table = []
    for mask in ridl_src.ideals:
        image = t.T.image(mask)
        try:
            table.append(ridl_tgt.index_of(image))
        except ValueError:  # pragma: no cover - theorem guard
            raise InternalCheckError(
                "image of a round ideal is not a round ideal", witness=mask)
    lm = LatticeMap(ridl_src.lattice, ridl_tgt.lattice, tuple(table))
    if not is_homomorphism(lm):  # pragma: no cover - theorem guard
        raise InternalCheckError("induced ideal map is not a homomorphism")
    return IdealLatticeHom(lm, ridl_src, ridl_tgt)


# ---------------------------------------------------------------------------
# Adjunction transposes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdealValuedHom:
    """A homomorphism from a lattice into the round-ideal lattice of a
    proximity lattice, stored by its ideal values."""

    source: FiniteLattice
    target: ProximityLattice
    values: tuple[int, ...]  # source element -> round ideal mask


def transpose_to_hom(t: ProximityMorphism) -> IdealValuedHom:
    """Transpose a j-morphism out of an order proximity lattice into the
    homomorphism a -> T[a]."""
    if t.source.R.rows != t.source.lattice.up:
        raise TransposeError("transpose needs an order proximity source")
    if not t.is_j:
        raise TransposeError("transpose needs a j-morphism")
    values = t.T.rows
    hom = IdealValuedHom(t.source.lattice, t.target, tuple(values))
    _validate_ideal_valued_hom(hom)
    return hom


def _validate_ideal_valued_hom(f: IdealValuedHom) -> RoundIdealLattice:
    ridl = round_ideal_lattice(f.target)
    index = []
    for a, mask in enumerate(f.values):
        if not is_round_ideal(f.target, mask):
            raise TransposeError(
                f"value at {f.source.labels[a]!r} is not a (nonempty) round ideal")
        index.append(ridl.index_of(mask))
    lm = LatticeMap(f.source, ridl.lattice, tuple(index))
    if not is_homomorphism(lm):
        raise TransposeError("values do not form a lattice homomorphism")
    return ridl


def transpose_to_morphism(f: IdealValuedHom) -> ProximityMorphism:
    """Transpose a homomorphism into a round-ideal lattice back to the
    j-morphism a T b iff b in f(a)."""
    _validate_ideal_valued_hom(f)
    src = order_proximity(f.source)
    rel = Relation(f.source.size, f.target.size, f.values)
    t = proximity_morphism(src, f.target, rel)
    if not t.is_j:  # pragma: no cover - theorem guard
        raise InternalCheckError("transpose of a homomorphism is not a j-morphism")
    return t


def adjunction_transpose(direction: str, value):
    """Dispatcher for the two transposes; they are mutually inverse."""
    if direction == "to_hom":
        return transpose_to_hom(value)
    if direction == "to_morphism":
        return transpose_to_morphism(value)
    raise TransposeError(f"unknown direction {direction!r}")


# ---------------------------------------------------------------------------
# Increasing presentation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IncreasingPresentation:
    output: ProximityLattice         # (round ideals, way-below)
    ideals: RoundIdealLattice
    phi: ProximityMorphism           # a Phi I  iff  I << R^-1[a]
    psi: ProximityMorphism           # I Psi a  iff  a in I


def increasing_presentation(p: ProximityLattice) -> IncreasingPresentation:
    """Replace a join-strong proximity lattice by the increasing one on
    its round ideals with the way-below relation; Phi and Psi realise
    the isomorphism, composing to R^-1 and to the converse of way-below.
    """
    if not p.join_strong:
        raise NotJoinStrong("increasing presentation needs join-strongness")
    ridl = round_ideal_lattice(p)
    out = proximity_lattice(ridl.lattice, ridl.way_below)
    if not (out.increasing and out.join_strong):  # pragma: no cover
        raise InternalCheckError("way-below output lost expected flags")

    cols = p.R.converse().rows
    wb = ridl.way_below
    n_i = len(ridl.ideals)
    phi_rows = []
    for a in range(p.size):
        target_ideal = ridl.index_of(cols[a])  # R^-1[a] is always round
        row = 0
        for i in range(n_i):
            if wb.has(i, target_ideal):
                row |= 1 << i
        phi_rows.append(row)
    phi = proximity_morphism(p, out, Relation(p.size, n_i, tuple(phi_rows)))

    psi_rows = tuple(ridl.ideals)
    psi = proximity_morphism(out, p, Relation(n_i, p.size, psi_rows))

    if not (phi.is_j and psi.is_j):  # pragma: no cover - theorem guard
        raise InternalCheckError("presentation morphisms are not j-morphisms")
    if compose(phi.T, psi.T) != p.R.converse():
        raise InternalCheckError("Phi;Psi is not R^-1")
    if compose(psi.T, phi.T) != wb.converse():
        raise InternalCheckError("Psi;Phi is not the converse of way-below")
    return IncreasingPresentation(out, ridl, phi, psi)


# ---------------------------------------------------------------------------
# Morphism enumeration (corpus tooling)
# ---------------------------------------------------------------------------

def all_proximity_morphisms(src: ProximityLattice, tgt: ProximityLattice,
                            *, limit: int = 200_000) -> list[ProximityMorphism]:
    """Every proximity morphism src -> tgt, exhaustively.

    Rows of a proximity morphism are round ideals of the target, so the
    search space is the functions from the source carrier into the
    (principal) round ideals, filtered through verify_morphism.
    """
    ideals = round_ideal_masks(tgt)
    total = len(ideals) ** src.size
    if total > limit:
        raise ValueError(f"search space {total} exceeds limit {limit}")
    found = []
    for rows in itertools.product(ideals, repeat=src.size):
        rel = Relation(src.size, tgt.size, rows)
        report = verify_morphism(src, tgt, rel)
        if report.proximity:
            found.append(ProximityMorphism(src, tgt, rel, report))
    return found


def all_j_morphisms(src: ProximityLattice, tgt: ProximityLattice,
                    *, limit: int = 200_000) -> list[ProximityMorphism]:
    return [t for t in all_proximity_morphisms(src, tgt, limit=limit) if t.is_j]
