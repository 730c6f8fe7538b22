"""Prime round filters, spectra, finite-space topology, and duality checks.

Desk-scale caveat, recorded once here: every finite space is
Alexandrov, so its open sets are exactly the up-sets of the
specialization preorder, every saturated set is open (the opens are
closed under all intersections), and every subset is compact. The
compact-saturated family therefore coincides with the opens, all
finite T0 spaces are sober and spectral, and distinctions the theory
draws between spectral and stably compact spaces are invisible at this
scale. What remains testable is everything on the lattice side.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .bitset import bits, is_subset
from .canext import (
    CanonicalExtension,
    check_uniqueness,
    make_extension,
    pi_extension,
    verify_extension,
)
from .errors import (
    InternalCheckError,
    InvalidRoundSubset,
    NotAJMorphism,
    NotDistributive,
    NotT0,
    ProxlatError,
)
from .lattice import FiniteLattice, LatticeMap, lattice_from_up
from .proximity import (
    ProximityLattice,
    ProximityMorphism,
    RoundSubset,
    all_j_morphisms,
    is_round_filter,
    is_round_ideal,
    proximity_lattice,
    proximity_morphism,
    round_filter_masks,
)
from .relations import Relation, compose


# ---------------------------------------------------------------------------
# Finite spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteSpace:
    points: int
    opens: tuple[int, ...]       # sorted point-set masks
    labels: tuple[str, ...]

    @property
    def full(self) -> int:
        return (1 << self.points) - 1

    def is_open(self, mask: int) -> bool:
        return mask in self.opens


def finite_space(labels, opens) -> FiniteSpace:
    """Validate a topology: empty and full present, closed under union
    and intersection (finite suffices on a finite carrier)."""
    n = len(labels)
    family = sorted(set(opens), key=lambda m: (m.bit_count(), m))
    full = (1 << n) - 1
    if 0 not in family or full not in family:
        raise ProxlatError("a topology contains the empty and the full set")
    fam = set(family)
    for u in family:
        if u & ~full:
            raise ProxlatError("open set outside the carrier")
        for v in family:
            if u | v not in fam or u & v not in fam:
                raise ProxlatError("opens are not closed under union/intersection")
    return FiniteSpace(n, tuple(family), tuple(labels))


def specialization(space: FiniteSpace) -> tuple[int, ...]:
    """up[x] = {y : every open containing x contains y}."""
    up = [space.full] * space.points
    for u in space.opens:
        for x in bits(u):
            up[x] &= u
    return tuple(up)


def is_t0(space: FiniteSpace) -> bool:
    up = specialization(space)
    for x in range(space.points):
        for y in bits(up[x]):
            if x != y and up[y] >> x & 1:
                return False
    return True


def saturated_sets(space: FiniteSpace) -> tuple[int, ...]:
    """Intersections of opens; on a finite carrier this is the opens
    family itself, which equals the up-sets of specialization."""
    return space.opens


def saturated_lattice(space: FiniteSpace) -> FiniteLattice:
    """The complete lattice of saturated sets under inclusion."""
    sats = saturated_sets(space)
    n = len(sats)
    up = [0] * n
    for i in range(n):
        for j in range(n):
            if is_subset(sats[i], sats[j]):
                up[i] |= 1 << j
    labels = [_point_set_label(m, space.labels) for m in sats]
    return lattice_from_up(labels, up)


def _point_set_label(mask: int, labels) -> str:
    return "{" + ",".join(labels[i] for i in bits(mask)) + "}"


def co_compact_dual(space: FiniteSpace) -> FiniteSpace:
    """Opens become complements of compact saturated sets; taking the
    dual twice gives back the original space."""
    dual = finite_space(space.labels,
                        [space.full & ~k for k in saturated_sets(space)])
    back = [dual.full & ~k for k in saturated_sets(dual)]
    if tuple(sorted(back, key=lambda m: (m.bit_count(), m))) != space.opens:
        raise InternalCheckError("co-compact dual failed to be an involution")
    return dual


def all_posets(n: int) -> Iterator[tuple[int, ...]]:
    """All partial orders on 0..n-1 as up-set masks (labelled, exhaustive)."""
    if n == 0:
        yield ()
        return
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    for choice in range(1 << len(pairs)):
        up = [1 << a for a in range(n)]
        for k in bits(choice):
            a, b = pairs[k]
            up[a] |= 1 << b
        ok = True
        for a in range(n):
            for b in bits(up[a]):
                if a != b and up[b] >> a & 1:
                    ok = False
                    break
                if up[b] & ~up[a]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield tuple(up)


def all_t0_spaces(n: int) -> Iterator[FiniteSpace]:
    """Every T0 topology on n labelled points: up-set families of the
    partial orders on the carrier."""
    labels = [str(i) for i in range(n)]
    for up in all_posets(n):
        opens = set()
        for mask in range(1 << n):
            closure = 0
            for x in bits(mask):
                closure |= up[x]
            opens.add(closure)
        yield finite_space(labels, opens)


def find_homeomorphism(a: FiniteSpace, b: FiniteSpace) -> Optional[tuple[int, ...]]:
    """A bijection carrying opens onto opens, by search; None if absent."""
    if a.points != b.points or len(a.opens) != len(b.opens):
        return None
    for perm in itertools.permutations(range(b.points)):
        mapped = set()
        for u in a.opens:
            img = 0
            for x in bits(u):
                img |= 1 << perm[x]
            mapped.add(img)
        if mapped == set(b.opens):
            return perm
    return None


# ---------------------------------------------------------------------------
# Prime round filters and spectra
# ---------------------------------------------------------------------------

def _is_prime_filter_mask(p: ProximityLattice, mask: int) -> bool:
    """Membership of a finite join forces membership of a member; the
    empty join rules out bottom. Binary plus empty imply all finite
    instances by induction."""
    if mask >> p.lattice.bot & 1:
        return False
    for a in range(p.size):
        for b in range(a, p.size):
            if mask >> p.lattice.join[a][b] & 1:
                if not (mask >> a & 1 or mask >> b & 1):
                    return False
    return True


def prime_round_filters(p: ProximityLattice, *,
                        allow_nondistributive: bool = False) -> tuple[int, ...]:
    """All prime round filters, as member masks, in canonical order.

    Distributivity is required for the spectrum theory; exploratory
    runs on nondistributive carriers need the explicit flag.
    """
    if not p.distributive and not allow_nondistributive:
        raise NotDistributive("prime filters live on distributive carriers; "
                              "pass allow_nondistributive=True to explore")
    return tuple(m for m in round_filter_masks(p) if _is_prime_filter_mask(p, m))


def prime_filter_between(p: ProximityLattice, g: RoundSubset,
                         j: RoundSubset) -> Optional[RoundSubset]:
    """A prime round filter containing g and avoiding j, when disjoint.

    The finite family of round filters that contain g and avoid j has
    maximal members; any maximal member is prime (this needs the
    distributive, join-strong hypotheses and is asserted with a full
    witness on failure). Returns None when g meets j.
    """
    if not (p.distributive and p.join_strong):
        raise NotDistributive(
            "the prime filter theorem needs a distributive join-strong carrier")
    if g.kind != "filter" or not is_round_filter(p, g.members):
        raise InvalidRoundSubset("g must be a round filter of p")
    if j.kind != "ideal" or not is_round_ideal(p, j.members):
        raise InvalidRoundSubset("j must be a round ideal of p")
    if g.members & j.members:
        return None
    family = [m for m in round_filter_masks(p)
              if is_subset(g.members, m) and not m & j.members]
    maximal = [m for m in family
               if not any(m != m2 and is_subset(m, m2) for m2 in family)]
    chosen = min(maximal)
    if not _is_prime_filter_mask(p, chosen):
        raise InternalCheckError(
            "maximal separating filter failed to be prime", witness=chosen)
    return RoundSubset(p, chosen, "filter")


@dataclass(frozen=True)
class SpectrumResult:
    source: ProximityLattice
    space: FiniteSpace
    point_filters: tuple[int, ...]   # point index -> filter mask in L
    basic_open: tuple[int, ...]      # d in L -> point mask U_d


def spectrum(p: ProximityLattice) -> SpectrumResult:
    """The space of prime round filters with basic opens U_d = {F : d in F}.

    The basic opens are closed under intersection (U_d meet U_e is
    U_{d and e}) and, by primality, under union (U_{d or e}), so together
    with the empty set they are the whole topology; both identities are
    asserted below.
    """
    if not p.distributive:
        raise NotDistributive("spectra need distributive carriers")
    points = prime_round_filters(p)
    k = len(points)
    basic = tuple(
        sum(1 << i for i, fm in enumerate(points) if fm >> d & 1)
        for d in range(p.size))
    for d in range(p.size):
        for e in range(p.size):
            if basic[p.lattice.meet[d][e]] != basic[d] & basic[e]:
                raise InternalCheckError("basic opens broke intersections",
                                         witness=(d, e))
            if basic[p.lattice.join[d][e]] != basic[d] | basic[e]:
                raise InternalCheckError("primality broke unions",
                                         witness=(d, e))
    labels = [_point_set_label(fm, p.lattice.labels) for fm in points]
    space = finite_space(labels, set(basic) | {0, (1 << k) - 1})
    return SpectrumResult(p, space, points, basic)


# ---------------------------------------------------------------------------
# Presentations of finite spaces
# ---------------------------------------------------------------------------

def open_basis_presentation(space: FiniteSpace) -> ProximityLattice:
    """All opens under inclusion, related by interpolation through a
    compact saturated set. On finite carriers every open is itself
    saturated, so the relation collapses to inclusion (asserted);
    the result is join-strong, increasing, and distributive.
    """
    if not is_t0(space):
        raise NotT0("open-basis presentations are for T0 spaces")
    opens = space.opens
    n = len(opens)
    sats = saturated_sets(space)
    rows = []
    for d in opens:
        row = 0
        for j, e in enumerate(opens):
            if any(is_subset(d, k) and is_subset(k, e) for k in sats):
                row |= 1 << j
        rows.append(row)
    up = [0] * n
    for i in range(n):
        for j in range(n):
            if is_subset(opens[i], opens[j]):
                up[i] |= 1 << j
    if tuple(rows) != tuple(up):
        raise InternalCheckError("interpolation relation is not inclusion "
                                 "on a finite carrier")
    labels = [_point_set_label(m, space.labels) for m in opens]
    lat = lattice_from_up(labels, up)
    p = proximity_lattice(lat, Relation(n, n, tuple(rows)))
    if not (p.join_strong and p.increasing and p.distributive):
        raise InternalCheckError("open-basis presentation lost expected flags")
    return p


def compsat_basis_presentation(space: FiniteSpace) -> ProximityLattice:
    """Meet-strong presentation on the compact saturated sets, realized
    as the opposite of the open-basis presentation of the co-compact
    dual (complements identify the two carriers)."""
    from .proximity import opposite_proximity
    p = open_basis_presentation(co_compact_dual(space))
    out = opposite_proximity(p)
    if not (out.meet_strong and out.distributive):
        raise InternalCheckError("compsat presentation lost expected flags")
    return out


def pairs_presentation(space: FiniteSpace) -> ProximityLattice:
    """The doubly strong presentation on pairs (open d, saturated e)
    with d inside e, ordered componentwise, related by e inside d'."""
    if not is_t0(space):
        raise NotT0("pair presentations are for T0 spaces")
    opens = space.opens
    sats = saturated_sets(space)
    elems = [(d, e) for d in opens for e in sats if is_subset(d, e)]
    elems.sort(key=lambda de: (de[0].bit_count() + de[1].bit_count(), de))
    n = len(elems)
    up = [0] * n
    for i, (d, e) in enumerate(elems):
        for j, (d2, e2) in enumerate(elems):
            if is_subset(d, d2) and is_subset(e, e2):
                up[i] |= 1 << j
    rows = [0] * n
    for i, (d, e) in enumerate(elems):
        for j, (d2, e2) in enumerate(elems):
            if is_subset(e, d2):
                rows[i] |= 1 << j
    labels = [f"({_point_set_label(d, space.labels)}"
              f",{_point_set_label(e, space.labels)})" for d, e in elems]
    lat = lattice_from_up(labels, up)
    p = proximity_lattice(lat, Relation(n, n, tuple(rows)))
    if not (p.doubly_strong and p.distributive):
        raise InternalCheckError("pair presentation lost expected flags")
    return p


# ---------------------------------------------------------------------------
# Canonical extension via the spectrum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DualityResult:
    spectrum: SpectrumResult
    sat_lattice: FiniteLattice
    sat_sets: tuple[int, ...]
    extension: CanonicalExtension        # the saturated-set realization
    pi_ext: CanonicalExtension           # the polarity construction
    iso: LatticeMap                      # pi_ext.C -> sat_lattice


def canext_via_duality(p: ProximityLattice) -> DualityResult:
    """Realize the pi extension on the saturated sets of the spectrum.

    d goes to its basic open U_d; the result verifies as a pi extension
    and is uniquely isomorphic to the polarity construction, with
    commuting embeddings. Failures raise InternalCheckError since both
    facts are theorems for distributive join-strong carriers.
    """
    spec_res = spectrum(p)
    sats = saturated_sets(spec_res.space)
    sat_lat = saturated_lattice(spec_res.space)
    position = {m: i for i, m in enumerate(sats)}
    embed = tuple(position[spec_res.basic_open[d]] for d in range(p.size))
    ext = make_extension("pi", p, sat_lat, embed)
    report = verify_extension(ext)
    if not report.passes("pi"):
        raise InternalCheckError("saturated-set realization failed to verify",
                                 witness=report.witnesses)
    pi = pi_extension(p)
    iso = check_uniqueness(pi, ext)
    if iso is None:
        raise InternalCheckError("no isomorphism onto the saturated sets")
    return DualityResult(spec_res, sat_lat, sats, ext, pi, iso)


def spectrum_roundtrip(space: FiniteSpace) -> bool:
    """The spectrum of the open-basis presentation is homeomorphic to
    the space itself; the witness is searched for."""
    spec_res = spectrum(open_basis_presentation(space))
    return find_homeomorphism(space, spec_res.space) is not None


# ---------------------------------------------------------------------------
# Dual maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DualMap:
    """The continuous map between spectra induced by a j-morphism,
    sending a prime round filter to its preimage."""

    morphism: ProximityMorphism
    domain: SpectrumResult      # spectrum of the morphism target
    codomain: SpectrumResult    # spectrum of the morphism source
    point_map: tuple[int, ...]


def dual_map(t: ProximityMorphism) -> DualMap:
    if not t.is_j:
        raise NotAJMorphism("only j-morphisms dualize to continuous maps")
    dom = spectrum(t.target)
    cod = spectrum(t.source)
    position = {m: i for i, m in enumerate(cod.point_filters)}
    point_map = []
    for fm in dom.point_filters:
        pre = t.T.preimage(fm)
        if pre not in position:
            raise InternalCheckError(
                "preimage of a prime filter is not a prime filter", witness=fm)
        point_map.append(position[pre])
    for d in range(t.source.size):
        pre_open = 0
        for q, img in enumerate(point_map):
            if cod.basic_open[d] >> img & 1:
                pre_open |= 1 << q
        if not dom.space.is_open(pre_open):
            raise InternalCheckError("dual map is not continuous", witness=d)
    return DualMap(t, dom, cod, tuple(point_map))


# ---------------------------------------------------------------------------
# Retractions and the idempotent-splitting picture
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralProximitySpace:
    """A finite T0 space with a continuous idempotent self-map."""

    space: FiniteSpace
    f: tuple[int, ...]


def _continuous(dom: FiniteSpace, cod: FiniteSpace, g) -> bool:
    for u in cod.opens:
        pre = 0
        for x in range(dom.points):
            if u >> g[x] & 1:
                pre |= 1 << x
        if not dom.is_open(pre):
            return False
    return True


def spectral_proximity_space(space: FiniteSpace, f) -> SpectralProximitySpace:
    f = tuple(f)
    if not is_t0(space):
        raise NotT0("spectral proximity spaces are T0 at this scale")
    if not _continuous(space, space, f):
        raise ProxlatError("the retraction must be continuous")
    if any(f[f[x]] != f[x] for x in range(space.points)):
        raise ProxlatError("the self-map must be idempotent")
    return SpectralProximitySpace(space, f)


def karoubi_check(x: SpectralProximitySpace, x2: SpectralProximitySpace,
                  g) -> bool:
    """g is a morphism of retraction pairs: continuous with
    f' after g = g = g after f. The retraction itself is the identity
    morphism of its own pair."""
    g = tuple(g)
    if len(g) != x.space.points:
        return False
    if not _continuous(x.space, x2.space, g):
        return False
    absorbed_left = all(x2.f[g[p]] == g[p] for p in range(x.space.points))
    absorbed_right = all(g[x.f[p]] == g[p] for p in range(x.space.points))
    return absorbed_left and absorbed_right


def retract_image(x: SpectralProximitySpace) -> FiniteSpace:
    """The image of the retraction with the subspace topology; at this
    scale the result is again a finite T0 space."""
    image = sorted(set(x.f))
    reindex = {p: i for i, p in enumerate(image)}
    opens = set()
    for u in x.space.opens:
        m = 0
        for p in image:
            if u >> p & 1:
                m |= 1 << reindex[p]
        opens.add(m)
    labels = [x.space.labels[p] for p in image]
    return finite_space(labels, opens)


# ---------------------------------------------------------------------------
# The reflexive/spectral case
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralCaseReport:
    reflexive: bool
    iso_found: bool
    exhaustive: bool           # whether absence is exhaustive at this size
    search_bound: int
    phi: Optional[ProximityMorphism]
    psi: Optional[ProximityMorphism]


def spectral_case_check(p: ProximityLattice, *,
                        search_limit: int = 4096) -> SpectralCaseReport:
    """Test whether p is j-isomorphic to an order proximity lattice on
    the opens of its spectrum.

    When R is reflexive the natural candidates phi = {(d, U) : U below
    U_d} and psi = {(U, d) : U_d below U} realize the isomorphism and
    are verified directly. Otherwise (and as a fallback) all pairs of
    j-morphisms are searched when the space is small enough; a negative
    answer at the bound is evidence, not proof, unless flagged
    exhaustive.
    """
    if not (p.distributive and p.join_strong):
        raise NotDistributive("the spectral comparison needs a distributive "
                              "join-strong carrier")
    spec_res = spectrum(p)
    opens = spec_res.space.opens
    n_e = len(opens)
    up = [0] * n_e
    for i in range(n_e):
        for j in range(n_e):
            if is_subset(opens[i], opens[j]):
                up[i] |= 1 << j
    labels = [_point_set_label(m, spec_res.space.labels) for m in opens]
    e = proximity_lattice(lattice_from_up(labels, up),
                          Relation(n_e, n_e, tuple(up)))

    def iso_pair(phi: ProximityMorphism, psi: ProximityMorphism) -> bool:
        return (phi.is_j and psi.is_j
                and compose(phi.T, psi.T) == p.R.converse()
                and compose(psi.T, phi.T) == e.R.converse())

    position = {m: i for i, m in enumerate(opens)}
    phi_rows = tuple(
        sum(1 << i for i, u in enumerate(opens)
            if is_subset(u, spec_res.basic_open[d]))
        for d in range(p.size))
    psi_rows = tuple(
        sum(1 << d for d in range(p.size)
            if is_subset(spec_res.basic_open[d], u))
        for u in opens)
    phi = proximity_morphism(p, e, Relation(p.size, n_e, phi_rows))
    psi = proximity_morphism(e, p, Relation(n_e, p.size, psi_rows))
    if iso_pair(phi, psi):
        return SpectralCaseReport(p.reflexive, True, True, 0, phi, psi)

    searched_all = False
    if p.size * n_e <= 12:
        try:
            forward = all_j_morphisms(p, e, limit=search_limit)
            backward = all_j_morphisms(e, p, limit=search_limit)
            searched_all = True
            for cand_phi in forward:
                for cand_psi in backward:
                    if iso_pair(cand_phi, cand_psi):
                        return SpectralCaseReport(p.reflexive, True, True,
                                                  search_limit, cand_phi,
                                                  cand_psi)
        except ValueError:
            searched_all = False
    return SpectralCaseReport(p.reflexive, False, searched_all,
                              search_limit, None, None)
