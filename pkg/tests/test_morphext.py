"""Extension of morphisms to the canonical extensions."""

import itertools

import pytest

from proxlat.canext import pi_extension, sigma_extension
from proxlat.errors import KindMismatch, NotAProximityMorphism
from proxlat.morphext import (
    check_preservation,
    compare_with_dual,
    extend_pi,
    extend_sigma,
)
from proxlat.proximity import (
    all_j_morphisms,
    all_proximity_morphisms,
    identity_morphism,
    morph_compose,
    proximity_morphism,
)
from proxlat.relations import full_relation
from proxlat.spectra import dual_map


@pytest.fixture(scope="module")
def pi_exts(distributive_corpus):
    return {k: pi_extension(v) for k, v in distributive_corpus.items()}


def test_identity_extends_to_identity(corpus, pi_exts):
    c3r = corpus["C3R"]
    m = extend_pi(identity_morphism(c3r), pi_exts["C3R"], pi_exts["C3R"])
    assert m.table == tuple(range(pi_exts["C3R"].C.size))

    c2 = corpus["C2"]
    m2 = extend_pi(identity_morphism(c2), pi_exts["C2"], pi_exts["C2"])
    assert m2.table == tuple(range(pi_exts["C2"].C.size))


def test_full_relation_extension_against_brute_force(corpus, pi_exts):
    # the all-pairs relation C3R -> C3R is a proximity morphism whose
    # extension is computed independently from the two-stage definition
    c3r = corpus["C3R"]
    t = proximity_morphism(c3r, c3r, full_relation(3, 3))
    assert t.is_proximity
    e = pi_exts["C3R"]
    m = extend_pi(t, e, e)

    c = e.C
    ideal_elems = sorted(set(e.g))
    expected = []
    for u in range(c.size):
        out = c.top
        for y in ideal_elems:
            if not c.leq(u, y):
                continue
            acc = c.bot
            for b in range(c3r.size):
                if any(c.leq(e.embed[a], y) for a in range(c3r.size)
                       if t.T.has(a, b)):
                    acc = c.join[acc][e.embed[b]]
            out = c.meet[out][acc]
        expected.append(out)
    assert m.table == tuple(expected)


def test_extension_property_for_all_corpus_morphisms(distributive_corpus, pi_exts):
    # extend_pi itself asserts agreement on embedded elements; this runs
    # it across every proximity morphism between distributive fixtures
    for (na, a), (nb, b) in itertools.product(distributive_corpus.items(), repeat=2):
        for t in all_proximity_morphisms(a, b):
            extend_pi(t, pi_exts[na], pi_exts[nb])


def test_preservation_for_j_morphisms(distributive_corpus, pi_exts):
    for (na, a), (nb, b) in itertools.product(distributive_corpus.items(), repeat=2):
        for t in all_j_morphisms(a, b):
            rep = check_preservation(extend_pi(t, pi_exts[na], pi_exts[nb]))
            assert rep.all_meets, (na, nb)
            assert rep.directed_ideal_joins, (na, nb)
            assert rep.finite_ideal_joins, (na, nb)
            # distributive sources: the dual transport predicts all joins
            assert rep.all_joins, (na, nb)


def test_preservation_for_non_j_morphisms(distributive_corpus, pi_exts):
    # proximity morphisms that are not j-morphisms must still preserve
    # meets and directed ideal joins; finite ideal joins may fail
    seen_non_j = 0
    for (na, a), (nb, b) in itertools.product(distributive_corpus.items(), repeat=2):
        for t in all_proximity_morphisms(a, b):
            if t.is_j:
                continue
            seen_non_j += 1
            rep = check_preservation(extend_pi(t, pi_exts[na], pi_exts[nb]))
            assert rep.all_meets, (na, nb)
            assert rep.directed_ideal_joins, (na, nb)
    assert seen_non_j > 0


def test_functoriality_of_extension_measured(distributive_corpus, pi_exts):
    # not asserted as an invariant: measured outcome on composable
    # corpus pairs, recorded here as the observed value
    agree = 0
    total = 0
    names = list(distributive_corpus)
    for na, nb, nc in itertools.product(names, repeat=3):
        a, b, c = (distributive_corpus[k] for k in (na, nb, nc))
        for t in all_j_morphisms(a, b):
            for u in all_j_morphisms(b, c):
                m_t = extend_pi(t, pi_exts[na], pi_exts[nb])
                m_u = extend_pi(u, pi_exts[nb], pi_exts[nc])
                m_tu = extend_pi(morph_compose(t, u), pi_exts[na], pi_exts[nc])
                composite = tuple(m_u.table[x] for x in m_t.table)
                total += 1
                if composite == m_tu.table:
                    agree += 1
    assert total > 0
    # report-only: on this corpus the composite agreed everywhere
    assert agree == total


def test_compare_with_dual(distributive_corpus, pi_exts):
    for (na, a), (nb, b) in itertools.product(distributive_corpus.items(), repeat=2):
        for t in all_j_morphisms(a, b):
            m = extend_pi(t, pi_exts[na], pi_exts[nb])
            assert compare_with_dual(m, dual_map(t)), (na, nb)


def test_extend_pi_rejects_bad_inputs(corpus, pi_exts):
    c3r = corpus["C3R"]
    not_prox = proximity_morphism(c3r, c3r, c3r.R)
    with pytest.raises(NotAProximityMorphism):
        extend_pi(not_prox, pi_exts["C3R"], pi_exts["C3R"])
    with pytest.raises(KindMismatch):
        extend_pi(identity_morphism(c3r), pi_exts["C3R"],
                  sigma_extension(c3r))


def test_sigma_extension_of_m_morphisms(distributive_corpus):
    # mirror of the pi suite: m-morphisms extend between sigma
    # extensions, preserving the order-dual properties
    sigma_exts = {k: sigma_extension(v) for k, v in distributive_corpus.items()}
    checked = 0
    for (na, a), (nb, b) in itertools.product(distributive_corpus.items(), repeat=2):
        for t in all_proximity_morphisms(a, b):
            if not t.is_m:
                continue
            m = extend_sigma(t, sigma_exts[na], sigma_exts[nb])
            rep = check_preservation(m)
            assert rep.kind == "sigma"
            assert rep.all_meets and rep.directed_ideal_joins, (na, nb)
            assert rep.finite_ideal_joins, (na, nb)
            # dual extension property: on embedded elements the map is
            # the meet of the embedded image
            c = sigma_exts[nb].C
            for x in range(a.size):
                expected = c.top
                for y in range(b.size):
                    if t.T.has(x, y):
                        expected = c.meet[expected][sigma_exts[nb].embed[y]]
                assert m.table[sigma_exts[na].embed[x]] == expected
            checked += 1
    assert checked > 0
