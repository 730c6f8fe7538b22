"""JSON documents and DOT export.

Shared text formats, all tagged "schema": "proxlat/1". The lattice
document lists the order as covering-or-full pairs; the reflexive
transitive closure is applied on load. Output documents sort keys and
list entries canonically so identical inputs give identical bytes.
"""

from __future__ import annotations

import json
from typing import Any, Sequence

from .bitset import bits
from .canext import CanonicalExtension, ExtensionReport
from .errors import ProxlatError
from .lattice import FiniteLattice, lattice_from_up
from .morphext import ExtendedMap, PreservationReport
from .proximity import (
    AxiomReport,
    MorphismReport,
    ProximityLattice,
    ProximityMorphism,
    proximity_lattice,
    proximity_morphism,
)
from .relations import Relation, relation_from_pairs
from .spectra import FiniteSpace, SpectrumResult, finite_space, specialization

SCHEMA = "proxlat/1"


class ParseError(ProxlatError):
    pass


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# Lattices
# ---------------------------------------------------------------------------

def lattice_to_doc(lat: FiniteLattice) -> dict:
    pairs = [[lat.labels[a], lat.labels[b]] for a, b in lat.covers()]
    return {
        "schema": SCHEMA,
        "kind": "lattice",
        "elements": list(lat.labels),
        "leq": pairs,
    }


def _resolve(labels: Sequence[str], name: Any) -> int:
    try:
        return labels.index(name)
    except ValueError:
        raise ParseError(f"unknown element {name!r}") from None


def lattice_from_doc(doc: dict) -> FiniteLattice:
    try:
        labels = [str(x) for x in doc["elements"]]
        raw_pairs = doc["leq"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed lattice document: {exc}") from None
    if len(set(labels)) != len(labels):
        raise ParseError("duplicate element names")
    n = len(labels)
    up = [1 << a for a in range(n)]
    for pair in raw_pairs:
        if len(pair) != 2:
            raise ParseError(f"bad order pair {pair!r}")
        a, b = (_resolve(labels, x) for x in pair)
        up[a] |= 1 << b
    changed = True
    while changed:
        changed = False
        for a in range(n):
            out = up[a]
            for b in bits(up[a]):
                out |= up[b]
            if out != up[a]:
                up[a] = out
                changed = True
    for a in range(n):
        for b in bits(up[a]):
            if a != b and up[b] >> a & 1:
                raise ParseError(
                    f"order closure is not antisymmetric at "
                    f"({labels[a]!r},{labels[b]!r})")
    return lattice_from_up(labels, up)


# ---------------------------------------------------------------------------
# Proximity lattices and morphisms
# ---------------------------------------------------------------------------

def _pairs_to_relation(labels_a, labels_b, raw) -> Relation:
    pairs = []
    for pair in raw:
        if len(pair) != 2:
            raise ParseError(f"bad relation pair {pair!r}")
        pairs.append((_resolve(labels_a, pair[0]), _resolve(labels_b, pair[1])))
    return relation_from_pairs(len(labels_a), len(labels_b), pairs)


def _relation_to_pairs(rel: Relation, labels_a, labels_b) -> list[list[str]]:
    return [[labels_a[a], labels_b[b]] for a, b in rel.pairs()]


def proximity_to_doc(p: ProximityLattice) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "proximity",
        "lattice": {k: v for k, v in lattice_to_doc(p.lattice).items()
                    if k in ("elements", "leq")},
        "R": _relation_to_pairs(p.R, p.lattice.labels, p.lattice.labels),
    }


def proximity_from_doc(doc: dict) -> ProximityLattice:
    try:
        lat = lattice_from_doc(doc["lattice"])
        raw_r = doc["R"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed proximity document: {exc}") from None
    rel = _pairs_to_relation(lat.labels, lat.labels, raw_r)
    return proximity_lattice(lat, rel)


def morphism_to_doc(t: ProximityMorphism) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "morphism",
        "source": {k: v for k, v in proximity_to_doc(t.source).items()
                   if k in ("lattice", "R")},
        "target": {k: v for k, v in proximity_to_doc(t.target).items()
                   if k in ("lattice", "R")},
        "T": _relation_to_pairs(t.T, t.source.lattice.labels,
                                t.target.lattice.labels),
    }


def morphism_from_doc(doc: dict) -> ProximityMorphism:
    try:
        src = proximity_from_doc(doc["source"])
        tgt = proximity_from_doc(doc["target"])
        raw_t = doc["T"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed morphism document: {exc}") from None
    rel = _pairs_to_relation(src.lattice.labels, tgt.lattice.labels, raw_t)
    return proximity_morphism(src, tgt, rel)


# ---------------------------------------------------------------------------
# Spaces
# ---------------------------------------------------------------------------

def space_to_doc(space: FiniteSpace) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "space",
        "points": list(space.labels),
        "opens": [[space.labels[i] for i in bits(u)] for u in space.opens],
    }


def space_from_doc(doc: dict) -> FiniteSpace:
    try:
        labels = [str(x) for x in doc["points"]]
        raw_opens = doc["opens"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed space document: {exc}") from None
    if len(set(labels)) != len(labels):
        raise ParseError("duplicate point names")
    opens = []
    for u in raw_opens:
        mask = 0
        for name in u:
            mask |= 1 << _resolve(labels, name)
        opens.append(mask)
    try:
        return finite_space(labels, opens)
    except ProxlatError as exc:
        raise ParseError(str(exc)) from None


# ---------------------------------------------------------------------------
# Reports and results
# ---------------------------------------------------------------------------

def _witnesses_doc(witnesses, labels) -> dict:
    return {name: [labels[i] for i in wit] for name, wit in witnesses}


def axiom_report_to_doc(report: AxiomReport, labels) -> dict:
    doc = {"schema": SCHEMA, "kind": "axiom_report"}
    doc.update(report.flags())
    doc["witnesses"] = _witnesses_doc(report.witnesses, labels)
    return doc


def morphism_report_to_doc(report: MorphismReport) -> dict:
    doc = {"schema": SCHEMA, "kind": "morphism_report"}
    doc.update(report.flags())
    doc["witnesses"] = {name: list(wit) for name, wit in report.witnesses}
    return doc


def extension_to_doc(ext: CanonicalExtension,
                     report: ExtensionReport | None = None) -> dict:
    labels = ext.source.lattice.labels
    doc = {
        "schema": SCHEMA,
        "kind": "extension",
        "extension_kind": ext.kind,
        "elements": [ext.C.labels[i] for i in range(ext.C.size)],
        "leq": [[ext.C.labels[a], ext.C.labels[b]] for a, b in ext.C.covers()],
        "embed": {labels[a]: ext.C.labels[ext.embed[a]]
                  for a in range(ext.source.size)},
        "round_filters": [[labels[i] for i in bits(m)] for m in ext.filters],
        "round_ideals": [[labels[i] for i in bits(m)] for m in ext.ideals],
        "filter_elements": [ext.C.labels[i] for i in ext.f],
        "ideal_elements": [ext.C.labels[i] for i in ext.g],
    }
    if ext.extents is not None:
        gen_labels = ([_round_set_labels(m, labels) for m in ext.filters]
                      if ext.kind == "pi"
                      else [_round_set_labels(m, labels) for m in ext.ideals])
        doc["closed_sets"] = [
            sorted(gen_labels[i] for i in bits(extent))
            for extent in ext.extents]
    if report is not None:
        doc["report"] = report.flags()
    return doc


def _round_set_labels(mask: int, labels) -> str:
    return "{" + ",".join(labels[i] for i in bits(mask)) + "}"


def spectrum_to_doc(result: SpectrumResult) -> dict:
    labels = result.source.lattice.labels
    return {
        "schema": SCHEMA,
        "kind": "spectrum",
        "points": [
            {"name": result.space.labels[i],
             "filter": [labels[x] for x in bits(result.point_filters[i])]}
            for i in range(result.space.points)
        ],
        "opens": space_to_doc(result.space)["opens"],
        "basic_open": {labels[d]:
                       [result.space.labels[i]
                        for i in bits(result.basic_open[d])]
                       for d in range(result.source.size)},
    }


def extended_map_to_doc(m: ExtendedMap,
                        report: PreservationReport | None = None) -> dict:
    doc = {
        "schema": SCHEMA,
        "kind": "extended_map",
        "map_kind": m.kind,
        "table": {m.source_ext.C.labels[u]: m.target_ext.C.labels[m.table[u]]
                  for u in range(m.source_ext.C.size)},
    }
    if report is not None:
        doc["report"] = report.flags()
    return doc


def diagnostic_doc(status: str, kind: str, detail: str,
                   witnesses: dict | None = None) -> dict:
    doc = {"schema": SCHEMA, "kind": "diagnostic", "status": status,
           "error": kind, "detail": detail}
    if witnesses:
        doc["witnesses"] = witnesses
    return doc


# ---------------------------------------------------------------------------
# DOT export
# ---------------------------------------------------------------------------

def dot_lattice(lat: FiniteLattice, highlight=(), name: str = "lattice") -> str:
    """Hasse diagram (cover edges only), bottom-up."""
    highlight = set(highlight)
    lines = [f"digraph {json.dumps(name)} {{", "  rankdir=BT;"]
    for a in range(lat.size):
        attrs = [f"label={json.dumps(lat.labels[a])}"]
        if a in highlight:
            attrs.append("peripheries=2")
        lines.append(f"  n{a} [{', '.join(attrs)}];")
    for a, b in lat.covers():
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_space(space: FiniteSpace, name: str = "space") -> str:
    """Specialization order of the space as a Hasse diagram."""
    up = specialization(space)
    lines = [f"digraph {json.dumps(name)} {{", "  rankdir=BT;"]
    for x in range(space.points):
        lines.append(f"  n{x} [label={json.dumps(space.labels[x])}];")
    for x in range(space.points):
        strict = up[x] & ~(1 << x)
        for y in bits(strict):
            between = False
            for z in bits(strict & ~(1 << y)):
                if up[z] >> y & 1:
                    between = True
                    break
            if not between:
                lines.append(f"  n{x} -> n{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"
