"""Command-line front end.

Verbs: check, canext, extend, spectrum, dualize, roundtrip, export-dot.
Inputs are JSON documents (see formats); fixture names (C2, C3, B2, M3,
FULL2, C3R) are accepted wherever a proximity-lattice file is expected.
Exit status: 0 all checked properties hold, 1 a property failed, 2 the
input did not parse. Diagnostics go to stderr as JSON; results go to
stdout (or --out) and are byte-identical across runs on equal inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures
from .canext import pi_extension, sigma_extension, verify_extension
from .errors import ProxlatError
from .formats import (
    ParseError,
    axiom_report_to_doc,
    diagnostic_doc,
    dot_lattice,
    dot_space,
    dumps,
    extended_map_to_doc,
    extension_to_doc,
    lattice_from_doc,
    morphism_from_doc,
    morphism_report_to_doc,
    proximity_from_doc,
    proximity_to_doc,
    space_from_doc,
    space_to_doc,
    spectrum_to_doc,
)
from .lattice import opposite
from .morphext import check_preservation, extend_pi
from .proximity import proximity_lattice, verify_axioms
from .spectra import canext_via_duality, co_compact_dual, spectrum

PARSE_FAILURE = 2
PROPERTY_FAILURE = 1


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def _load_doc(path: str) -> dict:
    if path.upper() in fixtures.CORPUS:
        from importlib import resources
        raw = resources.files("proxlat").joinpath(
            "fixtures", path.lower() + ".json").read_text()
        return json.loads(raw)
    return _load_json(path)


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _diag(status: str, kind: str, detail: str, witnesses=None) -> None:
    sys.stderr.write(dumps(diagnostic_doc(status, kind, detail, witnesses)))


def cmd_check(args) -> int:
    doc = _load_doc(args.input)
    if doc.get("kind") == "morphism":
        t = morphism_from_doc(doc)
        _emit(args, dumps(morphism_report_to_doc(t.report)))
        return 0 if t.is_proximity else PROPERTY_FAILURE
    lat = lattice_from_doc(doc["lattice"])
    from .formats import _pairs_to_relation
    rel = _pairs_to_relation(lat.labels, lat.labels, doc["R"])
    report = verify_axioms(lat, rel)
    _emit(args, dumps(axiom_report_to_doc(report, lat.labels)))
    return 0 if report.axioms_ok else PROPERTY_FAILURE


def cmd_canext(args) -> int:
    p = proximity_from_doc(_load_doc(args.input))
    ext = sigma_extension(p) if args.kind == "sigma" else pi_extension(p)
    report = verify_extension(ext)
    _emit(args, dumps(extension_to_doc(ext, report)))
    if args.dot:
        Path(args.dot).write_text(
            dot_lattice(ext.C, highlight=set(ext.embed), name=args.kind))
    return 0 if report.passes(ext.kind) else PROPERTY_FAILURE


def cmd_extend(args) -> int:
    t = morphism_from_doc(_load_doc(args.input))
    ext_src = pi_extension(t.source)
    ext_tgt = pi_extension(t.target)
    m = extend_pi(t, ext_src, ext_tgt)
    report = check_preservation(m)
    _emit(args, dumps(extended_map_to_doc(m, report)))
    return 0 if report.required_ok else PROPERTY_FAILURE


def cmd_spectrum(args) -> int:
    p = proximity_from_doc(_load_doc(args.input))
    _emit(args, dumps(spectrum_to_doc(spectrum(p))))
    return 0


def cmd_dualize(args) -> int:
    doc = _load_doc(args.input)
    if doc.get("kind") == "space":
        dual = co_compact_dual(space_from_doc(doc))
        _emit(args, dumps(space_to_doc(dual)))
        return 0
    p = proximity_from_doc(doc)
    out = proximity_lattice(opposite(p.lattice), p.R.converse())
    _emit(args, dumps(proximity_to_doc(out)))
    return 0


def cmd_roundtrip(args) -> int:
    p = proximity_from_doc(_load_doc(args.input))
    result = canext_via_duality(p)
    lines = [
        f"PASS spectrum: {result.spectrum.space.points} point(s)",
        f"PASS saturated-set extension verifies as pi "
        f"({len(result.sat_sets)} saturated sets)",
        "PASS unique isomorphism onto the polarity construction",
    ]
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_export_dot(args) -> int:
    doc = _load_doc(args.input)
    kind = doc.get("kind")
    if kind == "space":
        _emit(args, dot_space(space_from_doc(doc)))
    elif kind == "lattice":
        _emit(args, dot_lattice(lattice_from_doc(doc)))
    else:
        p = proximity_from_doc(doc)
        _emit(args, dot_lattice(p.lattice))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proxlat",
        description="finite proximity lattices, canonical extensions, spectra")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("input", help="input JSON path or fixture name")
        p.add_argument("-o", "--out", help="write the result here instead of stdout")

    p_check = sub.add_parser("check", help="axiom / morphism report")
    common(p_check)
    p_check.set_defaults(run=cmd_check)

    p_canext = sub.add_parser("canext", help="canonical extension")
    common(p_canext)
    p_canext.add_argument("--kind", choices=("pi", "sigma"), default="pi")
    p_canext.add_argument("--dot", help="also write the Hasse diagram here")
    p_canext.set_defaults(run=cmd_canext)

    p_extend = sub.add_parser("extend", help="extend a morphism to the pi extensions")
    common(p_extend)
    p_extend.set_defaults(run=cmd_extend)

    p_spectrum = sub.add_parser("spectrum", help="prime round filter spectrum")
    common(p_spectrum)
    p_spectrum.set_defaults(run=cmd_spectrum)

    p_dual = sub.add_parser("dualize", help="co-compact dual / opposite")
    common(p_dual)
    p_dual.set_defaults(run=cmd_dualize)

    p_round = sub.add_parser("roundtrip", help="extension via the spectrum, checked")
    common(p_round)
    p_round.set_defaults(run=cmd_roundtrip)

    p_dot = sub.add_parser("export-dot", help="Hasse diagram / specialization order")
    common(p_dot)
    p_dot.set_defaults(run=cmd_export_dot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except ParseError as exc:
        _diag("parse-error", type(exc).__name__, str(exc))
        return PARSE_FAILURE
    except (KeyError, TypeError) as exc:
        _diag("parse-error", type(exc).__name__, str(exc))
        return PARSE_FAILURE
    except ProxlatError as exc:
        witnesses = getattr(exc, "witnesses", None)
        doc = None
        if witnesses:
            doc = {name: list(w) for name, w in witnesses}
        _diag("property-failure", type(exc).__name__, str(exc), doc)
        return PROPERTY_FAILURE


if __name__ == "__main__":
    sys.exit(main())
