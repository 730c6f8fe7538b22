"""Command-line behaviour: verbs, exit codes, and determinism."""

import json

import pytest

from proxlat.cli import main

FIXTURE_NAMES = ("C2", "C3", "B2", "M3", "FULL2", "C3R")
DISTRIBUTIVE = ("C2", "C3", "B2", "FULL2", "C3R")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_fixture(capsys):
    code, out, _ = run(capsys, "check", "C3R")
    assert code == 0
    doc = json.loads(out)
    assert doc["join_strong"] is True
    assert doc["reflexive"] is False
    assert doc["witnesses"]["reflexive"] == ["a"]


def test_check_all_fixtures(capsys):
    for name in FIXTURE_NAMES:
        code, out, _ = run(capsys, "check", name)
        assert code == 0
        assert json.loads(out)["axioms_ok"] is True


def test_canext_full2(capsys):
    code, out, _ = run(capsys, "canext", "FULL2")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["elements"]) == 1
    assert doc["report"]["join_preserving"] is True


def test_canext_sigma(capsys):
    code, out, _ = run(capsys, "canext", "C3R", "--kind", "sigma")
    assert code == 0
    doc = json.loads(out)
    assert doc["extension_kind"] == "sigma"
    assert doc["report"]["meet_preserving"] is True


def test_spectrum_and_dualize(capsys):
    code, out, _ = run(capsys, "spectrum", "C3R")
    assert code == 0
    assert len(json.loads(out)["points"]) == 1

    code, out, _ = run(capsys, "dualize", "C3R")
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "proximity"


def test_extend_verb(tmp_path, capsys):
    from proxlat import fixtures
    from proxlat.formats import dumps, morphism_to_doc
    from proxlat.proximity import identity_morphism
    path = tmp_path / "ident.json"
    path.write_text(dumps(morphism_to_doc(identity_morphism(fixtures.load("C3R")))))
    code, out, _ = run(capsys, "extend", str(path))
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["all_meets"] is True


def test_roundtrip_pass(capsys):
    for name in DISTRIBUTIVE:
        code, out, _ = run(capsys, "roundtrip", name)
        assert code == 0
        assert "PASS" in out and "FAIL" not in out


def test_roundtrip_corrupted_relation(tmp_path, capsys):
    # compat axioms hold but composition is not idempotent
    doc = {
        "schema": "proxlat/1",
        "kind": "proximity",
        "lattice": {"elements": ["0", "p", "q", "1"],
                    "leq": [["0", "p"], ["0", "q"], ["p", "1"], ["q", "1"]]},
        "R": [["0", "0"], ["0", "p"], ["0", "q"], ["0", "1"],
              ["p", "q"], ["p", "1"], ["q", "p"], ["q", "1"], ["1", "1"]],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, err = run(capsys, "roundtrip", str(path))
    assert code == 1
    diag = json.loads(err)
    assert diag["status"] == "property-failure"
    assert "idempotent" in diag["witnesses"]


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "garbage.json"
    path.write_text("not json")
    code, _, err = run(capsys, "check", str(path))
    assert code == 2
    assert json.loads(err)["status"] == "parse-error"


def test_export_dot(capsys):
    code, out, _ = run(capsys, "export-dot", "C2")
    assert code == 0
    assert out.startswith("digraph")


@pytest.mark.parametrize("verb,extra", [
    ("check", ()),
    ("canext", ()),
    ("canext", ("--kind", "sigma")),
    ("spectrum", ()),
    ("dualize", ()),
    ("roundtrip", ()),
    ("export-dot", ()),
])
def test_determinism_across_runs(capsys, verb, extra):
    names = DISTRIBUTIVE if verb in ("spectrum", "roundtrip") else FIXTURE_NAMES
    for name in names:
        code1, out1, _ = run(capsys, verb, name, *extra)
        code2, out2, _ = run(capsys, verb, name, *extra)
        assert code1 == code2 == 0
        assert out1.encode() == out2.encode(), (verb, name)
