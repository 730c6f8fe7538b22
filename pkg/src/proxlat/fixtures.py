"""The fixture corpus, shipped as data files.

Six small proximity lattices used throughout the tests and accepted by
the CLI as shorthand names:

  C2     two-chain with its order
  C3     three-chain 0 < a < 1 with its order
  B2     the 2x2 Boolean square with its order
  M3     the diamond (nondistributive) with its order
  FULL2  the two-chain with the all-pairs relation (not increasing)
  C3R    the three-chain with x R y iff x = 0 or y = 1; doubly strong,
         increasing, and not reflexive
"""

from __future__ import annotations

import json
from importlib import resources

from .proximity import ProximityLattice

CORPUS = ("C2", "C3", "B2", "M3", "FULL2", "C3R")


def load(name: str) -> ProximityLattice:
    from .formats import proximity_from_doc
    key = name.upper()
    if key not in CORPUS:
        raise KeyError(f"unknown fixture {name!r}; expected one of {CORPUS}")
    path = resources.files(__package__).joinpath("fixtures", key.lower() + ".json")
    return proximity_from_doc(json.loads(path.read_text()))


def corpus() -> dict[str, ProximityLattice]:
    return {name: load(name) for name in CORPUS}
