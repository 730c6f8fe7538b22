"""Internal helpers shared between the completion builders."""

from __future__ import annotations

from typing import Callable, Sequence

from .lattice import FiniteLattice, _closed_family, _lattice_of_sets, _set_label


def set_label(mask: int, labels: Sequence[str]) -> str:
    return _set_label(mask, labels)


def _closed_sets_lattice(n: int, close: Callable[[int], int],
                         labels: Sequence[str]) -> tuple[FiniteLattice, tuple[int, ...]]:
    """Lattice of all fixpoints of a closure operator, plus the fixpoints."""
    masks = _closed_family(n, close)
    return _lattice_of_sets(masks, labels), tuple(masks)
