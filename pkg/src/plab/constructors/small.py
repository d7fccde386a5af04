"""Small test families: unitriangular groups, p^{1+2}, the dihedral group of order 8."""

from __future__ import annotations

from ..pgroup.presentation import PcPresentation
from .matrices import build_pc_from_model, unitriangular_model


def unitriangular(dim: int, p: int) -> PcPresentation:
    model = unitriangular_model(dim, p)
    return build_pc_from_model(model, {"family": f"UT{dim}", "p": p, "n": 1, "provenance": "unitriangular matrices"})


def heisenberg_model(p: int):
    """3x3 unitriangular matrices with a = E23, b = E12, c = E13, so [b, a] = c."""
    model = unitriangular_model(3, p, descending_rows=True)
    build_pc_from_model(model, {"family": "heisenberg", "p": p, "n": 1, "provenance": "unitriangular matrices"})
    return model


def heisenberg(p: int) -> PcPresentation:
    """Extraspecial-type group of order p^3 (dihedral of order 8 when p = 2)."""
    return heisenberg_model(p).presentation


def dihedral8() -> PcPresentation:
    """a a reflection, b a rotation of order 4, c = b^2 central."""
    return PcPresentation.from_words(
        2, 3, {1: [(2, 1)]}, {(1, 0): [(2, 1)]},
        {"family": "dihedral8", "p": 2, "n": 1, "provenance": "hand-written presentation"},
    )
