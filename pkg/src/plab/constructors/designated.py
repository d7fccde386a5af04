"""The named subgroups Q1, Q2 (and per-family extras) of a constructed Sylow subgroup."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..pgroup import (
    PcPresentation,
    Subgroup,
    center,
    centralizer,
    commutator_subgroup,
    frattini,
    omega,
    quotient_centralizer,
    quotient_presentation,
    thompson,
    upper_central,
    upper_central_series,
    whole,
)
from .psu5 import ConstructionError

FAMILIES = ("PSU5", "3D4", "2F4")

# expected log_q orders of (Q1, Q2)
EXPECTED_ORDERS = {"PSU5": (8, 7), "3D4": (11, 9), "2F4": (11, 10)}


@dataclass
class DesignatedSubgroups:
    family: str
    S: Subgroup
    Q1: Subgroup
    Q2: Subgroup
    extras: dict = field(default_factory=dict)

    def named(self) -> dict:
        out = {"S": self.S, "Q1": self.Q1, "Q2": self.Q2}
        out.update(self.extras)
        return out


def normalize_family(family: str) -> str:
    f = family.upper()
    for name in FAMILIES:
        if f == name.upper():
            return name
    raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def thompson_preimage(S: Subgroup, N: Subgroup) -> Subgroup:
    """Preimage in S of J(S/N)."""
    Q = quotient_presentation(S, N)
    return Q.preimage(thompson(Q.whole()).J)


def designated_subgroups(pres: PcPresentation, family: str, check: bool = True) -> DesignatedSubgroups:
    family = normalize_family(family)
    S = whole(pres)
    Z = center(S)
    Z2 = upper_central(S, 2)
    Q1 = centralizer(S, Z2)
    extras = {}
    if family in ("PSU5", "3D4"):
        Q2 = thompson_preimage(S, Z)
        if family == "PSU5":
            extras["Z(Q1)"] = center(Q1)
        else:
            extras["Phi(Q1)"] = frattini(Q1)
    else:
        OS = omega(S)
        Z3 = upper_central_series(OS)[3] if len(upper_central_series(OS)) > 3 else OS
        Q2 = quotient_centralizer(S, Z3, Z)
        V1 = omega(Q1)
        U1 = commutator_subgroup(V1, Q1)
        extras.update({"V1": V1, "U1": U1, "V2": commutator_subgroup(Q2, Q2), "Z(V1)": center(V1)})
    D = DesignatedSubgroups(family, S, Q1, Q2, extras)
    if check:
        q = pres.p ** int(pres.metadata.get("n", 1))
        e1, e2 = EXPECTED_ORDERS[family]
        if Q1.order != q**e1:
            raise ConstructionError(f"|Q1| = {Q1.order}, expected q^{e1} = {q**e1}")
        if Q2.order != q**e2:
            raise ConstructionError(f"|Q2| = {Q2.order}, expected q^{e2} = {q**e2}")
    return D
