"""Quotients H/N as new pc presentations with projection and preimage maps."""

from __future__ import annotations

from dataclasses import dataclass

from .presentation import PcPresentation
from .subgroup import Subgroup, SubgroupError, close, trivial


@dataclass
class Quotient:
    H: Subgroup
    N: Subgroup
    pres: PcPresentation
    lifts: tuple  # ambient elements lifting the quotient generators

    def project(self, x: tuple) -> tuple:
        """Image of x (an element of H) in the quotient presentation."""
        amb = self.H.pres
        coords = []
        depth_table = self._table
        for d, (kind, g, idx) in sorted(depth_table.items()):
            e = x[d]
            if kind == "u":
                coords.append(e)
            if e:
                x = amb.mul(amb.inv(amb.pow(g, e)), x)
        if x != amb.identity:
            raise SubgroupError("element is not in the numerator subgroup")
        return tuple(coords)

    def lift(self, y: tuple) -> tuple:
        amb = self.H.pres
        x = amb.identity
        for g, e in zip(self.lifts, y):
            if e:
                x = amb.mul(x, amb.pow(g, e))
        return x

    def image(self, K: Subgroup) -> Subgroup:
        return close(self.pres, [self.project(k) for k in K.igs])

    def preimage(self, Kbar: Subgroup) -> Subgroup:
        gens = [self.lift(y) for y in Kbar.igs]
        return close(self.H.pres, gens, base=self.N, order_hint=self.N.order * Kbar.order)

    def whole(self) -> Subgroup:
        return Subgroup(self.pres, tuple(self.pres.gens))

    def trivial(self) -> Subgroup:
        return trivial(self.pres)


def quotient_presentation(H: Subgroup, N: Subgroup, check: bool = True) -> Quotient:
    amb = H.pres
    if not N <= H:
        raise SubgroupError("N is not contained in H")
    if not N.is_normalized_by(H):
        raise SubgroupError("N is not normal in H")
    ndepths = set(N.depths)
    lifts = []
    table = {}
    for d, h in zip(H.depths, H.igs):
        if d in ndepths:
            table[d] = ("n", N._table[d], None)
        else:
            u = N.coset_rep(h)
            table[d] = ("u", u, len(lifts))
            lifts.append(u)
    q = Quotient(H, N, None, tuple(lifts))
    q._table = table
    r = len(lifts)
    powers = []
    comms = {}
    for i, u in enumerate(lifts):
        powers.append(q.project(amb.pow(u, amb.p)))
        for j in range(i + 1, r):
            c = q.project(amb.comm(lifts[j], u))
            if any(c):
                comms[(j, i)] = c
    pres = PcPresentation(amb.p, r, powers, comms, {"quotient_of": amb.metadata.get("family", "")})
    if check and r <= 14:
        pres.check_consistency(samples=20)
    q.pres = pres
    return q
