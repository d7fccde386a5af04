"""Subgroups as canonical induced generating sequences, plus orbit machinery.

A subgroup is stored as its reduced igs: one element per leading depth, with
leading exponent 1 and zero exponent at every other leading depth of the
subgroup.  This form is unique, so the tuple of igs elements is an exact key.

Centralizers, normalizers, intersections and conjugacy all reduce to a single
orbit-stabilizer routine for a p-group acting through its igs.
"""

from __future__ import annotations

from itertools import product

from .presentation import PcPresentation


class SubgroupError(ValueError):
    pass


class Subgroup:
    __slots__ = ("pres", "igs", "depths", "_table", "_cache")

    def __init__(self, pres: PcPresentation, igs: tuple):
        self.pres = pres
        self.igs = tuple(igs)
        self.depths = tuple(pres.depth(x) for x in self.igs)
        self._table = dict(zip(self.depths, self.igs))
        self._cache = {}

    # -- basic data -----------------------------------------------------------

    @property
    def key(self) -> tuple:
        return self.igs

    @property
    def rank(self) -> int:
        """log_p of the order."""
        return len(self.igs)

    @property
    def order(self) -> int:
        return self.pres.p ** len(self.igs)

    def __len__(self):
        return self.order

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.pres is other.pres and self.igs == other.igs

    def __hash__(self):
        return hash(self.igs)

    def __repr__(self):
        return f"Subgroup(order={self.pres.p}^{self.rank}, depths={self.depths})"

    def __le__(self, other: "Subgroup") -> bool:
        return self.rank <= other.rank and all(other.contains(x) for x in self.igs)

    def __lt__(self, other: "Subgroup") -> bool:
        return self.rank < other.rank and self <= other

    def is_trivial(self) -> bool:
        return not self.igs

    # -- membership -----------------------------------------------------------

    def sift(self, x: tuple) -> tuple:
        """Right-sift x through the igs; identity iff x is a member."""
        pres = self.pres
        p = pres.p
        table = self._table
        m = pres.m
        while True:
            k = 0
            while k < m and not x[k]:
                k += 1
            if k == m:
                return x
            g = table.get(k)
            if g is None:
                return x
            x = pres.mul(x, pres.pow(g, p - x[k]))

    def contains(self, x: tuple) -> bool:
        return self.sift(x) == self.pres.identity

    __contains__ = contains

    def coset_rep(self, x: tuple) -> tuple:
        """Canonical representative of the right coset (self)x.

        Left-multiplying by subgroup elements clears the exponents at every
        leading depth of the subgroup.
        """
        pres = self.pres
        p = pres.p
        for d, g in zip(self.depths, self.igs):
            e = x[d]
            if e:
                x = pres.mul(pres.pow(g, p - e), x)
        return x

    def exponents(self, x: tuple) -> tuple:
        """Coordinates (e_1..e_r) with x = igs_1^e_1 ... igs_r^e_r; x must be a member."""
        pres = self.pres
        out = []
        for d, g in zip(self.depths, self.igs):
            e = x[d]
            out.append(e)
            if e:
                x = pres.mul(pres.inv(pres.pow(g, e)), x)
        if x != pres.identity:
            raise SubgroupError("element is not in the subgroup")
        return tuple(out)

    def element(self, exps) -> tuple:
        pres = self.pres
        x = pres.identity
        for g, e in zip(self.igs, exps):
            if e:
                x = pres.mul(x, pres.pow(g, e))
        return x

    def elements(self, budget: int | None = None) -> list:
        if budget is not None and self.order > budget:
            from .presentation import BudgetExceeded

            raise BudgetExceeded("element enumeration", self.order, budget)
        pres = self.pres
        elems = [pres.identity]
        for g in reversed(self.igs):
            powers = [pres.identity]
            for _ in range(pres.p - 1):
                powers.append(pres.mul(powers[-1], g))
            elems = [pres.mul(gp, h) for gp in powers for h in elems]
        return elems

    # -- cached properties ----------------------------------------------------

    def is_abelian(self) -> bool:
        c = self._cache.get("abelian")
        if c is None:
            pres = self.pres
            c = all(pres.comm(x, y) == pres.identity for i, x in enumerate(self.igs) for y in self.igs[i + 1:])
            self._cache["abelian"] = c
        return c

    def is_elementary_abelian(self) -> bool:
        c = self._cache.get("elab")
        if c is None:
            pres = self.pres
            c = self.is_abelian() and all(pres.pow(x, pres.p) == pres.identity for x in self.igs)
            self._cache["elab"] = c
        return c

    def is_normalized_by(self, K: "Subgroup") -> bool:
        pres = self.pres
        return all(self.contains(pres.conj(h, k)) for h in self.igs for k in K.igs)

    def conjugate(self, g: tuple) -> "Subgroup":
        pres = self.pres
        return Subgroup(pres, canonicalize(pres, {d: pres.conj(h, g) for d, h in zip(self.depths, self.igs)}))


# -- construction ---------------------------------------------------------------


def canonicalize(pres: PcPresentation, table: dict) -> tuple:
    """Reduced igs from a depth -> element table (leading exponents made 1)."""
    p = pres.p
    depths = sorted(table)
    canon = {}
    for d in reversed(depths):
        x = table[d]
        lead = x[d]
        if lead != 1:
            x = pres.pow(x, pow(lead, -1, p))
        for d2 in depths:
            if d2 <= d:
                continue
            e = x[d2]
            if e:
                x = pres.mul(x, pres.pow(canon[d2], p - e))
        canon[d] = x
    return tuple(canon[d] for d in depths)


def _sift_table(pres, table, x):
    p = pres.p
    m = pres.m
    while True:
        k = 0
        while k < m and not x[k]:
            k += 1
        if k == m:
            return x, k
        g = table.get(k)
        if g is None:
            return x, k
        x = pres.mul(x, pres.pow(g, p - x[k]))


def close(pres: PcPresentation, gens, base: Subgroup | None = None, order_hint: int | None = None) -> Subgroup:
    """Smallest subgroup containing ``gens`` (and ``base``).

    ``order_hint`` is a known upper bound on the order (for example the order
    of a stabilizer from an orbit count); closure stops as soon as it is
    reached, which is valid because the table then already spans that many
    distinct elements of the target.
    """
    p = pres.p
    table = dict(base._table) if base is not None else {}
    target_rank = None
    if order_hint is not None:
        target_rank = 0
        while p**target_rank < order_hint:
            target_rank += 1
    queue = list(gens)
    queue.reverse()
    while queue:
        if target_rank is not None and len(table) >= target_rank:
            break
        x = queue.pop()
        x, d = _sift_table(pres, table, x)
        if d == pres.m:
            continue
        lead = x[d]
        if lead != 1:
            x = pres.pow(x, pow(lead, -1, p))
        others = list(table.values())
        table[d] = x
        queue.append(pres.pow(x, p))
        for y in others:
            queue.append(pres.comm(x, y))
    return Subgroup(pres, canonicalize(pres, table))


def subgroup_close(pres: PcPresentation, gens) -> Subgroup:
    return close(pres, gens)


def whole(pres: PcPresentation) -> Subgroup:
    return Subgroup(pres, tuple(pres.gens))


def trivial(pres: PcPresentation) -> Subgroup:
    return Subgroup(pres, ())


def join(A: Subgroup, *others: Subgroup) -> Subgroup:
    gens = [x for B in others for x in B.igs]
    return close(A.pres, gens, base=A)


def normal_closure(K: Subgroup, gens, base: Subgroup | None = None) -> Subgroup:
    """Smallest subgroup normalized by K containing gens (and base)."""
    pres = K.pres
    H = close(pres, list(gens), base=base)
    while True:
        new = [pres.conj(h, k) for h in H.igs for k in K.igs]
        new = [x for x in new if not H.contains(x)]
        if not new:
            return H
        H = close(pres, new, base=H)


def commutator_subgroup(A: Subgroup, B: Subgroup) -> Subgroup:
    """[A, B], the normal closure in <A, B> of the generator commutators."""
    pres = A.pres
    gens = [pres.comm(a, b) for a in A.igs for b in B.igs]
    return normal_closure(join(A, B), gens)


# -- orbit / stabilizer ----------------------------------------------------------


def orbit_stabilizer(K: Subgroup, point, act, key=None, want_stabilizer=True):
    """Orbit of ``point`` under K acting on the right via ``act(point, g)``.

    Returns (orbit, stabilizer) where orbit maps key(point') to a transversal
    element t with act(point, t) == point'.  Processes the igs deepest first,
    so each step either grows the orbit p-fold or yields a stabilizer generator.
    """
    pres = K.pres
    keyf = key or (lambda x: x)
    k0 = keyf(point)
    orbit = {k0: pres.identity}
    pts = [(point, pres.identity)]
    stab_gens = []
    for g in reversed(K.igs):
        img = act(point, g)
        ik = keyf(img)
        t = orbit.get(ik)
        if t is not None:
            if want_stabilizer:
                stab_gens.append(pres.mul(g, pres.inv(t)))
            continue
        layer = pts
        new_pts = []
        for _ in range(pres.p - 1):
            nxt = []
            for pt, tr in layer:
                q = act(pt, g)
                tq = pres.mul(tr, g)
                orbit[keyf(q)] = tq
                nxt.append((q, tq))
            new_pts.extend(nxt)
            layer = nxt
        pts = pts + new_pts
    stab = None
    if want_stabilizer:
        stab = close(pres, stab_gens, order_hint=K.order // len(orbit))
    return orbit, stab


def centralizer_of_element(K: Subgroup, x: tuple) -> Subgroup:
    pres = K.pres
    if all(pres.comm(x, k) == pres.identity for k in K.igs):
        return K
    _, st = orbit_stabilizer(K, x, pres.conj)
    return st


def centralizer(K: Subgroup, H) -> Subgroup:
    """C_K(H) for a subgroup or an iterable of elements H."""
    gens = H.igs if isinstance(H, Subgroup) else tuple(H)
    C = K
    for h in gens:
        C = centralizer_of_element(C, h)
    return C


def center(H: Subgroup) -> Subgroup:
    c = H._cache.get("center")
    if c is None:
        c = centralizer(H, H)
        H._cache["center"] = c
    return c


def quotient_centralizer(K: Subgroup, A: Subgroup, B: Subgroup) -> Subgroup:
    """C_K(A/B) = {x in K : [a, x] in B for all a in A}; K must normalize B."""
    pres = K.pres
    C = K
    for a in A.igs:
        if all(B.contains(pres.comm(a, k)) for k in C.igs):
            continue
        _, C = orbit_stabilizer(C, B.coset_rep(a), lambda r, g: B.coset_rep(pres.conj(r, g)))
    return C


def normalizer(K: Subgroup, H: Subgroup) -> Subgroup:
    """N_K(H) for K, H in the same ambient group."""
    if H.is_normalized_by(K):
        return K
    _, st = orbit_stabilizer(K, H, lambda X, g: X.conjugate(g), key=lambda X: X.igs)
    return st


def intersection(A: Subgroup, B: Subgroup) -> Subgroup:
    """A ∩ B as the stabilizer in A of the coset B under right multiplication."""
    if A <= B:
        return A
    if B <= A:
        return B
    pres = A.pres
    _, st = orbit_stabilizer(A, pres.identity, lambda r, g: B.coset_rep(pres.mul(r, g)))
    return st


def conjugates(K: Subgroup, H: Subgroup) -> dict:
    """All K-conjugates of H: key -> conjugating element."""
    orbit, _ = orbit_stabilizer(K, H, lambda X, g: X.conjugate(g), key=lambda X: X.igs, want_stabilizer=False)
    return orbit


def class_key(K: Subgroup, H: Subgroup) -> tuple:
    """Least igs key among the K-conjugates of H (a canonical class label)."""
    return min(conjugates(K, H))


def conjugacy_test(K: Subgroup, H: Subgroup, L: Subgroup):
    """Element g of K with H^g = L, or None."""
    pres = K.pres
    if H.order != L.order:
        return None
    if H == L:
        return pres.identity
    if H.is_abelian() != L.is_abelian():
        return None
    if center(H).order != center(L).order:
        return None
    return conjugates(K, H).get(L.igs)


def element_class(K: Subgroup, x: tuple) -> dict:
    pres = K.pres
    orbit, _ = orbit_stabilizer(K, x, pres.conj, want_stabilizer=False)
    return orbit
