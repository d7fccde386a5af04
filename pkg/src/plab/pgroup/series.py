"""Characteristic series and related subgroups."""

from __future__ import annotations

from itertools import product

from .presentation import BudgetExceeded
from .quotient import quotient_presentation
from .subgroup import (
    Subgroup,
    center,
    close,
    commutator_subgroup,
    normal_closure,
    quotient_centralizer,
    trivial,
)

DEFAULT_SCAN_BUDGET = 2**16


def frattini(H: Subgroup) -> Subgroup:
    """Φ(H) = [H,H]℧¹(H) for a p-group."""
    c = H._cache.get("frattini")
    if c is None:
        pres = H.pres
        gens = [pres.pow(h, pres.p) for h in H.igs]
        gens += [pres.comm(x, y) for i, x in enumerate(H.igs) for y in H.igs[i + 1:]]
        c = normal_closure(H, gens)
        H._cache["frattini"] = c
    return c


def derived(H: Subgroup) -> Subgroup:
    c = H._cache.get("derived")
    if c is None:
        pres = H.pres
        gens = [pres.comm(x, y) for i, x in enumerate(H.igs) for y in H.igs[i + 1:]]
        c = normal_closure(H, gens)
        H._cache["derived"] = c
    return c


def omega(H: Subgroup, budget: int | None = None) -> Subgroup:
    """Ω(H) = <x in H : x^p = 1>, by an exact element scan."""
    c = H._cache.get("omega")
    if c is not None:
        return c
    pres = H.pres
    bound = DEFAULT_SCAN_BUDGET if budget is None else budget
    if H.is_elementary_abelian():
        c = H
    else:
        if H.order > bound:
            raise BudgetExceeded("omega element scan", H.order, bound)
        found = trivial(pres)
        one = pres.identity
        p = pres.p
        for x in H.elements():
            if x != one and not found.contains(x) and pres.pow(x, p) == one:
                found = close(pres, [x], base=found)
                if found == H:
                    break
        c = found
    H._cache["omega"] = c
    return c


def agemo(H: Subgroup, budget: int | None = None) -> Subgroup:
    """℧¹(H) = <x^p : x in H>.

    Starts from the normal closure M of the p-th powers of the igs, then scans
    H/M, where ℧¹(H/M) = ℧¹(H)/M.
    """
    c = H._cache.get("agemo")
    if c is not None:
        return c
    pres = H.pres
    p = pres.p
    M = normal_closure(H, [pres.pow(h, p) for h in H.igs])
    bound = DEFAULT_SCAN_BUDGET if budget is None else budget
    while True:
        q = quotient_presentation(H, M, check=False)
        qp = q.pres
        if qp.order > bound:
            raise BudgetExceeded("agemo element scan", qp.order, bound)
        new = None
        for y in qp.elements():
            yp = qp.pow(y, p)
            if yp != qp.identity:
                new = q.lift(yp)
                break
        if new is None:
            break
        M = normal_closure(H, [new], base=M)
    H._cache["agemo"] = M
    return M


def upper_central_series(H: Subgroup) -> list:
    """[1, Z_1(H), Z_2(H), ..., H]."""
    pres = H.pres
    series = [trivial(pres)]
    while series[-1] != H:
        Z = series[-1]
        nxt = quotient_centralizer(H, H, Z)
        if nxt == Z:
            raise RuntimeError("upper central series stalled; group is not nilpotent")
        series.append(nxt)
    return series


def upper_central(H: Subgroup, i: int) -> Subgroup:
    s = upper_central_series(H)
    return s[min(i, len(s) - 1)]


def lower_central_series(H: Subgroup) -> list:
    """[H, γ_2(H), ..., 1]."""
    series = [H]
    while not series[-1].is_trivial():
        nxt = commutator_subgroup(series[-1], H)
        if nxt == series[-1]:
            raise RuntimeError("lower central series stalled")
        series.append(nxt)
    return series


def derived_series(H: Subgroup) -> list:
    series = [H]
    while not series[-1].is_trivial():
        series.append(derived(series[-1]))
    return series


def frattini_series(H: Subgroup) -> list:
    series = [H]
    while not series[-1].is_trivial():
        series.append(frattini(series[-1]))
    return series


def omega_series(H: Subgroup, budget: int | None = None) -> list:
    """Ω_1(H) ≤ Ω_2(H) ≤ ... ≤ H, with Ω_i = <x : x^(p^i) = 1>."""
    pres = H.pres
    p = pres.p
    bound = DEFAULT_SCAN_BUDGET if budget is None else budget
    if H.order > bound:
        raise BudgetExceeded("omega element scan", H.order, bound)
    elems = H.elements()
    series = []
    i = 1
    while not series or series[-1] != H:
        e = p**i
        cur = series[-1] if series else trivial(pres)
        for x in elems:
            if not cur.contains(x) and pres.pow(x, e) == pres.identity:
                cur = close(pres, [x], base=cur)
        series.append(cur)
        i += 1
    return series


def agemo_series(H: Subgroup, budget: int | None = None) -> list:
    """H ≥ ℧¹(H) ≥ ℧¹(℧¹(H)) ≥ ... ≥ 1 (iterated first agemo)."""
    series = [H]
    while not series[-1].is_trivial():
        nxt = agemo(series[-1], budget)
        if nxt == series[-1]:
            raise RuntimeError("agemo series stalled")
        series.append(nxt)
    return series


SERIES_KINDS = ("upper_central", "lower_central", "derived", "frattini", "omega", "agemo")


def compute_series(kind: str, H: Subgroup, budget: int | None = None) -> list:
    if kind == "upper_central":
        return upper_central_series(H)
    if kind == "lower_central":
        return lower_central_series(H)
    if kind == "derived":
        return derived_series(H)
    if kind == "frattini":
        return frattini_series(H)
    if kind == "omega":
        return omega_series(H, budget)
    if kind == "agemo":
        return agemo_series(H, budget)
    raise ValueError(f"unknown series kind {kind!r}")


def _hyperplanes(p: int, d: int):
    """Normalized nonzero functionals on GF(p)^d (first nonzero entry 1), lexicographic."""
    for f in product(range(p), repeat=d):
        nz = next((c for c in f if c), 0)
        if nz == 1:
            yield f


def maximal_subgroups(H: Subgroup) -> list:
    """All index-p subgroups of H as preimages of hyperplanes of H/Φ(H)."""
    if H.is_trivial():
        raise ValueError("the trivial group has no maximal subgroups")
    from ..linalg import nullspace

    pres = H.pres
    p = pres.p
    F = frattini(H)
    q = quotient_presentation(H, F, check=False)
    d = q.pres.m
    out = []
    for f in _hyperplanes(p, d):
        basis = nullspace([list(f)], p)
        gens = [q.lift(tuple(v)) for v in basis]
        out.append(close(pres, gens, base=F, order_hint=H.order // p))
    return out


def frattini_rank(H: Subgroup) -> int:
    return H.rank - frattini(H).rank


def is_centric(S: Subgroup, E: Subgroup) -> bool:
    """C_S(E) ≤ E (equivalently C_S(E) = Z(E))."""
    from .subgroup import centralizer

    return centralizer(S, E) <= E
