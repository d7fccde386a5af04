"""Elementary abelian subgroups of maximal rank, Thompson subgroups and W(H).

Maximal rank search
-------------------
Pick a normal elementary abelian subgroup N of H.  For an elementary abelian
A of maximal rank, A contains C_N(A) (otherwise A C_N(A) is larger), and
C_N(A) depends only on the image Ā of A in H/N because N is abelian.  Hence
rank(A) = rank(Ā) + dim C_N(Ā).  So it is enough to run over the
elementary abelian subgroups Ā of the smaller group H/N, keep those whose
bound rank(Ā) + dim C_N(Ā) reaches the best rank so far, and decide for each
whether Ā lifts to an elementary abelian subgroup containing C_N(Ā).  The
lifting search runs over coset representatives of N/C_N(Ā) only.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..linalg import identity, mat_sub, mat_mul, is_zero
from .presentation import BudgetExceeded
from .quotient import quotient_presentation
from .series import DEFAULT_SCAN_BUDGET, omega
from .subgroup import (
    Subgroup,
    center,
    centralizer,
    close,
    conjugates,
    join,
    quotient_centralizer,
    trivial,
)


def _normalized(y: tuple) -> bool:
    for e in y:
        if e:
            return e == 1
    return False


def _order_p_extensions(H: Subgroup, A: Subgroup, D: Subgroup, budget: int):
    """Subgroups <A, x> for x in D \\ A with x^p = 1, D ≤ C_H(A), A ≤ D."""
    pres = H.pres
    p = pres.p
    q = quotient_presentation(D, A, check=False)
    if q.pres.order > budget:
        raise BudgetExceeded("elementary abelian extension scan", q.pres.order, budget)
    seen = set()
    out = []
    for y in q.pres.elements():
        if not _normalized(y):
            continue
        x = q.lift(y)
        if pres.pow(x, p) != pres.identity:
            continue
        B = close(pres, [x], base=A, order_hint=A.order * p)
        if B.igs not in seen:
            seen.add(B.igs)
            out.append(B)
    return out


def elementary_abelian_classes(H: Subgroup, base: Subgroup | None = None, budget: int | None = None) -> list:
    """H-class representatives of all elementary abelian subgroups containing ``base``.

    ``base`` must be a normal elementary abelian subgroup (default trivial).
    Representatives are canonical (least key in their class); the list is
    sorted by (rank, key).
    """
    pres = H.pres
    bound = DEFAULT_SCAN_BUDGET if budget is None else budget
    start = base if base is not None else trivial(pres)
    seen = set()
    reps = {}
    level = [start]
    seen.add(start.igs)
    reps[start.igs] = start
    while level:
        nxt = []
        for A in level:
            C = centralizer(H, A)
            for B in _order_p_extensions(H, A, C, bound):
                if B.igs in seen:
                    continue
                orbit = conjugates(H, B)
                seen.update(orbit)
                k = min(orbit)
                R = B if k == B.igs else Subgroup(pres, k)
                reps[k] = R
                nxt.append(R)
        level = nxt
    return sorted(reps.values(), key=lambda X: (X.rank, X.igs))


def _greedy_normal_elab(H: Subgroup, budget: int) -> Subgroup:
    pres = H.pres
    A = omega(center(H), budget)
    while True:
        C = centralizer(H, A)
        D = quotient_centralizer(C, H, A)
        ext = _order_p_extensions(H, A, D, budget) if D.order > A.order else []
        if not ext:
            return A
        A = ext[0]


def _lift_search(H, N, q, Abar, CN):
    """Elementary abelian A ≥ CN with AN/N = Abar (images via quotient q)."""
    pres = H.pres
    p = pres.p
    one = pres.identity
    if CN.order == N.order:
        reps = [one]
    else:
        qn = quotient_presentation(N, CN, check=False)
        reps = [qn.lift(y) for y in qn.pres.elements()]
    base_lifts = [q.lift(y) for y in Abar.igs]
    cands = []
    for x0 in base_lifts:
        row = []
        for n in reps:
            x = pres.mul(x0, n)
            if pres.pow(x, p) == one:
                row.append(x)
        if not row:
            return []
        cands.append(row)
    out = []
    seen = set()
    target = Abar.order * CN.order
    chosen = []

    def dfs(i):
        if i == len(cands):
            A = close(pres, list(chosen), base=CN, order_hint=target)
            if A.igs not in seen:
                seen.add(A.igs)
                out.append(A)
            return
        for x in cands[i]:
            if all(pres.comm(x, y) == one for y in chosen):
                chosen.append(x)
                dfs(i + 1)
                chosen.pop()

    dfs(0)
    return out


def max_elementary_abelian(H: Subgroup, budget: int | None = None):
    """(m_p(H), class representatives of A(H))."""
    c = H._cache.get("maxelab")
    if c is not None:
        return c
    pres = H.pres
    bound = DEFAULT_SCAN_BUDGET if budget is None else budget
    if H.is_trivial():
        res = (0, [H])
    elif H.is_abelian():
        O = omega(H, bound)
        res = (O.rank, [O])
    else:
        N = _greedy_normal_elab(H, bound)
        q = quotient_presentation(H, N, check=False)
        Hbar = q.whole()
        staged = []
        for Abar in elementary_abelian_classes(Hbar, budget=bound):
            if Abar.is_trivial():
                continue
            CN = centralizer(N, q.preimage(Abar))
            staged.append((Abar.rank + CN.rank, Abar, CN))
        # largest bound first; a lift realizes its bound exactly
        staged.sort(key=lambda t: -t[0])
        best = N.rank
        found = [N]
        for ub, Abar, CN in staged:
            if ub < best:
                break
            lifts = _lift_search(H, N, q, Abar, CN)
            if not lifts:
                continue
            if ub > best:
                best = ub
                found = []
            found.extend(lifts)
        reps = {}
        seen = set()
        for A in found:
            if A.igs in seen:
                continue
            orbit = conjugates(H, A)
            seen.update(orbit)
            k = min(orbit)
            reps[k] = A if k == A.igs else Subgroup(pres, k)
        res = (best, sorted(reps.values(), key=lambda X: X.igs))
    H._cache["maxelab"] = res
    return res


def elementary_rank(H: Subgroup, budget: int | None = None) -> int:
    return max_elementary_abelian(H, budget)[0]


@dataclass
class ThompsonData:
    A_H: list
    J: Subgroup
    A_normal: list
    J_normal: Subgroup | None
    m_p: int


def thompson(H: Subgroup, budget: int | None = None) -> ThompsonData:
    c = H._cache.get("thompson")
    if c is not None:
        return c
    pres = H.pres
    m, reps = max_elementary_abelian(H, budget)
    members = {}
    for R in reps:
        for k in conjugates(H, R):
            members[k] = Subgroup(pres, k)
    A_H = [members[k] for k in sorted(members)]
    J = trivial(pres)
    for A in A_H:
        J = join(J, A)
    A_normal = [A for A in A_H if A.is_normalized_by(H)]
    J_normal = None
    if A_normal:
        J_normal = trivial(pres)
        for A in A_normal:
            J_normal = join(J_normal, A)
    res = ThompsonData(A_H, J, A_normal, J_normal, m)
    H._cache["thompson"] = res
    return res


# -- W(H) ----------------------------------------------------------------------


def normal_elementary_abelian(H: Subgroup, base: Subgroup | None = None, budget: int | None = None) -> list:
    """All normal elementary abelian subgroups of H containing ``base``."""
    pres = H.pres
    bound = DEFAULT_SCAN_BUDGET if budget is None else budget
    start = base if base is not None else trivial(pres)
    found = {start.igs: start}
    level = [start]
    while level:
        nxt = []
        for A in level:
            C = centralizer(H, A)
            D = quotient_centralizer(C, H, A)
            if D.order == A.order:
                continue
            for B in _order_p_extensions(H, A, D, bound):
                if B.igs not in found:
                    found[B.igs] = B
                    nxt.append(B)
        level = nxt
    return sorted(found.values(), key=lambda X: (X.rank, X.igs))


def action_matrix(A: Subgroup, s: tuple) -> list:
    """Matrix of conjugation by s on the elementary abelian A (rows = images of igs)."""
    pres = A.pres
    return [list(A.exponents(pres.conj(a, s))) for a in A.igs]


def in_W_family(H: Subgroup, A: Subgroup) -> bool:
    """A ⊴ H elementary abelian with [A,s,s] = 1 implying [A,s] = 1 for all s."""
    pres = H.pres
    p = pres.p
    if not A.is_elementary_abelian() or not A.is_normalized_by(H):
        return False
    C = centralizer(H, A)
    if C.order == H.order:
        return True
    q = quotient_presentation(H, C, check=False)
    r = A.rank
    one = identity(r)
    for y in q.pres.elements():
        if not any(y):
            continue
        M = mat_sub(action_matrix(A, q.lift(y)), one, p)
        if is_zero(mat_mul(M, M, p)):
            return False
    return True


def weak_closure_W(H: Subgroup, budget: int | None = None) -> Subgroup:
    c = H._cache.get("W")
    if c is not None:
        return c
    if H.is_abelian():
        W = omega(H, budget)
    else:
        Z0 = omega(center(H), budget)
        cands = normal_elementary_abelian(H, Z0, budget)
        W = None
        for A in sorted(cands, key=lambda X: (-X.rank, X.igs)):
            if in_W_family(H, A):
                if W is not None and W.rank == A.rank:
                    raise RuntimeError("two largest members of the W-family; uniqueness violated")
                if W is None:
                    W = A
                    # any other member of equal rank would violate uniqueness
                    continue
            if W is not None and A.rank < W.rank:
                break
        if W is None:
            W = Z0
    H._cache["W"] = W
    return W
