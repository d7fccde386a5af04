"""Search for candidate essential subgroups: centric classes, Burnside and chain pruning.

The pipeline is a sound over-approximation.  A subgroup E < S survives when it
is S-centric and neither criterion below removes it:

* burnside: some x in N_S(E) \\ E has [x, E] <= Phi(E);
* chain: some x in N_S(E) \\ E has [x, E_i] <= E_(i-1) along a chain
  Phi(E) = E_0 <= E_1 <= ... <= E_m = E of characteristic subgroups of E.

Characteristic subgroups come from a toolbox of constructions that every
automorphism of E preserves, so no automorphism group is ever computed.  S is
never a candidate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .pgroup import (
    BudgetExceeded,
    Subgroup,
    agemo,
    center,
    centralizer,
    class_key,
    close,
    commutator_subgroup,
    conjugates,
    derived,
    frattini,
    intersection,
    is_centric,
    join,
    lower_central_series,
    maximal_subgroups,
    normalizer,
    omega,
    quotient_centralizer,
    quotient_presentation,
    thompson,
    upper_central_series,
    weak_closure_W,
)

CRITERIA = ("not_centric", "burnside", "chain")
DEFAULT_CLASS_BUDGET = 20000
DEFAULT_ELEMENT_BUDGET = 2**12


class EssentialsError(RuntimeError):
    pass


@dataclass
class PruneEvidence:
    criterion: str
    witness: dict  # JSON-ready: elements as exponent lists, subgroups as igs lists

    def to_dict(self) -> dict:
        return {"criterion": self.criterion, "witness": self.witness}


@dataclass
class CandidateClass:
    class_id: str
    rep: Subgroup
    is_Q1: bool = False
    is_Q2: bool = False
    maximal: bool = False

    def to_dict(self) -> dict:
        return {
            "class": self.class_id,
            "order": self.rep.order,
            "igs": _igs(self.rep),
            "is_Q1": self.is_Q1,
            "is_Q2": self.is_Q2,
            "maximal": self.maximal,
        }


@dataclass
class Elimination:
    class_id: str
    rep: Subgroup
    evidence: list  # PruneEvidence, one per criterion that applies

    def to_dict(self) -> dict:
        return {
            "class": self.class_id,
            "order": self.rep.order,
            "igs": _igs(self.rep),
            "evidence": [e.to_dict() for e in self.evidence],
        }


@dataclass
class CandidateReport:
    family: str
    p: int
    n: int
    class_count: int
    survivors: list
    eliminations: list
    excluded: list  # classes never considered as candidates (S itself)
    exhaustive: bool
    budgets: dict = field(default_factory=dict)
    discarded_non_centric: int = 0

    @property
    def q1_survives(self) -> bool:
        return any(c.is_Q1 for c in self.survivors)

    @property
    def q2_survives(self) -> bool:
        return any(c.is_Q2 for c in self.survivors)

    @property
    def surplus(self) -> int:
        return sum(1 for c in self.survivors if not (c.is_Q1 or c.is_Q2))

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "p": self.p,
            "n": self.n,
            "centric_class_count": self.class_count,
            "survivors": [c.to_dict() for c in self.survivors],
            "eliminations": [e.to_dict() for e in self.eliminations],
            "excluded": [c.to_dict() for c in self.excluded],
            "surplus_survivors": self.surplus,
            "q1_survives": self.q1_survives,
            "q2_survives": self.q2_survives,
            "exhaustive": self.exhaustive,
            "budgets": dict(sorted(self.budgets.items())),
            "discarded_non_centric": self.discarded_non_centric,
        }


def _igs(H: Subgroup) -> list:
    return [list(x) for x in H.igs]


def invariant_key(E: Subgroup) -> tuple:
    """Cheap conjugation invariants used to order and prefilter classes."""
    return (E.order, center(E).order, frattini(E).order, derived(E).order, E.is_abelian())


# -- centric classes ---------------------------------------------------------------------


def centric_classes(S: Subgroup, floor: int | None = None, class_budget: int | None = None):
    """Representatives of the S-classes of S-centric subgroups of order >= floor.

    Descends through maximal subgroups from S.  A non-centric subgroup is dropped
    together with everything below it: centricity passes to overgroups, so no
    centric subgroup is reachable only through a non-centric one.  Each class is
    represented by its least igs among the conjugates.

    Returns (representatives, exhaustive, discarded) with representatives sorted by
    (invariant key, igs); discarded counts the distinct non-centric subgroups met.
    """
    pres = S.pres
    p = pres.p
    Z = center(S)
    if floor is None:
        floor = Z.order * p
    bound = DEFAULT_CLASS_BUDGET if class_budget is None else class_budget
    seen = set(conjugates(S, S))
    reps = [S]
    level = [S]
    exhaustive = True
    discarded = 0
    while level and exhaustive:
        nxt = []
        for E in level:
            if E.order // p < floor:
                continue
            for M in maximal_subgroups(E):
                if M.igs in seen:
                    continue
                seen.add(M.igs)
                # Z(S) <= M is necessary; conjugates of a non-centric M are met again cheaply
                if not all(M.contains(z) for z in Z.igs) or not is_centric(S, M):
                    discarded += 1
                    continue
                orbit = conjugates(S, M)
                seen.update(orbit)
                R = Subgroup(pres, min(orbit))
                nxt.append(R)
                if len(reps) + len(nxt) > bound:
                    exhaustive = False
                    break
            if not exhaustive:
                break
        nxt.sort(key=lambda X: X.igs)
        reps.extend(nxt)
        level = nxt
    reps.sort(key=lambda X: (invariant_key(X), X.igs))
    return reps, exhaustive, discarded


# -- Burnside criterion ----------------------------------------------------------------------


def burnside_prune(S: Subgroup, E: Subgroup):
    """Evidence x in N_S(E) \\ E with [x, E] <= Phi(E), or None."""
    N = normalizer(S, E)
    K = quotient_centralizer(N, E, frattini(E))
    for x in K.igs:
        if not E.contains(x):
            return PruneEvidence("burnside", {"element": list(x)})
    return None


# -- characteristic toolbox and chain criterion ---------------------------------------------


def _safe(fn, *args):
    try:
        return fn(*args)
    except BudgetExceeded:
        return None


def toolbox(E: Subgroup, depth: int = 2) -> dict:
    """Characteristic subgroups of E keyed by igs, valued by a construction label.

    Base members are Phi, Omega(Z), the upper and lower central series, the
    derived subgroup, the first agemo, J, J_normal and W.  Each round closes
    under C_E(X), [X, E], products, intersections and the preimage of Z(E/X).
    """
    pres = E.pres
    found = {}

    def add(X, label):
        if X is not None and X.igs not in found:
            found[X.igs] = (X, label)

    add(E, "E")
    add(frattini(E), "Phi(E)")
    add(omega(center(E)), "Omega(Z(E))")
    for i, X in enumerate(upper_central_series(E)[1:], 1):
        add(X, f"Z_{i}(E)")
    for i, X in enumerate(lower_central_series(E)[1:], 2):
        add(X, f"gamma_{i}(E)")
    add(derived(E), "E'")
    add(_safe(agemo, E), "agemo(E)")
    th = _safe(thompson, E)
    if th is not None:
        add(th.J, "J(E)")
        if th.J_normal is not None:
            add(th.J_normal, "J_normal(E)")
    add(_safe(weak_closure_W, E), "W(E)")
    for _ in range(depth):
        cur = sorted(found.values(), key=lambda t: (t[0].rank, t[0].igs))
        for X, lx in cur:
            add(centralizer(E, X), f"C_E({lx})")
            add(commutator_subgroup(X, E), f"[{lx}, E]")
            add(quotient_centralizer(E, E, X), f"Z(E/{lx})")
        cur = sorted(found.values(), key=lambda t: (t[0].rank, t[0].igs))
        for a, (X, lx) in enumerate(cur):
            for Y, ly in cur[a + 1 :]:
                add(join(X, Y), f"{lx}{ly}")
                add(intersection(X, Y), f"{lx} cap {ly}")
    return {k: v for k, v in sorted(found.items(), key=lambda kv: (kv[1][0].rank, kv[0]))}


def _best_chain(E: Subgroup, members: list, x: tuple):
    """Greedy chain from Phi(E) for x, each step the product of all admissible members."""
    pres = E.pres
    base = frattini(E)
    chain = [(base, "Phi(E)")]
    cur = base
    while cur != E:
        step = cur
        labels = []
        for X, lx in members:
            if X <= step:
                continue
            if all(cur.contains(pres.comm(x, y)) for y in X.igs):
                step = join(step, X)
                labels.append(lx)
        if step == cur:
            return None
        chain.append((step, " * ".join(labels)))
        cur = step
    return chain


def chain_prune(S: Subgroup, E: Subgroup, depth: int = 2, budget: int | None = None):
    """Evidence (chain, x) of the chain criterion, or None."""
    pres = E.pres
    N = normalizer(S, E)
    if N == E:
        return None
    base = frattini(E)
    members = [(X, lx) for X, lx in toolbox(E, depth).values() if X.igs != E.igs]
    members = [(join(X, base), f"({lx})Phi(E)") if not base <= X else (X, lx) for X, lx in members]
    uniq = {}
    for X, lx in members:
        if base <= X and X != base:
            uniq.setdefault(X.igs, (X, lx))
    members = list(uniq.values()) + [(E, "E")]
    bound = DEFAULT_ELEMENT_BUDGET if budget is None else budget
    qt = quotient_presentation(N, E, check=False)
    if qt.pres.order > bound:
        raise BudgetExceeded("chain criterion coset scan", qt.pres.order, bound)
    for y in qt.pres.elements():
        if not any(y):
            continue
        x = qt.lift(y)
        chain = _best_chain(E, members, x)
        if chain is not None:
            return PruneEvidence(
                "chain",
                {
                    "element": list(x),
                    "Q": _igs(join(E, close(pres, [x]))),
                    "chain": [_igs(X) for X, _ in chain],
                    "labels": [lx for _, lx in chain],
                },
            )
    return None


# -- evidence checking ------------------------------------------------------------------------


def verify_evidence(S: Subgroup, elim) -> bool:
    """Re-check every piece of evidence of an elimination from scratch."""
    E = elim.rep
    pres = S.pres
    N = normalizer(S, E)
    ok = True
    for ev in elim.evidence:
        w = ev.witness
        if ev.criterion == "not_centric":
            P = close(pres, [tuple(x) for x in w["conjugate"]])
            ok &= not (centralizer(S, P) <= P)
        elif ev.criterion in ("burnside", "chain"):
            x = tuple(w["element"])
            ok &= N.contains(x) and not E.contains(x)
            if ev.criterion == "burnside":
                Phi = frattini(E)
                ok &= all(Phi.contains(pres.comm(x, e)) for e in E.igs)
            else:
                Q = close(pres, [tuple(g) for g in w["Q"]])
                ok &= Q == join(E, close(pres, [x]))
                chain = [close(pres, [tuple(g) for g in c]) for c in w["chain"]]
                ok &= chain[0] == frattini(E) and chain[-1] == E
                for lo, hi in zip(chain, chain[1:]):
                    ok &= lo <= hi and hi.is_normalized_by(E)
                    ok &= all(lo.contains(pres.comm(x, h)) for h in hi.igs)
        else:
            ok = False
    return bool(ok)


# -- pipeline -----------------------------------------------------------------------------------


def _maximal_flags(S: Subgroup, survivors: list) -> None:
    for c in survivors:
        c.maximal = True
        for d in survivors:
            if d is c or d.rep.order <= c.rep.order:
                continue
            if any(all(d.rep.contains(x) for x in k) for k in conjugates(S, c.rep)):
                c.maximal = False
                break


def candidate_search(
    S: Subgroup,
    designated=None,
    depth: int = 2,
    floor: int | None = None,
    class_budget: int | None = None,
    family: str | None = None,
    strict: bool = True,
    all_evidence: bool = False,
    element_budget: int | None = None,
) -> CandidateReport:
    """centric_classes, then burnside_prune and chain_prune on every proper class.

    With designated subgroups, the classes of Q1 and Q2 are flagged; if either is
    eliminated (and ``strict``) an EssentialsError is raised, since that would
    contradict the structure the search is meant to reproduce.  The chain
    criterion only runs on Burnside survivors unless ``all_evidence`` is set.
    """
    pres = S.pres
    reps, exhaustive, discarded = centric_classes(S, floor, class_budget)
    keys = {}
    if designated is not None:
        keys[class_key(S, designated.Q1)] = "Q1"
        keys[class_key(S, designated.Q2)] = "Q2"
    survivors, eliminations, excluded = [], [], []
    for i, E in enumerate(reps):
        cid = f"E{i:04d}"
        tag = keys.get(E.igs)
        if E == S:
            excluded.append(CandidateClass(cid, E))
            continue
        evidence = []
        b = burnside_prune(S, E)
        if b is not None:
            evidence.append(b)
        if b is None or all_evidence:
            c = chain_prune(S, E, depth, element_budget)
            if c is not None:
                evidence.append(c)
        if evidence:
            if tag and strict:
                raise EssentialsError(f"{tag} was eliminated by {evidence[0].criterion}")
            eliminations.append(Elimination(cid, E, evidence))
        else:
            survivors.append(CandidateClass(cid, E, tag == "Q1", tag == "Q2"))
    _maximal_flags(S, survivors)
    meta = pres.metadata
    fam = family or (designated.family if designated is not None else str(meta.get("family", "test")))
    budgets = {
        "class_budget": DEFAULT_CLASS_BUDGET if class_budget is None else class_budget,
        "floor": center(S).order * pres.p if floor is None else floor,
        "toolbox_depth": depth,
        "element_budget": DEFAULT_ELEMENT_BUDGET if element_budget is None else element_budget,
    }
    return CandidateReport(
        fam,
        pres.p,
        int(meta.get("n", 1)),
        len(reps),
        survivors,
        eliminations,
        excluded,
        exhaustive,
        budgets,
        discarded,
    )
