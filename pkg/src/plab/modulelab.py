"""Elementary abelian sections as GF(p)-modules, their fingerprints and module tests.

A module is always handled through a ``LinearAction``: a GF(p)-space with a group
acting by matrices (column convention).  Sections A/B of a pc group become
linear actions through ``section_space`` and ``LinearAction.from_section``;
constructed modules (natural SL2, Omega4-, triality) through
``LinearAction.from_module``.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import product

from .linalg import identity, mat_mul, mat_pow, mat_sub, mat_vec, nullspace, rank, span_basis
from .pgroup import (
    BudgetExceeded,
    Subgroup,
    SubgroupError,
    center,
    centralizer,
    commutator_subgroup,
    close,
    derived,
    frattini,
    intersection,
    maximal_subgroups,
    quotient_centralizer,
    quotient_presentation,
)

DEFAULT_ELEMENT_BUDGET = 2**12
DEFAULT_PROFILE_BUDGET = 2**16


class ModuleError(ValueError):
    pass


def _log(n: int, p: int) -> int:
    k = 0
    while n > 1:
        if n % p:
            raise ValueError(f"{n} is not a power of {p}")
        n //= p
        k += 1
    return k


# -- sections ------------------------------------------------------------------


@dataclass
class Section:
    upper: Subgroup
    lower: Subgroup
    quotient: object = field(repr=False)

    @property
    def p(self) -> int:
        return self.upper.pres.p

    @property
    def dim(self) -> int:
        return self.quotient.pres.m

    def coords(self, x: tuple) -> list:
        return list(self.quotient.project(x))

    def element(self, vec) -> tuple:
        return self.quotient.lift(tuple(c % self.p for c in vec))

    def action_matrix(self, g: tuple) -> list:
        """Matrix of x -> g^-1 x g on the section."""
        pres = self.upper.pres
        cols = []
        for j in range(self.dim):
            e = [int(i == j) for i in range(self.dim)]
            cols.append(self.coords(pres.conj(self.element(e), g)))
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def subspace(self, K: Subgroup) -> list:
        """Echelon basis of (K ∩ upper) lower / lower."""
        return span_basis([self.coords(x) for x in intersection(K, self.upper).igs], self.p)


def section_space(A: Subgroup, B: Subgroup) -> Section:
    if not B <= A:
        raise ModuleError("lower subgroup is not contained in the upper one")
    if not B.is_normalized_by(A):
        raise ModuleError("lower subgroup is not normal in the upper one")
    q = quotient_presentation(A, B, check=False)
    if any(any(w) for w in q.pres.powers) or q.pres.commutators:
        raise ModuleError("section is not elementary abelian")
    return Section(A, B, q)


# -- linear actions -------------------------------------------------------------


def _freeze(M) -> tuple:
    return tuple(tuple(r) for r in M)


@dataclass
class LinearAction:
    p: int
    dim: int
    gens: list  # matrices generating the acting group
    sampler: object = field(default=None, repr=False)  # rng -> matrix, for large groups
    label: str = ""

    @classmethod
    def from_section(cls, V: Section, T: Subgroup, label: str = "") -> "LinearAction":
        U, L = V.upper, V.lower
        if not (U.is_normalized_by(T) and L.is_normalized_by(T)):
            raise ModuleError("acting subgroup does not normalize the section")

        def sampler(rng):
            return V.action_matrix(T.element([rng.randrange(T.pres.p) for _ in T.igs]))

        gens = [V.action_matrix(g) for g in T.igs]
        return cls(V.p, V.dim, gens, sampler, label)

    @classmethod
    def from_module(cls, M, label: str = "") -> "LinearAction":
        def sampler(rng):
            return M.t_matrix([rng.randrange(M.p) for _ in M.t_mats])

        return cls(M.p, M.dim, [list(map(list, X)) for X in M.t_mats], sampler, label)

    def sub_action(self, gens: list, label: str = "") -> "LinearAction":
        return LinearAction(self.p, self.dim, gens, None, label)

    def elements(self, budget: int | None = None) -> list:
        """All matrices of the acting group, by breadth-first closure."""
        bound = DEFAULT_ELEMENT_BUDGET if budget is None else budget
        one = _freeze(identity(self.dim))
        seen = {one}
        order = [one]
        frontier = [one]
        gens = [_freeze(g) for g in self.gens]
        while frontier:
            nxt = []
            for X in frontier:
                for g in gens:
                    Y = _freeze(mat_mul(X, g, self.p))
                    if Y not in seen:
                        seen.add(Y)
                        order.append(Y)
                        nxt.append(Y)
                        if len(seen) > bound:
                            raise BudgetExceeded("acting group enumeration", len(seen), bound)
            frontier = nxt
        return sorted(order)

    def commutator_space(self, basis: list) -> list:
        """[U, T] for a T-invariant subspace U given by a basis."""
        p = self.p
        vecs = []
        for u in basis:
            for g in self.gens:
                vecs.append([(x - y) % p for x, y in zip(mat_vec(g, u, p), u)])
        return span_basis(vecs, p)

    def fixed_space(self, mats: list | None = None) -> list:
        mats = self.gens if mats is None else mats
        rows = []
        for g in mats:
            rows.extend(mat_sub(g, identity(self.dim), self.p))
        return nullspace(rows, self.p, self.dim) if rows else identity(self.dim)

    def omega_gens(self, budget: int | None = None) -> list:
        """Generators of the subgroup generated by elements of order p."""
        one = _freeze(identity(self.dim))
        return [list(map(list, X)) for X in self.elements(budget) if X != one and _freeze(mat_pow(X, self.p, self.p)) == one]


# -- fingerprints ----------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    p: int
    dim: int
    chain: tuple  # dims of [V,T], [V,T,T], ... ending in 0
    centralizer_dim: int
    profile: tuple  # ((dim V/C_V(t), count), ...) over t != 1
    quadratic: bool
    acting_log: int  # log_p of the order of the acting group (as matrices)
    exhaustive: bool
    omega: tuple | None = None  # (dim [V, Omega(T)], dim C_V(Omega(T)))

    @property
    def chain_length(self) -> int:
        return sum(1 for d in self.chain if d)

    def codims(self) -> set:
        return {c for c, _ in self.profile}

    def to_dict(self) -> dict:
        d = asdict(self)
        d["chain"] = list(self.chain)
        d["profile"] = [list(x) for x in self.profile]
        d["omega"] = list(self.omega) if self.omega is not None else None
        return d


def fingerprint(V, T=None, budget: int | None = None, samples: int = 256, seed: int = 0) -> Fingerprint:
    """Fingerprint of a linear action, or of a section V under a subgroup T."""
    act = V if isinstance(V, LinearAction) else LinearAction.from_section(V, T)
    p = act.p
    chain = []
    cur = identity(act.dim)
    while True:
        cur = act.commutator_space(cur)
        chain.append(len(cur))
        if not cur:
            break
    cent = len(act.fixed_space())
    exhaustive = True
    try:
        mats = act.elements(budget)
        acting_log = _log(len(mats), p)
    except BudgetExceeded:
        if act.sampler is None:
            raise
        rng = random.Random(seed)
        mats = sorted({_freeze(act.sampler(rng)) for _ in range(samples)})
        exhaustive = False
        acting_log = -1
    counts = {}
    one = _freeze(identity(act.dim))
    for X in mats:
        if X == one:
            continue
        c = rank(mat_sub(X, identity(act.dim), p), p)
        counts[c] = counts.get(c, 0) + 1
    omega_data = None
    if exhaustive:
        og = act.omega_gens(budget)
        if og:
            sub = act.sub_action(og)
            omega_data = (len(sub.commutator_space(identity(act.dim))), len(sub.fixed_space()))
    quadratic = chain[0] == 0 or chain[1] == 0
    return Fingerprint(p, act.dim, tuple(chain), cent, tuple(sorted(counts.items())), quadratic, acting_log, exhaustive, omega_data)


# -- signatures -------------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    kind: str  # natural_SL2, omega4_minus, triality, natural_SU3, natural_Sz, unknown
    q: int | None = None  # field order of the matched lemma

    def __str__(self):
        return f"{self.kind}({self.q})" if self.q else self.kind


def _signatures(f: Fingerprint, order: int) -> list:
    p, d = f.p, f.dim
    out = []
    codims = f.codims()
    if d % 2 == 0 and d:
        k = d // 2
        if f.chain == (k, 0) and f.centralizer_dim == k and order == p**k and codims == {k}:
            out.append(Classification("natural_SL2", p**k))
    if d % 4 == 0 and d:
        k = d // 4
        if f.chain == (3 * k, k, 0) and f.centralizer_dim == k and order == p ** (2 * k):
            out.append(Classification("omega4_minus", p**k))
    if d % 8 == 0 and d:
        k = d // 8
        want = 4 * k if p == 2 else 5 * k
        if f.chain == (7 * k, 4 * k, k, 0) and f.centralizer_dim == k and order == p ** (3 * k) and codims == {want}:
            out.append(Classification("triality", p**k))
    if d % 6 == 0 and d:
        k = d // 6
        if f.chain == (4 * k, 2 * k, 0) and f.centralizer_dim == 2 * k and order == p ** (3 * k):
            out.append(Classification("natural_SU3", p**k))
    if p == 2 and d % 4 == 0 and d:
        k = d // 4
        omega_ok = f.omega is None or f.omega == (2 * k, 2 * k)
        if f.chain == (3 * k, 2 * k, k, 0) and f.centralizer_dim == k and order == 2 ** (2 * k) and omega_ok:
            out.append(Classification("natural_Sz", 2**k))
    return out


def classify_signature(f: Fingerprint, context: dict | None = None) -> Classification:
    """The unique module-lemma signature matching every recorded number, else unknown.

    ``context`` may carry ``order``, the order of the acting group; by default the
    order recorded in the fingerprint is used.
    """
    context = context or {}
    order = context.get("order")
    if order is None:
        if f.acting_log < 0:
            return Classification("unknown")
        order = f.p**f.acting_log
    matches = _signatures(f, order)
    return matches[0] if len(matches) == 1 else Classification("unknown")


# -- offenders ----------------------------------------------------------------------


@dataclass
class Offender:
    candidate: object
    margin: Fraction  # |A/C_A(V)| / |V/C_V(A)|
    image_order: int
    quotient_order: int


def offender_data(action: LinearAction, budget: int | None = None):
    """(is elementary abelian image, |A/C_A(V)|, |V/C_V(A)|, acts nontrivially)."""
    p = action.p
    mats = action.elements(budget)
    gens = [_freeze(g) for g in action.gens]
    one = _freeze(identity(action.dim))
    elab = all(_freeze(mat_pow(g, p, p)) == one for g in gens) and all(
        mat_mul(a, b, p) == mat_mul(b, a, p) for a in action.gens for b in action.gens
    )
    cv = len(action.fixed_space())
    return elab, len(mats), p ** (action.dim - cv), any(g != one for g in gens)


def ff_offenders(V, candidates: list, budget: int | None = None) -> list:
    """All offenders among the candidates, with their margins.

    ``V`` is a LinearAction (candidates are lists of matrices or LinearActions)
    or a Section (candidates are Subgroups normalizing it).
    """
    out = []
    for A in candidates:
        if isinstance(A, LinearAction):
            act = A
        elif isinstance(A, Subgroup):
            act = LinearAction.from_section(V, A)
        else:
            act = V.sub_action(list(A))
        elab, image, quot, nontrivial = offender_data(act, budget)
        if elab and nontrivial and quot <= image:
            out.append(Offender(A, Fraction(image, quot), image, quot))
    return out


def acting_subgroups(M) -> list:
    """LinearActions of every nontrivial subgroup of the elementary abelian T of a module."""
    p, r = M.p, len(M.t_mats)
    spaces = {}
    for vec in product(range(p), repeat=r):
        if any(vec):
            spaces.setdefault(tuple(map(tuple, span_basis([list(vec)], p))), None)
    # all subspaces: close under sums of spanned sets
    frontier = list(spaces)
    found = set(frontier)
    while frontier:
        nxt = []
        for B in frontier:
            for line in list(spaces):
                S = tuple(map(tuple, span_basis([list(x) for x in B + line], p)))
                if S not in found:
                    found.add(S)
                    nxt.append(S)
        frontier = nxt
    out = []
    for B in sorted(found, key=lambda b: (len(b), b)):
        gens = [M.t_matrix(b) for b in B]
        out.append(LinearAction(p, M.dim, gens, None, f"span{list(map(list, B))}"))
    return out


# -- semi-extraspecial groups ---------------------------------------------------------


@dataclass
class SpecialReport:
    semi_extraspecial: bool
    ultraspecial: bool
    witnesses: dict

    def to_dict(self) -> dict:
        return {"semi_extraspecial": self.semi_extraspecial, "ultraspecial": self.ultraspecial, "witnesses": self.witnesses}


def _is_extraspecial(Q: Subgroup) -> bool:
    Z = center(Q)
    return Z.order == Q.pres.p and frattini(Q) == Z and derived(Q) == Z


def special_group_tests(Q: Subgroup, samples: int = 16, seed: int = 0) -> SpecialReport:
    pres = Q.pres
    p = pres.p
    Z = center(Q)
    witnesses = {}
    ok = frattini(Q) == Z and derived(Q) == Z and not Z.is_trivial()
    if not ok:
        witnesses["phi_derived_center"] = {"|Z|": Z.order, "|Phi|": frattini(Q).order, "|Q'|": derived(Q).order}
    if ok:
        for M in maximal_subgroups(Z):
            qt = quotient_presentation(Q, M, check=False)
            if not _is_extraspecial(qt.whole()):
                ok = False
                witnesses["non_extraspecial_quotient_by"] = [list(x) for x in M.igs]
                break
    ultra = ok and Z.order**2 == Q.order // Z.order
    if ok:
        # abelian subgroups A satisfy |A| <= |Z(Q)| p^n where |Q/Z(Q)| = p^(2n)
        n = _log(Q.order // Z.order, p) // 2
        bound = Z.order * p**n
        rng = random.Random(seed)
        worst = 0
        for _ in range(samples):
            A = Z
            while True:
                C = centralizer(Q, A)
                if C == A:
                    break
                cands = [x for x in C.igs if not A.contains(x)]
                x = rng.choice(cands)
                A = close(pres, [x], base=A)
            worst = max(worst, A.order)
        witnesses["abelian_bound"] = {"bound": bound, "largest_sampled": worst, "holds": worst <= bound}
    return SpecialReport(ok, ultra, witnesses)


# -- centralizer profiles ---------------------------------------------------------------


@dataclass
class Profile:
    counts: dict  # order -> number of elements of X
    exhaustive: bool
    evaluated: int
    containment: bool | None = None
    failures: list = field(default_factory=list)

    def values(self) -> set:
        return set(self.counts)

    def to_dict(self) -> dict:
        return {
            "counts": {str(k): v for k, v in sorted(self.counts.items())},
            "exhaustive": self.exhaustive,
            "evaluated": self.evaluated,
            "containment": self.containment,
        }


def centralizer_profile(
    A: Subgroup,
    upper: Subgroup,
    lower: Subgroup | None = None,
    modulo: Subgroup | None = None,
    constant_on: Subgroup | None = None,
    inside: Subgroup | None = None,
    budget: int | None = None,
    samples: int = 256,
    seed: int = 0,
) -> Profile:
    """Multiset of |C_{A/N}(x)| over x in upper \\ lower (N = ``modulo``, default 1).

    With ``constant_on`` = K, a normal subgroup of ``upper`` inside ``lower`` with
    [A, K] <= N, the centralizer is constant on cosets of K, so one representative
    per coset is exhaustive.  ``inside`` adds the assertion C <= inside.
    """
    pres = A.pres
    bound = DEFAULT_PROFILE_BUDGET if budget is None else budget
    N = modulo
    weight = 1
    if constant_on is not None:
        K = constant_on
        if lower is not None and not K <= lower:
            raise ModuleError("constant_on must lie inside the excluded subgroup")
        comm = commutator_subgroup(A, K)
        if not (comm.is_trivial() if N is None else comm <= N):
            raise ModuleError("constant_on does not centralize A/N")
        q = quotient_presentation(upper, K)
        if q.pres.order > bound:
            raise BudgetExceeded("centralizer profile cosets", q.pres.order, bound)
        xs = [q.lift(y) for y in q.pres.elements()]
        weight = K.order
        exhaustive = True
    elif upper.order <= bound:
        xs = upper.elements()
        exhaustive = True
    else:
        rng = random.Random(seed)
        xs = [upper.element([rng.randrange(pres.p) for _ in upper.igs]) for _ in range(samples)]
        exhaustive = False
    counts = {}
    evaluated = 0
    containment = None if inside is None else True
    failures = []
    for x in xs:
        if lower is not None and lower.contains(x):
            continue
        evaluated += 1
        if N is None:
            C = centralizer(A, [x])
            order = C.order
        else:
            C = quotient_centralizer(A, close(pres, [x]), N)
            order = C.order // intersection(C, N).order
        counts[order] = counts.get(order, 0) + weight
        if inside is not None and not C <= inside:
            containment = False
            if len(failures) < 5:
                failures.append(list(x))
    return Profile(counts, exhaustive, evaluated, containment, failures)
