"""Catalogue of executable structural assertions for the constructed Sylow subgroups.

Every check belongs to a family (PSU5, 3D4, 2F4) and a suite (structure,
fingerprints, lemmas, essentials) and carries a stable id plus an anchor: the
mathematical claim it verifies, written in plain notation.  Running a check
yields an ``Assertion`` record with the expected and computed values.

All orders are reported as integers.  A check may decline to apply (for
example a p = 2 only statement at odd p); it is then left out of the report.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .constructors.designated import designated_subgroups, normalize_family
from .modulelab import (
    classify_signature,
    fingerprint,
    section_space,
    special_group_tests,
)
from .pgroup import (
    BudgetExceeded,
    PcPresentation,
    center,
    centralizer,
    close,
    commutator_subgroup,
    derived,
    frattini,
    intersection,
    join,
    maximal_subgroups,
    omega,
    quotient_centralizer,
    quotient_presentation,
    thompson,
    trivial,
    upper_central,
    upper_central_series,
)

SUITES = ("structure", "fingerprints", "lemmas", "essentials")


@dataclass
class Assertion:
    id: str
    anchor: str
    expected: object
    computed: object
    passed: bool
    exhaustive: bool = True
    gating: bool = True  # False for reported targets that do not decide pass/fail
    budget_exceeded: bool = False

    def to_dict(self) -> dict:
        d = {
            "id": self.id,
            "anchor": self.anchor,
            "expected": self.expected,
            "computed": self.computed,
            "pass": self.passed,
            "exhaustive": self.exhaustive,
        }
        if not self.gating:
            d["gating"] = False
        if self.budget_exceeded:
            d["budget_exceeded"] = True
        return d


@dataclass(frozen=True)
class Check:
    id: str
    family: str
    suite: str
    anchor: str
    run: object  # Lab -> (expected, computed, passed, exhaustive) or None


CATALOGUE: list = []


def check(id: str, family: str, suite: str, anchor: str):
    def deco(fn):
        CATALOGUE.append(Check(id, family, suite, anchor, fn))
        return fn

    return deco


def catalogue(family: str | None = None, suites=None) -> list:
    out = []
    for c in CATALOGUE:
        if family is not None and c.family != family:
            continue
        if suites is not None and c.suite not in suites:
            continue
        out.append(c)
    return out


# -- shared computations -------------------------------------------------------------


class Lab:
    """A presentation with its designated subgroups and cached derived data."""

    def __init__(
        self,
        pres: PcPresentation,
        family: str,
        seed: int = 0,
        samples: int = 64,
        depth: int = 2,
        class_budget: int | None = None,
        element_budget: int | None = None,
    ):
        self.pres = pres
        self.family = normalize_family(family)
        self.p = pres.p
        self.n = int(pres.metadata.get("n", 1))
        self.q = self.p**self.n
        self.seed = seed
        self.samples = samples
        self.depth = depth
        self.class_budget = class_budget
        self.element_budget = element_budget
        self.D = designated_subgroups(pres, self.family, check=False)
        self.S, self.Q1, self.Q2 = self.D.S, self.D.Q1, self.D.Q2

    @cached_property
    def Z(self):
        return center(self.S)

    @cached_property
    def Z2(self):
        return upper_central(self.S, 2)

    @cached_property
    def Z3(self):
        return upper_central(self.S, 3)

    @cached_property
    def ZQ1(self):
        return center(self.Q1)

    @cached_property
    def PhiQ1(self):
        return frattini(self.Q1)

    @cached_property
    def Q12(self):
        return intersection(self.Q1, self.Q2)

    @cached_property
    def m_p(self):
        return thompson(self.S).m_p

    def in_A(self, A) -> bool:
        """A is elementary abelian of maximal rank in S."""
        return A.is_elementary_abelian() and A.rank == self.m_p

    def special(self, Q):
        key = ("special", Q.igs)
        if key not in self.__dict__:
            self.__dict__[key] = special_group_tests(Q, seed=self.seed)
        return self.__dict__[key]

    def fp(self, upper, lower):
        key = ("fp", upper.igs, lower.igs)
        if key not in self.__dict__:
            self.__dict__[key] = fingerprint(section_space(upper, lower), self.S, seed=self.seed)
        return self.__dict__[key]

    @cached_property
    def q1_cosets(self):
        """Per nontrivial coset b Phi(Q1) of Q1: data of the centralizer lemmas.

        Every quantity is constant on the coset because Phi(Q1) is abelian.
        """
        Phi, Q1, ZQ1 = self.PhiQ1, self.Q1, self.ZQ1
        qt = quotient_presentation(Q1, Phi)
        rows = []
        for y in qt.pres.elements():
            if not any(y):
                continue
            b = qt.lift(y)
            D = centralizer(Phi, [b])
            C = centralizer(Q1, D)
            rows.append(
                {
                    "b": b,
                    "in_Q2": self.Q2.contains(b),
                    "cent": D.order,
                    "comm": commutator_subgroup(close(self.pres, [b]), Phi).order,
                    "cq1": C.order,
                    "centre_ok": center(C) == D,
                    "frattini_ok": frattini(C) == ZQ1,
                }
            )
        return rows, Phi.order

    @cached_property
    def s_cosets(self):
        """Per coset x Q2 with x outside Q2: C_{Q2/Z}(x) and the targets of the lemma."""
        Z, Q2, Phi = self.Z, self.Q2, self.PhiQ1
        qt = quotient_presentation(self.S, Q2)
        rows = []
        for y in qt.pres.elements():
            if not any(y):
                continue
            x = qt.lift(y)
            X = close(self.pres, [x])
            C = quotient_centralizer(Q2, X, Z)
            D = quotient_centralizer(Phi, X, Z)
            target = centralizer(self.Q12, D) if self.p == 2 else Phi
            rows.append({"order": C.order // Z.order, "phi": D.order // Z.order, "inside": C <= target})
        return rows, Q2.order


def _counts(rows, key, weight):
    out = {}
    for r in rows:
        out[r[key]] = out.get(r[key], 0) + weight
    return {str(k): v for k, v in sorted(out.items())}


def _orders(**subs) -> dict:
    return {k: v.order for k, v in subs.items()}


# -- PSU5 ----------------------------------------------------------------------------------


@check("psu5.order", "PSU5", "structure", "|S| = q^10")
def _(lab):
    return lab.q**10, lab.S.order, lab.S.order == lab.q**10, True


@check("psu5.derived", "PSU5", "structure", "S' = Phi(S) = Z(Q1)(Q1 cap Q2)")
def _(lab):
    a, b, c = derived(lab.S), frattini(lab.S), join(lab.ZQ1, lab.Q12)
    return True, _orders(derived=a, frattini=b, product=c), a == b == c, True


@check("psu5.rank", "PSU5", "structure", "m_p(S) = 4n for p = 2 and 5n for p odd")
def _(lab):
    want = (4 if lab.p == 2 else 5) * lab.n
    return want, lab.m_p, lab.m_p == want, True


@check("psu5.center", "PSU5", "structure", "Z(S) = Z(Q2)")
def _(lab):
    return True, _orders(Z=lab.Z, ZQ2=center(lab.Q2)), lab.Z == center(lab.Q2), True


@check("psu5.z2", "PSU5", "structure", "Z_2(S) = Z(Q1) cap Q2")
def _(lab):
    other = intersection(lab.ZQ1, lab.Q2)
    return True, _orders(Z2=lab.Z2, meet=other), lab.Z2 == other, True


@check("psu5.q1_order", "PSU5", "structure", "|Q1| = q^8")
def _(lab):
    return lab.q**8, lab.Q1.order, lab.Q1.order == lab.q**8, True


@check("psu5.zq1_order", "PSU5", "structure", "|Z(Q1)| = q^4")
def _(lab):
    return lab.q**4, lab.ZQ1.order, lab.ZQ1.order == lab.q**4, True


@check("psu5.zq1_in_A", "PSU5", "structure", "Z(Q1) in A(S) iff p = 2")
def _(lab):
    got = lab.in_A(lab.ZQ1)
    return lab.p == 2, got, got == (lab.p == 2), True


@check("psu5.zq1_frattini", "PSU5", "structure", "Z(Q1) = Phi(Q1) = [Q1, Q1]")
def _(lab):
    a, b = frattini(lab.Q1), derived(lab.Q1)
    return True, _orders(ZQ1=lab.ZQ1, frattini=a, derived=b), lab.ZQ1 == a == b, True


@check("psu5.large_centralizer", "PSU5", "structure", "A <= Z(Q1), |A| > q^2 implies C_S(A) = Q1")
def _(lab):
    # C_S(A) only grows as A shrinks, so subgroups of order p q^2 decide the claim
    Z1 = lab.ZQ1
    if lab.n == 1:
        cands = maximal_subgroups(Z1)
        exhaustive = True
    else:
        rng = random.Random(lab.seed)
        cands = []
        for _ in range(lab.samples):
            A = lab.Z2 if lab.Z2 <= Z1 else intersection(lab.Z2, Z1)
            while A.order < lab.p * lab.q**2:
                A = close(lab.pres, [Z1.element([rng.randrange(lab.p) for _ in Z1.igs])], base=A)
            cands.append(A)
        exhaustive = False
    bad = [A.order for A in cands if centralizer(lab.S, A) != lab.Q1]
    return 0, len(bad), not bad, exhaustive


@check("psu5.q2_order", "PSU5", "structure", "|Q2| = q^7")
def _(lab):
    return lab.q**7, lab.Q2.order, lab.Q2.order == lab.q**7, True


@check("psu5.q2_semi_extraspecial", "PSU5", "structure", "Q2 is semi-extraspecial")
def _(lab):
    r = lab.special(lab.Q2)
    return True, r.semi_extraspecial, r.semi_extraspecial, True


@check("psu5.q2_section_dim", "PSU5", "structure", "dim Q2/Z(S) = 6n")
def _(lab):
    d = lab.Q2.rank - lab.Z.rank
    return 6 * lab.n, d, d == 6 * lab.n, True


@check("psu5.fp.q2", "PSU5", "fingerprints", "Q2/Z(S) is a natural SU3(q)-module")
def _(lab):
    f = lab.fp(lab.Q2, lab.Z)
    got = str(classify_signature(f))
    return f"natural_SU3({lab.q})", got, got == f"natural_SU3({lab.q})", f.exhaustive


@check("psu5.fp.q1", "PSU5", "fingerprints", "Q1/Z(Q1) is a natural SL2(q^2)-module")
def _(lab):
    f = lab.fp(lab.Q1, lab.ZQ1)
    got = str(classify_signature(f))
    return f"natural_SL2({lab.q**2})", got, got == f"natural_SL2({lab.q**2})", f.exhaustive


@check("psu5.fp.zq1", "PSU5", "fingerprints", "Z(Q1) is a natural Omega4-(q)-module")
def _(lab):
    f = lab.fp(lab.ZQ1, trivial(lab.pres))
    got = str(classify_signature(f))
    return f"omega4_minus({lab.q})", got, got == f"omega4_minus({lab.q})", f.exhaustive


# -- 3D4 -----------------------------------------------------------------------------------


@check("d4.order", "3D4", "structure", "|S| = q^12")
def _(lab):
    return lab.q**12, lab.S.order, lab.S.order == lab.q**12, True


@check("d4.derived", "3D4", "structure", "S' = Phi(S) = Q1 cap Q2")
def _(lab):
    a, b = derived(lab.S), frattini(lab.S)
    return True, _orders(derived=a, frattini=b, meet=lab.Q12), a == b == lab.Q12, True


@check("d4.rank", "3D4", "structure", "m_p(S) = 5n")
def _(lab):
    return 5 * lab.n, lab.m_p, lab.m_p == 5 * lab.n, True


@check("d4.center", "3D4", "structure", "Z(S) = Z(Q2) of order q")
def _(lab):
    ok = lab.Z == center(lab.Q2) and lab.Z.order == lab.q
    return lab.q, _orders(Z=lab.Z, ZQ2=center(lab.Q2)), ok, True


@check("d4.z2", "3D4", "structure", "Z_2(S) = Z(Q1) elementary abelian of order q^2")
def _(lab):
    ok = lab.Z2 == lab.ZQ1 and lab.Z2.is_elementary_abelian() and lab.Z2.order == lab.q**2
    return lab.q**2, _orders(Z2=lab.Z2, ZQ1=lab.ZQ1), ok, True


@check("d4.phi_q1", "3D4", "structure", "Phi(Q1) = Z_3(S) elementary abelian of order q^5")
def _(lab):
    P = lab.PhiQ1
    ok = P == lab.Z3 and P.is_elementary_abelian() and P.order == lab.q**5
    return lab.q**5, _orders(PhiQ1=P, Z3=lab.Z3), ok, True


@check("d4.q2_centralizes", "3D4", "structure", "C_S(Phi(Q1)/Z(S)) = Q2")
def _(lab):
    C = quotient_centralizer(lab.S, lab.PhiQ1, lab.Z)
    return lab.Q2.order, C.order, C == lab.Q2, True


@check("d4.involutions", "3D4", "structure", "p = 2: every involution of S lies in Q1 or Q2")
def _(lab):
    if lab.p != 2:
        return None
    pres = lab.pres
    bad = 0
    for x in lab.S.elements():
        if x != pres.identity and pres.mul(x, x) == pres.identity:
            if not (lab.Q1.contains(x) or lab.Q2.contains(x)):
                bad += 1
    return 0, bad, bad == 0, True


@check("d4.q1_order", "3D4", "structure", "|Q1| = q^11")
def _(lab):
    return lab.q**11, lab.Q1.order, lab.Q1.order == lab.q**11, True


@check("d4.phi_in_A", "3D4", "structure", "Phi(Q1) in A(S)")
def _(lab):
    got = lab.in_A(lab.PhiQ1)
    return True, got, got, True


@check("d4.q1_section", "3D4", "structure", "Q1/Phi(Q1): dim 6n, quadratic under S, dim C = 3n")
def _(lab):
    f = lab.fp(lab.Q1, lab.PhiQ1)
    want = {"dim": 6 * lab.n, "quadratic": True, "centralizer_dim": 3 * lab.n}
    got = {"dim": f.dim, "quadratic": f.quadratic, "centralizer_dim": f.centralizer_dim}
    return want, got, want == got, True


@check("d4.zq1", "3D4", "structure", "|Z(Q1)| = q^2 and [Phi(Q1), S] <= Z(Q1)")
def _(lab):
    c = commutator_subgroup(lab.PhiQ1, lab.S)
    ok = lab.ZQ1.order == lab.q**2 and c <= lab.ZQ1
    return lab.q**2, _orders(ZQ1=lab.ZQ1, comm=c), ok, True


@check("d4.q1_commutators", "3D4", "structure", "Phi(Q1) = [Q1, Q1] and Z(Q1) = [Phi(Q1), Q1]")
def _(lab):
    a = derived(lab.Q1)
    b = commutator_subgroup(lab.PhiQ1, lab.Q1)
    return True, _orders(derived=a, comm=b), a == lab.PhiQ1 and b == lab.ZQ1, True


@check("d4.q2_semi_extraspecial", "3D4", "structure", "Q2 is semi-extraspecial of order q^9")
def _(lab):
    r = lab.special(lab.Q2)
    ok = r.semi_extraspecial and lab.Q2.order == lab.q**9
    return lab.q**9, {"order": lab.Q2.order, "semi_extraspecial": r.semi_extraspecial}, ok, True


@check("d4.q2_section", "3D4", "structure", "Q2/Z(S): chain 8n > 7n > 4n > n > 0, |V/C_V(s)| = q^4 (p=2), q^5 (p odd)")
def _(lab):
    f = lab.fp(lab.Q2, lab.Z)
    n = lab.n
    codim = (4 if lab.p == 2 else 5) * n
    want = {"chain": [8 * n, 7 * n, 4 * n, n, 0], "codims": [codim]}
    got = {"chain": [f.dim, *f.chain], "codims": sorted(f.codims())}
    return want, got, want == got, f.exhaustive


@check("d4.fp.q2", "3D4", "fingerprints", "Q2/Z(S) is a triality module")
def _(lab):
    f = lab.fp(lab.Q2, lab.Z)
    got = str(classify_signature(f))
    return f"triality({lab.q})", got, got == f"triality({lab.q})", f.exhaustive


@check("d4.fp.zq1", "3D4", "fingerprints", "Z(Q1) is a natural SL2(q)-module")
def _(lab):
    f = lab.fp(lab.ZQ1, trivial(lab.pres))
    got = str(classify_signature(f))
    return f"natural_SL2({lab.q})", got, got == f"natural_SL2({lab.q})", f.exhaustive


@check("d4.fp.q1", "3D4", "fingerprints", "Q1/Phi(Q1) is a sum of three natural SL2(q)-modules")
def _(lab):
    f = lab.fp(lab.Q1, lab.PhiQ1)
    n = lab.n
    want = {"chain": [3 * n, 0], "centralizer_dim": 3 * n, "acting_order": lab.q}
    got = {"chain": list(f.chain), "centralizer_dim": f.centralizer_dim, "acting_order": lab.p**f.acting_log}
    return want, got, want == got, f.exhaustive


@check("d4.phi1cent.all", "3D4", "lemmas", "b in Q1 \\ Phi(Q1): |C_{Phi(Q1)}(b)| = q^4")
def _(lab):
    rows, w = lab.q1_cosets
    got = _counts(rows, "cent", w)
    want = {str(lab.q**4): len(rows) * w}
    return want, got, got == want, True


@check("d4.phi1cent.comm", "3D4", "lemmas", "b in Q1 \\ Phi(Q1): |[b, Phi(Q1)]| = q")
def _(lab):
    rows, w = lab.q1_cosets
    got = _counts(rows, "comm", w)
    want = {str(lab.q): len(rows) * w}
    return want, got, got == want, True


@check("d4.phi1cent.q2_part", "3D4", "lemmas", "b in (Q1 cap Q2) \\ Phi(Q1): |C_{Phi(Q1)}(b)| = q^4, |[b, Phi(Q1)]| = q")
def _(lab):
    rows, w = lab.q1_cosets
    sub = [r for r in rows if r["in_Q2"]]
    got = {"cent": _counts(sub, "cent", w), "comm": _counts(sub, "comm", w)}
    want = {"cent": {str(lab.q**4): len(sub) * w}, "comm": {str(lab.q): len(sub) * w}}
    return want, got, got == want, True


@check("d4.phi1cent.subgroups", "3D4", "lemmas",
       "A <= Q1: |C_{Phi(Q1)}(A)| in {q^2, q^3, q^4, q^5}; q^2 forces C = Z(Q1), q^5 forces A <= Phi(Q1)")
def _(lab):
    rng = random.Random(lab.seed)
    Q1, Phi, q = lab.Q1, lab.PhiQ1, lab.q
    allowed = {q**2, q**3, q**4, q**5}
    counts, bad = {}, 0
    for i in range(lab.samples):
        host = Phi if i % 8 == 0 else Q1
        k = 1 + i % 3
        A = close(lab.pres, [host.element([rng.randrange(lab.p) for _ in host.igs]) for _ in range(k)])
        C = centralizer(Phi, A)
        counts[C.order] = counts.get(C.order, 0) + 1
        if C.order not in allowed:
            bad += 1
        elif C.order == q**2 and C != lab.ZQ1:
            bad += 1
        elif C.order == q**5 and not A <= Phi:
            bad += 1
    got = {"violations": bad, "orders": {str(k): v for k, v in sorted(counts.items())}}
    return {"violations": 0}, got, bad == 0, False


@check("d4.centstruct.order", "3D4", "lemmas", "a in Q1 \\ Phi(Q1), D = C_{Phi(Q1)}(a): |C_{Q1}(D)| = q^7")
def _(lab):
    rows, w = lab.q1_cosets
    got = _counts(rows, "cq1", w)
    want = {str(lab.q**7): len(rows) * w}
    return want, got, got == want, True


@check("d4.centstruct.center", "3D4", "lemmas", "a in Q1 \\ Phi(Q1), D = C_{Phi(Q1)}(a): D = Z(C_{Q1}(D))")
def _(lab):
    rows, w = lab.q1_cosets
    got = _counts(rows, "centre_ok", w)
    want = {"True": len(rows) * w}
    return want, got, got == want, True


@check("d4.centstruct.frattini", "3D4", "lemmas", "p = 2, a in Q1 \\ Phi(Q1), D = C_{Phi(Q1)}(a): Phi(C_{Q1}(D)) = Z(Q1)")
def _(lab):
    if lab.p != 2:
        return None
    rows, w = lab.q1_cosets
    got = _counts(rows, "frattini_ok", w)
    want = {"True": len(rows) * w}
    return want, got, got == want, True


@check("d4.centstruct.q2_part", "3D4", "lemmas",
       "a in (Q1 cap Q2) \\ Phi(Q1): |C_{Q1}(D)| = q^7, D = Z(C_{Q1}(D)), and Phi(C_{Q1}(D)) = Z(Q1) for p = 2")
def _(lab):
    rows, w = lab.q1_cosets
    sub = [r for r in rows if r["in_Q2"]]
    keys = ["cq1", "centre_ok"] + (["frattini_ok"] if lab.p == 2 else [])
    got = {k: _counts(sub, k, w) for k in keys}
    want = {"cq1": {str(lab.q**7): len(sub) * w}, "centre_ok": {"True": len(sub) * w}}
    if lab.p == 2:
        want["frattini_ok"] = {"True": len(sub) * w}
    return want, got, got == want, True


@check("d4.q2cent.order", "3D4", "lemmas", "x in S \\ Q2: |C_{Q2/Z(S)}(x)| = q^4 (p = 2), q^3 (p odd)")
def _(lab):
    rows, w = lab.s_cosets
    e = 4 if lab.p == 2 else 3
    got = _counts(rows, "order", w)
    want = {str(lab.q**e): len(rows) * w}
    return want, got, got == want, True


@check("d4.q2cent.phi", "3D4", "lemmas", "p = 2, x in S \\ Q2: |C_{Phi(Q1)/Z(S)}(x)| = q^3")
def _(lab):
    if lab.p != 2:
        return None
    rows, w = lab.s_cosets
    got = _counts(rows, "phi", w)
    want = {str(lab.q**3): len(rows) * w}
    return want, got, got == want, True


@check("d4.q2cent.inside", "3D4", "lemmas",
       "x in S \\ Q2: C_{Q2/Z(S)}(x) <= C_{Q1 cap Q2}(D)/Z(S) (p = 2), <= Phi(Q1)/Z(S) (p odd)")
def _(lab):
    rows, w = lab.s_cosets
    got = _counts(rows, "inside", w)
    want = {"True": len(rows) * w}
    return want, got, got == want, True


# -- 2F4 (ingested data) -------------------------------------------------------------------


def _f4(lab):
    e = lab.D.extras
    return e["V1"], e["U1"], e["V2"], e["Z(V1)"]


@check("f4.order", "2F4", "structure", "|S| = q^12")
def _(lab):
    return lab.q**12, lab.S.order, lab.S.order == lab.q**12, True


@check("f4.derived", "2F4", "structure", "S' = Phi(S) = V1(Q1 cap Q2)")
def _(lab):
    V1 = _f4(lab)[0]
    a, b, c = derived(lab.S), frattini(lab.S), join(V1, lab.Q12)
    return True, _orders(derived=a, frattini=b, product=c), a == b == c, True


@check("f4.rank", "2F4", "structure", "m_2(S) = 5n")
def _(lab):
    return 5 * lab.n, lab.m_p, lab.m_p == 5 * lab.n, True


@check("f4.center", "2F4", "structure", "Z(S) = Z(Q2) of order q")
def _(lab):
    ok = lab.Z == center(lab.Q2) and lab.Z.order == lab.q
    return lab.q, _orders(Z=lab.Z, ZQ2=center(lab.Q2)), ok, True


@check("f4.z2", "2F4", "structure", "Z_2(S) = Z(Q1) of order q^2")
def _(lab):
    ok = lab.Z2 == lab.ZQ1 and lab.Z2.order == lab.q**2
    return lab.q**2, _orders(Z2=lab.Z2, ZQ1=lab.ZQ1), ok, True


@check("f4.v2", "2F4", "structure", "V2 = Z_3(Omega(S)) elementary abelian of order q^5")
def _(lab):
    V2 = _f4(lab)[2]
    ucs = upper_central_series(omega(lab.S))
    Z3 = ucs[3] if len(ucs) > 3 else ucs[-1]
    ok = V2 == Z3 and V2.is_elementary_abelian() and V2.order == lab.q**5
    return lab.q**5, _orders(V2=V2, Z3=Z3), ok, True


@check("f4.omega_u1", "2F4", "structure", "Omega(U1 C_{Q2}(V2)) = U1 V2")
def _(lab):
    _, U1, V2, _ = _f4(lab)
    a = omega(join(U1, centralizer(lab.Q2, V2)))
    b = join(U1, V2)
    return True, _orders(omega=a, product=b), a == b, True


@check("f4.omega_s", "2F4", "structure", "Omega(S) = V1 Q2 and every involution lies in Omega(Q1) or Q2")
def _(lab):
    V1 = _f4(lab)[0]
    pres = lab.pres
    bad = 0
    for x in lab.S.elements():
        if x != pres.identity and pres.mul(x, x) == pres.identity:
            if not (V1.contains(x) or lab.Q2.contains(x)):
                bad += 1
    OS = omega(lab.S)
    ok = OS == join(V1, lab.Q2) and bad == 0
    return True, {"omega": OS.order, "stray_involutions": bad}, ok, True


@check("f4.q1_order", "2F4", "structure", "|Q1| = q^11")
def _(lab):
    return lab.q**11, lab.Q1.order, lab.Q1.order == lab.q**11, True


@check("f4.v1", "2F4", "structure", "|V1| = q^9")
def _(lab):
    V1 = _f4(lab)[0]
    return lab.q**9, V1.order, V1.order == lab.q**9, True


@check("f4.u1", "2F4", "structure", "|U1| = q^5 and U1 in A(S)")
def _(lab):
    U1 = _f4(lab)[1]
    ok = U1.order == lab.q**5 and lab.in_A(U1)
    return lab.q**5, {"order": U1.order, "in_A": lab.in_A(U1)}, ok, True


@check("f4.zv1", "2F4", "structure", "|Z(V1)| = q^3")
def _(lab):
    ZV1 = _f4(lab)[3]
    return lab.q**3, ZV1.order, ZV1.order == lab.q**3, True


@check("f4.q1_commutators", "2F4", "structure",
       "V1 = [Q1, Q1], Z(V1) = [V1, V1] = [U1, Q1], Z(Q1) = [Z(V1), Q1] = [U1, V1]")
def _(lab):
    V1, U1, _, ZV1 = _f4(lab)
    c = commutator_subgroup
    ok = (
        derived(lab.Q1) == V1
        and derived(V1) == ZV1 == c(U1, lab.Q1)
        and c(ZV1, lab.Q1) == lab.ZQ1 == c(U1, V1)
    )
    return True, ok, ok, True


@check("f4.q2_order", "2F4", "structure", "|Q2| = q^10")
def _(lab):
    return lab.q**10, lab.Q2.order, lab.Q2.order == lab.q**10, True


@check("f4.q2_quotient", "2F4", "structure", "Omega(S/Q2) = Z(S/Q2) = Phi(S/Q2) = V1 Q2/Q2")
def _(lab):
    V1 = _f4(lab)[0]
    qt = quotient_presentation(lab.S, lab.Q2)
    W = qt.whole()
    a, b, c = omega(W), center(W), frattini(W)
    d = qt.image(join(V1, lab.Q2))
    return True, _orders(omega=a, center=b, frattini=c, image=d), a == b == c == d, True


@check("f4.cq2v2", "2F4", "structure", "|C_{Q2}(V2)| = q^6 and V2 in A(S)")
def _(lab):
    V2 = _f4(lab)[2]
    C = centralizer(lab.Q2, V2)
    ok = C.order == lab.q**6 and lab.in_A(V2)
    return lab.q**6, {"order": C.order, "V2_in_A": lab.in_A(V2)}, ok, True


@check("f4.q2_commutators", "2F4", "structure",
       "V2 = Omega(C_{Q2}(V2)) = [Q2, C_{Q2}(V2)], Z(Q2) = [Q2, V2] = [C_{Q2}(V2), C_{Q2}(V2)]")
def _(lab):
    V2 = _f4(lab)[2]
    C = centralizer(lab.Q2, V2)
    c = commutator_subgroup
    ZQ2 = center(lab.Q2)
    ok = omega(C) == V2 == c(lab.Q2, C) and ZQ2 == c(lab.Q2, V2) == derived(C)
    return True, ok, ok, True


@check("f4.fp.q1", "2F4", "fingerprints", "Q1/V1 is a natural SL2(q)-module")
def _(lab):
    f = lab.fp(lab.Q1, _f4(lab)[0])
    got = str(classify_signature(f))
    return f"natural_SL2({lab.q})", got, got == f"natural_SL2({lab.q})", f.exhaustive


@check("f4.fp.u1", "2F4", "fingerprints", "U1/Z(V1) is a natural SL2(q)-module")
def _(lab):
    _, U1, _, ZV1 = _f4(lab)
    f = lab.fp(U1, ZV1)
    got = str(classify_signature(f))
    return f"natural_SL2({lab.q})", got, got == f"natural_SL2({lab.q})", f.exhaustive


@check("f4.fp.v1", "2F4", "fingerprints", "|V1/U1| = q^4 with C_{V1/U1}(S) = U1 V2/U1")
def _(lab):
    V1, U1, V2, _ = _f4(lab)
    C = quotient_centralizer(V1, lab.S, U1)
    want = join(U1, V2)
    ok = V1.order // U1.order == lab.q**4 and C == want
    return True, _orders(C=C, U1V2=want), ok, True


@check("f4.fp.v2", "2F4", "fingerprints", "V2/Z(Q2) is a natural Sz(q)-module")
def _(lab):
    f = lab.fp(_f4(lab)[2], center(lab.Q2))
    got = str(classify_signature(f))
    return f"natural_Sz({lab.q})", got, got == f"natural_Sz({lab.q})", f.exhaustive


@check("f4.fp.q2", "2F4", "fingerprints", "Q2/C_{Q2}(V2) is a natural Sz(q)-module")
def _(lab):
    C = centralizer(lab.Q2, _f4(lab)[2])
    f = lab.fp(lab.Q2, C)
    got = str(classify_signature(f))
    return f"natural_Sz({lab.q})", got, got == f"natural_Sz({lab.q})", f.exhaustive


# -- essentials -----------------------------------------------------------------------------


def _essential_checks(family: str, prefix: str):
    @check(f"{prefix}.essentials.q1", family, "essentials", "Q1 survives every pruning criterion")
    def _(lab):
        r = lab_report(lab)
        return True, r.q1_survives, r.q1_survives, r.exhaustive

    @check(f"{prefix}.essentials.q2", family, "essentials", "Q2 survives every pruning criterion")
    def _(lab):
        r = lab_report(lab)
        return True, r.q2_survives, r.q2_survives, r.exhaustive

    @check(f"{prefix}.essentials.evidence", family, "essentials", "every elimination carries re-verifiable evidence")
    def _(lab):
        from .essentials import verify_evidence

        r = lab_report(lab)
        bad = [e.class_id for e in r.eliminations if not verify_evidence(lab.S, e)]
        return 0, len(bad), not bad, r.exhaustive

    @check(f"{prefix}.essentials.surplus", family, "essentials", "survivors are exactly the classes of Q1 and Q2")
    def _(lab):
        r = lab_report(lab)
        return 0, r.surplus, r.surplus == 0, r.exhaustive

    return _


for _fam, _pre in (("PSU5", "psu5"), ("3D4", "d4"), ("2F4", "f4")):
    _essential_checks(_fam, _pre)

# surplus survivors are a reported target, not a gate
NON_GATING = {"psu5.essentials.surplus", "d4.essentials.surplus", "f4.essentials.surplus"}


def lab_report(lab):
    if "report" not in lab.__dict__:
        from .essentials import candidate_search

        lab.__dict__["report"] = candidate_search(
            lab.S,
            lab.D,
            depth=lab.depth,
            class_budget=lab.class_budget,
            element_budget=lab.element_budget,
            strict=False,
        )
    return lab.__dict__["report"]


# -- running --------------------------------------------------------------------------------


def run_checks(lab: Lab, suites=None) -> list:
    """Run every applicable check of the lab's family in the selected suites."""
    out = []
    for c in catalogue(lab.family, suites):
        try:
            res = c.run(lab)
        except BudgetExceeded as exc:
            out.append(Assertion(c.id, c.anchor, None, str(exc), False, False, True, True))
            continue
        if res is None:
            continue
        expected, computed, passed, exhaustive = res
        out.append(Assertion(c.id, c.anchor, expected, computed, bool(passed), bool(exhaustive), c.id not in NON_GATING))
    return out


def lab_for(pres: PcPresentation, family: str, **kw) -> Lab:
    """The Lab attached to a presentation, created on first use."""
    lab = getattr(pres, "_lab", None)
    stale = lab is None or lab.family != normalize_family(family)
    if not stale:
        stale = any(getattr(lab, k) != v for k, v in kw.items())
    if stale:
        lab = Lab(pres, family, **kw)
        pres._lab = lab
    return lab


def d4_structure_failures(pres: PcPresentation) -> list:
    """Ids of failing 3D4 structure and fingerprint checks (construction acceptance)."""
    lab = lab_for(pres, "3D4")
    return [a.id for a in run_checks(lab, ("structure", "fingerprints")) if not a.passed]
