import random
import pytest

from plab.constructors.small import dihedral8, heisenberg, heisenberg_model, unitriangular
from plab.pgroup import (
    BudgetExceeded,
    InconsistentPresentation,
    PcPresentation,
    PresentationError,
    SubgroupError,
    center,
    centralizer,
    close,
    commutator_subgroup,
    compute_series,
    conjugacy_test,
    frattini,
    intersection,
    join,
    lower_central_series,
    maximal_subgroups,
    normalizer,
    omega,
    quotient_presentation,
    thompson,
    trivial,
    upper_central_series,
    weak_closure_W,
    whole,
)
from plab.pgroup.series import agemo, derived
from plab.pgroup.thompson import in_W_family

NAMES = ["dihedral8", "heisenberg2", "heisenberg3", "heisenberg5", "heisenberg7", "UT4_2"]


def pc_of(pres, phi, subset):
    inv = {v: k for k, v in phi.items()}
    return close(pres, [inv[i] for i in sorted(subset)])


def as_set(H, phi):
    return frozenset(phi[x] for x in H.elements())


# -- collection ------------------------------------------------------------------


def test_cyclic_relation():
    C = PcPresentation.from_words(3, 1, {}, {})
    assert C.collect([(0, 2), (0, 1)]) == C.identity


def test_heisenberg_collect_against_matrices():
    model = heisenberg_model(3)
    H = model.presentation
    a, b, c = H.gens
    assert H.collect([(1, 1), (0, 1)]) == H.mul_many(a, b, c)
    alg = model.algebra
    assert model.evaluate(H.collect([(1, 1), (0, 1)])) == alg.mul(model.generators[1], model.generators[0])


@pytest.mark.parametrize("name", NAMES)
def test_multiplication_is_homomorphism(oracles, name):
    pres, G, phi = oracles[name]
    elems = list(pres.elements())
    assert len(elems) == G.n
    for x in elems:
        for y in elems:
            assert phi[pres.mul(x, y)] == G.mul(phi[x], phi[y])
        assert phi[pres.inv(x)] == G.inv[phi[x]]


def test_consistency_rejects_corrupted_relation():
    # a^3 = b contradicts [b, a] = c, since a commutes with its own powers
    with pytest.raises(InconsistentPresentation) as info:
        PcPresentation.from_words(3, 3, {0: [(1, 1)]}, {(1, 0): [(2, 1)]}).check_consistency()
    assert info.value.triple
    assert "test word" in str(info.value)


def test_bad_shapes_rejected():
    with pytest.raises(PresentationError):
        PcPresentation.from_words(4, 2, {}, {})
    with pytest.raises(PresentationError):
        PcPresentation.from_words(2, 3, {1: [(0, 1)]}, {})
    with pytest.raises(PresentationError):
        # commutator must lie after the larger index (central series refinement)
        PcPresentation.from_words(2, 3, {}, {(2, 0): [(1, 1)]})


@pytest.mark.parametrize("p", [2, 3, 5])
def test_random_associativity(p):
    pres = unitriangular(4, p)
    pres.check_consistency(samples=300, seed=p)


# -- subgroups --------------------------------------------------------------------


def test_close_examples():
    H = heisenberg(3)
    a, b, c = H.gens
    assert close(H, []).order == 1
    assert close(H, H.gens).order == 27
    assert close(H, [a]).order == 3
    assert close(H, [a, b]).order == 27


@pytest.mark.parametrize("name", NAMES)
def test_subgroups_against_oracle(oracles, name):
    pres, G, phi = oracles[name]
    S = whole(pres)
    inv = {v: k for k, v in phi.items()}
    subs = G.subgroups()
    for X in subs:
        H = pc_of(pres, phi, X)
        assert H.order == len(X)
        assert as_set(H, phi) == X
        for i in range(G.n):
            assert H.contains(inv[i]) == (i in X)
        assert as_set(centralizer(S, H), phi) == G.centralizer(G.G, X)
        assert as_set(normalizer(S, H), phi) == G.normalizer(G.G, X)
        assert as_set(center(H), phi) == G.center(X)


@pytest.mark.parametrize("name", NAMES)
def test_intersections_and_joins(oracles, name):
    pres, G, phi = oracles[name]
    subs = G.subgroups()
    rng = random.Random(7)
    for _ in range(60):
        X, Y = rng.choice(subs), rng.choice(subs)
        A, B = pc_of(pres, phi, X), pc_of(pres, phi, Y)
        assert as_set(intersection(A, B), phi) == X & Y
        assert as_set(join(A, B), phi) == G.closure(list(X | Y))
        assert as_set(commutator_subgroup(A, B), phi) == G.commutator(X, Y)


@pytest.mark.parametrize("name", NAMES)
def test_characteristic_subgroups(oracles, name):
    pres, G, phi = oracles[name]
    for X in G.subgroups():
        H = pc_of(pres, phi, X)
        assert as_set(frattini(H), phi) == G.frattini(X)
        assert as_set(derived(H), phi) == G.commutator(X, X)
        assert as_set(omega(H), phi) == G.omega(X)
        assert as_set(agemo(H), phi) == G.agemo(X)
        if len(X) > 1:
            maxes = maximal_subgroups(H)
            assert {as_set(M, phi) for M in maxes} == set(G.maximal_subgroups(X))
            assert len(maxes) == len(set(M.igs for M in maxes))


@pytest.mark.parametrize("name", NAMES)
def test_series(oracles, name):
    pres, G, phi = oracles[name]
    S = whole(pres)
    assert [as_set(X, phi) for X in lower_central_series(S)] == G.lower_central(G.G)
    assert [as_set(X, phi) for X in upper_central_series(S)] == G.upper_central(G.G)
    assert [as_set(X, phi) for X in compute_series("derived", S)] == G.derived(G.G)
    fr = compute_series("frattini", S)
    assert fr[0] == S and fr[-1].is_trivial()
    om = compute_series("omega", S)
    assert om[-1] == S
    ag = compute_series("agemo", S)
    assert ag[-1].is_trivial()


def test_series_examples():
    U = whole(unitriangular(4, 2))
    assert [X.order for X in lower_central_series(U)] == [64, 8, 2, 1]
    assert len(maximal_subgroups(U)) == 7
    assert len(maximal_subgroups(whole(heisenberg(3)))) == 4
    cyc = PcPresentation.from_words(2, 3, {0: [(1, 1)], 1: [(2, 1)]}, {})
    assert len(maximal_subgroups(whole(cyc))) == 1


def test_elementary_abelian_series_trivia():
    pres = unitriangular(4, 2)
    E = close(pres, [pres.gens[5], pres.gens[3]])
    assert E.is_elementary_abelian()
    assert frattini(E).is_trivial()
    assert omega(E) == E
    t = thompson(E)
    assert t.J == E and t.m_p == 2


def test_frattini_is_intersection_of_maximals(oracles):
    for name in NAMES:
        pres, G, phi = oracles[name]
        S = whole(pres)
        F = S
        for M in maximal_subgroups(S):
            F = intersection(F, M)
        assert F == frattini(S)


def test_heisenberg_examples():
    H = heisenberg(3)
    S = whole(H)
    a, b, c = H.gens
    A = close(H, [a])
    assert centralizer(S, A) == close(H, [a, c])
    assert normalizer(S, A) == close(H, [a, c])
    assert centralizer(S, S) == center(S)


def test_dihedral_examples():
    D = dihedral8()
    S = whole(D)
    a, b, c = D.gens
    C4 = close(D, [b])
    assert normalizer(S, C4) == S
    # <a> and <a c> lie in the same Klein four and are conjugate by the rotation b
    g = conjugacy_test(S, close(D, [a]), close(D, [D.mul(a, c)]))
    assert g is not None
    assert close(D, [a]).conjugate(g) == close(D, [D.mul(a, c)])
    assert D.conj(a, b) == D.mul(a, c)
    assert conjugacy_test(S, C4, C4) == D.identity
    assert conjugacy_test(S, C4, close(D, [a, c])) is None


@pytest.mark.parametrize("name", ["dihedral8", "heisenberg3", "UT4_2"])
def test_conjugacy_against_oracle(oracles, name):
    pres, G, phi = oracles[name]
    S = whole(pres)
    subs = G.subgroups()
    pcs = {X: pc_of(pres, phi, X) for X in subs}
    for X in subs:
        cls = G.conjugacy_class(G.G, X)
        for Y in subs:
            if len(X) != len(Y):
                continue
            g = conjugacy_test(S, pcs[X], pcs[Y])
            assert (g is not None) == (Y in cls)
            if g is not None:
                assert pcs[X].conjugate(g) == pcs[Y]


# -- quotients -------------------------------------------------------------------


@pytest.mark.parametrize("name", NAMES)
def test_quotients(oracles, name):
    pres, G, phi = oracles[name]
    S = whole(pres)
    for X in G.subgroups():
        if not G.is_normal(X, G.G):
            continue
        N = pc_of(pres, phi, X)
        q = quotient_presentation(S, N)
        assert q.pres.order * N.order == S.order
        elems = list(pres.elements())
        for x in elems[:: max(1, len(elems) // 40)]:
            for y in elems[:: max(1, len(elems) // 40)]:
                assert q.project(pres.mul(x, y)) == q.pres.mul(q.project(x), q.project(y))
        for y in q.pres.elements():
            assert q.project(q.lift(y)) == y
        assert q.preimage(q.whole()) == S
        assert q.preimage(q.trivial()) == N


def test_quotient_examples():
    H = heisenberg(3)
    S = whole(H)
    assert quotient_presentation(S, S).pres.order == 1
    q = quotient_presentation(S, center(S))
    assert q.pres.order == 9 and whole(q.pres).is_elementary_abelian()


def test_quotient_requires_normal():
    D = dihedral8()
    with pytest.raises(SubgroupError):
        quotient_presentation(whole(D), close(D, [D.gens[0]]))


# -- Thompson subgroup and W ------------------------------------------------------


@pytest.mark.parametrize("name", NAMES)
def test_thompson_against_oracle(oracles, name):
    pres, G, phi = oracles[name]
    for X in G.subgroups():
        H = pc_of(pres, phi, X)
        t = thompson(H)
        o = G.thompson(X)
        assert t.m_p == o["m"]
        assert {as_set(A, phi) for A in t.A_H} == set(o["A"])
        assert as_set(t.J, phi) == o["J"]
        assert {as_set(A, phi) for A in t.A_normal} == set(o["An"])
        if o["Jn"] is None:
            assert t.J_normal is None
        else:
            assert as_set(t.J_normal, phi) == o["Jn"]


@pytest.mark.parametrize("name", NAMES)
def test_W_against_oracle(oracles, name):
    pres, G, phi = oracles[name]
    for X in G.subgroups():
        H = pc_of(pres, phi, X)
        W = weak_closure_W(H)
        fam = G.W_family(X)
        Wset = as_set(W, phi)
        assert Wset in fam
        assert all(A <= Wset for A in fam)
        assert in_W_family(H, W)
        assert omega(center(H)) <= W


def test_W_examples():
    D = dihedral8()
    S = whole(D)
    assert weak_closure_W(S) == center(S)
    E = close(D, [D.gens[0], D.gens[2]])
    assert weak_closure_W(E) == E


def test_W_monotone_on_overgroups(oracles):
    pres, G, phi = oracles["UT4_2"]
    S = whole(pres)
    W = weak_closure_W(S)
    for X in G.subgroups():
        T = pc_of(pres, phi, X)
        if W <= T:
            assert W <= weak_closure_W(T)


def test_two_elementary_abelian_members_cover_involutions(oracles):
    # D8: A(S) = {A, B}, AB = S, C_B(a) = A ∩ B for a in A \ B
    pres, G, phi = oracles["dihedral8"]
    S = whole(pres)
    t = thompson(S)
    assert len(t.A_H) == 2
    A, B = t.A_H
    assert join(A, B) == S
    I = intersection(A, B)
    for a in A.elements():
        if not B.contains(a):
            assert centralizer(B, [a]) == I
    for x in pres.elements():
        if x != pres.identity and pres.pow(x, 2) == pres.identity:
            assert A.contains(x) or B.contains(x)


def test_omega_budget():
    pres = unitriangular(4, 3)
    S = whole(pres)
    with pytest.raises(BudgetExceeded) as info:
        omega(S, budget=100)
    assert "needs-budget" in str(info.value)
    assert omega(S, budget=1000).order == 3**6
