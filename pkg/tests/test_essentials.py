import json

import pytest

from golden import GOLDEN_GROUPS, brute_golden, golden_path, pipeline_golden
from oracle import oracle_suite
from plab.constructors.small import dihedral8, heisenberg
from plab.essentials import (
    Elimination,
    PruneEvidence,
    burnside_prune,
    candidate_search,
    centric_classes,
    chain_prune,
    toolbox,
    verify_evidence,
)
from plab.pgroup import close, frattini, is_centric, maximal_subgroups, whole

SMALL = ["dihedral8", "heisenberg3", "heisenberg5", "heisenberg7", "UT4_2"]


def _cyclic4(pres):
    S = whole(pres)
    return next(M for M in maximal_subgroups(S) if not M.is_elementary_abelian())


# -- goldens -------------------------------------------------------------------------------


@pytest.mark.parametrize("name", GOLDEN_GROUPS)
def test_golden_matches_bruteforce(oracles, name):
    pres, G, phi = oracles[name]
    with open(golden_path(name), encoding="utf-8") as fh:
        assert brute_golden(pres, G, phi) == json.load(fh)


@pytest.mark.parametrize("name", GOLDEN_GROUPS)
def test_pipeline_matches_golden(oracles, name):
    pres = oracles[name][0]
    r = candidate_search(whole(pres), all_evidence=True)
    with open(golden_path(name), encoding="utf-8") as fh:
        assert pipeline_golden(r) == json.load(fh)
    assert r.exhaustive


def test_golden_shapes():
    d8 = json.load(open(golden_path("dihedral8")))
    assert len(d8["classes"]) == 4 and d8["survivors"] == 2
    h3 = json.load(open(golden_path("heisenberg3")))
    assert len(h3["classes"]) == 5 and h3["survivors"] == 4
    h7 = json.load(open(golden_path("heisenberg7")))
    assert len(h7["classes"]) == 9 and h7["survivors"] == 8


# -- centric classes -----------------------------------------------------------------------


@pytest.mark.parametrize("name", SMALL)
def test_centric_classes_against_oracle(oracles, name):
    pres, G, phi = oracles[name]
    inv = {v: k for k, v in phi.items()}
    want = sorted(min(close(pres, [inv[i] for i in sorted(H)]).igs for H in cls) for cls in G.centric_classes(G.G))
    reps, exhaustive, _ = centric_classes(whole(pres))
    assert exhaustive
    assert sorted(E.igs for E in reps) == want


@pytest.mark.parametrize("name", SMALL)
def test_centricity_is_inherited_upwards(oracles, name):
    _, G, _ = oracles[name]
    S = G.G
    subs = G.subgroups()
    for E in subs:
        if G.is_centric(S, E):
            for F in subs:
                if E <= F:
                    assert G.is_centric(S, F)


def test_elementary_abelian_has_one_class():
    from plab.pgroup import PcPresentation

    pres = PcPresentation.from_words(2, 3, {}, {}, {"family": "test"})
    reps, exhaustive, _ = centric_classes(whole(pres))
    assert [E.order for E in reps] == [8] and exhaustive


def test_class_budget_flags_partial_result():
    reps, exhaustive, _ = centric_classes(whole(heisenberg(5)), class_budget=2)
    assert not exhaustive and len(reps) <= 3


def test_dihedral_classes():
    reps, _, _ = centric_classes(whole(dihedral8()))
    assert sorted(E.order for E in reps) == [4, 4, 4, 8]
    cyc = [E for E in reps if E.order == 4 and not E.is_elementary_abelian()]
    assert len(cyc) == 1


# -- criteria ------------------------------------------------------------------------------


@pytest.mark.parametrize("name", SMALL)
def test_burnside_against_oracle(oracles, name):
    pres, G, phi = oracles[name]
    S = whole(pres)
    for E in centric_classes(S)[0]:
        H = frozenset(phi[x] for x in E.elements())
        assert (burnside_prune(S, E) is None) == G.burnside_survives(G.G, H)


@pytest.mark.parametrize("name", ["dihedral8", "heisenberg3", "heisenberg5", "heisenberg7"])
def test_chain_sound_against_full_characteristic_lattice(oracles, name):
    pres, G, phi = oracles[name]
    S = whole(pres)
    for E in centric_classes(S)[0]:
        H = frozenset(phi[x] for x in E.elements())
        if chain_prune(S, E) is not None:
            assert not G.chain_survives(G.G, H)


def test_toolbox_members_are_characteristic(oracles):
    pres, G, phi = oracles["UT4_2"]
    S = whole(pres)
    for E in [S] + maximal_subgroups(S)[:3]:
        H = frozenset(phi[x] for x in E.elements())
        auts = G.automorphisms(H) if E.order <= 32 else None
        for X, _ in toolbox(E, 1).values():
            img = frozenset(phi[x] for x in X.elements())
            assert img <= H and X.is_normalized_by(E)
            if auts is not None:
                assert all(frozenset(f[h] for h in img) == img for f in auts)


def test_burnside_examples():
    pres = dihedral8()
    S = whole(pres)
    assert burnside_prune(S, S) is None
    C4 = _cyclic4(pres)
    ev = burnside_prune(S, C4)
    assert ev is not None and ev.criterion == "burnside"
    x = tuple(ev.witness["element"])
    assert not C4.contains(x) and x[0] == 1  # a reflection


def test_chain_examples():
    pres = dihedral8()
    S = whole(pres)
    assert chain_prune(S, S) is None
    ev = chain_prune(S, _cyclic4(pres))
    assert ev is not None and ev.criterion == "chain"
    assert len(ev.witness["chain"]) == 2
    assert close(pres, [tuple(g) for g in ev.witness["Q"]]) == S


def test_chain_keeps_q2_in_3d4(d4_2):
    pres, lab = d4_2
    assert chain_prune(lab.S, lab.Q2) is None
    assert burnside_prune(lab.S, lab.Q2) is None


def test_evidence_verification_rejects_forgery():
    pres = dihedral8()
    S = whole(pres)
    C4 = _cyclic4(pres)
    ev = burnside_prune(S, C4)
    good = Elimination("E", C4, [ev])
    assert verify_evidence(S, good)
    inside = list(C4.igs[0])
    assert not verify_evidence(S, Elimination("E", C4, [PruneEvidence("burnside", {"element": inside})]))
    K = [E for E in maximal_subgroups(S) if E.is_elementary_abelian()][0]
    x = [g for g in S.igs if not K.contains(g)][0]
    assert not verify_evidence(S, Elimination("E", K, [PruneEvidence("burnside", {"element": list(x)})]))
    assert not verify_evidence(S, Elimination("E", C4, [PruneEvidence("unknown", {})]))


# -- pipeline ------------------------------------------------------------------------------


def test_search_heisenberg():
    r = candidate_search(whole(heisenberg(3)))
    assert r.class_count == 5 and len(r.survivors) == 4
    assert all(c.maximal for c in r.survivors)
    assert [c.rep.order for c in r.excluded] == [27]
    assert r.surplus == 4 and r.exhaustive


def test_search_psu5_2(psu5_2):
    pres, lab = psu5_2
    r = candidate_search(lab.S, lab.D)
    assert r.q1_survives and r.q2_survives and r.exhaustive
    assert sum(c.is_Q1 for c in r.survivors) == 1 and sum(c.is_Q2 for c in r.survivors) == 1
    assert all(verify_evidence(lab.S, e) for e in r.eliminations)
    assert len(r.survivors) + len(r.eliminations) + len(r.excluded) == r.class_count
    d = r.to_dict()
    assert d["surplus_survivors"] == r.surplus
    assert json.dumps(d, sort_keys=True) == json.dumps(candidate_search(lab.S, lab.D).to_dict(), sort_keys=True)


def test_search_hard_failure_when_designated_eliminated():
    from plab.constructors.designated import DesignatedSubgroups
    from plab.essentials import EssentialsError

    pres = dihedral8()
    S = whole(pres)
    C4 = _cyclic4(pres)
    fake = DesignatedSubgroups("test", S, C4, C4)
    with pytest.raises(EssentialsError):
        candidate_search(S, fake)
    r = candidate_search(S, fake, strict=False)
    assert not r.q1_survives


def test_frattini_chain_start(oracles):
    pres = oracles["heisenberg5"][0]
    S = whole(pres)
    for E in centric_classes(S)[0]:
        ev = chain_prune(S, E)
        if ev is not None:
            assert close(pres, [tuple(g) for g in ev.witness["chain"][0]]) == frattini(E)
            assert is_centric(S, E)
