import random

import pytest

from plab.constructors.d4 import build_3d4_sylow
from plab.constructors.designated import designated_subgroups, normalize_family
from plab.constructors.pcpj import (
    PcpjError,
    ingest,
    ingest_presentation,
    parse,
    serialize,
    write_presentation,
)
from plab.constructors.psu5 import build_su5_sylow, su5_model
from plab.constructors.small import dihedral8, heisenberg
from plab.constructors.triality import build_triality_module, build_twisted_tensor_module
from plab.pgroup import InconsistentPresentation, center, upper_central, whole


def _random_exps(rng, pres):
    return tuple(rng.randrange(pres.p) for _ in range(pres.m))


# -- PSU5 against its matrix model -----------------------------------------------------


@pytest.mark.parametrize("p", [2, 3])
def test_psu5_pc_matches_matrices(p, request):
    pres, _ = request.getfixturevalue(f"psu5_{p}")
    pres2, model = build_su5_sylow(p, 1, check=False)
    assert pres2.same_relations(pres)
    alg = model.algebra
    rng = random.Random(p)
    for _ in range(1000):
        x, y = _random_exps(rng, pres), _random_exps(rng, pres)
        assert model.evaluate(pres.mul(x, y)) == alg.mul(model.evaluate(x), model.evaluate(y))
        assert model.sift(model.evaluate(x)) == x


@pytest.mark.parametrize("p", [2, 3])
def test_psu5_matrices_preserve_form(p):
    model = su5_model(p, 1)
    assert model.form_kind == "hermitian"
    for g in model.generators:
        assert model.algebra.is_upper_unitriangular(g)


def test_psu5_orders(psu5_2):
    pres, lab = psu5_2
    assert pres.m == 10 and pres.p == 2
    assert lab.Q1.order == 2**8 and lab.Q2.order == 2**7


# -- 3D4 -------------------------------------------------------------------------------


def test_3d4_pc_matches_model(d4_2):
    pres, _ = d4_2
    model = build_3d4_sylow(2, 1, check=False)[1]
    rng = random.Random(5)
    for _ in range(300):
        x, y = _random_exps(rng, pres), _random_exps(rng, pres)
        assert model.sift(model.mul(model.evaluate(x), model.evaluate(y))) == pres.mul(x, y)


def test_3d4_orders(d4_2):
    pres, lab = d4_2
    assert pres.m == 12
    assert lab.Q1.order == 2**11 and lab.Q2.order == 2**9
    assert pres.metadata["family"] == "3D4"


@pytest.mark.parametrize("p", [2, 3])
def test_triality_module_chain(p):
    M = build_triality_module(p, 1)
    assert M.layers == [8, 7, 4, 1, 0]
    assert M.dim == 8 and M.acting_rank == 3


def test_twisted_tensor_rejects_bad_k():
    with pytest.raises(ValueError):
        build_twisted_tensor_module(2, 1, 4)


@pytest.mark.parametrize("p,n,k", [(2, 1, 1), (3, 1, 1), (2, 2, 1), (2, 1, 2), (3, 1, 2)])
def test_twisted_tensor_layers(p, n, k):
    M = build_twisted_tensor_module(p, n, k)
    assert M.layers[0] == 2**k * n and M.layers[-1] == 0


# -- designated subgroups ---------------------------------------------------------------


def test_designated_psu5(psu5_2):
    pres, lab = psu5_2
    D = designated_subgroups(pres, "psu5")
    assert D.Q1 == lab.Q1 and D.Q2 == lab.Q2
    assert D.extras["Z(Q1)"] == center(D.Q1)
    assert set(D.named()) == {"S", "Q1", "Q2", "Z(Q1)"}
    assert D.Q1.is_normalized_by(D.S) and D.Q2.is_normalized_by(D.S)


def test_designated_3d4(d4_2):
    pres, lab = d4_2
    D = designated_subgroups(pres, "3D4")
    assert D.Q1 == lab.Q1 and D.Q2 == lab.Q2
    assert D.extras["Phi(Q1)"].order == 2**5


def test_designated_rejects_wrong_family():
    with pytest.raises(ValueError):
        normalize_family("E8")
    from plab.constructors.psu5 import ConstructionError

    with pytest.raises(ConstructionError):
        designated_subgroups(heisenberg(3), "PSU5")


# -- PCP-J ---------------------------------------------------------------------------------


def test_pcpj_roundtrip(psu5_2, tmp_path):
    pres, _ = psu5_2
    text = serialize(pres)
    back = parse(text)
    assert back.same_relations(pres)
    assert back.metadata == pres.metadata
    assert serialize(back) == text
    path = tmp_path / "psu5.pcpj"
    write_presentation(pres, path)
    data = ingest_presentation(path)
    assert data.ok and data.family == "PSU5"
    assert data.pres.same_relations(pres)


def test_pcpj_roundtrip_small_groups():
    for pres in (dihedral8(), heisenberg(5)):
        assert parse(serialize(pres)).same_relations(pres)


def test_pcpj_declared_orders_are_checked(psu5_2):
    pres, _ = psu5_2
    S = whole(pres)
    lines = serialize(pres).splitlines()
    at = lines.index("m: 10") + 1
    good = lines[:at] + [f"meta order_Z: {center(S).order}", f"meta order_Z2: {upper_central(S, 2).order}"] + lines[at:]
    assert ingest("\n".join(good)).ok
    bad = lines[:at] + ["meta order_Z: 4"] + lines[at:]
    data = ingest("\n".join(bad))
    assert not data.ok and data.report[0][:3] == ("order_Z", 4, 2)


def test_pcpj_rejects_inconsistent_relations(psu5_2):
    pres, _ = psu5_2
    lines = [ln for ln in serialize(pres).splitlines() if not ln.startswith("C 3 1 :")]
    lines.insert(lines.index("end"), "C 3 1 : (5,1) (8,1) (9,1)")
    with pytest.raises(InconsistentPresentation):
        ingest("\n".join(lines))


@pytest.mark.parametrize(
    "text,line",
    [
        ("format_version: 2\n", 1),
        ("format_version: 1\nfamily: X\np: two\n", 3),
        ("format_version: 1\nfamily: X\np: 2\nn: 1\nm: 2\nP 3 : (1,1)\nend\n", 6),
        ("format_version: 1\nfamily: X\np: 2\nn: 1\nm: 2\nC 1 2 : (1,1)\nend\n", 6),
        ("format_version: 1\nfamily: X\np: 2\nn: 1\nm: 2\nP 1 : (2,3)\nend\n", 6),
        ("format_version: 1\nfamily: X\np: 2\nn: 1\nm: 2\nbogus\nend\n", 6),
        ("format_version: 1\nfamily: X\np: 2\nn: 1\nm: 2\nend\nP 1 : (2,1)\n", 7),
        ("format_version: 1\nfamily: X\np: 2\nn: 1\nm: 2\nmeta k: {oops\nend\n", 6),
    ],
)
def test_pcpj_errors_name_the_line(text, line):
    with pytest.raises(PcpjError) as exc:
        parse(text)
    assert exc.value.line == line


def test_pcpj_missing_end():
    with pytest.raises(PcpjError):
        parse("format_version: 1\nfamily: X\np: 2\nn: 1\nm: 1\n")


def test_pcpj_comments_and_blank_lines():
    text = "# a comment\nformat_version: 1\nfamily: D8\np: 2\nn: 1\nm: 3\n\nP 2 : (3,1)\nC 2 1 : (3,1)\nend\n"
    pres = parse(text)
    assert pres.same_relations(dihedral8())
