import json
import os

import pytest

from golden import golden_path
from plab import __version__
from plab.cli import EXIT_BUDGET, EXIT_CONFIG, EXIT_DATA, EXIT_FAIL, EXIT_PASS, main
from plab.constructors.pcpj import write_presentation
from plab.report import ReportError, dumps, load, render, validate

GOLDEN = os.path.join(os.path.dirname(__file__), "data", "golden")


def run(tmp_path, *argv, name="out.json"):
    out = tmp_path / name
    code = main([*argv, "--output", str(out), "--quiet"])
    return code, (json.loads(out.read_text()) if out.exists() else None), out


def test_verify_psu5_structure(tmp_path):
    code, doc, _ = run(tmp_path, "verify", "--family", "psu5", "--p", "2", "--n", "1", "--suite", "structure")
    assert code == EXIT_PASS and doc["status"] == "pass"
    order = next(a for a in doc["assertions"] if a["id"] == "psu5.order")
    assert order["computed"] == 1024 and order["pass"] and order["anchor"]
    assert doc["tool"] == {"name": "plab", "version": __version__}
    assert doc["config"]["suites"] == ["structure"]
    validate(doc)
    for a in doc["assertions"]:
        assert set(a) >= {"id", "anchor", "expected", "computed", "pass", "exhaustive"}


def test_verify_3d4_lemmas_reports_failures(tmp_path):
    code, doc, _ = run(tmp_path, "verify", "--family", "3d4", "--p", "2", "--suite", "lemmas")
    assert code == EXIT_FAIL and doc["status"] == "fail"
    failed = sorted(a["id"] for a in doc["assertions"] if not a["pass"])
    assert failed == ["d4.centstruct.frattini", "d4.centstruct.order", "d4.phi1cent.all", "d4.phi1cent.comm"]
    assert doc["summary"]["failed"] == 4


def test_config_errors(tmp_path, capsys):
    assert main(["verify", "--family", "2f4", "--p", "3"]) == EXIT_CONFIG
    assert "requires p = 2" in capsys.readouterr().err
    assert main(["verify", "--family", "psu5", "--p", "4"]) == EXIT_CONFIG
    assert main(["search", "--family", "d8", "--p", "3"]) == EXIT_CONFIG
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--family", "psu5", "--n", "0"])
    assert exc.value.code == 2


def test_missing_data(tmp_path, capsys):
    assert main(["verify", "--family", "2f4", "--p", "2"]) == EXIT_DATA
    assert main(["verify", "--family", "2f4", "--p", "2", "--input", str(tmp_path / "none.pcpj")]) == EXIT_DATA
    bad = tmp_path / "bad.pcpj"
    bad.write_text("format_version: 1\nfamily: 2F4\n")
    assert main(["verify", "--family", "2f4", "--p", "2", "--input", str(bad)]) == EXIT_DATA
    assert "input data error" in capsys.readouterr().err


def test_input_family_mismatch(tmp_path, psu5_2):
    path = tmp_path / "psu5.pcpj"
    write_presentation(psu5_2[0], path)
    assert main(["verify", "--family", "3d4", "--p", "2", "--input", str(path), "--quiet"]) == EXIT_CONFIG
    code, doc, _ = run(tmp_path, "verify", "--family", "psu5", "--p", "2", "--suite", "structure", "--input", str(path))
    assert code == EXIT_PASS
    assert doc["config"]["input"]["path"] == "psu5.pcpj" and len(doc["config"]["input"]["sha256"]) == 64


def test_search_psu5(tmp_path):
    code, doc, _ = run(tmp_path, "search", "--family", "psu5", "--p", "2", "--n", "1")
    assert code == EXIT_PASS
    r = doc["search"]
    assert r["q1_survives"] and r["q2_survives"] and r["exhaustive"]
    assert sum(c["is_Q1"] for c in r["survivors"]) == 1 and sum(c["is_Q2"] for c in r["survivors"]) == 1


@pytest.mark.parametrize("family,p", [("heisenberg", "3"), ("d8", "2")])
def test_search_matches_committed_golden_report(tmp_path, family, p):
    code, _, out = run(tmp_path, "search", "--family", family, "--p", p)
    name = "heisenberg3" if family == "heisenberg" else "d8"
    with open(os.path.join(GOLDEN, f"search_{name}.json"), encoding="utf-8") as fh:
        assert out.read_text() == fh.read()
    assert code == EXIT_PASS


@pytest.mark.parametrize("family,p,brute", [("heisenberg", "3", "heisenberg3"), ("d8", "2", "dihedral8")])
def test_golden_report_agrees_with_bruteforce(family, p, brute):
    name = "heisenberg3" if family == "heisenberg" else "d8"
    doc = load(os.path.join(GOLDEN, f"search_{name}.json"))
    with open(golden_path(brute), encoding="utf-8") as fh:
        want = json.load(fh)
    surv = sorted(c["igs"] for c in doc["search"]["survivors"])
    assert surv == sorted(r["igs"] for r in want["classes"] if r["survivor"])
    assert doc["search"]["centric_class_count"] == len(want["classes"])


def test_search_class_budget(tmp_path):
    code, doc, _ = run(tmp_path, "search", "--family", "psu5", "--p", "2", "--class-budget", "1")
    assert code == EXIT_BUDGET and doc["status"] == "budget"
    assert doc["search"]["exhaustive"] is False


def test_search_element_budget(tmp_path):
    code, doc, _ = run(tmp_path, "search", "--family", "heisenberg", "--p", "7", "--element-budget", "1")
    assert code == EXIT_BUDGET and "error" in doc
    validate(doc)


def test_verify_budget_gives_partial_report(tmp_path):
    code, doc, _ = run(tmp_path, "verify", "--family", "psu5", "--p", "2", "--suite", "essentials", "--class-budget", "3")
    assert code == EXIT_BUDGET
    assert all(not a["exhaustive"] for a in doc["assertions"])
    assert len(doc["assertions"]) == 4


def test_reports_are_byte_identical(tmp_path):
    args = ["verify", "--family", "psu5", "--p", "2", "--suite", "all"]
    _, _, a = run(tmp_path, *args, name="a.json")
    _, _, b = run(tmp_path, *args, name="b.json")
    assert a.read_bytes() == b.read_bytes()


def test_diff_across_seeds_is_empty_for_exhaustive_suites(tmp_path, capsys):
    base = ["verify", "--family", "psu5", "--p", "2", "--suite", "structure"]
    _, _, a = run(tmp_path, *base, "--seed", "1", name="a.json")
    _, _, b = run(tmp_path, *base, "--seed", "2", name="b.json")
    capsys.readouterr()
    assert main(["report", "diff", str(a), str(b)]) == EXIT_PASS
    assert capsys.readouterr().out == ""


def test_report_render_and_diff(tmp_path, capsys):
    _, doc, a = run(tmp_path, "verify", "--family", "psu5", "--p", "2", "--suite", "structure", name="a.json")
    assert main(["report", "render", str(a)]) == EXIT_PASS
    text = capsys.readouterr().out
    for x in doc["assertions"]:
        assert x["anchor"] in text
    doc["assertions"][0]["pass"] = False
    doc["assertions"][0]["computed"] = 1
    b = tmp_path / "b.json"
    b.write_text(dumps(doc))
    assert main(["report", "diff", str(a), str(b)]) == EXIT_FAIL
    out = capsys.readouterr().out.splitlines()
    assert out == [f"~ assertion {doc['assertions'][0]['id']}: " + out[0].split(": ", 1)[1]]
    assert out[0].startswith("~ assertion psu5.")


def test_report_schema_violation_has_pointer(tmp_path, capsys):
    _, doc, _ = run(tmp_path, "verify", "--family", "psu5", "--p", "2", "--suite", "structure")
    doc["assertions"][2]["pass"] = "yes"
    with pytest.raises(ReportError) as exc:
        validate(doc)
    assert exc.value.pointer == "/assertions/2/pass"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert main(["report", "render", str(bad)]) == EXIT_DATA
    assert "/assertions/2/pass" in capsys.readouterr().err
    notjson = tmp_path / "x.json"
    notjson.write_text("{")
    assert main(["report", "render", str(notjson)]) == EXIT_DATA


def test_render_is_stable():
    doc = load(os.path.join(GOLDEN, "search_d8.json"))
    assert render(doc) == render(json.loads(json.dumps(doc)))
    assert "eliminated E0002 order 4 by burnside" in render(doc)


def test_stdout_output(capsys):
    assert main(["search", "--family", "d8", "--quiet"]) == EXIT_PASS
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "search"
