import json
from fractions import Fraction

import pytest
import xmodlie
from xmodlie import AxiomError, ParseError, Report, ResolutionError, Subspace
from xmodlie.cli import main
from xmodlie.workspace import corpus_path, load, load_corpus


BAD_JACOBI = {
    "algebras": {
        "bad": {"dim": 3, "brackets": [[1, 2, 3, 1], [2, 3, 1, 1], [3, 1, 3, 1]]}
    }
}


def write(tmp_path, doc, name="defs.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


def machine(capsys, argv):
    code = main(["--format", "machine"] + argv)
    return code, json.loads(capsys.readouterr().out)


# Loading


@pytest.mark.cli
def test_load_sl2():
    ws = load_corpus("sl2")
    assert list(ws.algebras) == ["sl2"]
    assert ws.get("algebras", "sl2").basis_names == ["e", "h", "f"]
    assert ws.lookup("sl2_id")[0] == "braidings"
    assert ws.expectations["sl2_identity"]["central"] is True
    assert all(ws.verdicts.values())


@pytest.mark.cli
def test_antisymmetry_conflict_is_axiom_error(tmp_path):
    doc = {"algebras": {"L": {"dim": 2, "brackets": [[1, 2, 1, 1], [2, 1, 1, 1]]}}}
    with pytest.raises(AxiomError) as err:
        load(write(tmp_path, doc))
    assert err.value.axiom == "antisymmetry"


@pytest.mark.cli
def test_jacobi_failure(tmp_path):
    path = write(tmp_path, BAD_JACOBI)
    with pytest.raises(AxiomError) as err:
        load(path)
    assert err.value.axiom == "jacobi" and err.value.witness == (0, 1, 2)
    ws = load(path, check=False)
    v = ws.verdicts[("algebras", "bad")]
    assert not v and v.axiom == "jacobi"


@pytest.mark.cli
def test_parse_errors(tmp_path):
    with pytest.raises(ParseError) as err:
        load(write(tmp_path, '{"algebras": {'))
    assert err.value.line == 1
    with pytest.raises(ParseError):
        load(write(tmp_path, {"algebras": {"L": {"dim": 2, "brackets": [[1, 3, 1, 1]]}}}))
    with pytest.raises(ParseError):
        load(write(tmp_path, {"groups": {}}))
    with pytest.raises(ParseError):
        load(write(tmp_path, {"algebras": {"L": {"dim": 2, "brackets": [[1, 2, 1, 0.5]]}}}))
    with pytest.raises(ParseError):
        load(str(tmp_path / "missing.json"))


MALFORMED = [
    {"algebras": {"A": {"abelian": "two"}}},
    {"algebras": {"A": {"dim": [2]}}},
    {"algebras": {"A": 3}},
    {"algebras": [1, 2]},
    {"include": "sl2.json"},
    {
        "include": [corpus_path("sl2")],
        "morphisms": {"m": {"source": "sl2_id", "target": "sl2_id", "f1": 5}},
    },
    {
        "include": [corpus_path("sl2")],
        "morphisms": {"m": {"source": "sl2_id", "target": "sl2_id", "f2": [1, 0]}},
    },
    {
        "include": [corpus_path("sl2")],
        "morphisms": {"m": {"source": "sl2_id", "target": "sl2_id", "expect": 1}},
    },
]


@pytest.mark.cli
@pytest.mark.parametrize("doc", MALFORMED)
def test_malformed_fields_are_parse_errors(tmp_path, capsys, doc):
    path = write(tmp_path, doc)
    with pytest.raises(ParseError):
        load(path)
    code, out = machine(capsys, ["-i", path, "verify"])
    assert code == 2
    assert out["status"] == "parse"


@pytest.mark.cli
def test_resolution_errors(tmp_path):
    doc = {"xmods": {"x": {"construction": "identity", "of": "nowhere"}}}
    with pytest.raises(ResolutionError):
        load(write(tmp_path, doc))
    doc = {"algebras": {"A": {"abelian": 1}}}
    path = write(tmp_path, doc)
    other = write(tmp_path, doc, "again.json")
    with pytest.raises(ResolutionError):
        load([path, other])
    with pytest.raises(ResolutionError):
        load_corpus("sl2").lookup("nope")


@pytest.mark.cli
def test_include_loaded_once():
    ws = load([corpus_path("k2k3"), corpus_path("abelian")])
    assert len(ws.sources) == 2
    assert set(ws.algebras) == {"K1", "K2", "K3", "K4"}


@pytest.mark.cli
def test_rational_entries(tmp_path):
    doc = {
        "algebras": {"A": {"abelian": 2}},
        "homs": {"half": {"source": "A", "target": "A", "matrix": [["1/2", 0], [0, "-3/4"]]}},
    }
    ws = load(write(tmp_path, doc))
    assert ws.get("homs", "half").matrix[1, 1] == Fraction(-3, 4)


@pytest.mark.cli
def test_pure_tensor_lookup():
    ws = load_corpus("k2k3")
    v = xmodlie.workspace.pure(ws, "T3", xmodlie.unit(3, 0), xmodlie.unit(3, 1))
    assert v.shape == (9,)
    with pytest.raises(ResolutionError):
        xmodlie.workspace.pure(ws, "K3_id", xmodlie.unit(3, 0), xmodlie.unit(3, 1))


# Reports


@pytest.mark.cli
def test_report_round_trip():
    r = Report("analyze", ["T3"])
    r.add("center", {"dims": (9, 3), "half": Fraction(1, 2), "sub": Subspace(2, [[1, 0]])})
    r.check(False, "classification", "central expected")
    r.check(False, "internal", "later")
    assert r.status == "classification" and r.exit_code == 4
    again = Report.from_machine(r.to_machine())
    assert again.to_dict() == r.to_dict()
    assert again.to_machine() == r.to_machine()
    assert r.sections["center"] == {"dims": [9, 3], "half": "1/2", "sub": {"dim": 1, "ambient_dim": 2}}
    with pytest.raises(ValueError):
        r.fail("ok", "nope")


@pytest.mark.cli
def test_report_human():
    r = Report("verify", ["sl2"])
    r.add("algebra sl2", xmodlie.Verdict.passed())
    text = r.to_human(color=False)
    assert text.splitlines()[0] == "xmodlie verify sl2"
    assert "[algebra sl2]" in text
    assert text.endswith("OK\n")


# Driver


@pytest.mark.cli
def test_demo_k2k3(capsys):
    code, doc = machine(capsys, ["demo", "k2k3"])
    assert code == 0
    data = doc["sections"]["k2k3"]
    assert data["central"] is False and data["compatible_central"] is True
    assert data["ker_pi_tensor_pi"] == 5


@pytest.mark.cli
@pytest.mark.parametrize("demo", ["uce-theorem", "sl2-corollary"])
def test_other_demos(capsys, demo):
    code, doc = machine(capsys, ["demo", demo])
    assert code == 0
    assert doc["status"] == "ok"


@pytest.mark.cli
def test_analyze_t3(capsys):
    code, doc = machine(capsys, ["-i", "k2k3", "analyze", "T3"])
    assert code == 0
    sections = doc["sections"]
    assert sections["center"]["dims"] == [9, 3]
    assert sections["center"]["fixed_points"] == 9
    assert sections["braided_center"]["braided_center"] == 0
    assert sections["braided_commutator"]["braided_closure"] == 9
    assert sections["perfect_base_equalities"] == {"skipped": True}


@pytest.mark.cli
def test_analyze_sl2(capsys):
    code, doc = machine(capsys, ["-i", "sl2", "analyze", "sl2_id"])
    assert code == 0
    assert doc["sections"]["perfect_base_equalities"]["skipped"] is False


@pytest.mark.cli
def test_analyze_records_failed_checks(capsys, monkeypatch):
    real = xmodlie.cli.braided_center

    def broken(bx):
        bc = real(bx)
        bc.checks["inside_xmod_center"] = False
        return bc

    monkeypatch.setattr(xmodlie.cli, "braided_center", broken)
    code, doc = machine(capsys, ["-i", "k2k3", "analyze", "T3"])
    assert code == 5
    assert doc["status"] == "internal"
    assert doc["sections"]["braided_center"]["checks"]["inside_xmod_center"] is False


@pytest.mark.cli
def test_uce_h3(capsys):
    code, doc = machine(capsys, ["-i", "h3", "uce", "h3_id"])
    assert code == 0
    uce = doc["sections"]["uce"]
    assert uce["kind"] == "not_perfect"
    assert uce["certificate"] == {"M=B_N(M)": 2, "N=[N,N]": 2}
    assert "compatible_uce" not in doc["sections"]


@pytest.mark.cli
def test_uce_sl2(capsys):
    code, doc = machine(capsys, ["-i", "sl2", "uce", "sl2_id"])
    assert code == 0
    assert doc["sections"]["uce"]["kernel_invariants"] == [0, 0]
    assert doc["sections"]["compatible_uce"]["kernel_dims"] == [0, 0]


@pytest.mark.cli
def test_classify(capsys):
    code, doc = machine(capsys, ["-i", "sl2", "classify", "sl2_identity"])
    assert code == 0
    assert doc["sections"]["classification"]["central"] is True


@pytest.mark.cli
def test_classification_mismatch(capsys, tmp_path):
    doc = {
        "include": [corpus_path("sl2")],
        "morphisms": {
            "wrong": {"source": "sl2_id", "target": "sl2_id", "expect": {"central": False}}
        },
    }
    code, out = machine(capsys, ["-i", write(tmp_path, doc), "classify", "wrong"])
    assert code == 4
    assert out["status"] == "classification"


@pytest.mark.cli
def test_verify_exit_codes(capsys, tmp_path):
    code, doc = machine(capsys, ["-i", "sl2", "verify"])
    assert code == 0
    assert "algebra sl2" in doc["sections"]
    code, doc = machine(capsys, ["-i", write(tmp_path, BAD_JACOBI), "verify", "bad"])
    assert code == 3
    assert doc["sections"]["algebra bad"]["axiom"] == "jacobi"
    code, doc = machine(capsys, ["--strict", "-i", write(tmp_path, BAD_JACOBI), "verify"])
    assert code == 3
    assert doc["status"] == "axiom" and doc["sections"] == {}


@pytest.mark.cli
def test_parse_failure_exit_code(capsys, tmp_path):
    code, doc = machine(capsys, ["-i", write(tmp_path, "[1, 2"), "verify"])
    assert code == 2
    code, doc = machine(capsys, ["-i", "sl2", "analyze", "nope"])
    assert code == 2 and doc["status"] == "parse"


@pytest.mark.cli
def test_tensor_command(capsys):
    code, doc = machine(capsys, ["-i", "abelian", "tensor", "K2", "K2"])
    assert code == 0
    assert doc["sections"]["tensor"]["dim"] == 4
    assert doc["sections"]["tensor"]["oracle_dim"] == 4
    code, doc = machine(capsys, ["-i", "abelian", "-i", "sl2", "tensor", "K2", "sl2"])
    assert code == 0
    assert doc["sections"]["tensor"]["dim"] == 0


@pytest.mark.cli
@pytest.mark.parametrize("flag", ["--act-mn", "--act-nm"])
def test_tensor_adjoint_needs_equal_factors(capsys, flag):
    code, doc = machine(capsys, ["-i", "abelian", "-i", "sl2", "tensor", "K2", "sl2", flag, "adjoint"])
    assert code == 2
    assert doc["status"] == "parse"


@pytest.mark.cli
def test_human_output(capsys):
    assert main(["--no-color", "-i", "sl2", "verify", "sl2"]) == 0
    out = capsys.readouterr().out
    assert "[algebra sl2]" in out
    assert out.endswith("OK\n")
