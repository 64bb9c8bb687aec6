import json

import pytest

from bakit.ba_fixtures import fixture
from bakit.cli import main
from bakit.lk_fixtures import lk_fixture
from bakit.proofs_ba import dump_proof
from bakit.proofs_lk import dump_lk
from bakit.semantics import make_Kstar


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def js(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_parse_roundtrip(capsys):
    code, out, _ = run(capsys, "parse", "x + 0 = x")
    assert code == 0 and out.strip() == "x + 0 = x"
    code, d = js(capsys, "parse", "T => ![x](x = 0 -> x < S0)")
    assert code == 0 and d["kind"] == "sequent"
    code, d = js(capsys, "parse", "--lk", "x = 0, y = 0 => x = y")
    assert d["kind"] == "lk-sequent"


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "parse", "x + = 0")
    assert code == 1 and err.startswith("error:")


def test_language_flag_rejects_cutoff(capsys):
    assert run(capsys, "parse", "x -. y = 0")[0] == 0
    assert run(capsys, "parse", "--language", "L", "x -. y = 0")[0] == 1


def test_classify(capsys):
    code, d = js(capsys, "classify", "x = 0")
    assert code == 0 and {"QuantifierFree", "DeltaZero"} <= set(d["classes"])


def test_formula_from_file(capsys, tmp_path):
    f = tmp_path / "a.txt"
    f.write_text("E y. x = y\n")
    code, d = js(capsys, "transform", "--pass", "pos", f"@{f}")
    assert code == 0 and d["input"] == "E y. x = y"


@pytest.mark.parametrize("p", ["pos", "semipos", "openpos", "openneg", "bneg", "star"])
def test_transform_passes(capsys, p):
    code, d = js(capsys, "transform", "--pass", p, "![](x = 0 -> x < S0)")
    assert code == 0 and d["pass"] == p and d["output"]


def test_totalize(capsys):
    code, d = js(capsys, "transform", "--pass", "totalize", "--xs", "x", "--y", "y", "--zs", "z",
                 "x = y & z = z")
    assert code == 0 and len(d["output"]) > len(d["input"])


def test_check_ba(capsys, tmp_path):
    f = tmp_path / "p.json"
    dump_proof(fixture("zero_add").proof, f)
    code, d = js(capsys, "check-ba", str(f), "--theory", "ba")
    assert code == 0 and d["ok"] and not d["errors"]


def test_check_ba_missing_file(capsys, tmp_path):
    assert run(capsys, "check-ba", str(tmp_path / "nope.json"))[0] == 1


def test_check_and_eliminate_lk(capsys, tmp_path):
    f, g = tmp_path / "p.json", tmp_path / "q.json"
    dump_lk(lk_fixture("double_detour"), f)
    code, d = js(capsys, "cutelim", str(f), "--class", "pos", "--out", str(g))
    assert code == 0 and d["offending_before"] >= 1 and "proof" not in d
    code, d = js(capsys, "check-lk", str(g), "--class", "pos")
    assert code == 0 and d["ok"]


def test_force(capsys, tmp_path):
    m = tmp_path / "k.json"
    m.write_text(json.dumps(make_Kstar().to_json()))
    code, d = js(capsys, "force", str(m), "--at", "kstar", "--formula", "x + z = y + z => x = y",
                 "--set", "x=0", "--set", "y=1", "--set", "z=inf", "--inf")
    assert code == 0 and d["verdict"] == "False" and d["counterexample"]["node"] == "kstar"
    code, d = js(capsys, "force", str(m), "--at", "kstar", "--formula", "x + 0 = x", "--set", "x=inf")
    assert d["verdict"] == "True"


def test_scenario_commands(capsys):
    code, out, _ = run(capsys, "scenario", "--list")
    assert code == 0 and "cutoff-uniqueness-failure" in out.split()
    code, d = js(capsys, "scenario", "cutoff-uniqueness-failure")
    assert code == 0 and d["status"] == "PASS"
    code, _, err = run(capsys, "scenario", "no-such")
    assert code == 1 and "no-such" in err
