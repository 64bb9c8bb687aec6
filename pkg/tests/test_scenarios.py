import json

import pytest

from bakit.scenarios import (
    Assertion, ScenarioReport, UnknownScenario, overall_exit_code, overspill_corpus, run_all,
    run_scenario, scenario_names,
)
from bakit.semantics import Unknown

EXPECTED = [
    "cutoff-uniqueness-failure", "even-undecidable", "prime-divisor-failure",
    "cancellation-U-failure", "two-node-cancellation-conditional", "positivize-pipeline",
    "totalizer-demo", "cutelim-demo", "overspill-suite",
]


def test_registry():
    assert scenario_names() == EXPECTED
    with pytest.raises(UnknownScenario):
        run_scenario("no-such-scenario")


@pytest.mark.parametrize("name", [n for n in EXPECTED if n != "totalizer-demo"])
def test_scenario_passes(name):
    rep = run_scenario(name)
    assert rep.status == "PASS", rep.render()
    assert rep.exit_code == 0
    for a in rep.assertions:
        assert a.provenance


def test_cutoff_evidence():
    rep = run_scenario("cutoff-uniqueness-failure")
    cx = rep.to_json()["assertions"][2]["evidence"]["counterexample"]
    assert cx == {"node": "kstar", "assignment": {"u": 0, "v": 1, "x": "inf", "y": "inf"}}


def test_two_node_witness():
    rep = run_scenario("two-node-cancellation-conditional")
    ev = [a.evidence for a in rep.assertions if "witness" in a.evidence]
    assert {"x": "inf"} in [e["witness"] for e in ev]


def test_reports_are_deterministic():
    a = json.dumps([r.to_json() for r in run_all(EXPECTED[:6])], sort_keys=True)
    b = json.dumps([r.to_json() for r in run_all(EXPECTED[:6], parallel=True)], sort_keys=True)
    assert a == b


def test_exit_codes():
    ok = ScenarioReport("a", "", [Assertion("t", True, True, "p")])
    bad = ScenarioReport("b", "", [Assertion("t", True, False, "p")])
    unk = ScenarioReport("c", "", [Assertion("t", True, Unknown(8), "p")])
    assert (ok.exit_code, bad.exit_code, unk.exit_code) == (0, 1, 2)
    assert overall_exit_code([ok, unk]) == 2 and overall_exit_code([unk, bad]) == 1
    assert overall_exit_code([ok]) == 0
    # booleans are compared by identity, so 1 does not pass for True
    assert Assertion("t", True, 1, "p").status == "FAIL"


def test_overspill_corpus_is_fixed():
    c1, c2 = overspill_corpus(), overspill_corpus()
    assert c1 == c2 and len(c1) == 50 and len(set(c1)) == 50
