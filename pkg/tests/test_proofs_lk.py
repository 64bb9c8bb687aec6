import pytest

from bakit import lk_derive as d
from bakit.lk_fixtures import lk_fixtures
from bakit.parser import parse_formula as F
from bakit.parser import parse_sequent
from bakit.proofs_lk import (
    DELTA0, OPEN, POS, LkProof, LkRuleError, LkTheory, ba_to_lk, check_lk, closure_violations,
    lk_from_json, lk_node, lk_to_json,
)
from bakit.syntax import Succ, Var, Zero, subformulas

x, y = Var("x"), Var("y")


def test_axiom_node():
    p = lk_node("Ax", A=F("x = y"))
    assert p.conclusion == ((F("x = y"),), (F("x = y"),))
    assert check_lk(p).ok


def test_equality_axiom():
    p = lk_node("=-eqv", s=x, t=y, s2=Zero(), t2=Succ(Zero()))
    assert p.conclusion == ((F("x = y"), F("0 = S0"), F("x = 0")), (F("y = S0"),))
    assert check_lk(p).ok


def _ind_with_context(ctx):
    a = F("0 = 0")
    p = d.weaken_l(d.ax(a), ctx)
    p = d.to_end(p, a)
    return p, a


def test_ind_eigenvariable_condition():
    p, a = _ind_with_context(F("x = x"))
    with pytest.raises(LkRuleError) as e:
        lk_node("ind", [p], A=a, x="x", t=y)
    assert e.value.kind == "side-condition"
    bad = LkProof(((F("x = x"), a), (a,)), "ind", {"A": a, "x": "x", "t": y}, (p,))
    rep = check_lk(bad)
    assert not rep.ok and "side-condition" in str(rep)
    ok, a = _ind_with_context(F("y = y"))
    assert check_lk(lk_node("ind", [ok], A=a, x="x", t=y)).ok


def test_ind_class_restriction():
    a = F("~x = Sx")
    step = F("~Sx = SSx")
    # only the shape matters here: the class check fires before the premise is consulted
    p = LkProof(((a,), (step,)), "Ax", {"A": a})
    with pytest.raises(LkRuleError):
        lk_node("ind", [d.ax(a)], cls=POS, A=a, x="x", t=y)
    assert p.rule == "Ax"


def test_classes_closed_under_subformulas():
    fs = [F("E u. (u < x & u = 0)"), F("x = 0 | S0 = x"), F("~x = 0"), F("A u. (u < x ~> u = u)")]
    for cls in (POS, DELTA0, OPEN):
        assert closure_violations(cls, [b for a in fs for b in subformulas(a)]) == []


def test_ba_to_lk():
    assert ba_to_lk(parse_sequent("x = 0 => y = 0")) == ((F("x = 0"),), (F("y = 0"),))


def test_theory_axiom():
    th = LkTheory("U", (("U", ((F("x + z = y + z"),), (F("x = y"),))),))
    p = lk_node("Theory(U)", theory=th)
    assert check_lk(p, POS, th).ok
    assert not check_lk(p, POS).ok


def test_fixtures_check_and_roundtrip():
    fxs = lk_fixtures()
    assert len(fxs) >= 10
    for fx in fxs:
        assert check_lk(fx.proof, POS).ok, fx.name
        assert lk_from_json(lk_to_json(fx.proof)) == fx.proof
