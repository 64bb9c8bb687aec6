import pytest
from hypothesis import given, settings

from bakit import ba_derive as d
from bakit.ba_fixtures import ba_fixtures, fixture, random_proof
from bakit.classes import is_positive
from bakit.parser import parse_formula as F
from bakit.parser import parse_sequent as PS
from bakit.proofs_ba import (
    BA, BA_C, BA_U, EBA, FORBIDDEN_AFTER_POSITIVIZE, BaProof, PreconditionError, RuleError,
    check_proof, height, iter_nodes, node, pack_is_positive, positivize_proof, proof_from_json,
    proof_to_json, rules_used, semi_positivize_proof, synth_pos_upper, synth_semipos_to_pos,
    with_gamma,
)
from bakit.scenarios import corollary_pipeline
from bakit.syntax import And, Block, Eq, Sequent, Top, Var, Zero
from bakit.transforms import positive_part, semi_positive_part

from gen import from_seed, rand_delta0

x, y = Var("x"), Var("y")


def _pos_sequent(s):
    return Sequent(positive_part(s.ante), positive_part(s.cons))


def _semi_sequent(s):
    return Sequent(semi_positive_part(s.ante), semi_positive_part(s.cons))


# -- checker -------------------------------------------------------------------


def test_axiom6_example():
    p = node("BQC-Ax6", t=x)
    assert p.conclusion == PS("T => x = x")
    assert check_proof(p).ok


def test_r19_side_condition():
    prem = node("BQC-Ax1", A=And(Eq(x, Zero()), Eq(y, y)))
    bad = BaProof(Sequent(Eq(x, Zero()), Block(("x",), Eq(y, y), prem.conclusion.cons)),
                  "BQC-R19", {"xs": ("x",), "A": Eq(x, Zero()), "B": Eq(y, y), "C": prem.conclusion.cons},
                  (prem,))
    rep = check_proof(bad)
    assert not rep.ok and rep.errors[0].kind == "side-condition"
    with pytest.raises(RuleError):
        node("BQC-R19", [prem], xs=("x",), A=Eq(x, Zero()), B=Eq(y, y), C=prem.conclusion.cons)


def test_induction_rule_example():
    a = F("0 + x = x")
    prem = d.trans(d.ba_in(a, "BA-Ax4", s=Zero(), t=x), d.cong_succ(d.ax1(a)))
    p = node("BA-IndRule", [prem], A=a, x="x")
    assert p.conclusion == Sequent(F("0 + 0 = 0"), a)
    assert check_proof(p).ok


def test_checker_reports_mismatch_and_arity():
    good = node("BQC-Ax6", t=x)
    wrong = BaProof(PS("T => y = y"), "BQC-Ax6", {"t": x})
    assert check_proof(wrong).errors[0].kind == "instantiation"
    arity = BaProof(good.conclusion, "BQC-Ax6", {"t": x}, (good,))
    assert check_proof(arity).errors[0].kind == "arity"
    assert not check_proof(node("Theory(U)", pack=BA_U), BA).ok


def test_packs():
    assert pack_is_positive(BA) and pack_is_positive(BA_U) and pack_is_positive(BA_C)
    assert not pack_is_positive(EBA)
    g = with_gamma([PS("T => 0 = 0")])
    assert [seq for _, seq in g.extra] == [PS("T => 0 = 0")]
    assert pack_is_positive(g)


def test_monus_axioms_need_bac():
    with pytest.raises(RuleError):
        node("BAc-MonusLe", s=Zero(), t=Zero())
    assert check_proof(node("BAc-MonusLe", pack=BA_C, s=Zero(), t=Zero()), BA_C).ok


def test_fixtures_check():
    fxs = ba_fixtures()
    assert len(fxs) >= 20
    for fx in fxs:
        assert check_proof(fx.proof, fx.pack).ok, fx.name
    assert fixture("add_cancel_open").proof.conclusion == PS("T => (y + u = y + v -> u = v)")
    # x < x desugared, as BA has no order axioms
    assert fixture("irreflexive_order").proof.conclusion == PS("T => (E z. x + Sz = x -> F)")
    assert "BA-IndRule" in rules_used(fixture("irreflexive_order").proof)


def test_json_roundtrip():
    for fx in ba_fixtures():
        assert proof_from_json(proof_to_json(fx.proof)) == fx.proof


# -- transformations -------------------------------------------------------------


def _transform_ok(p, pack):
    q = positivize_proof(p, pack)
    assert check_proof(q, pack).ok
    assert q.conclusion == _pos_sequent(p.conclusion)
    assert not (rules_used(q) & FORBIDDEN_AFTER_POSITIVIZE)
    assert height(q) <= height(p)
    for n in iter_nodes(q):
        assert is_positive(n.conclusion.ante) and is_positive(n.conclusion.cons)
    s = semi_positivize_proof(p, pack)
    assert check_proof(s, pack).ok
    assert s.conclusion == _semi_sequent(p.conclusion)


def test_transform_fixtures():
    for fx in ba_fixtures():
        if pack_is_positive(fx.pack):
            _transform_ok(fx.proof, fx.pack)
        else:
            with pytest.raises(PreconditionError):
                positivize_proof(fx.proof, fx.pack)


def test_positivize_r19_ends_in_ax2():
    p = fixture("add_cancel_open").proof
    r19 = next(n for n in iter_nodes(p) if n.rule == "BQC-R19")
    q = positivize_proof(r19)
    assert q.rule == "BQC-Ax2" and q.conclusion.cons == Top()
    sp = semi_positivize_proof(r19)
    assert sp.rule == "BQC-R14" and sp.premises[1].rule == "BQC-R19"


def test_theory_axiom_is_fixed_point():
    u = node("Theory(U)", pack=BA_U)
    assert semi_positivize_proof(u, BA_U) == u
    assert positivize_proof(u, BA_U) == u


def test_positivize_keeps_induction_rule():
    p = fixture("zero_add").proof
    assert "BA-IndRule" in rules_used(positivize_proof(p))


def test_positivize_rejects_unchecked():
    bad = BaProof(PS("T => y = y"), "BQC-Ax6", {"t": x})
    with pytest.raises(PreconditionError):
        positivize_proof(bad)


@settings(max_examples=200)
@given(from_seed(random_proof, 20))
def test_transform_random_proofs(p):
    assert check_proof(p).ok
    _transform_ok(p, BA)


def test_corollary_pipeline():
    n = 0
    for fx in ba_fixtures():
        if fx.uniqueness is None:
            continue
        q, want = corollary_pipeline(fx)
        assert check_proof(q, fx.pack).ok and q.conclusion == want
        n += 1
    assert n >= 2


# -- synthesis -------------------------------------------------------------------


def test_synth_examples():
    a = Eq(x, y)
    assert synth_pos_upper(a).rule == "BQC-Ax1"
    blk = Block(("x",), Top(), Eq(x, y))
    assert synth_pos_upper(blk).rule == "BQC-Ax2"
    assert synth_semipos_to_pos(blk).rule == "BQC-Ax2"
    assert synth_semipos_to_pos(a).rule == "BQC-Ax1"


@settings(max_examples=200)
@given(from_seed(rand_delta0, ("x",), 4, 4))
def test_synth_checks(a):
    p = synth_pos_upper(a)
    assert check_proof(p).ok and p.conclusion == Sequent(a, positive_part(a))
    q = synth_semipos_to_pos(a)
    assert check_proof(q).ok and q.conclusion == Sequent(semi_positive_part(a), positive_part(a))
