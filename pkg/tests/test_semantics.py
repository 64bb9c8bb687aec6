import pytest
from hypothesis import given, settings

from bakit.oracle import truth_nat
from bakit.parser import parse_formula as F
from bakit.parser import parse_sequent as PS
from bakit.semantics import (
    INF, EvalBound, FiniteTable, KripkeModel, MonusDisabled, Node, NStar, StdN,
    UnassignedVariable, Unknown, add_root, eval_term, find_witness, force, force_rule,
    force_sequent, make_Kstar, overspill_check, sat, sequent_counterexample, single_node,
    validate_model,
)
from bakit.syntax import Block, Bot, Sequent, Top, Var
from bakit.transforms import positive_part

from gen import from_seed, models, rand_delta0, rand_positive, seeded

NS = NStar()
KS = make_Kstar()
B8 = EvalBound(8, True)


# -- N* arithmetic --------------------------------------------------------------


def test_nstar_law_table():
    s = NS
    assert s.succ(INF) is INF
    assert s.add(INF, INF) is INF and s.mul(INF, INF) is INF
    assert s.lt(INF, INF)
    for n in range(65):
        assert s.mul(0, INF) == 0 and s.mul(INF, 0) == 0
        assert s.lt(n, INF) and not s.lt(INF, n)
        assert s.add(n, INF) is INF and s.add(INF, n) is INF
        if n > 0:
            assert s.mul(n, INF) is INF and s.mul(INF, n) is INF
        for m in range(65):
            assert s.add(n, m) == n + m and s.mul(n, m) == n * m and s.lt(n, m) == (n < m)
        assert s.succ(n) == n + 1


def test_eval_term_examples():
    assert eval_term(NS, F("S x = x").l, {"x": INF}) is INF
    assert eval_term(NS, F("0 * x = x").l, {"x": INF}) == 0
    assert eval_term(NS, F("SSS0 + x = x").l, {"x": INF}) is INF
    with pytest.raises(MonusDisabled):
        eval_term(NS, F("x -. x = 0").l, {"x": 1})
    assert eval_term(StdN(), F("x -. SS0 = 0").l, {"x": 1}) == 0
    with pytest.raises(UnassignedVariable):
        eval_term(StdN(), Var("q"), {})


# -- satisfaction --------------------------------------------------------------


def test_sat_examples():
    assert sat(NS, F("x < x"), {"x": INF}) is True
    assert sat(NS, F("E y. x = y + y"), {"x": INF}, B8) is True
    assert find_witness(NS, ["y"], F("x = y + y"), {"x": INF}, B8) == (INF,)
    v = sat(StdN(), F("E y. S0 = y + y"), {}, EvalBound(8, False))
    assert isinstance(v, Unknown) and v.bound == 8


def test_bounded_quantifiers_are_exact():
    assert sat(StdN(), F("![u](u < SSS0 -> u < SSSS0)"), {}) is True
    assert sat(StdN(), F("E u. (u < SSS0 & SSSS0 = u)"), {}) is False


def _sentence(rng):
    return rand_delta0(rng, (), 4, 8)


def test_truth3_soundness_against_oracle():
    rng = seeded(1)
    std = single_node(StdN(), True)
    for _ in range(1000):
        a = _sentence(rng)
        want = truth_nat(a)
        assert sat(StdN(), a) is want, a
        assert force(std, "k0", a) is want, a


# -- forcing -------------------------------------------------------------------


def test_kstar_examples():
    assert len(KS.nodes) == 1 and not KS.nodes[0].reflexive
    assert isinstance(KS.nodes[0].structure, NStar)
    assert force(KS, "kstar", F("![x](T -> x = 0)")) is True
    assert force(KS, "kstar", Block((), Top(), Bot())) is True
    assert validate_model(KS).ok
    a = F("(x < y & z = 0) | x = y + z")
    assert force(KS, "kstar", a, {"x": INF, "y": INF, "z": 0}) is True
    assert force(KS, "kstar", F("(Sx < y & z = 0) | Sx = y + z"), {"x": INF, "y": INF, "z": 1}) is True


def test_sequent_examples():
    assert force_sequent(KS, "kstar", PS("Sx = 0 => F"), B8) is True
    v, cx = sequent_counterexample(KS, "kstar", PS("x + z = y + z => x = y"), B8)
    assert v is False
    node, asg = cx
    assert node == "kstar" and NS.add(asg["x"], asg["z"]) == NS.add(asg["y"], asg["z"])
    assert asg["x"] != asg["y"]
    assert force_sequent(KS, "kstar", PS("x + z = y + z => x = y"), B8, {"x": 0, "y": 1, "z": INF}) is False


def test_force_rule():
    # the cancellation rule is not sound at K*: premise forced, conclusion refuted
    prem = [PS("T => x + z = y + z")]
    assert force_rule(KS, "kstar", [PS("T => T")], PS("T => 0 = 0")) is True
    assert force_rule(KS, "kstar", [PS("T => F")], PS("T => 0 = S0")) is True
    assert force_rule(KS, "kstar", [], PS("T => 0 = S0")) is False
    # the premise itself fails at K*, so the rule holds vacuously there
    assert force_rule(KS, "kstar", prem, PS("T => x = y")) is True


def test_add_root():
    m = add_root(KS, False)
    assert [n.id for n in m.nodes] == ["root", "kstar"]
    assert m.related("root", "kstar") and not m.related("root", "root")
    assert validate_model(m).ok
    empty = add_root(KripkeModel(()), True)
    assert len(empty.nodes) == 1 and empty.nodes[0].reflexive
    assert isinstance(empty.nodes[0].structure, StdN)


def test_two_node_countermodel():
    m = add_root(KS, False)
    seq = Sequent(Top(), Block((), F("E x. x + y = x + z"), F("y = z")))
    v, cx = sequent_counterexample(m, "root", seq, B8)
    assert v is False and cx[0] == "root"
    assert force(m, "kstar", F("E x. x + y = x + z"), {"y": 0, "z": 1}, B8) is True
    assert force(m, "root", Block((), F("E x. x + y = x + z"), F("y = z")), {"y": 0, "z": 1}, B8) is False


def _mod2():
    c = (0, 1)
    return dict(
        carrier=c,
        succ_table={0: 1, 1: 0},
        add_table={(a, b): (a + b) % 2 for a in c for b in c},
        mul_table={(a, b): (a * b) % 2 for a in c for b in c},
    )


def test_validate_model_negative_cases():
    lo = FiniteTable(lt_set=frozenset({(0, 1)}), **_mod2())
    hi = FiniteTable(lt_set=frozenset(), **_mod2())
    m = KripkeModel((Node("a", False, lo), Node("b", False, hi)), frozenset({("a", "b")}))
    rep = validate_model(m)
    assert not rep.ok and any("persistence" in v for v in rep.violations)
    ch = KripkeModel(tuple(Node(i, False, StdN()) for i in "abc"), frozenset({("a", "b"), ("b", "c")}))
    rep = validate_model(ch)
    assert not rep.ok and any("transitivity" in v for v in rep.violations)


def test_model_json_roundtrip():
    for m in models():
        assert KripkeModel.from_json(m.to_json()) == m
    t = FiniteTable(lt_set=frozenset({(0, 1)}), **_mod2())
    m = single_node(t)
    assert KripkeModel.from_json(m.to_json()) == m


def test_models_validate():
    for m in models():
        assert validate_model(m).ok, m


def _assignments(m, k, names):
    vals = [0, 1, 2] + ([INF] if isinstance(m.structure(k), NStar) else [])
    return [{n: v for n in names} for v in vals]


@settings(max_examples=500)
@given(from_seed(rand_positive, ("x",), 3, 3, True))
def test_positivity_localism(a):
    for m in models():
        for n in m.nodes:
            for asg in _assignments(m, n.id, ["x"]):
                assert force(m, n.id, a, asg, B8) == sat(n.structure, a, asg, B8)


@settings(max_examples=200)
@given(from_seed(rand_delta0, ("x",), 3, 4))
def test_persistence(a):
    for m in models():
        for k in m.nodes:
            for asg in _assignments(m, k.id, ["x"]):
                if force(m, k.id, a, asg, B8) is not True:
                    continue
                for k2 in m.nodes:
                    if m.related(k.id, k2.id):
                        assert force(m, k2.id, a, asg, B8) is True, (k.id, k2.id, a, asg)


def test_kstar_positive_part_equivalence():
    rng = seeded(9)
    for _ in range(500):
        a = rand_delta0(rng, (), 4, 6)
        assert force(KS, "kstar", a, {}, B8) == force(KS, "kstar", positive_part(a), {}, B8), a


def test_positive_true_in_N_is_true_in_Nstar():
    rng = seeded(13)
    found = 0
    while found < 100:
        a = rand_positive(rng, (), 3, 3, True)
        if truth_nat(a):
            found += 1
            assert sat(NS, a, {}, B8) is True, a


# -- overspill -----------------------------------------------------------------


def test_overspill_examples():
    r = overspill_check(F("E y. x = y + y | E y. x = y + y + S0"), "x", 16)
    assert r.status == "PASS" and r.witness == (INF,)
    assert overspill_check(F("x = x"), "x", 16).status == "PASS"
    r = overspill_check(F("x < SSSSS0"), "x", 16)
    assert r.status == "hypothesis not met" and r.first_miss == 5
    with pytest.raises(ValueError):
        overspill_check(F("(x = 0 -> F)"), "x", 4)
    with pytest.raises(ValueError):
        overspill_check(F("x = y"), "x", 4)


def test_unknown_only_from_exhausted_search():
    a = F("E y. E z. (y * z = x & S0 < y & S0 < z)")
    v = sat(NS, a, {"x": 37}, EvalBound(4, False))
    assert isinstance(v, Unknown) and v.bound == 4
    assert sat(NS, a, {"x": 12}, EvalBound(4, False)) is True
