import random

import pytest
from hypothesis import given, settings

from bakit.classes import is_positive
from bakit.cutelim import (
    PreconditionError, check_preconditions, cut_elimination, eliminate_cuts_outside,
    offending_cuts,
)
from bakit.lk_derive import NameSupply, ax, cut, fresh_name, neg_l, neg_r, regularize
from bakit.lk_fixtures import lk_fixture, lk_fixtures, random_lk_proof
from bakit.parser import parse_formula as F
from bakit.proofs_lk import POS, LkTheory, check_lk, cut_formulas, iter_nodes

from gen import seeds


def _postconditions(p, q):
    assert check_lk(q, POS).ok
    assert q.conclusion == p.conclusion
    assert offending_cuts(q, POS) == 0
    assert all(is_positive(a) for a in cut_formulas(q))


def test_fixtures():
    for fx in lk_fixtures():
        q, stats = cut_elimination(fx.proof, POS)
        _postconditions(fx.proof, q)
        assert stats.offending_before == offending_cuts(fx.proof, POS)
        tr = stats.measure_trace
        assert all(a > b for a, b in zip(tr, tr[1:])) and tr[-1] == 0


def test_neg_detour_example():
    a = F("x = x")
    p = cut(neg_r(ax(a), a), neg_l(ax(a), a), F("~x = x"))
    assert p.conclusion == ((a,), (a,))
    q = eliminate_cuts_outside(p)
    _postconditions(p, q)
    assert not any(n.rule == "Cut" for n in iter_nodes(q))


def test_positive_only_unchanged():
    p = lk_fixture("positive_only")
    assert eliminate_cuts_outside(p) == p


def test_implication_detour_leaves_no_implication():
    p = lk_fixture("imp_detour")
    q = eliminate_cuts_outside(p)
    for n in iter_nodes(q):
        assert all(is_positive(a) for a in n.ante + n.cons)


def test_preconditions():
    a = F("~x = x")
    p = ax(a)
    with pytest.raises(PreconditionError):
        check_preconditions(p, POS, LkTheory())
    th = LkTheory("bad", (("B", ((), (F("~0 = S0"),))),))
    with pytest.raises(PreconditionError):
        cut_elimination(ax(F("x = x")), POS, th)


@settings(max_examples=200)
@given(seeds)
def test_random_proofs(seed):
    p = random_lk_proof(random.Random(seed), max_nodes=25)
    assert check_lk(p, POS).ok
    assert all(is_positive(a) for a in p.ante + p.cons)
    _postconditions(p, eliminate_cuts_outside(p))


def test_name_supply():
    s = NameSupply({"k1", "x"})
    names = [s.fresh() for _ in range(5)]
    assert len(set(names)) == 5 and "k1" not in names
    assert fresh_name({"k1", "k2"}) == "k3"


def test_regularize_keeps_sequent():
    for fx in lk_fixtures():
        r = regularize(fx.proof)
        assert r.conclusion == fx.proof.conclusion and check_lk(r, POS).ok
