import pytest
from hypothesis import given, settings

from bakit.classes import is_delta0, is_positive, is_quantifier_free, is_sigma1
from bakit.oracle import NatOracle, truth_nat
from bakit.parser import parse_formula as F
from bakit.syntax import (
    And, Block, Bot, Eq, Exists, Lt, Monus, Or, Top, Var, Zero, has_monus,
    subformulas,
)
from bakit.transforms import (
    NotDeltaZero, NotQuantifierFree, TotalizerError, TotalizerInput, bounded_negation,
    open_negation, open_positive, positive_part, semi_positive_part, sigma1_totalizer,
    star_translate,
)

from gen import from_seed, lc_sentence, rand_delta0, rand_qf, seeded

x, y, z = Var("x"), Var("y"), Var("z")


# -- positive and semi-positive parts -------------------------------------------


def test_positive_part_examples():
    assert positive_part(Block((), Top(), Bot())) == Top()
    a = Exists("y", And(Eq(y, Zero()), Block((), Top(), Bot())))
    assert positive_part(a) == Exists("y", And(Eq(y, Zero()), Top()))
    assert positive_part(Eq(x, y)) == Eq(x, y)


def test_semi_positive_part_examples():
    neg = Block((), Top(), Bot())
    assert semi_positive_part(Block(("x",), neg, Eq(x, Zero()))) == Block(("x",), Top(), Eq(x, Zero()))
    assert semi_positive_part(Block((), Eq(x, Zero()), neg)) == Block((), Eq(x, Zero()), Top())
    p = F("E u. (u = x | x < u)")
    assert semi_positive_part(p) == p


def _with_blocks(rng):
    return rand_delta0(rng, ("x",), 4, 4)


@settings(max_examples=300)
@given(from_seed(_with_blocks))
def test_positive_part_laws(a):
    p = positive_part(a)
    assert is_positive(p)
    assert positive_part(p) == p
    assert positive_part(semi_positive_part(a)) == p
    for s in subformulas(semi_positive_part(a)):
        if isinstance(s, Block):
            assert is_positive(s.ante) and is_positive(s.cons)


def test_positive_part_monotone_truth():
    rng = seeded(11)
    checked = 0
    for _ in range(500):
        a = rand_delta0(rng, (), 4, 8)
        if truth_nat(a):
            assert truth_nat(positive_part(a)), a
            checked += 1
    assert checked > 100


# -- open positivization ----------------------------------------------------------


def test_open_examples():
    s, t = x, y
    assert open_negation(Eq(s, t)) == F("x < y | y < x")
    imp = Block((), Eq(x, Zero()), Eq(y, Zero()))
    assert open_positive(imp) == Or(open_negation(Eq(x, Zero())), Eq(y, Zero()))
    assert open_positive(Top()) == Top()
    with pytest.raises(NotQuantifierFree):
        open_positive(F("E u. u = x"))


def test_open_positivization_agrees_in_N():
    rng = seeded(3)
    for _ in range(500):
        a = rand_qf(rng, ["x", "y"], 4, max_num=4)
        p, n = open_positive(a), open_negation(a)
        assert is_positive(p) and is_quantifier_free(p)
        assert is_positive(n) and is_quantifier_free(n)
        for _ in range(12):
            asg = {"x": rng.randint(0, 20), "y": rng.randint(0, 20)}
            v = truth_nat(a, asg)
            assert truth_nat(p, asg) == v
            assert truth_nat(n, asg) == (not v)


# -- bounded negation ---------------------------------------------------------------


def test_bounded_negation_examples():
    a = F("E u. (u < y & u = 0)")
    b = bounded_negation(a)
    assert b == Block(("u",), Lt(Var("u"), y), bounded_negation(Eq(Var("u"), Zero())))
    assert bounded_negation(Lt(x, y)) == F("y < x | x = y")
    assert bounded_negation(Top()) == Bot()
    with pytest.raises(NotDeltaZero):
        bounded_negation(F("E u. u = x"))


def test_bounded_negation_is_classical_negation():
    rng = seeded(5)
    for _ in range(500):
        a = rand_delta0(rng, (), 4, 8)
        b = bounded_negation(a)
        assert is_delta0(b)
        assert truth_nat(b) == (not truth_nat(a)), a


# -- star translation ---------------------------------------------------------------


def test_star_examples():
    a = Eq(Monus(x, y), Zero())
    assert star_translate(a) == Exists("z", And(F("(x < y & z = 0) | x = y + z"), Eq(z, Zero())))
    assert star_translate(Eq(x, y)) == Eq(x, y)
    nested = star_translate(Eq(Monus(Monus(x, y), y), Zero()))
    assert not has_monus(nested)
    # innermost occurrence is replaced first, so the outer variable guards it
    assert isinstance(nested, Exists) and nested.var == "z"


def test_star_preserves_truth():
    rng = seeded(7)
    # every introduced witness equals a cut-off value, bounded by the largest term value (< 60)
    oracle = NatOracle(search_limit=60)
    monus_seen = 0
    for _ in range(300):
        a = lc_sentence(rng)
        b = star_translate(a)
        assert not has_monus(b)
        monus_seen += has_monus(a)
        assert oracle.truth(b, {}) == oracle.truth(a, {}), a
    assert monus_seen > 100


# -- totalizer ----------------------------------------------------------------------


def test_totalizer_identity_graph():
    d = sigma1_totalizer(TotalizerInput(F("y = x1 & z = z"), ("x1",), "y", ("z",)))
    assert is_sigma1(d)
    assert isinstance(d, Exists) and d.var == "z"
    o = NatOracle()
    for a in range(5):
        for b in range(5):
            hit = o.exists_upto(["z"], d.body, {"x1": a, "y": b}, 5)
            assert (hit is not None) == (a == b)


def test_totalizer_errors():
    a = F("y = x1 & z = z")
    with pytest.raises(TotalizerError):
        sigma1_totalizer(TotalizerInput(a, ("x1",), "y", ()))
    with pytest.raises(TotalizerError):
        sigma1_totalizer(TotalizerInput(F("(y = x1 -> F)"), ("x1",), "y", ("z",)))
    with pytest.raises(TotalizerError):
        sigma1_totalizer(TotalizerInput(a, ("x1", "y"), "y", ("z",)))
    with pytest.raises(TotalizerError):
        sigma1_totalizer(TotalizerInput(a, (), "y", ("z",)))
