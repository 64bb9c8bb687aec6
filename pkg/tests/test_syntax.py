import pytest
from hypothesis import given, settings

from bakit.classes import FormulaClass as C
from bakit.classes import classify, desugar_order, is_positive
from bakit.parser import L, L_C, ParseError, parse_formula, parse_sequent, parse_term
from bakit.syntax import (
    Add, And, Block, Bot, CaptureViolation, Eq, Exists, Lt, Monus, Succ, Top, Var, Zero,
    conj, disj, free_vars, has_monus, numeral, numeral_value, rename_bound, subformulas,
    substitute,
)

from gen import from_seed, rand_delta0, rand_positive, rand_qf

x, y, z, w = Var("x"), Var("y"), Var("z"), Var("w")


def test_parse_examples():
    assert parse_formula("S0 = 0") == Eq(Succ(Zero()), Zero())
    assert parse_formula("![x](T -> E y. x = y + y)") == Block(("x",), Top(), Exists("y", Eq(x, Add(y, y))))
    with pytest.raises(ParseError):
        parse_formula("x -. y = 0", L)
    assert parse_formula("x -. y = 0", L_C) == Eq(Monus(x, y), Zero())


def test_precedence():
    assert parse_term("x + y * z") == parse_term("x + (y * z)")
    assert parse_term("x -. y + z") == Monus(x, Add(y, z))
    assert parse_formula("x = 0 & y = 0 | z = 0") == parse_formula("(x = 0 & y = 0) | z = 0")
    assert parse_formula("(x = 0 -> F)") == Block((), Eq(x, Zero()), Bot())


def test_parse_errors_have_positions():
    with pytest.raises(ParseError) as e:
        parse_formula("x = ")
    assert e.value.pos >= 3
    with pytest.raises(ParseError):
        parse_formula("![x,x](T -> T)")
    with pytest.raises(ParseError):
        parse_formula("x = 3")


def test_sequent():
    s = parse_sequent("T => x = x")
    assert s.ante == Top() and s.cons == Eq(x, x)


def test_free_vars_examples():
    assert free_vars(Eq(x, Succ(y))) == {"x", "y"}
    assert free_vars(Exists("x", Eq(x, y))) == {"y"}
    assert free_vars(Block(("x", "y"), Eq(x, z), Eq(y, w))) == {"z", "w"}


def test_substitute_examples():
    assert substitute(Eq(x, y), {"x": numeral(1)}) == Eq(numeral(1), y)
    with pytest.raises(CaptureViolation):
        substitute(Exists("y", Eq(x, y)), {"x": Succ(y)})
    assert substitute(Block((), Eq(x, x), Bot()), {"x": Zero()}) == Block((), Eq(Zero(), Zero()), Bot())
    # bound occurrences are untouched
    assert substitute(Exists("x", Eq(x, y)), {"x": Zero()}) == Exists("x", Eq(x, y))


def test_simultaneous_substitution():
    assert substitute(Eq(x, y), {"x": y, "y": x}) == Eq(y, x)


def test_rename_bound():
    a = Exists("y", Eq(x, y))
    b = rename_bound(a, "y", "v")
    assert b == Exists("v", Eq(x, Var("v")))
    assert substitute(b, {"x": Succ(y)}) == Exists("v", Eq(Succ(y), Var("v")))


def test_numerals():
    assert numeral(0) == Zero()
    assert numeral(2) == Succ(Succ(Zero()))
    assert numeral_value(numeral(5)) == 5
    assert numeral_value(x) is None


def test_conj_disj_empty():
    assert conj([]) == Top() and disj([]) == Bot()
    assert conj([Eq(x, x)]) == Eq(x, x)


def test_classify_examples():
    assert classify(Eq(x, y)) == {C.Atomic, C.QuantifierFree, C.Positive, C.ExistsOne,
                                  C.ExistsOnePos, C.DeltaZero, C.SigmaOne}
    # SigmaOne is also reported: ExistsOne must stay inside SigmaOne
    neg = classify(Block((), Eq(x, Zero()), Bot()))
    assert neg == {C.QuantifierFree, C.ExistsOne, C.DeltaZero, C.SigmaOne}
    got = classify(Exists("x", And(Lt(x, Add(y, y)), Eq(x, y))))
    assert {C.DeltaZero, C.SigmaOne} <= got


def test_desugar_examples():
    a = desugar_order(Lt(Zero(), numeral(1)))
    assert isinstance(a, Exists) and a.body == Eq(Add(Zero(), Succ(Var(a.var))), numeral(1))
    b = desugar_order(Lt(x, x))
    assert b.var != "x" and b.body == Eq(Add(x, Succ(Var(b.var))), x)
    assert desugar_order(Eq(x, y)) == Eq(x, y)


def _any_formula(rng):
    k = rng.randrange(3)
    if k == 0:
        return rand_qf(rng, ["x", "y"], 3, monus=rng.random() < 0.5)
    if k == 1:
        return rand_delta0(rng, ("x",), 3)
    return rand_positive(rng, ("x", "y"), 3, bounded=rng.random() < 0.5)


@settings(max_examples=1000)
@given(from_seed(_any_formula))
def test_parse_print_roundtrip(a):
    lang = L_C if has_monus(a) else L
    assert parse_formula(str(a), lang) == a


@settings(max_examples=300)
@given(from_seed(_any_formula))
def test_class_inclusions(a):
    c = classify(a)
    if C.Positive in c:
        assert C.ExistsOnePos in c
    if C.ExistsOnePos in c:
        assert C.ExistsOne in c
    if C.ExistsOne in c:
        assert C.SigmaOne in c


@settings(max_examples=300)
@given(from_seed(_any_formula))
def test_desugar_removes_order(a):
    b = desugar_order(a)
    assert not any(isinstance(s, Lt) for s in subformulas(b))
    assert is_positive(b) == is_positive(a)


@settings(max_examples=300)
@given(from_seed(lambda r: rand_qf(r, ["x", "y"], 3)), from_seed(lambda r: rand_qf(r, ["y", "z"], 1)))
def test_free_vars_after_substitution(a, b):
    # terms taken from atoms of b
    t = next((s.l for s in subformulas(b) if isinstance(s, (Eq, Lt))), Zero())
    if "x" not in free_vars(a):
        return
    from bakit.syntax import term_vars
    assert free_vars(substitute(a, {"x": t})) == (free_vars(a) - {"x"}) | term_vars(t)
