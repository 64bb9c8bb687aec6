import itertools

import pytest

from bakit.oracle import NatOracle, Unbounded, eval_term_nat, truth_nat
from bakit.parser import parse_formula as F
from bakit.parser import parse_term


def test_terms():
    assert eval_term_nat(parse_term("SS0 * x + S0"), {"x": 3}) == 7
    assert eval_term_nat(parse_term("x -. SSS0"), {"x": 1}) == 0


def test_bounded_quantifiers_match_python():
    a = F("![u](u < x -> E v. (v < x & u + v = x))")
    for n in range(8):
        assert truth_nat(a, {"x": n}) == all(any(u + v == n for v in range(n)) for u in range(n))


def test_unbounded_needs_limit():
    a = F("E u. x = u + u")
    with pytest.raises(Unbounded):
        truth_nat(a, {"x": 4})
    assert truth_nat(a, {"x": 4}, search_limit=4)
    assert not truth_nat(a, {"x": 5}, search_limit=5)


def test_exists_upto_is_lexicographic():
    o = NatOracle()
    assert o.exists_upto(["u", "v"], F("u + v = SS0"), {}, 3) == (0, 2)
    assert o.exists_upto(["u"], F("u = SSSS0"), {}, 3) is None


def test_implication_and_negation():
    a = F("(x = 0 -> y = 0)")
    for x, y in itertools.product(range(3), repeat=2):
        assert truth_nat(a, {"x": x, "y": y}) == (x != 0 or y == 0)
