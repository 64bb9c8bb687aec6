"""Bundled LK proofs with detours through cuts outside the positive class,
and a generator of random small proofs of the same shape.

Naming convention: bound variables are u, v, w; free variables are x, y, z
and the generated ``kN``.  Keeping the two disjoint means substituting a
term for an eigenvariable can never be captured.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from . import lk_derive as d
from .parser import parse_formula
from .proofs_lk import LkProof, LkRuleError, lk_node
from .syntax import Add, Eq, Succ, Var, Zero, free_vars, numeral, substitute


def F(text):
    return parse_formula(text)


@dataclass(frozen=True)
class LkFixture:
    name: str
    proof: LkProof
    note: str = ""


def _plus_succ_two():
    """S0+0=S0 => S0+S0=SS0"""
    a = lk_node("+-S", s=numeral(1), t=Zero())                  # => S0+S0 = S(S0+0)
    b = lk_node("S-fnc", s=Add(numeral(1), Zero()), t=numeral(1))  # S0+0=S0 => S(S0+0)=SS0
    return d.eq_trans(a, b)


def neg_detour():
    """x=x => x=x through a cut on ~(x=x)."""
    a = F("x = x")
    left = d.neg_r(d.ax(a), a)                  # => ~x=x, x=x
    right = d.neg_l(d.ax(a), a)                 # x=x, ~x=x =>
    return d.cut(left, right, F("~(x = x)"))


def imp_detour():
    """=> S0+S0 = SS0 through a cut on an implication."""
    b, c = F("S0 + 0 = S0"), F("S0 + S0 = SS0")
    left = d.imp_r(_plus_succ_two(), b, c)
    right = d.imp_l(lk_node("+-0", s=numeral(1)), d.ax(c), b, c)
    return d.cut(left, right, F("(S0 + 0 = S0 ~> S0 + S0 = SS0)"))


def forall_detour():
    """=> S0+0 = S0 through a cut on A x. x+0=x."""
    body = F("u + 0 = u")
    left = d.all_r(lk_node("+-0", s=Var("y")), body, "u", "y")
    right = d.all_l(d.ax(F("S0 + 0 = S0")), body, "u", numeral(1))
    return d.cut(left, right, F("A u. u + 0 = u"))


def forall_contraction():
    """The universal cut formula is used twice on the right, then contracted."""
    body = F("u + 0 = u")
    allf = F("A u. u + 0 = u")
    left = d.all_r(lk_node("+-0", s=Var("y")), body, "u", "y")
    r1 = d.all_l(d.ax(F("S0 + 0 = S0")), body, "u", numeral(1))
    r2 = d.all_l(d.ax(F("0 + 0 = 0")), body, "u", Zero())
    right = d.and_r(r1, r2, F("S0 + 0 = S0"), F("0 + 0 = 0"))
    right = d.contract_l(right, allf)
    return d.cut(left, right, allf)


def and_neg_component():
    """=> x=x through a cut on x=x & ~S0=0."""
    a, n = F("x = x"), F("S0 = 0")
    nn = d.neg_r(lk_node("S-pos", s=Zero()), n)
    left = d.and_r(lk_node("=-ref", s=Var("x")), nn, a, F("~(S0 = 0)"))
    right = d.and_l(d.ax(a), a, F("~(S0 = 0)"), "L")
    return d.cut(left, right, F("x = x & ~(S0 = 0)"))


def or_neg_disjunct():
    """=> 0=0 through a cut on ~S0=0 | 0=0 (left disjunct chosen)."""
    n, z = F("~(S0 = 0)"), F("0 = 0")
    nn = d.neg_r(lk_node("S-pos", s=Zero()), F("S0 = 0"))
    left = d.or_r(nn, n, z, "L")
    r1 = d.weaken_l(lk_node("=-ref", s=Zero()), n)
    right = d.contract_r(d.or_l(r1, d.ax(z), n, z), z)
    return d.cut(left, right, F("~(S0 = 0) | 0 = 0"))


def exists_nonpositive_body():
    """=> 0=0 through a cut on E u. ~Su=0; the reduction substitutes 0 for the eigenvariable."""
    body = F("~(S u = 0)")
    inst0 = d.neg_r(lk_node("S-pos", s=Zero()), F("S0 = 0"))
    left = d.ex_r(inst0, body, "u", Zero())
    r = d.weaken_l(lk_node("=-ref", s=Zero()), F("~(S y = 0)"))
    right = d.ex_l(r, body, "u", "y")
    return d.cut(left, right, F("E u. ~(S u = 0)"))


def _zero_add_ind(t):
    """0+0=0 => 0+t=t by induction on 0+x=x."""
    a = F("0 + x = x")
    s1 = lk_node("+-S", s=Zero(), t=Var("x"))                   # => 0+Sx = S(0+x)
    s2 = lk_node("S-fnc", s=Add(Zero(), Var("x")), t=Var("x"))  # 0+x=x => S(0+x)=Sx
    step = d.eq_trans(s1, s2)                                   # 0+x=x => 0+Sx=Sx
    return d.ind(step, a, "x", t)


def ind_imp_detour():
    """=> 0+z=z: an induction proof packed into an implication and cut."""
    b, c = F("0 + 0 = 0"), F("0 + z = z")
    left = d.imp_r(_zero_add_ind(Var("z")), b, c)
    right = d.imp_l(lk_node("+-0", s=Zero()), d.ax(c), b, c)
    return d.cut(left, right, F("(0 + 0 = 0 ~> 0 + z = z)"))


def positive_only():
    """Only positive cuts; cut elimination must leave it alone."""
    e = F("E u. u + 0 = S0")
    p = lk_node("+-0", s=numeral(1))
    p = d.ex_r(p, F("u + 0 = S0"), "u", numeral(1))
    q = d.ex_l(d.ex_r(d.ax(F("y + 0 = S0")), F("u + 0 = S0"), "u", Var("y")),
               F("u + 0 = S0"), "u", "y")
    p = d.cut(p, q, e)
    base = d.cut(lk_node("+-0", s=Zero()), _zero_add_ind(Var("z")), F("0 + 0 = 0"))
    return d.and_r(p, base, e, F("0 + z = z"))


def nested_imp_neg():
    """=> 0=0 through a cut on ~S0=0 ~> 0=0."""
    n, z = F("~(S0 = 0)"), F("0 = 0")
    left = d.imp_r(d.weaken_l(lk_node("=-ref", s=Zero()), n), n, z)
    nn = d.neg_r(lk_node("S-pos", s=Zero()), F("S0 = 0"))
    right = d.imp_l(nn, d.ax(z), n, z)
    return d.cut(left, right, F("(~(S0 = 0) ~> 0 = 0)"))


def right_contraction():
    """The cut formula is contracted in the succedent of the left proof."""
    n, s = F("~(S0 = 0)"), F("S0 = 0")
    p = d.weaken_l(lk_node("S-pos", s=Zero()), s)        # S0=0, S0=0 =>
    p = d.neg_r(d.neg_r(p, s), s)                        # => ~S0=0, ~S0=0
    left = d.contract_r(p, n)
    r = d.weaken_r(lk_node("=-ref", s=Zero()), s)         # => S0=0, 0=0
    right = d.neg_l(r, s)                                # ~S0=0 => 0=0
    return d.cut(left, right, n)


def ind_context():
    """The cut formula travels through the context of an induction."""
    n, s = F("~(S0 = 0)"), F("S0 = 0")
    a = F("0 + x = x")
    s1 = lk_node("+-S", s=Zero(), t=Var("x"))
    s2 = lk_node("S-fnc", s=Add(Zero(), Var("x")), t=Var("x"))
    step = d.weaken_r(d.eq_trans(s1, s2), n)             # 0+x=x => ~S0=0, 0+Sx=Sx
    left = d.to_front(d.ind(step, a, "x", Var("z")), n)  # 0+0=0 => ~S0=0, 0+z=z
    right = d.neg_l(d.ax(s), s)                          # S0=0, ~S0=0 =>
    return d.cut(left, right, n)


def exists_contraction():
    """E u. ~Su=0 is used twice on the right and contracted there."""
    e, body = F("E u. ~(S u = 0)"), F("~(S u = 0)")
    inst0 = d.neg_r(lk_node("S-pos", s=Zero()), F("S0 = 0"))
    left = d.ex_r(inst0, body, "u", Zero())
    r = d.weaken_l(lk_node("=-ref", s=Zero()), F("~(S y = 0)"))
    r = d.ex_l(r, body, "u", "y")
    r = d.weaken_l(r, e)
    right = d.contract_l(r, e)
    return d.cut(left, right, e)


def double_detour():
    """Two stacked offending cuts: an implication detour whose left proof
    itself contains a universal detour."""
    b, c = F("0 + 0 = 0"), F("S0 + 0 = S0")
    inner = d.weaken_l(forall_detour(), b)               # 0+0=0 => S0+0=S0
    left = d.imp_r(inner, b, c)
    right = d.imp_l(lk_node("+-0", s=Zero()), d.ax(c), b, c)
    return d.cut(left, right, F("(0 + 0 = 0 ~> S0 + 0 = S0)"))


_BUILDERS = (
    neg_detour, imp_detour, forall_detour, forall_contraction, and_neg_component,
    or_neg_disjunct, exists_nonpositive_body, ind_imp_detour, positive_only,
    nested_imp_neg, right_contraction, ind_context, exists_contraction, double_detour,
)


@lru_cache(maxsize=None)
def lk_fixtures():
    return tuple(LkFixture(f.__name__, f(), (f.__doc__ or "").split("\n")[0]) for f in _BUILDERS)


def lk_fixture(name) -> LkProof:
    for fx in lk_fixtures():
        if fx.name == name:
            return fx.proof
    raise KeyError(name)


# -- random proofs ---------------------------------------------------------

_TERMS = (Zero(), numeral(1), Var("x"), Var("y"), Succ(Var("x")), Add(Var("x"), Zero()))


def _rterm(rng):
    return rng.choice(_TERMS)


def _raxiom(rng) -> LkProof:
    k = rng.randrange(8)
    s, t = _rterm(rng), _rterm(rng)
    if k == 7:
        return _zero_add_ind(s)
    if k == 0:
        return d.ax(Eq(s, t))
    if k == 1:
        return lk_node("=-ref", s=s)
    if k == 2:
        return lk_node("+-0", s=s)
    if k == 3:
        return lk_node("+-S", s=s, t=t)
    if k == 4:
        return lk_node("S-fnc", s=s, t=t)
    if k == 5:
        return lk_node("S-pos", s=s)
    return lk_node("S-inj", s=s, t=t)


def _rpositive(rng, steps) -> LkProof:
    """A random cut-free proof using only positive rules."""
    p = _raxiom(rng)
    for _ in range(steps):
        k = rng.randrange(8)
        try:
            if k == 0 and p.cons:
                a = rng.choice(p.cons)
                p = d.or_r(p, a, Eq(_rterm(rng), _rterm(rng)), rng.choice("LR"))
            elif k == 1 and p.ante:
                a = rng.choice(p.ante)
                p = d.and_l(p, a, Eq(_rterm(rng), _rterm(rng)), rng.choice("LR"))
            elif k == 2 and p.cons:
                q = _raxiom(rng)
                if q.cons:
                    p = d.and_r(p, q, rng.choice(p.cons), q.cons[0])
            elif k == 3 and p.cons and isinstance(p.cons[0], Eq):
                a = p.cons[0]
                p = d.ex_r(p, Eq(Var("u"), a.r), "u", a.l)
            elif k == 4:
                p = d.weaken_l(p, Eq(_rterm(rng), _rterm(rng)))
            elif k == 5 and p.ante:
                b = Eq(_rterm(rng), _rterm(rng))
                q = d.weaken_l(_raxiom(rng), b)
                p = d.or_l(p, q, rng.choice(p.ante), b)
            elif k == 6 and p.ante:
                p = _rex_l(rng, p)
            elif k == 7 and p.cons and p.ante:
                # a positive cut between two random proofs sharing a formula
                a = rng.choice(p.cons)
                q = d.weaken_l(_raxiom(rng), a)
                p = d.cut(p, q, a)
        except (LkRuleError, ValueError):
            pass
    return p


def _rex_l(rng, p):
    """Abstract a free variable of an antecedent formula into E u."""
    a = rng.choice(p.ante)
    ctx = [b for b in p.ante if b is not a] + list(p.cons)
    for v in sorted(free_vars(a)):
        if all(v not in free_vars(b) for b in ctx):
            body = substitute(a, {v: Var("u")})
            return d.ex_l(p, body, "u", v)
    return p


def _detour(rng, p: LkProof) -> LkProof:
    """Route ``p`` through a cut on a non-positive formula; same end-sequent."""
    ante, cons = p.ante, p.cons
    kinds = []
    if cons:
        kinds += ["imp", "forall", "and_neg"]
    if ante:
        kinds += ["neg"]
    if ante and cons:
        kinds += ["imp_ante"]
    kinds += ["weak"]
    k = rng.choice(kinds)
    if k == "imp" or k == "imp_ante":
        b = rng.choice(cons)
        c = rng.choice(ante) if k == "imp_ante" else F("0 = 0")
        src = p if k == "imp_ante" else d.weaken_l(p, c)
        left = d.imp_r(src, c, b)
        c_proof = d.ax(c) if k == "imp_ante" else lk_node("=-ref", s=Zero())
        right = d.imp_l(c_proof, d.ax(b), c, b)
        if rng.random() < 0.3:
            right = d.contract_l(d.weaken_l(right, left.cons[0]), left.cons[0])
        out = d.cut(left, right, left.cons[0])
    elif k == "forall":
        b = rng.choice(cons)
        y = d.fresh_name(d.proof_vars(p) | {"u"})
        left = d.all_r(p, b, "u", y)
        right = d.all_l(d.ax(b), b, "u", Zero())
        out = d.cut(left, right, left.cons[0])
    elif k == "and_neg":
        b = rng.choice(cons)
        nb = d.neg_r(lk_node("⊥⇒"), F("F"))
        left = d.and_r(p, nb, b, F("~F"))
        right = d.and_l(d.ax(b), b, F("~F"), "L")
        out = d.cut(left, right, left.cons[0])
    elif k == "neg":
        b = rng.choice(ante)
        left = d.neg_r(p, b)
        right = d.neg_l(d.ax(b), b)
        if rng.random() < 0.3:
            right = d.contract_l(d.weaken_l(right, left.cons[0]), left.cons[0])
        out = d.cut(left, right, left.cons[0])
    else:
        n = rng.choice([F("~(S0 = 0)"), F("A u. u = u"), F("(0 = 0 ~> S0 = 0)")])
        left = d.weaken_r(p, n)
        right = d.weaken_l(_raxiom(rng), n)
        out = d.cut(left, right, n)
        return out
    return d.adjust(out, ante, cons)


def random_lk_proof(rng: random.Random, max_nodes: int = 25) -> LkProof:
    """A checked proof with an all-positive end-sequent and at least one
    offending cut, at most ``max_nodes`` nodes."""
    while True:
        p = _rpositive(rng, rng.randrange(0, 4))
        for _ in range(rng.choice((1, 1, 2))):
            p = _detour(rng, p)
        if sum(1 for _ in _iter(p)) <= max_nodes:
            return p


def _iter(p):
    stack = [p]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(n.premises)


__all__ = ["F", "LkFixture", "lk_fixture", "lk_fixtures", "random_lk_proof"]
