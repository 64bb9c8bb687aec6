"""Hand-built BA proofs used as regression fixtures and demo material.

Formulas with ``<`` in the arithmetic lemmas below are written with the
order desugared (``E w. x + Sw = y``) because BA has no order axioms.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from . import ba_derive as d
from .parser import parse_formula
from .proofs_ba import (
    BA, BA_C, BA_U, EBA, BaProof, RuleError, TheoryPack, node, proof_size,
    synth_pos_upper,
)
from .syntax import (
    Add, And, Block, Bot, CaptureViolation, Eq, Exists, Lt, Mul, Or, Succ, Top, Var,
    Zero, free_vars, numeral, substitute,
)


@dataclass(frozen=True)
class BaFixture:
    name: str
    proof: BaProof
    pack: TheoryPack = BA
    # (A, y, u, v) when the conclusion is T => (A[y/u] & A[y/v] -> u = v)
    uniqueness: tuple | None = None


def f(text):
    return parse_formula(text)


V = Var
S = Succ


# -- arithmetic lemmas ---------------------------------------------------------


def zero_add() -> BaProof:
    """T => 0 + u = u"""
    base = node("BA-Ax3", s=Zero())
    g = f("0 + u = u")
    step = d.trans(d.ba_in(g, "BA-Ax4", s=Zero(), t=V("u")), d.cong_succ(d.ax1(g)))
    return d.induction(base, step, "u")


def succ_add() -> BaProof:
    """T => Sy + u = S(y + u)"""
    y = V("y")
    base = d.trans(node("BA-Ax3", s=S(y)), d.sym(d.cong_succ(node("BA-Ax3", s=y))))
    g = f("Sy + u = S(y + u)")
    step = d.eqchain(
        d.ba_in(g, "BA-Ax4", s=S(y), t=V("u")),
        d.cong_succ(d.ax1(g)),
        d.sym(d.cong_succ(d.ba_in(g, "BA-Ax4", s=y, t=V("u")))),
    )
    return d.induction(base, step, "u")


def add_assoc() -> BaProof:
    """T => (a + b) + c = a + (b + c)"""
    a, b, c = V("a"), V("b"), V("c")
    h = "h"
    base = d.trans(
        node("BA-Ax3", s=Add(a, b)),
        d.sym(d.cong(node("BA-Ax3", s=b), Add(a, V(h)), h)),
    )
    g = f("(a + b) + c = a + (b + c)")
    step = d.eqchain(
        d.ba_in(g, "BA-Ax4", s=Add(a, b), t=c),
        d.cong_succ(d.ax1(g)),
        d.sym(d.ba_in(g, "BA-Ax4", s=a, t=Add(b, c))),
        d.sym(d.cong(d.ba_in(g, "BA-Ax4", s=b, t=c), Add(a, V(h)), h)),
    )
    return d.induction(base, step, "c")


def add_cancel_block() -> BaProof:
    """T => ![a,b](y + a = y + b -> a = b), by induction on y"""
    za = d.inst(zero_add(), {"u": V("a")})
    zb = d.inst(zero_add(), {"u": V("b")})
    h0 = f("0 + a = 0 + b")
    base_seq = d.eqchain(d.sym(d.from_top(h0, za)), d.ax1(h0), d.from_top(h0, zb))
    base = d.imp_from(Top(), base_seq, ("a", "b"))

    sa = d.inst(succ_add(), {"u": V("a")})
    sb = d.inst(succ_add(), {"u": V("b")})
    h1 = f("Sy + a = Sy + b")
    e = d.eqchain(d.sym(d.from_top(h1, sa)), d.ax1(h1), d.from_top(h1, sb))
    peel = d.cut(e, node("BA-Ax2", s=f("y + a = y").l, t=f("y + b = y").l))
    k1 = d.imp_from(Top(), peel, ("a", "b"))
    hyp = f("![a,b](y + a = y + b -> a = b)")
    step = d.compose_blocks(d.from_top(hyp, k1), d.ax1(hyp), ("a", "b"))
    return d.induction(base, step, "y")


def add_cancel_open() -> BaProof:
    """T => (y + u = y + v -> u = v)"""
    blk = add_cancel_block()
    b = blk.conclusion.cons
    drop = node("BQC-Ax12", xs=("a", "b"), ys=(), A=b.ante, B=b.cons)
    return d.inst(d.cut(blk, drop), {"a": V("u"), "b": V("v")})


def irreflexive_order() -> BaProof:
    """T => (E z. x + Sz = x -> F), by induction on x"""
    z = V("z")
    h = f("0 + Sz = 0")
    collapse = d.trans(d.sym(d.ba_in(h, "BA-Ax4", s=Zero(), t=z)), d.ax1(h))
    base_seq = d.ex_elim(d.cut(collapse, node("BA-Ax1", s=Add(Zero(), z))), "z")
    base = d.imp_from(Top(), base_seq)

    x = V("x")
    h = f("Sx + Sz = Sx")
    sxz = d.from_top(h, d.inst(succ_add(), {"y": x, "u": z}))
    e = d.eqchain(
        d.cong_succ(d.ba_in(h, "BA-Ax4", s=x, t=z)),
        d.sym(d.cong_succ(sxz)),
        d.sym(d.ba_in(h, "BA-Ax4", s=S(x), t=z)),
        d.ax1(h),
    )
    peel = d.cut(e, node("BA-Ax2", s=Add(x, S(z)), t=x))
    lower = d.ex_elim(d.cut(peel, d.ex_intro(f("x + Sz = x"), "z")), "z")
    k = d.imp_from(Top(), lower)
    hyp = f("(E z. x + Sz = x -> F)")
    step = d.compose_blocks(d.from_top(hyp, k), d.ax1(hyp))
    return d.induction(base, step, "x")


CUTOFF_GRAPH = "(E w. x + Sw = y) & z = 0 | x = y + z"


def cutoff_uniqueness() -> BaProof:
    """T => (A(u) & A(v) -> u = v) for A(z) the graph of cut-off subtraction."""
    a = f(CUTOFF_GRAPH)
    au, av = _sub(a, "z", V("u")), _sub(a, "z", V("v"))
    pu, qu, pv, qv = au.l, au.r, av.l, av.r

    d1, d2 = And(pu, pv), And(qu, pv)
    d3, d4 = And(pu, qv), And(qu, qv)
    both = Or(Or(d1, d2), Or(d3, d4))
    split = d.cut(
        d.dist(au, pv, qv),
        d.cases(
            d.cut(d.dist_r(pu, qu, pv), d.inj_l(Or(d1, d2), Or(d3, d4))),
            d.cut(d.dist_r(pu, qu, qv), d.inj_r(Or(d1, d2), Or(d3, d4))),
        ),
    )
    into = d.imp_from(Top(), split)
    assert into.conclusion.cons.cons == both

    ka = d.imp_from(Top(), d.trans(d.select(d1, "lr"), d.sym(d.select(d1, "rr"))))
    to_sums = d.trans(d.sym(d.select(d4, "l")), d.select(d4, "r"))
    kd = d.compose_blocks(d.imp_from(Top(), to_sums), add_cancel_open())
    kb = _cutoff_clash(d2, "u", "r", "l")
    kc = _cutoff_clash(d3, "v", "l", "r")
    out = d.split_blocks(d.split_blocks(ka, kb), d.split_blocks(kc, kd))
    return d.compose_blocks(into, out)


def _sub(a, x, t):
    return substitute(a, {x: t})


def _cutoff_clash(c, r, pside, qside):
    """T => (c -> u = v) where c has x = y + r on side ``qside`` and
    E w. x + Sw = y inside side ``pside``."""
    x, y, w, rv = V("x"), V("y"), V("w"), V(r)
    goal = Eq(V("u"), V("v"))
    q = Eq(x, Add(y, rv))
    lt = Eq(Add(x, S(w)), y)
    b_w = And(q, lt)
    gather = d.cut(d.pair(d.select(c, qside), d.select(c, pside + "l")), d.pull_exists(q, "w", lt))
    k0 = d.imp_from(Top(), gather)

    # y + (r + Sw) = y + 0 from the two equations
    asc = d.inst(add_assoc(), {"a": y, "b": rv, "c": S(w)})
    e = d.eqchain(
        d.sym(d.from_top(b_w, asc)),
        d.cong(d.sym(d.select(b_w, "l")), Add(V("h"), S(w)), "h"),
        d.select(b_w, "r"),
        d.sym(d.ba_in(b_w, "BA-Ax3", s=y)),
    )
    m1 = d.imp_from(Top(), e, ("w",))

    blk = add_cancel_block()
    inner = blk.conclusion.cons
    widen = node("BQC-Ax12", xs=("a", "b"), ys=("a", "b", "w"), A=inner.ante, B=inner.cons)
    plug = node("BQC-Ax11", xs=("a", "b", "w"), A=inner.ante, B=inner.cons,
                ts=(Add(rv, S(w)), Zero(), w))
    narrowed = plug.conclusion.cons
    shrink = node("BQC-Ax12", xs=("a", "b", "w"), ys=("w",), A=narrowed.ante, B=narrowed.cons)
    m2 = d.chain(blk, widen, plug, shrink)

    h = Eq(Add(rv, S(w)), Zero())
    absurd = d.chain(
        d.trans(d.sym(d.ba_in(h, "BA-Ax4", s=rv, t=w)), d.ax1(h)),
        node("BA-Ax1", s=Add(rv, w)),
        d.bot(goal),
    )
    m3 = d.imp_from(Top(), absurd, ("w",))
    allw = d.compose_blocks(d.compose_blocks(m1, m2, ("w",)), m3, ("w",))
    k1 = d.cut(allw, node("BQC-Ax13", ys=(), x="w", A=goal, B=b_w))
    return d.compose_blocks(k0, k1)


# -- numerals ------------------------------------------------------------------


def add_numerals(m: int, n: int) -> BaProof:
    """T => m + n = (m+n) on numerals"""
    if n == 0:
        return node("BA-Ax3", s=numeral(m))
    return d.trans(node("BA-Ax4", s=numeral(m), t=numeral(n - 1)), d.cong_succ(add_numerals(m, n - 1)))


def mul_numerals(m: int, n: int) -> BaProof:
    if n == 0:
        return node("BA-Ax5", s=numeral(m))
    h = "h"
    prev = d.cong(mul_numerals(m, n - 1), Add(V(h), numeral(m)), h)
    return d.eqchain(node("BA-Ax6", s=numeral(m), t=numeral(n - 1)), prev, add_numerals(m * (n - 1), m))


# -- small structural fixtures ---------------------------------------------------


def _fixtures():
    x = V("x")
    out = []

    def add(name, p, pack=BA, uniq=None):
        out.append(BaFixture(name, p, pack, uniq))

    add("refl", node("BQC-Ax6", t=x))
    add("zero_add", zero_add())
    add("succ_add", succ_add())
    add("add_assoc", add_assoc())
    add("add_cancel_block", add_cancel_block())
    add("add_cancel_open", add_cancel_open())
    add("irreflexive_order", irreflexive_order())
    a = f(CUTOFF_GRAPH)
    add("cutoff_uniqueness", cutoff_uniqueness(), uniq=(a, "z", "u", "v"))

    add("eq_sym", d.sym(d.ax1(f("x = y"))))
    g = f("x = y & y = z")
    add("eq_trans", d.trans(d.select(g, "l"), d.select(g, "r")))
    add("conj_comm", d.comm(f("x = 0"), f("E y. y = x")))
    add("dist_right", d.dist_r(f("x = 0"), f("x < y"), f("y = y")))
    add("pull_exists", d.pull_exists(f("x = 0"), "y", f("y = Sx")))
    add("numeral_add", add_numerals(2, 2))
    add("numeral_mul", mul_numerals(2, 2))
    half = d.cut(d.sym(add_numerals(1, 1)), d.ex_intro(f("SS0 = y + y"), "y", numeral(1)))
    add("exists_half", half)

    base = d.cut(d.refl(Zero()), d.inj_l(f("0 = 0"), f("E y. 0 = Sy")))
    hyp = f("x = 0 | E y. x = Sy")
    step = d.from_top(hyp, d.chain(d.refl(S(x)), d.ex_intro(f("Sx = Sy"), "y", x),
                                   d.inj_r(f("Sx = 0"), f("E y. Sx = Sy"))))
    add("zero_or_succ", d.induction(base, step, "x"))

    za = d.inst(zero_add(), {"u": x})
    k1 = d.imp_from(Top(), d.ax1(f("x = 0")), ("x",))
    k2 = d.imp_from(Top(), d.from_top(f("x = 0"), za), ("x",))
    both = d.cut(d.pair(k1, k2), node("BQC-Ax9", xs=("x",), A=f("x = 0"), B=f("x = 0"), C=f("0 + x = x")))
    add("block_conj", both)
    add("block_inst", d.cut(k2, node("BQC-Ax11", xs=("x",), A=f("x = 0"), B=f("0 + x = x"), ts=(numeral(1),))))

    g = f("0 + x = x")
    lstep = d.trans(d.ba_in(g, "BA-Ax4", s=Zero(), t=x), d.cong_succ(d.ax1(g)))
    ind = node("BA-Ax7", ys=(), x="x", A=g)
    add("induction_axiom", d.cut(d.imp_from(Top(), lstep, ("x",)), ind))

    h = f("x + Sz = 0")
    absurd = d.cut(d.trans(d.sym(d.ba_in(h, "BA-Ax4", s=x, t=V("z"))), d.ax1(h)), node("BA-Ax1", s=f("x + z = 0").l))
    blk = d.imp_from(Top(), absurd, ("z",))
    add("not_below_zero", d.cut(blk, node("BQC-Ax13", ys=(), x="z", A=Bot(), B=h)))

    b = f("y = Sx & ![w](w = w -> w = w)")
    bu, bv = _sub(b, "y", V("u")), _sub(b, "y", V("v"))
    g = And(bu, bv)
    add("unique_with_block",
        d.imp_from(Top(), d.trans(d.select(g, "ll"), d.sym(d.select(g, "rl")))),
        uniq=(b, "y", "u", "v"))
    add("synth_upper", synth_pos_upper(f("E x. (x = y & ![z](z < x -> E w. w = z)) | (T -> y = 0)")))

    cu = node("Theory(U)", pack=BA_U)
    add("cancel_zero", d.inst(cu, {"z": Zero()}), BA_U)
    mz = d.chain(d.refl(Zero()), d.inj_r(f("0 < 0"), f("0 = 0")), node("BAc-MonusLe", pack=BA_C, s=Zero(), t=Zero()))
    add("monus_zero", mz, BA_C)
    eba = node("Theory(EBA)", pack=EBA)
    add("eba_collapse", d.cut(d.proj_r(Top(), eba.conclusion.ante), eba), EBA)
    return out


_CACHE = None


def ba_fixtures():
    global _CACHE
    if _CACHE is None:
        _CACHE = _fixtures()
    return list(_CACHE)


def fixture(name) -> BaFixture:
    for fx in ba_fixtures():
        if fx.name == name:
            return fx
    raise KeyError(name)


# -- random proofs -------------------------------------------------------------


_VARS = ("x", "y", "z")


def _rterm(rng, depth=2):
    r = rng.random()
    if depth == 0 or r < 0.35:
        return V(rng.choice(_VARS)) if rng.random() < 0.7 else Zero()
    if r < 0.6:
        return S(_rterm(rng, depth - 1))
    if r < 0.85:
        return Add(_rterm(rng, depth - 1), _rterm(rng, depth - 1))
    return Mul(_rterm(rng, depth - 1), _rterm(rng, depth - 1))


def _ratom(rng):
    r = rng.random()
    if r < 0.1:
        return Top()
    if r < 0.15:
        return Bot()
    s, t = _rterm(rng), _rterm(rng)
    return Eq(s, t) if r < 0.8 else Lt(s, t)


def _rformula(rng, depth=2):
    r = rng.random()
    if depth == 0 or r < 0.35:
        return _ratom(rng)
    if r < 0.55:
        return And(_rformula(rng, depth - 1), _rformula(rng, depth - 1))
    if r < 0.7:
        return Or(_rformula(rng, depth - 1), _rformula(rng, depth - 1))
    if r < 0.82:
        return Exists(rng.choice(_VARS), _rformula(rng, depth - 1))
    vs = tuple(sorted(rng.sample(_VARS, rng.randint(0, 2))))
    return Block(vs, _rformula(rng, depth - 1), _rformula(rng, depth - 1))


def _raxiom(rng):
    a, b, c = (_rformula(rng) for _ in range(3))
    x = rng.choice(_VARS)
    xs = tuple(sorted(rng.sample(_VARS, rng.randint(0, 2))))
    choice = rng.randrange(16)
    s, t = _rterm(rng, 1), _rterm(rng, 1)
    if choice == 0:
        return node("BQC-Ax1", A=a)
    if choice == 1:
        return node("BQC-Ax2", A=a)
    if choice == 2:
        return node("BQC-Ax3", A=a)
    if choice == 3:
        return node("BQC-Ax4", A=a, B=b, C=c)
    if choice == 4:
        return node("BQC-Ax5", A=a, x=x, B=b)
    if choice == 5:
        return node("BQC-Ax6", t=t)
    if choice == 6:
        return node("BQC-Ax7", x=x, y=rng.choice(_VARS), A=_ratom(rng))
    if choice == 7:
        return node(rng.choice(["BQC-Ax8", "BQC-Ax9", "BQC-Ax10"]), xs=xs, A=a, B=b, C=c)
    if choice == 8:
        return node("BQC-Ax11", xs=xs, A=a, B=b, ts=tuple(_rterm(rng, 1) for _ in xs))
    if choice == 9:
        return node("BQC-Ax12", xs=xs, ys=tuple(sorted(rng.sample(_VARS, rng.randint(0, 2)))), A=a, B=b)
    if choice == 10:
        ys = tuple(v for v in xs if v != x)
        return node("BQC-Ax13", ys=ys, x=x, A=a, B=b)
    if choice == 11:
        return node("BA-Ax7", ys=tuple(v for v in xs if v != x), x=x, A=a)
    if choice == 12:
        return node(rng.choice(["BA-Ax1", "BA-Ax3", "BA-Ax5"]), s=s)
    return node(rng.choice(["BA-Ax2", "BA-Ax4", "BA-Ax6"]), s=s, t=t)


def _rextend(rng, p):
    a, c = p.conclusion.ante, p.conclusion.cons
    choice = rng.randrange(12)
    if choice == 10:
        return d.cases(p, d.bot(c))
    if choice == 11:
        for x in rng.sample(_VARS, len(_VARS)):
            if substitute(a, {x: S(V(x))}) == c:
                return node("BA-IndRule", [p], A=a, x=x)
    if choice == 0:
        return d.cut(p, d.top(c))
    if choice == 1:
        return d.pair(p, d.from_top(a, d.refl(_rterm(rng, 1))) if not isinstance(a, Top) else d.refl(_rterm(rng, 1)))
    if choice == 2 and isinstance(c, And):
        return rng.choice([d.fst, d.snd])(p)
    if choice == 3 and isinstance(a, And):
        fv = free_vars(a.l)
        xs = tuple(v for v in _VARS if v not in fv and rng.random() < 0.5)
        return d.imp_intro(p, xs)
    if choice == 4:
        x = rng.choice(_VARS)
        return d.ex_elim(p, x)
    if choice == 5:
        return d.inst(p, {rng.choice(_VARS): _rterm(rng, 1)})
    if choice == 6:
        other = _rformula(rng, 1)
        return d.cut(p, rng.choice([d.inj_l(c, other), d.inj_r(other, c)]))
    if choice == 7:
        return d.cut(p, d.ex_intro(c, rng.choice(_VARS)))
    if choice == 8:
        return d.weaken_r(p, _rformula(rng, 1))
    return d.cut(d.ax1(a), p)


def random_proof(rng: random.Random, max_nodes: int = 20, min_nodes: int = 2) -> BaProof:
    """A random BA proof with at most ``max_nodes`` nodes."""
    while True:
        try:
            p = _raxiom(rng)
        except (RuleError, CaptureViolation, ValueError):
            continue
        for _ in range(40):
            try:
                q = _rextend(rng, p)
            except (RuleError, CaptureViolation, ValueError):
                continue
            if proof_size(q) > max_nodes:
                break
            p = q
            if proof_size(p) >= min_nodes and rng.random() < 0.15:
                break
        if proof_size(p) >= min_nodes:
            return p
