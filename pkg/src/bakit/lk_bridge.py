"""Translation of positive LK proofs into BA proofs.

An LK sequent ``Δ => Δ'`` is read as the BA sequent ``⋀Δ => ⋁Δ'`` with
right-nested conjunction and disjunction (empty lists give T and F).  Every
LK rule is simulated by a fixed BA derivation; none of them needs a block,
so the output of a positive LK proof is itself a proof in the positive
fragment of BA.
"""
from __future__ import annotations

from . import ba_derive as b
from .classes import is_positive
from .proofs_ba import BA, BaProof, node, with_gamma
from .proofs_lk import PLAIN, LkProof, LkTheory, iter_nodes
from .syntax import (
    Add, And, Bot, Eq, Exists, Lt, Mul, Or, Sequent, Top, Var, conj, disj, fresh_var,
    substitute, term_vars,
)

FORBIDDEN_LK_RULES = frozenset({"¬⇒", "⇒¬", "→⇒", "⇒→", "∀⇒", "⇒∀"})


class BridgeError(ValueError):
    pass


def lk_sequent_to_ba(ante, cons) -> Sequent:
    return Sequent(conj(ante), disj(cons))


# -- locating formulas inside conjunctions and disjunctions ---------------------


def _path(tree, f, kind):
    """Steps ("l"/"r") from ``tree`` down to ``f`` through ``kind`` nodes."""
    if tree == f:
        return ""
    if isinstance(tree, kind):
        for step, sub in (("l", tree.l), ("r", tree.r)):
            p = _path(sub, f, kind)
            if p is not None:
                return step + p
    return None


def provide(g, f) -> BaProof:
    """g => f for f a conjunct (at any depth) of g, or f = T."""
    p = _path(g, f, And)
    if p is None:
        if isinstance(f, Top):
            return b.top(g)
        raise BridgeError(f"{f} is not a conjunct of {g}")
    return b.select(g, p)


def absorb(f, d) -> BaProof:
    """f => d for f a disjunct (at any depth) of d, or f = F."""
    p = _path(d, f, Or)
    if p is None:
        if isinstance(f, Bot):
            return b.bot(d)
        raise BridgeError(f"{f} is not a disjunct of {d}")
    out = b.ax1(f)
    cur = d
    steps = []
    for step in p:
        steps.append((cur, step))
        cur = cur.l if step == "l" else cur.r
    for node_f, step in reversed(steps):
        inj = b.inj_l(node_f.l, node_f.r) if step == "l" else b.inj_r(node_f.l, node_f.r)
        out = b.cut(out, inj)
    return out


def conj_to(g, fs, extra=None) -> BaProof:
    """g => conj(fs); ``extra`` maps a formula to a ready proof g => f."""
    fs = list(fs)
    extra = extra or {}

    def one(f):
        return extra[f] if f in extra else provide(g, f)

    if not fs:
        return b.top(g)
    out = one(fs[-1])
    for f in reversed(fs[:-1]):
        out = b.pair(one(f), out)
    return out


def disj_from(fs, d, extra=None) -> BaProof:
    """disj(fs) => d; ``extra`` maps a formula to a ready proof f => d."""
    fs = list(fs)
    extra = extra or {}

    def one(f):
        return extra[f] if f in extra else absorb(f, d)

    if not fs:
        return b.bot(d)
    out = one(fs[-1])
    for f in reversed(fs[:-1]):
        out = b.cases(one(f), out)
    return out


def and_cases(a, fs, each) -> BaProof:
    """a & disj(fs) => T given ``each(e)``: a & e => T for every e in fs."""
    fs = list(fs)
    if len(fs) == 1:
        return each(fs[0])
    if not fs:
        raise BridgeError("empty disjunction")
    rest = disj(fs[1:])
    return b.cut(b.dist(a, fs[0], rest),
                 b.cases(each(fs[0]), and_cases(a, fs[1:], each)))


# -- rule simulation ----------------------------------------------------------------


class _Bridge:
    def __init__(self, theory: LkTheory):
        self.theory = theory
        seqs = [lk_sequent_to_ba(a, c) for _, (a, c) in theory.axioms]
        self.labels = {lab: f"G{i}" for i, (lab, _) in enumerate(theory.axioms)}
        self.pack = with_gamma(seqs, f"BA+{theory.name}") if seqs else BA

    def run(self, p: LkProof) -> BaProof:
        prem = [self.run(q) for q in p.premises]
        out = self.rule(p, prem)
        want = lk_sequent_to_ba(p.ante, p.cons)
        if out.conclusion != want:
            raise AssertionError(f"{p.rule}: produced {out.conclusion}, wanted {want}")
        return out

    def rule(self, p: LkProof, prem) -> BaProof:
        r, bind = p.rule, p.bind
        g, dd = conj(p.ante), disj(p.cons)
        if r in FORBIDDEN_LK_RULES:
            raise BridgeError(f"rule {r} has no positive translation")
        if r == "Ax":
            return b.ax1(bind["A"])
        if r == "⇒⊤":
            return b.ax1(Top())
        if r == "⊥⇒":
            return b.ax1(Bot())
        if r.startswith("Theory("):
            label = self.labels[r[len("Theory("):-1]]
            return node(f"Theory({label})", pack=self.pack)
        if r in _AXIOMS:
            return _AXIOMS[r](g, bind)
        q = p.premises
        if r in ("Ex⇒", "⇒Ex", "W⇒", "⇒W", "C⇒", "⇒C", "∧⇒L", "∧⇒R", "⇒∨L", "⇒∨R"):
            return b.chain(conj_to(g, q[0].ante), prem[0], disj_from(q[0].cons, dd))
        if r == "⇒∃":
            a, x, t = bind["A"], bind["x"], bind["t"]
            act = substitute(a, {x: t})
            extra = {act: b.cut(ex_intro_safe(a, x, t), absorb(Exists(x, a), dd))}
            return b.chain(conj_to(g, q[0].ante), prem[0], disj_from(q[0].cons, dd, extra))
        if r == "⇒∧":
            return self._and_r(p, prem, g, dd)
        if r == "∨⇒":
            return self._or_l(p, prem, g, dd)
        if r == "Cut":
            return self._cut(p, prem, g, dd)
        if r == "∃⇒":
            return self._ex_l(p, prem, g, dd)
        if r == "ind":
            return self._ind(p, prem, g, dd)
        raise BridgeError(f"unsupported rule {r}")

    def _and_r(self, p, prem, g, dd):
        (l, rr), (pl, pr) = p.premises, prem
        bl, cr = l.cons[0], rr.cons[0]
        left = b.cut(conj_to(g, l.ante), pl)
        right = b.cut(conj_to(g, rr.ante), pr)
        d1, d2 = disj(l.cons), disj(rr.cons)

        def base(e1, e2):
            if e1 == bl and e2 == cr:
                return b.cut(b.ax1(And(e1, e2)), absorb(And(bl, cr), dd))
            if e1 != bl:
                return b.cut(b.proj_l(e1, e2), absorb(e1, dd))
            return b.cut(b.proj_r(e1, e2), absorb(e2, dd))

        def outer(e1):
            # d2 & e1 => dd
            inner = and_cases(e1, rr.cons, lambda e2: base(e1, e2))
            return b.cut(b.comm(d2, e1), inner)

        body = b.cut(b.comm(d1, d2), and_cases(d2, l.cons, outer))
        return b.cut(b.pair(left, right), body)

    def _or_l(self, p, prem, g, dd):
        (l, rr), (pl, pr) = p.premises, prem
        o = p.ante[-1]
        bl, cr = l.ante[-1], rr.ante[-1]
        split = b.cut(b.pair(provide(g, o), b.ax1(g)), b.dist_r(bl, cr, g))
        c1 = b.chain(conj_to(And(bl, g), l.ante), pl, disj_from(l.cons, dd))
        c2 = b.chain(conj_to(And(cr, g), rr.ante), pr, disj_from(rr.cons, dd))
        return b.cut(split, b.cases(c1, c2))

    def _cut(self, p, prem, g, dd):
        (l, rr), (pl, pr) = p.premises, prem
        a = p.bind["A"]
        first = b.pair(b.ax1(g), b.cut(conj_to(g, l.ante), pl))   # g => g & disj(l.cons)

        def each(e):
            if e == a:
                return b.chain(conj_to(And(g, a), rr.ante), pr, disj_from(rr.cons, dd))
            return b.cut(b.proj_r(g, e), absorb(e, dd))

        return b.cut(first, and_cases(g, l.cons, each))

    def _ex_l(self, p, prem, g, dd):
        q, pq = p.premises[0], prem[0]
        x, y = p.bind["x"], p.bind["y"]
        ex = p.ante[-1]
        act = q.ante[-1]
        rest = list(p.ante[:-1])
        if x == y:
            rename = b.ax1(ex)
        else:
            rename = b.ex_elim(b.inst(b.ex_intro(act, y), {y: Var(x)}), x)   # ex => ey
        if not rest:
            return b.cut(rename, b.ex_elim(pq, y))
        r = conj(rest)
        to_pair = b.pair(conj_to(g, rest), b.cut(provide(g, ex), rename))   # g => r & ey
        pulled = b.pull_exists(r, y, act)                                      # r & ey => E y. r & act
        body = b.cut(conj_to(And(r, act), q.ante), pq)                        # r & act => dd
        return b.chain(to_pair, pulled, b.ex_elim(body, y))

    def _ind(self, p, prem, g, dd):
        # induct on [D &] (A [| E]) with D, E the context, which x avoids
        q, pq = p.premises[0], prem[0]
        a, x, t = p.bind["A"], p.bind["x"], p.bind["t"]
        step_f, base_f = q.cons[0], p.ante[-1]
        delta, gamma = list(q.ante[:-1]), list(q.cons[1:])
        dc = conj(delta) if delta else None
        ed = disj(gamma) if gamma else None

        def core(f):
            return f if ed is None else Or(f, ed)

        def shape(f):
            return core(f) if dc is None else And(dc, core(f))

        src = a if dc is None else And(dc, a)
        to_core = b.cut(conj_to(src, q.ante), pq)                  # src => core(step)
        if dc is None:
            step = to_core if ed is None else b.cases(to_core, absorb(ed, core(step_f)))
        else:
            with_a = b.pair(b.proj_l(dc, a), to_core)
            if ed is None:
                step = with_a
            else:
                with_e = b.pair(b.proj_l(dc, ed),
                                b.cut(b.proj_r(dc, ed), absorb(ed, core(step_f))))
                step = b.cut(b.dist(dc, a, ed), b.cases(with_a, with_e))
        ind = b.inst(node("BA-IndRule", [step], A=shape(a), x=x), {x: t})
        core_in = provide(g, base_f)
        if ed is not None:
            core_in = b.cut(core_in, absorb(base_f, core(base_f)))
        if dc is None:
            return b.cut(core_in, ind)
        start = b.pair(conj_to(g, delta), core_in)
        return b.chain(start, ind, b.snd(b.ax1(b.cons(ind))))


def ex_intro_safe(body, x, t) -> BaProof:
    """body[x/t] => E x. body, or BridgeError when t would be captured."""
    try:
        return b.ex_intro(body, x, t)
    except Exception as e:
        raise BridgeError(f"cannot instantiate {x} by {t} in {body}: {e}") from e


# -- axioms ---------------------------------------------------------------------


def _h(*terms):
    vs = set()
    for t in terms:
        vs |= term_vars(t)
    return fresh_var("h", vs)


def _eqv(g, bind):
    s, t, s2, t2 = bind["s"], bind["t"], bind["s2"], bind["t2"]
    e1, e2, e3 = provide(g, Eq(s, t)), provide(g, Eq(s2, t2)), provide(g, Eq(s, s2))
    return b.trans(b.trans(b.sym(e1), e3), e2)


def _fnc(op):
    def build(g, bind):
        s, t, s2, t2 = bind["s"], bind["t"], bind["s2"], bind["t2"]
        h = _h(s, t, s2, t2)
        one = b.cong(provide(g, Eq(s, t)), op(Var(h), s2), h)
        two = b.cong(provide(g, Eq(s2, t2)), op(t, Var(h)), h)
        return b.trans(one, two)
    return build


def _lt_rel(g, bind):
    s, t, s2, t2 = bind["s"], bind["t"], bind["s2"], bind["t2"]
    h = _h(s, t, s2, t2)
    one = b.rewrite(provide(g, Eq(s, t)), provide(g, Lt(s, s2)), Lt(Var(h), s2), h)
    return b.rewrite(provide(g, Eq(s2, t2)), one, Lt(t, Var(h)), h)


_AXIOMS = {
    "=-ref": lambda g, k: b.refl(k["s"]),
    "=-eqv": _eqv,
    "S-fnc": lambda g, k: b.cong_succ(b.ax1(g)),
    "+-fnc": _fnc(Add),
    "·-fnc": _fnc(Mul),
    "<-rel": _lt_rel,
    "S-pos": lambda g, k: node("BA-Ax1", s=k["s"]),
    "S-inj": lambda g, k: node("BA-Ax2", s=k["s"], t=k["t"]),
    "+-0": lambda g, k: node("BA-Ax3", s=k["s"]),
    "+-S": lambda g, k: node("BA-Ax4", s=k["s"], t=k["t"]),
    "·-0": lambda g, k: node("BA-Ax5", s=k["s"]),
    "·-S": lambda g, k: node("BA-Ax6", s=k["s"], t=k["t"]),
}


def check_positive_lk(p: LkProof):
    for n in iter_nodes(p):
        if n.rule in FORBIDDEN_LK_RULES:
            raise BridgeError(f"rule {n.rule} is not allowed in a positive proof")
        for f in n.ante + n.cons:
            if not is_positive(f):
                raise BridgeError(f"formula {f} is not positive")
        for k in ("A", "other"):
            if k in n.bind and not is_positive(n.bind[k]):
                raise BridgeError(f"binding {n.bind[k]} is not positive")


def lk_pos_to_ba(p: LkProof, theory: LkTheory = PLAIN):
    """BA proof of ⋀Δ => ⋁Δ' for the end-sequent of a positive LK proof.

    Returns ``(proof, pack)``; the pack is BA, extended by the translated
    theory axioms when ``theory`` has any.
    """
    check_positive_lk(p)
    br = _Bridge(theory)
    return br.run(p), br.pack


__all__ = [
    "BridgeError", "FORBIDDEN_LK_RULES", "absorb", "check_positive_lk", "conj_to",
    "disj_from", "ex_intro_safe", "lk_pos_to_ba", "lk_sequent_to_ba", "provide",
]
