"""Derived rules for building BA proofs by hand.

Every helper returns a checked-by-construction :class:`BaProof`; the
conclusion is always recomputed from the rule bindings.  Helpers named
``*_in(G, ...)`` produce sequents with antecedent ``G``.
"""
from __future__ import annotations

from .proofs_ba import BA, BaProof, TheoryPack, node
from .syntax import And, Eq, Exists, Or, Succ, Var, all_vars, fresh_var, subst_term, term_vars


def ante(p: BaProof):
    return p.conclusion.ante


def cons(p: BaProof):
    return p.conclusion.cons


# -- structural ----------------------------------------------------------------


def ax1(a):
    return node("BQC-Ax1", A=a)


def top(a):
    """a => T"""
    return node("BQC-Ax2", A=a)


def bot(a):
    """F => a"""
    return node("BQC-Ax3", A=a)


def cut(p, q, pack: TheoryPack = BA):
    """A => B, B => C  gives  A => C"""
    return node("BQC-R14", [p, q], pack=pack, A=ante(p), B=cons(p), C=cons(q))


def chain(*ps):
    out = ps[0]
    for q in ps[1:]:
        out = cut(out, q)
    return out


def pair(p, q):
    """A => B, A => C  gives  A => B & C"""
    return node("BQC-R15", [p, q], A=ante(p), B=cons(p), C=cons(q))


def fst(p):
    c = cons(p)
    return node("BQC-R15rev", [p], A=ante(p), B=c.l, C=c.r, side="left")


def snd(p):
    c = cons(p)
    return node("BQC-R15rev", [p], A=ante(p), B=c.l, C=c.r, side="right")


def cases(p, q):
    """B => A, C => A  gives  B | C => A"""
    return node("BQC-R16", [p, q], A=cons(p), B=ante(p), C=ante(q))


def proj_l(a, b):
    """a & b => a"""
    return fst(ax1(And(a, b)))


def proj_r(a, b):
    """a & b => b"""
    return snd(ax1(And(a, b)))


def inj_l(a, b):
    """a => a | b"""
    d = Or(a, b)
    return node("BQC-R16rev", [ax1(d)], A=d, B=a, C=b, side="left")


def inj_r(a, b):
    """b => a | b"""
    d = Or(a, b)
    return node("BQC-R16rev", [ax1(d)], A=d, B=a, C=b, side="right")


def weaken_l(p, extra):
    """A => C  gives  A & extra => C"""
    return cut(proj_l(ante(p), extra), p)


def weaken_r(p, extra):
    """A => C  gives  extra & A => C"""
    return cut(proj_r(extra, ante(p)), p)


def comm(a, b):
    """a & b => b & a"""
    return pair(proj_r(a, b), proj_l(a, b))


def from_top(g, p):
    """T => C  gives  g => C"""
    if g == ante(p):
        return p
    return cut(top(g), p)


def inst(p, mapping):
    """R17 with the simultaneous substitution ``mapping``."""
    xs = tuple(mapping)
    ts = tuple(mapping[x] for x in xs)
    return node("BQC-R17", [p], xs=xs, ts=ts, A=ante(p), B=cons(p))


def ex_intro(body, x, t=None):
    """body[x/t] => E x. body  (t defaults to x itself)."""
    e = Exists(x, body)
    p = node("BQC-R18rev", [ax1(e)], A=e, B=body, x=x)
    if t is None or t == Var(x):
        return p
    return inst(p, {x: t})


def ex_elim(p, x):
    """B => A with x not free in A  gives  E x. B => A"""
    return node("BQC-R18", [p], A=cons(p), B=ante(p), x=x)


def imp_intro(p, xs=()):
    """A & B => C  gives  A => ![xs](B -> C)"""
    a = ante(p)
    return node("BQC-R19", [p], xs=tuple(xs), A=a.l, B=a.r, C=cons(p))


def imp_from(g, p, xs=()):
    """B => C  gives  g => ![xs](B -> C)  (xs not free in g)."""
    return imp_intro(weaken_r(p, g), xs)


def compose_blocks(p, q, xs=()):
    """G => ![xs](A -> B),  G => ![xs](B -> C)  gives  G => ![xs](A -> C)"""
    b1, b2 = cons(p), cons(q)
    ax = node("BQC-Ax8", xs=xs, A=b1.ante, B=b1.cons, C=b2.cons)
    return cut(pair(p, q), ax)


def split_blocks(p, q, xs=()):
    """G => ![xs](B -> A),  G => ![xs](C -> A)  gives  G => ![xs](B | C -> A)"""
    b1, b2 = cons(p), cons(q)
    ax = node("BQC-Ax10", xs=xs, A=b1.cons, B=b1.ante, C=b2.ante)
    return cut(pair(p, q), ax)


def dist(a, b, c):
    """a & (b | c) => a & b | a & c"""
    return node("BQC-Ax4", A=a, B=b, C=c)


def dist_r(b, c, a):
    """(b | c) & a => b & a | c & a"""
    d = dist(a, b, c)
    back = cases(cut(comm(a, b), inj_l(And(b, a), And(c, a))),
                 cut(comm(a, c), inj_r(And(b, a), And(c, a))))
    return chain(comm(Or(b, c), a), d, back)


def pull_exists(a, x, b):
    """a & E x. b => E x. (a & b)  (x not free in a)"""
    return node("BQC-Ax5", A=a, x=x, B=b)


def select(g, path):
    """g => the conjunct of g reached by ``path`` ("l"/"r" steps)."""
    p = ax1(g)
    for step in path:
        p = fst(p) if step == "l" else snd(p)
    return p


# -- equality ------------------------------------------------------------------


def refl(t):
    """T => t = t"""
    return node("BQC-Ax6", t=t)


def refl_in(g, t):
    return from_top(g, refl(t))


def leibniz(p_atom, z, s, t):
    """s = t & P[z/s] => P[z/t]  for an atomic P."""
    avoid = all_vars(p_atom) | term_vars(s) | term_vars(t) | {z}
    w = fresh_var("w", avoid)
    ax = node("BQC-Ax7", x=z, y=w, A=p_atom)
    return inst(ax, {z: s, w: t})


def rewrite(eq, p, p_atom, z):
    """G => s = t,  G => P[z/s]  gives  G => P[z/t]"""
    e = cons(eq)
    return cut(pair(eq, p), leibniz(p_atom, z, e.l, e.r))


def _hole(avoid):
    return fresh_var("h", avoid)


def sym(eq):
    """G => s = t  gives  G => t = s"""
    e = cons(eq)
    h = _hole(term_vars(e.l) | term_vars(e.r))
    return rewrite(eq, refl_in(ante(eq), e.l), Eq(Var(h), e.l), h)


def trans(p, q):
    """G => s = t,  G => t = r  gives  G => s = r"""
    e1, e2 = cons(p), cons(q)
    h = _hole(term_vars(e1.l) | term_vars(e1.r) | term_vars(e2.r))
    return rewrite(q, p, Eq(e1.l, Var(h)), h)


def eqchain(*ps):
    out = ps[0]
    for q in ps[1:]:
        out = trans(out, q)
    return out


def cong(eq, ctx, hole):
    """G => s = t  gives  G => ctx[hole/s] = ctx[hole/t]"""
    e = cons(eq)
    g = ante(eq)
    h = _hole(term_vars(ctx) | term_vars(e.l) | term_vars(e.r) | {hole})
    left = subst_term(ctx, {hole: e.l})
    atom = Eq(left, subst_term(ctx, {hole: Var(h)}))
    return rewrite(eq, refl_in(g, left), atom, h)


def cong_succ(eq):
    h = _hole(term_vars(cons(eq).l) | term_vars(cons(eq).r))
    return cong(eq, Succ(Var(h)), h)


def ba(rule, **bind):
    return node(rule, **bind)


def ba_in(g, rule, **bind):
    return from_top(g, node(rule, **bind))


def induction(base, step, x):
    """T => A[x/0] and A => A[x/Sx]  give  T => A"""
    a = ante(step)
    ind = node("BA-IndRule", [step], A=a, x=x)
    return cut(base, ind)


__all__ = [n for n in dir() if not n.startswith("_")]
