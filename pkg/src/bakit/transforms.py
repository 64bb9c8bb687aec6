"""Formula-to-formula translations.

Each pass is a total structural recursion over the AST.  Passes that only
make sense on a sublanguage raise a dedicated error on other input.
"""
from __future__ import annotations

from dataclasses import dataclass

from .classes import bounded_exists, bounded_forall, is_delta0, is_positive, is_quantifier_free
from .syntax import (
    ATOMS, Add, And, Block, Bot, Eq, Exists, ForallOne, Imp, Lt, Monus, Mul, Neg,
    Or, Succ, Top, Var, Zero, all_vars, conj, exists_many, free_vars, fresh_var,
    substitute, sum_terms,
)


class NotQuantifierFree(ValueError):
    pass


class NotDeltaZero(ValueError):
    pass


class TotalizerError(ValueError):
    pass


# ----------------------------------------------------------------------------
# positive and semi-positive parts


def positive_part(a):
    if isinstance(a, ATOMS):
        return a
    if isinstance(a, (And, Or)):
        return type(a)(positive_part(a.l), positive_part(a.r))
    if isinstance(a, Exists):
        return Exists(a.var, positive_part(a.body))
    if isinstance(a, (Block, Neg, Imp, ForallOne)):
        return Top()
    raise TypeError(a)


def semi_positive_part(a):
    if isinstance(a, ATOMS):
        return a
    if isinstance(a, (And, Or)):
        return type(a)(semi_positive_part(a.l), semi_positive_part(a.r))
    if isinstance(a, Exists):
        return Exists(a.var, semi_positive_part(a.body))
    if isinstance(a, Block):
        return Block(a.vars, positive_part(a.ante), positive_part(a.cons))
    if isinstance(a, Neg):
        return Neg(positive_part(a.body))
    if isinstance(a, Imp):
        return Imp(positive_part(a.ante), positive_part(a.cons))
    if isinstance(a, ForallOne):
        return ForallOne(a.var, positive_part(a.body))
    raise TypeError(a)


# ----------------------------------------------------------------------------
# open positive equivalent / positive negation


def _open_pair(a):
    """Return (A+, A-) for a quantifier-free A."""
    if isinstance(a, Top):
        return Top(), Bot()
    if isinstance(a, Bot):
        return Bot(), Top()
    if isinstance(a, Eq):
        return a, Or(Lt(a.l, a.r), Lt(a.r, a.l))
    if isinstance(a, Lt):
        return a, Or(Eq(a.l, a.r), Lt(a.r, a.l))
    if isinstance(a, And):
        (lp, ln), (rp, rn) = _open_pair(a.l), _open_pair(a.r)
        return And(lp, rp), Or(ln, rn)
    if isinstance(a, Or):
        (lp, ln), (rp, rn) = _open_pair(a.l), _open_pair(a.r)
        return Or(lp, rp), And(ln, rn)
    if isinstance(a, (Block, Imp, Neg)):
        ante = a.body if isinstance(a, Neg) else a.ante
        cons = Bot() if isinstance(a, Neg) else a.cons
        (lp, ln), (rp, rn) = _open_pair(ante), _open_pair(cons)
        return Or(ln, rp), And(lp, rn)
    raise TypeError(a)


def open_positive(a):
    if not is_quantifier_free(a):
        raise NotQuantifierFree(f"not quantifier-free: {a}")
    return _open_pair(a)[0]


def open_negation(a):
    if not is_quantifier_free(a):
        raise NotQuantifierFree(f"not quantifier-free: {a}")
    return _open_pair(a)[1]


# ----------------------------------------------------------------------------
# bounded negation


def bounded_negation(a):
    if not is_delta0(a):
        raise NotDeltaZero(f"not a bounded formula: {a}")
    return _bneg(a)


def _bneg(a):
    if isinstance(a, Top):
        return Bot()
    if isinstance(a, Bot):
        return Top()
    if isinstance(a, Eq):
        return Or(Lt(a.r, a.l), Lt(a.l, a.r))
    if isinstance(a, Lt):
        return Or(Lt(a.r, a.l), Eq(a.l, a.r))
    if isinstance(a, And):
        return Or(_bneg(a.l), _bneg(a.r))
    if isinstance(a, Or):
        return And(_bneg(a.l), _bneg(a.r))
    if isinstance(a, Neg):
        return And(a.body, Top())
    if isinstance(a, Imp) or (isinstance(a, Block) and not a.vars):
        return And(a.ante, _bneg(a.cons))
    m = bounded_exists(a)
    if m:
        x, s, b = m
        return Block((x,), Lt(Var(x), s), _bneg(b))
    m = bounded_forall(a)
    if m:
        x, s, b = m
        return Exists(x, And(Lt(Var(x), s), _bneg(b)))
    raise NotDeltaZero(f"not a bounded formula: {a}")


# ----------------------------------------------------------------------------
# cut-off elimination


def _term_subterms(t):
    """Post-order (innermost first, left to right)."""
    if isinstance(t, Succ):
        yield from _term_subterms(t.t)
    elif isinstance(t, (Add, Mul, Monus)):
        yield from _term_subterms(t.l)
        yield from _term_subterms(t.r)
    yield t


def _replace_term(t, old, new):
    if t == old:
        return new
    if isinstance(t, Succ):
        return Succ(_replace_term(t.t, old, new))
    if isinstance(t, (Add, Mul, Monus)):
        return type(t)(_replace_term(t.l, old, new), _replace_term(t.r, old, new))
    return t


def _first_monus_atom(a):
    if isinstance(a, (Eq, Lt)):
        for sub in (*_term_subterms(a.l), *_term_subterms(a.r)):
            if isinstance(sub, Monus):
                return a, sub
        return None
    if isinstance(a, (Top, Bot)):
        return None
    if isinstance(a, (And, Or)):
        return _first_monus_atom(a.l) or _first_monus_atom(a.r)
    if isinstance(a, (Exists, ForallOne, Neg)):
        return _first_monus_atom(a.body)
    if isinstance(a, (Block, Imp)):
        return _first_monus_atom(a.ante) or _first_monus_atom(a.cons)
    raise TypeError(a)


def _replace_atom(a, old, new):
    if a == old:
        return new
    if isinstance(a, ATOMS):
        return a
    if isinstance(a, (And, Or)):
        return type(a)(_replace_atom(a.l, old, new), _replace_atom(a.r, old, new))
    if isinstance(a, (Exists, ForallOne)):
        return type(a)(a.var, _replace_atom(a.body, old, new))
    if isinstance(a, Neg):
        return Neg(_replace_atom(a.body, old, new))
    if isinstance(a, Block):
        return Block(a.vars, _replace_atom(a.ante, old, new), _replace_atom(a.cons, old, new))
    if isinstance(a, Imp):
        return Imp(_replace_atom(a.ante, old, new), _replace_atom(a.cons, old, new))
    raise TypeError(a)


def cutoff_guard(t, s, z):
    """(t < s & z = 0) | t = s + z"""
    return Or(And(Lt(t, s), Eq(z, Zero())), Eq(t, Add(s, z)))


def star_step(a):
    """One replacement step; returns ``a`` unchanged when it is cut-off free."""
    found = _first_monus_atom(a)
    if found is None:
        return a
    atom, m = found
    z = fresh_var("z", all_vars(a))
    zv = Var(z)
    b_z = type(atom)(_replace_term(atom.l, m, zv), _replace_term(atom.r, m, zv))
    c = Exists(z, And(cutoff_guard(m.l, m.r, zv), b_z))
    return _replace_atom(a, atom, c)


def star_translate(a):
    while True:
        nxt = star_step(a)
        if nxt == a:
            return a
        a = nxt


# ----------------------------------------------------------------------------
# Sigma_1 totalizer


@dataclass(frozen=True)
class TotalizerInput:
    A: object
    xs: tuple
    y: str
    zs: tuple


def _lt_succ(s, t):
    # s <= t written as s < St
    return Lt(s, Succ(t))


def _bounded_all(vs, bound, body):
    for v in reversed(vs):
        body = Block((v,), _lt_succ(Var(v), bound), body)
    return body


def _neg(a):
    return Block((), a, Bot())


def sigma1_totalizer(inp: TotalizerInput):
    a, xs, y, zs = inp.A, tuple(inp.xs), inp.y, tuple(inp.zs)
    if not zs:
        raise TotalizerError("witness variables must be nonempty")
    if not (is_positive(a) and is_quantifier_free(a)):
        raise TotalizerError(f"matrix must be positive and quantifier-free: {a}")
    names = list(xs) + [y] + list(zs)
    if len(set(names)) != len(names):
        raise TotalizerError("input, output and witness variables must be pairwise disjoint")
    extra = free_vars(a) - set(names)
    if extra:
        raise TotalizerError(f"free variables not covered: {sorted(extra)}")

    avoid = set(all_vars(a)) | set(names)

    def fresh(base):
        v = fresh_var(base, avoid)
        avoid.add(v)
        return v

    y1 = fresh(y + "'")
    z1 = tuple(fresh(z + "'") for z in zs)
    y2 = fresh(y + "''")
    z2 = tuple(fresh(z + "''") for z in zs)
    u, v, w = fresh("u"), fresh("v"), fresh("w")

    def tsum(yv, zv):
        return sum_terms([Var(yv)] + [Var(z) for z in zv])

    def U(x):
        uv, vv, wv = Var(u), Var(v), Var(w)
        core = Block((), And(_lt_succ(Add(Add(uv, vv), wv), x), Eq(Add(uv, wv), Add(vv, wv))), Eq(uv, vv))
        return _bounded_all([u, v, w], x, core)

    def A_at(yv, zv):
        s = {y: Var(yv)}
        s.update({z: Var(zz) for z, zz in zip(zs, zv)})
        return substitute(a, s)

    def B(yv, zv, yi, zi):
        t, ti = tsum(yv, zv), tsum(yi, zi)
        inner = Block((), And(_lt_succ(ti, t), A_at(yi, zi)), Eq(Var(yv), Var(yi)))
        return conj([U(t), A_at(yv, zv), _bounded_all([yi, *zi], t, inner)])

    def C(yv, zv):
        t, t1 = tsum(yv, zv), tsum(y1, z1)
        inner = Block((), _lt_succ(t1, t), _neg(B(y1, z1, y2, z2)))
        return conj([_neg(U(t)), Eq(Var(yv), Zero()), _bounded_all([y1, *z1], t, inner)])

    return exists_many(zs, Or(B(y, zs, y1, z1), C(y, zs)))
