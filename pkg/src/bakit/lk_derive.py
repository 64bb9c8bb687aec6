"""Position-insensitive builders over the strict LK calculus.

Every builder locates its active formulas by value, inserts the exchange
steps needed to bring them into the rule's fixed position and then applies
the rule.  ``adjust`` reaches an exact target sequent using contraction,
weakening and exchange.
"""
from __future__ import annotations

import itertools
from collections import Counter

from .proofs_lk import LkProof, lk_node
from .syntax import (
    Eq, Exists, ForallOne, Succ, Var, all_vars, subst_term, substitute, term_vars,
)

# -- exchanges -----------------------------------------------------------------


def move_ante(p: LkProof, i: int, j: int) -> LkProof:
    while i < j:
        p = lk_node("Ex⇒", [p], i=i)
        i += 1
    while i > j:
        p = lk_node("Ex⇒", [p], i=i - 1)
        i -= 1
    return p


def move_cons(p: LkProof, i: int, j: int) -> LkProof:
    while i < j:
        p = lk_node("⇒Ex", [p], i=i)
        i += 1
    while i > j:
        p = lk_node("⇒Ex", [p], i=i - 1)
        i -= 1
    return p


def _rindex(seq, a):
    for k in range(len(seq) - 1, -1, -1):
        if seq[k] == a:
            return k
    raise ValueError(f"{a} not found")


def to_end(p: LkProof, a) -> LkProof:
    """Move the last antecedent occurrence of ``a`` to the end."""
    return move_ante(p, _rindex(p.ante, a), len(p.ante) - 1)


def to_front(p: LkProof, a) -> LkProof:
    """Move the first succedent occurrence of ``a`` to the front."""
    return move_cons(p, p.cons.index(a), 0)


def permute(p: LkProof, ante, cons) -> LkProof:
    ante, cons = tuple(ante), tuple(cons)
    if Counter(p.ante) != Counter(ante) or Counter(p.cons) != Counter(cons):
        raise ValueError("permute needs equal multisets")
    for k, a in enumerate(ante):
        if p.ante[k] != a:
            p = move_ante(p, p.ante.index(a, k), k)
    for k, a in enumerate(cons):
        if p.cons[k] != a:
            p = move_cons(p, p.cons.index(a, k), k)
    return p


def adjust(p: LkProof, ante, cons) -> LkProof:
    """Reach exactly ``ante => cons`` by contraction, weakening and exchange."""
    ante, cons = tuple(ante), tuple(cons)
    ta, tc = Counter(ante), Counter(cons)
    for a in list(Counter(p.ante)):
        if ta[a] == 0:
            raise ValueError(f"cannot remove {a} from the antecedent")
        while Counter(p.ante)[a] > ta[a]:
            p = contract_l(p, a)
    for a in list(Counter(p.cons)):
        if tc[a] == 0:
            raise ValueError(f"cannot remove {a} from the succedent")
        while Counter(p.cons)[a] > tc[a]:
            p = contract_r(p, a)
    for a, n in ta.items():
        for _ in range(n - Counter(p.ante)[a]):
            p = lk_node("W⇒", [p], A=a)
    for a, n in tc.items():
        for _ in range(n - Counter(p.cons)[a]):
            p = lk_node("⇒W", [p], A=a)
    return permute(p, ante, cons)


# -- structural rules -----------------------------------------------------------


def weaken_l(p, a):
    return lk_node("W⇒", [p], A=a)


def weaken_r(p, a):
    return lk_node("⇒W", [p], A=a)


def contract_l(p, a):
    i = _rindex(p.ante, a)
    p = move_ante(p, i, len(p.ante) - 1)
    j = _rindex(p.ante[:-1], a)
    p = move_ante(p, j, len(p.ante) - 2)
    return lk_node("C⇒", [p])


def contract_r(p, a):
    p = move_cons(p, p.cons.index(a), 0)
    j = p.cons.index(a, 1)
    p = move_cons(p, j, 1)
    return lk_node("⇒C", [p])


def cut(p, q, a):
    return lk_node("Cut", [to_front(p, a), to_end(q, a)], A=a)


# -- logical rules -------------------------------------------------------------


def neg_l(p, a):
    return lk_node("¬⇒", [to_front(p, a)])


def neg_r(p, a):
    return lk_node("⇒¬", [to_end(p, a)])


def and_l(p, active, other, side="L"):
    return lk_node("∧⇒L" if side == "L" else "∧⇒R", [to_end(p, active)], other=other)


def and_r(p, q, a, b):
    return lk_node("⇒∧", [to_front(p, a), to_front(q, b)])


def or_l(p, q, a, b):
    return lk_node("∨⇒", [to_end(p, a), to_end(q, b)])


def or_r(p, active, other, side="L"):
    return lk_node("⇒∨L" if side == "L" else "⇒∨R", [to_front(p, active)], other=other)


def imp_l(p, q, a, b):
    return lk_node("→⇒", [to_front(p, a), to_end(q, b)])


def imp_r(p, a, b):
    return lk_node("⇒→", [to_front(to_end(p, a), b)])


def ex_l(p, body, x, y):
    return lk_node("∃⇒", [to_end(p, substitute(body, {x: Var(y)}))], A=body, x=x, y=y)


def ex_r(p, body, x, t):
    return lk_node("⇒∃", [to_front(p, substitute(body, {x: t}))], A=body, x=x, t=t)


def all_l(p, body, x, t):
    return lk_node("∀⇒", [to_end(p, substitute(body, {x: t}))], A=body, x=x, t=t)


def all_r(p, body, x, y):
    return lk_node("⇒∀", [to_front(p, substitute(body, {x: Var(y)}))], A=body, x=x, y=y)


def ind(p, a, x, t):
    step = substitute(a, {x: Succ(Var(x))})
    return lk_node("ind", [to_front(to_end(p, a), step)], A=a, x=x, t=t)


def ax(a):
    return lk_node("Ax", A=a)


# -- equality ------------------------------------------------------------------


def eq_trans(p, q):
    """D => a=b ; D' => b=c  gives  D, D' => a=c (via =-eqv and =-ref)."""
    ab, bc = p.cons[0], q.cons[0]
    a, b, c = ab.l, ab.r, bc.r
    e = lk_node("=-eqv", s=a, t=a, s2=b, t2=c)       # a=a, b=c, a=b => a=c
    r = cut(lk_node("=-ref", s=a), e, Eq(a, a))     # b=c, a=b => a=c
    r = cut(q, r, bc)
    return cut(p, r, ab)


def eq_sym(p):
    """D => a=b  gives  D => b=a."""
    ab = p.cons[0]
    a, b = ab.l, ab.r
    e = lk_node("=-eqv", s=a, t=b, s2=a, t2=a)       # a=b, a=a, a=a => b=a
    e = cut(lk_node("=-ref", s=a), e, Eq(a, a))
    e = cut(lk_node("=-ref", s=a), e, Eq(a, a))
    return cut(p, e, ab)


# -- proof substitution and eigenvariables -------------------------------------

def proof_vars(p: LkProof) -> set:
    out = set()
    stack = [p]
    while stack:
        n = stack.pop()
        for a in n.ante + n.cons:
            out |= all_vars(a)
        for k, v in n.bind.items():
            if k in ("x", "y"):
                out.add(v)
            elif k in ("A", "other"):
                out |= all_vars(v)
            elif k in ("s", "t", "s2", "t2"):
                out |= term_vars(v)
        stack.extend(n.premises)
    return out


def fresh_name(avoid) -> str:
    """Smallest ``kN`` not in ``avoid``; deterministic for a given avoid set."""
    for n in itertools.count(1):
        v = f"k{n}"
        if v not in avoid:
            return v


def _bind_subst(rule, bind, sigma):
    out = {}
    for k, v in bind.items():
        if k in ("s", "t", "s2", "t2"):
            out[k] = subst_term(v, sigma)
        elif k == "other":
            out[k] = substitute(v, sigma)
        elif k == "A":
            if rule in ("∃⇒", "⇒∃"):
                out[k] = substitute(Exists(bind["x"], v), sigma).body
            elif rule in ("∀⇒", "⇒∀"):
                out[k] = substitute(ForallOne(bind["x"], v), sigma).body
            elif rule == "ind":
                out[k] = substitute(v, {y: t for y, t in sigma.items() if y != bind["x"]})
            else:
                out[k] = substitute(v, sigma)
        else:
            out[k] = v
    return out


def subst_proof(p: LkProof, sigma) -> LkProof:
    """Apply a term substitution to every formula and binding of a proof.

    Eigenvariables inside ``p`` must not be keys of ``sigma`` nor occur in
    its terms; ``regularize`` first to guarantee this.
    """
    prem = tuple(subst_proof(q, sigma) for q in p.premises)
    ante = tuple(substitute(a, sigma) for a in p.ante)
    cons = tuple(substitute(a, sigma) for a in p.cons)
    return LkProof((ante, cons), p.rule, _bind_subst(p.rule, p.bind, sigma), prem)


class NameSupply:
    """Fresh ``kN`` names that never repeat within one supply."""

    def __init__(self, avoid=()):
        self.used = set(avoid)
        self._n = itertools.count(1)

    def reserve(self, names):
        self.used |= set(names)

    def fresh(self) -> str:
        while True:
            v = f"k{next(self._n)}"
            if v not in self.used:
                self.used.add(v)
                return v


def regularize(p: LkProof, avoid=(), supply: NameSupply | None = None) -> LkProof:
    """Rename every eigenvariable (and induction variable) to a fresh name.

    With a shared ``supply`` the new names are unique across all calls.
    """
    if supply is None:
        supply = NameSupply()
    supply.reserve(set(avoid) | proof_vars(p))
    return _regularize(p, supply)


def _regularize(p, supply):
    prem = tuple(_regularize(q, supply) for q in p.premises)
    bind = dict(p.bind)
    if p.rule in ("∃⇒", "⇒∀"):
        y = bind["y"]
        v = supply.fresh()
        prem = (subst_proof(prem[0], {y: Var(v)}),)
        bind["y"] = v
    elif p.rule == "ind":
        x = bind["x"]
        v = supply.fresh()
        prem = (subst_proof(prem[0], {x: Var(v)}),)
        bind["A"] = substitute(bind["A"], {x: Var(v)})
        bind["x"] = v
    return LkProof(p.conclusion, p.rule, bind, prem)


__all__ = [n for n in dir() if not n.startswith("_")]
