"""Class-restricted cut elimination for the LK calculus.

Every cut whose cut formula lies outside a subformula-closed class is
removed; cuts inside the class are kept.  The strategy repeatedly picks an
uppermost offending cut (rightmost among those) and removes it by ancestor
tracing: the occurrences of the cut formula that descend into the cut are
followed up the left subproof, each place where one is introduced is joined
with a copy of the right subproof, which is in turn traced until the
matching left introduction is met and a principal reduction applies.
Contractions on the cut formula are absorbed by tracing all ancestors at
once, so no separate mix rule is needed.

Two measures are asserted on every run: the number of offending cuts drops
by one per round, and every recursive reduction is on a formula of strictly
smaller degree than the one that spawned it.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from . import lk_derive as d
from .proofs_lk import (
    PLAIN, POS, ClassPredicate, LkProof, LkTheory, check_lk, degree, iter_nodes,
)
from .syntax import Succ, Var, substitute


class PreconditionError(ValueError):
    pass


@dataclass
class CutElimStats:
    offending_before: int = 0
    rounds: int = 0
    principal_reductions: int = 0
    recursive_reductions: int = 0
    max_cut_degree: int = 0
    measure_trace: list = field(default_factory=list)
    size_before: int = 0
    size_after: int = 0


def offending_cuts(p: LkProof, cls: ClassPredicate) -> int:
    return sum(1 for n in iter_nodes(p) if n.rule == "Cut" and not cls(n.bind["A"]))


# -- ancestor maps ---------------------------------------------------------
# Each map sends a position of the conclusion to the positions it comes
# from in the premises; an empty list means the rule introduced it.

_CONS_SAME = {"Ex⇒", "W⇒", "C⇒", "∧⇒L", "∧⇒R", "∃⇒", "∀⇒"}
_CONS_HEAD_NEW_SAME = {"⇒∨L", "⇒∨R", "⇒→", "⇒∃", "⇒∀", "ind"}
_ANTE_SAME = {"⇒Ex", "⇒W", "⇒C", "⇒∨L", "⇒∨R", "⇒∃", "⇒∀", "⇒¬", "⇒→"}
_ANTE_LAST_NEW = {"W⇒", "¬⇒", "∧⇒L", "∧⇒R", "∃⇒", "∀⇒", "ind"}


def _cons_origin(p: LkProof, k: int):
    r, pr = p.rule, p.premises
    if r in _CONS_SAME:
        return [(0, k)]
    if r == "⇒Ex":
        i = p.bind["i"]
        return [(0, i + 1 if k == i else i if k == i + 1 else k)]
    if r in ("⇒W", "⇒¬"):
        return [] if k == 0 else [(0, k - 1)]
    if r == "⇒C":
        return [(0, 0), (0, 1)] if k == 0 else [(0, k + 1)]
    if r == "¬⇒":
        return [(0, k + 1)]
    if r in _CONS_HEAD_NEW_SAME:
        return [] if k == 0 else [(0, k)]
    if r in ("Cut", "→⇒"):
        n = len(pr[0].cons) - 1
        return [(0, k + 1)] if k < n else [(1, k - n)]
    if r == "⇒∧":
        if k == 0:
            return []
        n = len(pr[0].cons) - 1
        return [(0, k)] if k <= n else [(1, k - n)]
    if r == "∨⇒":
        n = len(pr[0].cons)
        return [(0, k)] if k < n else [(1, k - n)]
    return []


def _ante_origin(p: LkProof, k: int):
    r, pr = p.rule, p.premises
    last = len(p.ante) - 1
    if r in _ANTE_SAME:
        return [(0, k)]
    if r == "Ex⇒":
        i = p.bind["i"]
        return [(0, i + 1 if k == i else i if k == i + 1 else k)]
    if r in _ANTE_LAST_NEW:
        return [] if k == last else [(0, k)]
    if r == "C⇒":
        return [(0, k), (0, k + 1)] if k == last else [(0, k)]
    if r in ("Cut", "⇒∧", "→⇒"):
        if r == "→⇒" and k == last:
            return []
        n = len(pr[0].ante)
        return [(0, k)] if k < n else [(1, k - n)]
    if r == "∨⇒":
        if k == last:
            return []
        n = len(pr[0].ante) - 1
        return [(0, k)] if k < n else [(1, k - n)]
    return []


def _premise_marks(p, marks, origin):
    out = [set() for _ in p.premises]
    for k in marks:
        for i, j in origin(p, k):
            out[i].add(j)
    return out


# -- multiset helpers ------------------------------------------------------


def _ensure(p, ante=(), cons=()):
    """Weaken in any active formula the transformed premise lost."""
    for a in ante:
        if a not in p.ante:
            p = d.weaken_l(p, a)
    for a in cons:
        if a not in p.cons:
            p = d.weaken_r(p, a)
    return p


def _shrink(p, ante, cons):
    """Contract until ``p`` is a sub-multiset of ``ante => cons``."""
    ta, tc = Counter(ante), Counter(cons)
    for a, n in Counter(p.ante).items():
        if ta[a] == 0:
            raise AssertionError(f"stray antecedent formula {a}")
        for _ in range(n - ta[a]):
            p = d.contract_l(p, a)
    for a, n in Counter(p.cons).items():
        if tc[a] == 0:
            raise AssertionError(f"stray succedent formula {a}")
        for _ in range(n - tc[a]):
            p = d.contract_r(p, a)
    return p


def _without(seq, positions):
    return [a for k, a in enumerate(seq) if k not in positions]


def _minus_one(seq, a):
    out = list(seq)
    out.remove(a)
    return out


def _rebuild(n: LkProof, qs) -> LkProof:
    """Reapply the rule of ``n`` to transformed premises, locating by value."""
    r, b = n.rule, n.bind
    q = qs[0] if qs else None
    if r in ("Ex⇒", "⇒Ex"):
        return q
    if r == "W⇒":
        return d.weaken_l(q, b["A"])
    if r == "⇒W":
        return d.weaken_r(q, b["A"])
    if r == "C⇒":
        a = n.ante[-1]
        return d.contract_l(q, a) if q.ante.count(a) >= 2 else q
    if r == "⇒C":
        a = n.cons[0]
        return d.contract_r(q, a) if q.cons.count(a) >= 2 else q
    if r == "Cut":
        a = b["A"]
        return d.cut(_ensure(q, cons=[a]), _ensure(qs[1], ante=[a]), a)
    if r == "¬⇒":
        a = n.ante[-1].body
        return d.neg_l(_ensure(q, cons=[a]), a)
    if r == "⇒¬":
        a = n.cons[0].body
        return d.neg_r(_ensure(q, ante=[a]), a)
    if r in ("∧⇒L", "∧⇒R"):
        c = n.ante[-1]
        act, other = (c.l, c.r) if r == "∧⇒L" else (c.r, c.l)
        return d.and_l(_ensure(q, ante=[act]), act, other, r[-1])
    if r == "⇒∧":
        c = n.cons[0]
        return d.and_r(_ensure(q, cons=[c.l]), _ensure(qs[1], cons=[c.r]), c.l, c.r)
    if r == "∨⇒":
        c = n.ante[-1]
        return d.or_l(_ensure(q, ante=[c.l]), _ensure(qs[1], ante=[c.r]), c.l, c.r)
    if r in ("⇒∨L", "⇒∨R"):
        c = n.cons[0]
        act, other = (c.l, c.r) if r == "⇒∨L" else (c.r, c.l)
        return d.or_r(_ensure(q, cons=[act]), act, other, r[-1])
    if r == "→⇒":
        c = n.ante[-1]
        return d.imp_l(_ensure(q, cons=[c.ante]), _ensure(qs[1], ante=[c.cons]), c.ante, c.cons)
    if r == "⇒→":
        c = n.cons[0]
        return d.imp_r(_ensure(q, ante=[c.ante], cons=[c.cons]), c.ante, c.cons)
    if r == "∃⇒":
        act = substitute(b["A"], {b["x"]: Var(b["y"])})
        return d.ex_l(_ensure(q, ante=[act]), b["A"], b["x"], b["y"])
    if r == "⇒∃":
        act = substitute(b["A"], {b["x"]: b["t"]})
        return d.ex_r(_ensure(q, cons=[act]), b["A"], b["x"], b["t"])
    if r == "∀⇒":
        act = substitute(b["A"], {b["x"]: b["t"]})
        return d.all_l(_ensure(q, ante=[act]), b["A"], b["x"], b["t"])
    if r == "⇒∀":
        act = substitute(b["A"], {b["x"]: Var(b["y"])})
        return d.all_r(_ensure(q, cons=[act]), b["A"], b["x"], b["y"])
    if r == "ind":
        a, x = b["A"], b["x"]
        step = substitute(a, {x: Succ(Var(x))})
        return d.ind(_ensure(q, ante=[a], cons=[step]), a, x, b["t"])
    raise AssertionError(f"cannot rebuild {r}")


_RIGHT_INTRO = {"⇒¬", "⇒∧", "⇒∨L", "⇒∨R", "⇒→", "⇒∃", "⇒∀"}
_LEFT_INTRO = {"¬⇒", "∧⇒L", "∧⇒R", "∨⇒", "→⇒", "∃⇒", "∀⇒"}
_DUAL = {"¬⇒": {"⇒¬"}, "∧⇒L": {"⇒∧"}, "∧⇒R": {"⇒∧"}, "∨⇒": {"⇒∨L", "⇒∨R"},
         "→⇒": {"⇒→"}, "∃⇒": {"⇒∃"}, "∀⇒": {"⇒∀"}}


class _Eliminator:
    def __init__(self, cls: ClassPredicate, supply: d.NameSupply, stats: CutElimStats):
        self.cls = cls
        self.supply = supply
        self.stats = stats

    # cut on ``a`` of two proofs, reducing it if it is offending
    def cut_any(self, p, q, a, bound):
        p, q = _ensure(p, cons=[a]), _ensure(q, ante=[a])
        if self.cls(a):
            # a cut against an axiom a => a is the other premise up to order
            if q.rule == "Ax":
                return p
            if p.rule == "Ax":
                return q
            return d.cut(p, q, a)
        deg = degree(a)
        assert deg < bound, f"cut degree did not decrease ({deg} >= {bound})"
        self.stats.recursive_reductions += 1
        return self.reduce(p, q, a)

    def reduce(self, left, right, a):
        """Proof of Γ, Π ⇒ Δ, Λ from Γ ⇒ a, Δ and Π, a ⇒ Λ with no offending cut."""
        left, right = d.to_front(left, a), d.to_end(right, a)
        self.stats.max_cut_degree = max(self.stats.max_cut_degree, degree(a))
        ctx = _Reduction(self, left, right, a)
        out = ctx.outer(ctx.left, frozenset({0}))
        return _shrink(out, left.ante + right.ante[:-1], left.cons[1:] + right.cons)


class _Reduction:
    def __init__(self, el: _Eliminator, left, right, a):
        self.el = el
        self.a = a
        self.deg = degree(a)
        self.right = right
        self.pi, self.lam = list(right.ante[:-1]), list(right.cons)
        self.left = d.regularize(left, supply=el.supply)
        self.leaf = d.regularize(right, supply=el.supply)

    # -- left subproof: follow succedent ancestors of the cut formula
    def outer(self, n: LkProof, marks):
        if not marks:
            return n
        if n.rule == "Ax":
            return self.leaf
        pm = _premise_marks(n, marks, _cons_origin)
        if 0 in marks and n.rule == "⇒W":
            out = self.outer(n.premises[0], pm[0])
        elif 0 in marks and n.rule == "⇒C":
            out = self.outer(n.premises[0], pm[0])
        elif 0 in marks and n.rule in _RIGHT_INTRO:
            qs = [self.outer(q, m) for q, m in zip(n.premises, pm)]
            intro = _shrink(_rebuild(n, qs), list(n.ante) + self.pi,
                            [self.a] + _without(n.cons, marks) + self.lam)
            out = self.inner_phase(intro)
        elif 0 in marks and not n.premises:
            raise PreconditionError(f"offending formula {self.a} introduced by {n.rule}")
        else:
            qs = [self.outer(q, m) for q, m in zip(n.premises, pm)]
            out = _rebuild(n, qs)
        return _shrink(out, list(n.ante) + self.pi, _without(n.cons, marks) + self.lam)

    # -- right subproof: follow antecedent ancestors against one introduction
    def inner_phase(self, intro: LkProof):
        right = d.regularize(self.right, supply=self.el.supply)
        phase = _Inner(self, intro)
        return phase.trace(right, frozenset({len(right.ante) - 1}))


class _Inner:
    def __init__(self, red: _Reduction, intro: LkProof):
        self.red = red
        self.intro = intro
        self.ctx_a = list(intro.ante)
        self.ctx_c = _minus_one(intro.cons, red.a)

    def trace(self, m: LkProof, marks):
        if not marks:
            return m
        if m.rule == "Ax":
            return self.intro
        last = len(m.ante) - 1
        pm = _premise_marks(m, marks, _ante_origin)
        if last in marks and m.rule in ("W⇒", "C⇒"):
            out = self.trace(m.premises[0], pm[0])
        elif last in marks and m.rule in _LEFT_INTRO:
            out = self.principal(m, pm)
        elif last in marks and not m.premises:
            raise PreconditionError(f"offending formula {self.red.a} introduced by {m.rule}")
        else:
            qs = [self.trace(q, mk) for q, mk in zip(m.premises, pm)]
            out = _rebuild(m, qs)
        return _shrink(out, _without(m.ante, marks) + self.ctx_a, list(m.cons) + self.ctx_c)

    def principal(self, m: LkProof, pm):
        el, bound, intro = self.red.el, self.red.deg, self.intro
        if intro.rule not in _DUAL[m.rule]:
            raise AssertionError(f"{m.rule} meets {intro.rule}")
        el.stats.principal_reductions += 1
        r, a = m.rule, self.red.a
        ip = intro.premises
        if r == "¬⇒":
            b = a.body
            q = self.trace(m.premises[0], pm[0])
            return el.cut_any(q, ip[0], b, bound)
        if r in ("∧⇒L", "∧⇒R"):
            b, src = (a.l, ip[0]) if r == "∧⇒L" else (a.r, ip[1])
            q = self.trace(m.premises[0], pm[0])
            return el.cut_any(src, q, b, bound)
        if r == "∨⇒":
            k = 0 if intro.rule == "⇒∨L" else 1
            b = a.l if k == 0 else a.r
            q = self.trace(m.premises[k], pm[k])
            return el.cut_any(ip[0], q, b, bound)
        if r == "→⇒":
            b, c = a.ante, a.cons
            q1 = self.trace(m.premises[0], pm[0])
            q2 = self.trace(m.premises[1], pm[1])
            t1 = el.cut_any(ip[0], q2, c, bound)
            return el.cut_any(q1, _ensure(t1, ante=[b]), b, bound)
        if r == "∃⇒":
            x, y, t = m.bind["x"], m.bind["y"], intro.bind["t"]
            q = self.trace(m.premises[0], pm[0])
            q = _ensure(q, ante=[substitute(m.bind["A"], {x: Var(y)})])
            q = d.subst_proof(q, {y: t})
            return el.cut_any(ip[0], q, substitute(m.bind["A"], {x: t}), bound)
        if r == "∀⇒":
            x, t, y = m.bind["x"], m.bind["t"], intro.bind["y"]
            q = self.trace(m.premises[0], pm[0])
            src = d.subst_proof(ip[0], {y: t})
            return el.cut_any(src, q, substitute(m.bind["A"], {x: t}), bound)
        raise AssertionError(r)


def _find_offending(p: LkProof, cls, path=()):
    """Path to an uppermost offending cut, preferring the rightmost branch."""
    for i in range(len(p.premises) - 1, -1, -1):
        hit = _find_offending(p.premises[i], cls, path + (i,))
        if hit is not None:
            return hit
    if p.rule == "Cut" and not cls(p.bind["A"]):
        return path
    return None


def _replace(p: LkProof, path, new: LkProof) -> LkProof:
    if not path:
        return new
    i = path[0]
    prem = list(p.premises)
    prem[i] = _replace(prem[i], path[1:], new)
    return LkProof(p.conclusion, p.rule, p.bind, tuple(prem))


def _at(p, path):
    for i in path:
        p = p.premises[i]
    return p


def check_preconditions(p: LkProof, cls: ClassPredicate, theory: LkTheory = PLAIN):
    rep = check_lk(p, cls, theory)
    if not rep.ok:
        raise PreconditionError(f"input proof does not check:\n{rep}")
    bad = [a for a in p.ante + p.cons if not cls(a)]
    if bad:
        raise PreconditionError(f"end-sequent formula {bad[0]} is not in class {cls.name}")
    for label, (ante, cons) in theory.axioms:
        for a in tuple(ante) + tuple(cons):
            if not cls(a):
                raise PreconditionError(f"theory axiom {label} has {a} outside {cls.name}")


def cut_elimination(p: LkProof, cls: ClassPredicate = POS, theory: LkTheory = PLAIN):
    """Return (proof, stats); the proof has every cut formula inside ``cls``."""
    check_preconditions(p, cls, theory)
    stats = CutElimStats(offending_before=offending_cuts(p, cls), size_before=_size(p))
    supply = d.NameSupply(d.proof_vars(p))
    el = _Eliminator(cls, supply, stats)
    count = stats.offending_before
    stats.measure_trace.append(count)
    while count:
        path = _find_offending(p, cls)
        cut = _at(p, path)
        sub = el.reduce(cut.premises[0], cut.premises[1], cut.bind["A"])
        sub = d.adjust(sub, cut.ante, cut.cons)
        p = _replace(p, path, sub)
        new = offending_cuts(p, cls)
        assert new < count, f"offending cut count did not decrease ({new} >= {count})"
        count = new
        stats.rounds += 1
        stats.measure_trace.append(count)
    stats.size_after = _size(p)
    return p, stats


def eliminate_cuts_outside(p: LkProof, cls: ClassPredicate = POS, theory: LkTheory = PLAIN) -> LkProof:
    return cut_elimination(p, cls, theory)[0]


def _size(p):
    return sum(1 for _ in iter_nodes(p))


__all__ = [
    "CutElimStats", "PreconditionError", "check_preconditions", "cut_elimination",
    "eliminate_cuts_outside", "offending_cuts",
]
