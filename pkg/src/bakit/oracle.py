"""Classical brute-force evaluation of bounded formulas over the naturals.

This evaluator shares no code with the forcing engine; the tests and the
scenario harness use it as an independent oracle.  Results of closed
subformulas are memoised on the values of their free variables, which keeps
deeply nested bounded quantifiers (as in the totalizer output) tractable.
"""
from __future__ import annotations

from .classes import bounded_exists, bounded_forall
from .syntax import (
    Add, And, Block, Bot, Eq, Exists, ForallOne, Imp, Lt, Monus, Mul, Neg, Or, Succ,
    Top, Var, Zero, free_vars,
)


class Unbounded(ValueError):
    """A quantifier without a recognisable bound was reached."""


def eval_term_nat(t, asg) -> int:
    if isinstance(t, Var):
        return asg[t.name]
    if isinstance(t, Zero):
        return 0
    if isinstance(t, Succ):
        return eval_term_nat(t.t, asg) + 1
    if isinstance(t, Add):
        return eval_term_nat(t.l, asg) + eval_term_nat(t.r, asg)
    if isinstance(t, Mul):
        return eval_term_nat(t.l, asg) * eval_term_nat(t.r, asg)
    if isinstance(t, Monus):
        return max(eval_term_nat(t.l, asg) - eval_term_nat(t.r, asg), 0)
    raise TypeError(f"not a term: {t!r}")


class NatOracle:
    """``truth(a, asg)`` for Delta_0 formulas; ``exists_upto`` adds an outer bounded search."""

    def __init__(self, search_limit: int | None = None):
        # unbounded existentials range over 0..search_limit; exact only when
        # the caller knows every needed witness lies in that range
        self.search_limit = search_limit
        self._fv = {}
        self._memo = {}

    def _key(self, a, asg):
        fv = self._fv.get(a)
        if fv is None:
            fv = tuple(sorted(free_vars(a)))
            self._fv[a] = fv
        return a, tuple(asg[v] for v in fv)

    def truth(self, a, asg) -> bool:
        if isinstance(a, (Top, Bot, Eq, Lt)):
            return self._atom(a, asg)
        key = self._key(a, asg)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._compute(a, asg)
            self._memo[key] = hit
        return hit

    def _atom(self, a, asg):
        if isinstance(a, Top):
            return True
        if isinstance(a, Bot):
            return False
        l, r = eval_term_nat(a.l, asg), eval_term_nat(a.r, asg)
        return l == r if isinstance(a, Eq) else l < r

    def _compute(self, a, asg):
        if isinstance(a, And):
            return self.truth(a.l, asg) and self.truth(a.r, asg)
        if isinstance(a, Or):
            return self.truth(a.l, asg) or self.truth(a.r, asg)
        if isinstance(a, Neg):
            return not self.truth(a.body, asg)
        if isinstance(a, Imp) or (isinstance(a, Block) and not a.vars):
            return not self.truth(a.ante, asg) or self.truth(a.cons, asg)
        m = bounded_exists(a)
        if m is not None:
            x, s, body = m
            return any(self.truth(body, {**asg, x: n}) for n in range(eval_term_nat(s, asg)))
        m = bounded_forall(a)
        if m is not None:
            x, s, body = m
            return all(self.truth(body, {**asg, x: n}) for n in range(eval_term_nat(s, asg)))
        if isinstance(a, Exists) and self.search_limit is not None:
            return any(self.truth(a.body, {**asg, a.var: n}) for n in range(self.search_limit + 1))
        if isinstance(a, (Exists, ForallOne, Block)):
            raise Unbounded(str(a))
        raise TypeError(f"not a formula: {a!r}")

    def exists_upto(self, vs, body, asg, limit):
        """First tuple in ``{0..limit}^k`` (lexicographic) satisfying ``body``, or None."""
        def go(i, cur):
            if i == len(vs):
                return tuple(cur[v] for v in vs) if self.truth(body, cur) else None
            for n in range(limit + 1):
                hit = go(i + 1, {**cur, vs[i]: n})
                if hit is not None:
                    return hit
            return None
        return go(0, dict(asg))


def truth_nat(a, asg=None, search_limit=None) -> bool:
    return NatOracle(search_limit).truth(a, dict(asg or {}))


__all__ = ["NatOracle", "Unbounded", "eval_term_nat", "truth_nat"]
