"""Syntactic formula classes and order desugaring."""
from __future__ import annotations

from enum import Enum

from .syntax import (
    ATOMS, Add, And, Block, Eq, Exists, ForallOne, Imp, Lt, Neg, Or, Succ, Top, Var,
    fresh_var, term_vars,
)


class FormulaClass(Enum):
    Atomic = "Atomic"
    QuantifierFree = "QuantifierFree"
    Positive = "Positive"
    ExistsOne = "ExistsOne"
    ExistsOnePos = "ExistsOnePos"
    DeltaZero = "DeltaZero"
    SigmaOne = "SigmaOne"
    PiTwo = "PiTwo"


def is_atomic(a) -> bool:
    return isinstance(a, ATOMS)


def is_positive(a) -> bool:
    """No block (implication / universal) and no LK negation anywhere."""
    if isinstance(a, ATOMS):
        return True
    if isinstance(a, (And, Or)):
        return is_positive(a.l) and is_positive(a.r)
    if isinstance(a, Exists):
        return is_positive(a.body)
    return False


def is_quantifier_free(a) -> bool:
    if isinstance(a, ATOMS):
        return True
    if isinstance(a, (And, Or)):
        return is_quantifier_free(a.l) and is_quantifier_free(a.r)
    if isinstance(a, Neg):
        return is_quantifier_free(a.body)
    if isinstance(a, Imp):
        return is_quantifier_free(a.ante) and is_quantifier_free(a.cons)
    if isinstance(a, Block):
        return not a.vars and is_quantifier_free(a.ante) and is_quantifier_free(a.cons)
    return False


def strip_exists(a):
    """Split off the maximal existential prefix: returns (vars, matrix)."""
    vs = []
    while isinstance(a, Exists):
        vs.append(a.var)
        a = a.body
    return vs, a


def bounded_exists(a):
    """Match ``E x. (x < s & B)`` with x not in s; return (x, s, B) or None."""
    if isinstance(a, Exists) and isinstance(a.body, And):
        guard = a.body.l
        if (isinstance(guard, Lt) and guard.l == Var(a.var)
                and a.var not in term_vars(guard.r)):
            return a.var, guard.r, a.body.r
    return None


def bounded_forall(a):
    """Match ``![x](x < s -> B)`` (or LK ``A x. (x < s ~> B)``); return (x, s, B) or None."""
    if isinstance(a, Block) and len(a.vars) == 1:
        x, guard, body = a.vars[0], a.ante, a.cons
    elif isinstance(a, ForallOne) and isinstance(a.body, Imp):
        x, guard, body = a.var, a.body.ante, a.body.cons
    else:
        return None
    if isinstance(guard, Lt) and guard.l == Var(x) and x not in term_vars(guard.r):
        return x, guard.r, body
    return None


def is_delta0(a) -> bool:
    if isinstance(a, ATOMS):
        return True
    if isinstance(a, (And, Or)):
        return is_delta0(a.l) and is_delta0(a.r)
    if isinstance(a, Neg):
        return is_delta0(a.body)
    if isinstance(a, Imp):
        return is_delta0(a.ante) and is_delta0(a.cons)
    if isinstance(a, Block) and not a.vars:
        return is_delta0(a.ante) and is_delta0(a.cons)
    m = bounded_exists(a) or bounded_forall(a)
    return m is not None and is_delta0(m[2])


def is_exists_one(a) -> bool:
    return is_quantifier_free(strip_exists(a)[1]) or is_positive(a)


def is_sigma1(a) -> bool:
    return is_delta0(strip_exists(a)[1]) or is_positive(a)


def is_pi2(a) -> bool:
    return isinstance(a, Block) and isinstance(a.ante, Top) and is_sigma1(a.cons)


def classify(a) -> set:
    out = set()
    if is_atomic(a):
        out.add(FormulaClass.Atomic)
    if is_quantifier_free(a):
        out.add(FormulaClass.QuantifierFree)
    if is_positive(a):
        out.add(FormulaClass.Positive)
        # positive formulas are the existential-positive class up to prenexing
        out.add(FormulaClass.ExistsOnePos)
    if is_exists_one(a):
        out.add(FormulaClass.ExistsOne)
    if is_delta0(a):
        out.add(FormulaClass.DeltaZero)
    if is_sigma1(a):
        out.add(FormulaClass.SigmaOne)
    if is_pi2(a):
        out.add(FormulaClass.PiTwo)
    return out


def desugar_order(a):
    """Replace every ``s < t`` by ``E x. s + Sx = t`` with x fresh for s, t."""
    if isinstance(a, Lt):
        x = fresh_var("x", term_vars(a.l) | term_vars(a.r))
        return Exists(x, Eq(Add(a.l, Succ(Var(x))), a.r))
    if isinstance(a, ATOMS):
        return a
    if isinstance(a, (And, Or)):
        return type(a)(desugar_order(a.l), desugar_order(a.r))
    if isinstance(a, Exists):
        return Exists(a.var, desugar_order(a.body))
    if isinstance(a, Block):
        return Block(a.vars, desugar_order(a.ante), desugar_order(a.cons))
    if isinstance(a, Neg):
        return Neg(desugar_order(a.body))
    if isinstance(a, Imp):
        return Imp(desugar_order(a.ante), desugar_order(a.cons))
    if isinstance(a, ForallOne):
        return ForallOne(a.var, desugar_order(a.body))
    raise TypeError(a)
