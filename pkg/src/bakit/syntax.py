"""Terms, formulas and sequents of arithmetic over {0, S, +, *} (plus cut-off).

All nodes are immutable dataclasses with structural equality.  The universal
quantifier only exists fused with implication as ``Block(vars, ante, cons)``;
an empty ``vars`` tuple is plain implication and ``Block((), A, Bot())`` is
the negation of ``A``.  ``Neg``, ``Imp`` and ``ForallOne`` are the
first-order connectives used by the LK side of the package.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union


class CaptureViolation(ValueError):
    """A substituted term would have a variable captured by a quantifier."""

    def __init__(self, binder: str, var: str, formula: "Formula"):
        self.binder = binder
        self.var = var
        self.formula = formula
        super().__init__(
            f"variable {var!r} would be captured by quantifier over {binder!r} in {formula}"
        )


# ----------------------------------------------------------------------------
# Terms


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class Zero:
    def __str__(self):
        return "0"


@dataclass(frozen=True, slots=True)
class Succ:
    t: "Term"

    def __str__(self):
        return "S" + _term_str(self.t, 3)


@dataclass(frozen=True, slots=True)
class Add:
    l: "Term"
    r: "Term"

    def __str__(self):
        return _term_str(self)


@dataclass(frozen=True, slots=True)
class Mul:
    l: "Term"
    r: "Term"

    def __str__(self):
        return _term_str(self)


@dataclass(frozen=True, slots=True)
class Monus:
    l: "Term"
    r: "Term"

    def __str__(self):
        return _term_str(self)


Term = Union[Var, Zero, Succ, Add, Mul, Monus]

_TERM_PREC = {Monus: 0, Add: 1, Mul: 2}
_TERM_OP = {Monus: " -. ", Add: " + ", Mul: " * "}


def _term_str(t, ctx=0):
    # binary operators are left associative; a right operand of the same
    # precedence needs parentheses
    if isinstance(t, (Add, Mul, Monus)):
        p = _TERM_PREC[type(t)]
        s = _term_str(t.l, p) + _TERM_OP[type(t)] + _term_str(t.r, p + 1)
        return f"({s})" if p < ctx else s
    if isinstance(t, Succ):
        return "S" + _term_str(t.t, 3)
    return str(t)


# ----------------------------------------------------------------------------
# Formulas


@dataclass(frozen=True, slots=True)
class Top:
    def __str__(self):
        return "T"


@dataclass(frozen=True, slots=True)
class Bot:
    def __str__(self):
        return "F"


@dataclass(frozen=True, slots=True)
class Eq:
    l: Term
    r: Term

    def __str__(self):
        return f"{self.l} = {self.r}"


@dataclass(frozen=True, slots=True)
class Lt:
    l: Term
    r: Term

    def __str__(self):
        return f"{self.l} < {self.r}"


@dataclass(frozen=True, slots=True)
class And:
    l: "Formula"
    r: "Formula"

    def __str__(self):
        return _fmla_str(self)


@dataclass(frozen=True, slots=True)
class Or:
    l: "Formula"
    r: "Formula"

    def __str__(self):
        return _fmla_str(self)


@dataclass(frozen=True, slots=True)
class Exists:
    var: str
    body: "Formula"

    def __str__(self):
        return _fmla_str(self)


@dataclass(frozen=True, slots=True)
class Block:
    vars: tuple
    ante: "Formula"
    cons: "Formula"

    def __post_init__(self):
        if not isinstance(self.vars, tuple):
            object.__setattr__(self, "vars", tuple(self.vars))
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"repeated variable in block {self.vars}")

    def __str__(self):
        return _fmla_str(self)


@dataclass(frozen=True, slots=True)
class Neg:
    body: "Formula"

    def __str__(self):
        return _fmla_str(self)


@dataclass(frozen=True, slots=True)
class Imp:
    ante: "Formula"
    cons: "Formula"

    def __str__(self):
        return _fmla_str(self)


@dataclass(frozen=True, slots=True)
class ForallOne:
    var: str
    body: "Formula"

    def __str__(self):
        return _fmla_str(self)


Formula = Union[Top, Bot, Eq, Lt, And, Or, Exists, Block, Neg, Imp, ForallOne]
ATOMS = (Top, Bot, Eq, Lt)


def _fmla_str(a, ctx=0):
    # ctx: 0 = anywhere, 1 = operand of |, 2 = operand of &
    if isinstance(a, Or):
        s = f"{_fmla_str(a.l, 1)} | {_fmla_str(a.r, 2)}"
        return f"({s})" if ctx > 1 else s
    if isinstance(a, And):
        s = f"{_fmla_str(a.l, 2)} & {_fmla_str(a.r, 3)}"
        return f"({s})" if ctx > 2 else s
    if isinstance(a, Exists):
        return f"E {a.var}. {_fmla_str(a.body, 3)}"
    if isinstance(a, Block):
        inner = f"{_fmla_str(a.ante)} -> {_fmla_str(a.cons)}"
        if a.vars:
            return f"![{','.join(a.vars)}]({inner})"
        return f"({inner})"
    if isinstance(a, Neg):
        return f"~{_fmla_str(a.body, 3)}"
    if isinstance(a, Imp):
        return f"({_fmla_str(a.ante)} ~> {_fmla_str(a.cons)})"
    if isinstance(a, ForallOne):
        return f"A {a.var}. {_fmla_str(a.body, 3)}"
    return str(a)


@dataclass(frozen=True, slots=True)
class Sequent:
    ante: Formula
    cons: Formula

    def __str__(self):
        return f"{self.ante} => {self.cons}"


def print_formula(a: Formula) -> str:
    return str(a)


# ----------------------------------------------------------------------------
# Constructors and sugar


def numeral(n: int) -> Term:
    if n < 0:
        raise ValueError("numerals are non-negative")
    t: Term = Zero()
    for _ in range(n):
        t = Succ(t)
    return t


def numeral_value(t: Term):
    """Return n if ``t`` is the numeral S^n 0, else None."""
    n = 0
    while isinstance(t, Succ):
        t, n = t.t, n + 1
    return n if isinstance(t, Zero) else None


def var(name: str) -> Var:
    return Var(name)


def neg(a: Formula) -> Block:
    return Block((), a, Bot())


def imp(a: Formula, b: Formula) -> Block:
    return Block((), a, b)


def forall(vs, a: Formula, b: Formula) -> Block:
    if isinstance(vs, str):
        vs = (vs,)
    return Block(tuple(vs), a, b)


def le(s: Term, t: Term) -> Formula:
    return Or(Lt(s, t), Eq(s, t))


def divides(s: Term, t: Term) -> Formula:
    x = fresh_var("x", term_vars(s) | term_vars(t))
    return Exists(x, Eq(Mul(s, Var(x)), t))


def conj(fs: Iterable[Formula]) -> Formula:
    """Right-nested conjunction; the empty conjunction is Top."""
    fs = list(fs)
    if not fs:
        return Top()
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = And(f, out)
    return out


def disj(fs: Iterable[Formula]) -> Formula:
    """Right-nested disjunction; the empty disjunction is Bot."""
    fs = list(fs)
    if not fs:
        return Bot()
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Or(f, out)
    return out


def exists_many(vs: Iterable[str], body: Formula) -> Formula:
    for v in reversed(list(vs)):
        body = Exists(v, body)
    return body


def sum_terms(ts) -> Term:
    ts = list(ts)
    out = ts[0]
    for t in ts[1:]:
        out = Add(out, t)
    return out


# ----------------------------------------------------------------------------
# Variables


def term_vars(t: Term) -> frozenset:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Zero):
        return frozenset()
    if isinstance(t, Succ):
        return term_vars(t.t)
    return term_vars(t.l) | term_vars(t.r)


def free_vars(a) -> frozenset:
    if isinstance(a, Sequent):
        return free_vars(a.ante) | free_vars(a.cons)
    if isinstance(a, (Top, Bot)):
        return frozenset()
    if isinstance(a, (Eq, Lt)):
        return term_vars(a.l) | term_vars(a.r)
    if isinstance(a, (And, Or)):
        return free_vars(a.l) | free_vars(a.r)
    if isinstance(a, (Exists, ForallOne)):
        return free_vars(a.body) - {a.var}
    if isinstance(a, Block):
        return (free_vars(a.ante) | free_vars(a.cons)) - set(a.vars)
    if isinstance(a, Neg):
        return free_vars(a.body)
    if isinstance(a, Imp):
        return free_vars(a.ante) | free_vars(a.cons)
    raise TypeError(f"not a formula: {a!r}")


def bound_vars(a) -> frozenset:
    """Every variable bound by some quantifier occurring in ``a``."""
    if isinstance(a, Sequent):
        return bound_vars(a.ante) | bound_vars(a.cons)
    if isinstance(a, ATOMS):
        return frozenset()
    if isinstance(a, (And, Or)):
        return bound_vars(a.l) | bound_vars(a.r)
    if isinstance(a, (Exists, ForallOne)):
        return bound_vars(a.body) | {a.var}
    if isinstance(a, Block):
        return bound_vars(a.ante) | bound_vars(a.cons) | set(a.vars)
    if isinstance(a, Neg):
        return bound_vars(a.body)
    if isinstance(a, Imp):
        return bound_vars(a.ante) | bound_vars(a.cons)
    raise TypeError(f"not a formula: {a!r}")


def all_vars(a) -> frozenset:
    return free_vars(a) | bound_vars(a)


def fresh_var(base: str, avoid) -> str:
    avoid = set(avoid)
    name = base
    while name in avoid:
        name += "'"
    return name


def has_monus(a) -> bool:
    if isinstance(a, Monus):
        return True
    if isinstance(a, (Var, Zero, Top, Bot)):
        return False
    if isinstance(a, Succ):
        return has_monus(a.t)
    if isinstance(a, (Add, Mul, Eq, Lt, And, Or)):
        return has_monus(a.l) or has_monus(a.r)
    if isinstance(a, (Exists, ForallOne, Neg)):
        return has_monus(a.body)
    if isinstance(a, (Block, Imp, Sequent)):
        return has_monus(a.ante) or has_monus(a.cons)
    raise TypeError(f"unexpected node {a!r}")


# ----------------------------------------------------------------------------
# Substitution


def subst_term(t: Term, s: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return s.get(t.name, t)
    if isinstance(t, Zero):
        return t
    if isinstance(t, Succ):
        return Succ(subst_term(t.t, s))
    return type(t)(subst_term(t.l, s), subst_term(t.r, s))


def substitute(a, s: Mapping[str, Term]):
    """Simultaneously replace free occurrences of the variables in ``s``.

    Raises CaptureViolation instead of renaming when a replaced occurrence
    sits under a quantifier binding a variable of its replacement term.
    """
    s = {k: v for k, v in s.items() if not (isinstance(v, Var) and v.name == k)}
    if not s:
        return a
    return _subst(a, s)


def _subst(a, s):
    if isinstance(a, Sequent):
        return Sequent(_subst(a.ante, s), _subst(a.cons, s))
    if isinstance(a, (Top, Bot)):
        return a
    if isinstance(a, (Eq, Lt)):
        return type(a)(subst_term(a.l, s), subst_term(a.r, s))
    if isinstance(a, (And, Or)):
        return type(a)(_subst(a.l, s), _subst(a.r, s))
    if isinstance(a, Neg):
        return Neg(_subst(a.body, s))
    if isinstance(a, Imp):
        return Imp(_subst(a.ante, s), _subst(a.cons, s))
    if isinstance(a, (Exists, ForallOne, Block)):
        bound = (a.var,) if not isinstance(a, Block) else a.vars
        inner = {k: v for k, v in s.items() if k not in bound}
        body_fv = free_vars(a) if inner else frozenset()
        inner = {k: v for k, v in inner.items() if k in body_fv}
        if not inner:
            return a
        for k, v in inner.items():
            clash = term_vars(v) & set(bound)
            if clash:
                raise CaptureViolation(sorted(clash)[0], k, a)
        if isinstance(a, Block):
            return Block(a.vars, _subst(a.ante, inner), _subst(a.cons, inner))
        return type(a)(a.var, _subst(a.body, inner))
    raise TypeError(f"not a formula: {a!r}")


def rename_bound(a: Formula, old: str, new: str) -> Formula:
    """Alpha-rename every quantifier over ``old`` to ``new``.

    Raises ValueError if ``new`` already occurs in ``a``.
    """
    if new in all_vars(a):
        raise ValueError(f"{new!r} is not fresh for {a}")
    return _rename(a, old, new)


def _rename(a, old, new):
    if isinstance(a, ATOMS):
        return a
    if isinstance(a, (And, Or)):
        return type(a)(_rename(a.l, old, new), _rename(a.r, old, new))
    if isinstance(a, Neg):
        return Neg(_rename(a.body, old, new))
    if isinstance(a, Imp):
        return Imp(_rename(a.ante, old, new), _rename(a.cons, old, new))
    if isinstance(a, (Exists, ForallOne)):
        body = _rename(a.body, old, new)
        if a.var == old:
            return type(a)(new, substitute(body, {old: Var(new)}))
        return type(a)(a.var, body)
    if isinstance(a, Block):
        ante, cons = _rename(a.ante, old, new), _rename(a.cons, old, new)
        if old in a.vars:
            s = {old: Var(new)}
            vs = tuple(new if v == old else v for v in a.vars)
            return Block(vs, substitute(ante, s), substitute(cons, s))
        return Block(a.vars, ante, cons)
    raise TypeError(f"not a formula: {a!r}")


# ----------------------------------------------------------------------------
# Traversal helpers


def subformulas(a: Formula):
    """Yield ``a`` and all of its subformulas (pre-order)."""
    yield a
    if isinstance(a, (And, Or)):
        yield from subformulas(a.l)
        yield from subformulas(a.r)
    elif isinstance(a, (Exists, ForallOne, Neg)):
        yield from subformulas(a.body)
    elif isinstance(a, (Block, Imp)):
        yield from subformulas(a.ante)
        yield from subformulas(a.cons)


def size(a) -> int:
    return sum(1 for _ in subformulas(a))


def depth(a: Formula) -> int:
    """Logical grade: number of nested connectives/quantifiers."""
    if isinstance(a, ATOMS):
        return 0
    if isinstance(a, (And, Or)):
        return 1 + max(depth(a.l), depth(a.r))
    if isinstance(a, (Exists, ForallOne, Neg)):
        return 1 + depth(a.body)
    return 1 + max(depth(a.ante), depth(a.cons))


def to_lk(a: Formula) -> Formula:
    """Map fused blocks into first-order Neg/Imp/ForallOne.

    ``Block([], A, F)`` becomes ``Neg``, ``Block([], A, B)`` becomes ``Imp`` and
    ``Block([x], T, A)`` becomes ``ForallOne``.  Other blocks are unfolded as
    nested ``ForallOne`` over an ``Imp``.
    """
    if isinstance(a, ATOMS):
        return a
    if isinstance(a, (And, Or)):
        return type(a)(to_lk(a.l), to_lk(a.r))
    if isinstance(a, Exists):
        return Exists(a.var, to_lk(a.body))
    if isinstance(a, Block):
        ante, cons = to_lk(a.ante), to_lk(a.cons)
        if isinstance(a.ante, Top) and len(a.vars) == 1:
            return ForallOne(a.vars[0], cons)
        inner = Neg(ante) if isinstance(cons, Bot) else Imp(ante, cons)
        for v in reversed(a.vars):
            inner = ForallOne(v, inner)
        return inner
    if isinstance(a, Neg):
        return Neg(to_lk(a.body))
    if isinstance(a, Imp):
        return Imp(to_lk(a.ante), to_lk(a.cons))
    if isinstance(a, ForallOne):
        return ForallOne(a.var, to_lk(a.body))
    raise TypeError(a)


def from_lk(a: Formula) -> Formula:
    """Inverse direction: Neg/Imp/ForallOne become blocks."""
    if isinstance(a, ATOMS):
        return a
    if isinstance(a, (And, Or)):
        return type(a)(from_lk(a.l), from_lk(a.r))
    if isinstance(a, Exists):
        return Exists(a.var, from_lk(a.body))
    if isinstance(a, Block):
        return Block(a.vars, from_lk(a.ante), from_lk(a.cons))
    if isinstance(a, Neg):
        return Block((), from_lk(a.body), Bot())
    if isinstance(a, Imp):
        return Block((), from_lk(a.ante), from_lk(a.cons))
    if isinstance(a, ForallOne):
        return Block((a.var,), Top(), from_lk(a.body))
    raise TypeError(a)
