"""LK with equality axioms, arithmetical axioms and a class-restricted induction rule.

Sequents are pairs of tuples.  Rules follow the appendix presentation
literally: on the left the principal formula is the last one, on the right
it is the first one, and the exchange rules move formulas around.  The
checker computes each node's conclusion from its premises and bindings.

Three corrections to the printed rules are applied (see the decisions ledger):
the left implication rule takes ``D => A, D''`` as its first premise,
the function axioms for + and * read ``s=t, s'=t' => s+s' = t+t'``, and the
eigenvariable of the existential-left / universal-right rules must not be
free in the principal formula.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

from .classes import is_delta0, is_positive, is_quantifier_free
from .parser import L, L_C, parse_formula, parse_lk_sequent, parse_term
from .syntax import (
    ATOMS, Add, And, Block, Bot, CaptureViolation, Eq, Exists, ForallOne, Imp, Lt,
    Mul, Neg, Or, Succ, Top, Var, Zero, free_vars, substitute, subformulas,
)

# canonical rule ids; ASCII aliases are accepted on input
RULES = (
    "Ax", "Ex⇒", "⇒Ex", "W⇒", "⇒W", "C⇒", "⇒C", "Cut", "⇒⊤", "⊥⇒",
    "¬⇒", "⇒¬", "∧⇒L", "∧⇒R", "⇒∧", "∨⇒", "⇒∨L", "⇒∨R", "→⇒", "⇒→",
    "∃⇒", "⇒∃", "∀⇒", "⇒∀", "=-ref", "=-eqv", "S-fnc", "+-fnc", "·-fnc",
    "<-rel", "S-pos", "S-inj", "+-0", "+-S", "·-0", "·-S", "ind",
)
ALIASES = {
    "Ex=>": "Ex⇒", "=>Ex": "⇒Ex", "W=>": "W⇒", "=>W": "⇒W", "C=>": "C⇒", "=>C": "⇒C",
    "=>T": "⇒⊤", "F=>": "⊥⇒", "~=>": "¬⇒", "=>~": "⇒¬", "&=>L": "∧⇒L", "&=>R": "∧⇒R",
    "=>&": "⇒∧", "|=>": "∨⇒", "=>|L": "⇒∨L", "=>|R": "⇒∨R", "~>=>": "→⇒", "=>~>": "⇒→",
    "E=>": "∃⇒", "=>E": "⇒∃", "A=>": "∀⇒", "=>A": "⇒∀", "*-fnc": "·-fnc", "*-0": "·-0",
    "*-S": "·-S",
}
LEFT_LOGICAL = frozenset({"¬⇒", "∧⇒L", "∧⇒R", "∨⇒", "→⇒", "∃⇒", "∀⇒"})
RIGHT_LOGICAL = frozenset({"⇒¬", "⇒∧", "⇒∨L", "⇒∨R", "⇒→", "⇒∃", "⇒∀"})
EQUALITY_AXIOMS = frozenset({"=-ref", "=-eqv", "S-fnc", "+-fnc", "·-fnc", "<-rel"})
ARITH_AXIOMS = frozenset({"S-pos", "S-inj", "+-0", "+-S", "·-0", "·-S"})

FORMULA_KEYS = ("A", "other")
TERM_KEYS = ("s", "t", "s2", "t2")
VAR_KEYS = ("x", "y")
INT_KEYS = ("i",)


def canonical_rule(rule: str) -> str:
    return ALIASES.get(rule, rule)


@dataclass(frozen=True)
class LkProof:
    conclusion: tuple  # (ante tuple, cons tuple)
    rule: str
    bind: dict = field(default_factory=dict, hash=False)
    premises: tuple = ()

    def __post_init__(self):
        a, c = self.conclusion
        object.__setattr__(self, "conclusion", (tuple(a), tuple(c)))
        object.__setattr__(self, "premises", tuple(self.premises))

    @property
    def ante(self):
        return self.conclusion[0]

    @property
    def cons(self):
        return self.conclusion[1]


# ----------------------------------------------------------------------------
# formula classes


@dataclass(frozen=True)
class ClassPredicate:
    name: str
    test: Callable

    def __call__(self, a) -> bool:
        return bool(self.test(a))


POS = ClassPredicate("pos", is_positive)
DELTA0 = ClassPredicate("delta0", is_delta0)
OPEN = ClassPredicate("open", is_quantifier_free)
CLASSES = {"pos": POS, "delta0": DELTA0, "open": OPEN}


def closure_violations(cls: ClassPredicate, formulas) -> list:
    """Subformulas of accepted formulas that the class rejects (should be empty)."""
    bad = []
    for a in formulas:
        if not cls(a):
            continue
        for b in subformulas(a):
            if not cls(b):
                bad.append((a, b))
    return bad


@dataclass(frozen=True)
class LkTheory:
    """Extra non-logical axioms (sequents), referenced as ``Theory(label)``."""
    name: str = "I"
    axioms: tuple = ()  # (label, (ante, cons))

    def axiom(self, label):
        for lab, seq in self.axioms:
            if lab == label:
                return seq
        return None


PLAIN = LkTheory()


# ----------------------------------------------------------------------------
# rule semantics


class LkRuleError(Exception):
    def __init__(self, kind, msg):
        self.kind = kind
        super().__init__(msg)


def _fail(kind, msg):
    raise LkRuleError(kind, msg)


def _side(cond, msg):
    if not cond:
        _fail("side-condition", msg)


def _subst(a, x, t, what):
    try:
        return substitute(a, {x: t})
    except CaptureViolation as e:
        _fail("side-condition", f"{what}: {e}")


def _fv_list(fs):
    out = set()
    for a in fs:
        out |= free_vars(a)
    return out


def _need(cond, msg):
    if not cond:
        _fail("instantiation", msg)


def _last(seq_side, what):
    _need(len(seq_side) >= 1, f"{what}: empty side")
    return seq_side[-1]


def _first(seq_side, what):
    _need(len(seq_side) >= 1, f"{what}: empty side")
    return seq_side[0]


def conclude(rule, bind, prems, cls: ClassPredicate | None = None, theory: LkTheory = PLAIN):
    """Conclusion of a rule instance from premise sequents, or LkRuleError."""
    b = bind
    n = len(prems)
    arity = _arity(rule)
    if arity is None:
        _fail("rule", f"unknown rule {rule!r}")
    if n != arity:
        _fail("arity", f"expected {arity} premise(s), found {n}")

    A, other = b.get("A"), b.get("other")
    if rule == "Ax":
        return (A,), (A,)
    if rule == "⇒⊤":
        return (), (Top(),)
    if rule == "⊥⇒":
        return (Bot(),), ()
    if rule in EQUALITY_AXIOMS or rule in ARITH_AXIOMS:
        return _axiom(rule, b)
    if rule.startswith("Theory("):
        label = rule[len("Theory("):-1]
        seq = theory.axiom(label)
        if seq is None:
            _fail("theory", f"axiom {label!r} not in theory {theory.name}")
        return seq

    if n == 1:
        (da, dc), = prems
        da, dc = list(da), list(dc)
    if rule == "Ex⇒":
        i = b["i"]
        _need(0 <= i < len(da) - 1, "exchange index out of range")
        da[i], da[i + 1] = da[i + 1], da[i]
        return tuple(da), tuple(dc)
    if rule == "⇒Ex":
        i = b["i"]
        _need(0 <= i < len(dc) - 1, "exchange index out of range")
        dc[i], dc[i + 1] = dc[i + 1], dc[i]
        return tuple(da), tuple(dc)
    if rule == "W⇒":
        return tuple(da) + (A,), tuple(dc)
    if rule == "⇒W":
        return tuple(da), (A,) + tuple(dc)
    if rule == "C⇒":
        _need(len(da) >= 2 and da[-1] == da[-2], "contraction needs two equal last formulas")
        return tuple(da[:-1]), tuple(dc)
    if rule == "⇒C":
        _need(len(dc) >= 2 and dc[0] == dc[1], "contraction needs two equal first formulas")
        return tuple(da), tuple(dc[1:])
    if rule == "¬⇒":
        a = _first(dc, rule)
        return tuple(da) + (Neg(a),), tuple(dc[1:])
    if rule == "⇒¬":
        a = _last(da, rule)
        return tuple(da[:-1]), (Neg(a),) + tuple(dc)
    if rule in ("∧⇒L", "∧⇒R"):
        a = _last(da, rule)
        p = And(a, other) if rule == "∧⇒L" else And(other, a)
        return tuple(da[:-1]) + (p,), tuple(dc)
    if rule in ("⇒∨L", "⇒∨R"):
        a = _first(dc, rule)
        p = Or(a, other) if rule == "⇒∨L" else Or(other, a)
        return tuple(da), (p,) + tuple(dc[1:])
    if rule == "⇒→":
        a = _last(da, rule)
        bb = _first(dc, rule)
        return tuple(da[:-1]), (Imp(a, bb),) + tuple(dc[1:])
    if rule in ("∃⇒", "⇒∀"):
        x, y = b["x"], b["y"]
        inst = _subst(A, x, Var(y), rule)
        if rule == "∃⇒":
            _need(_last(da, rule) == inst, f"{rule}: last antecedent formula is not {inst}")
            ctx = da[:-1] + dc
            principal = Exists(x, A)
        else:
            _need(_first(dc, rule) == inst, f"{rule}: first succedent formula is not {inst}")
            ctx = da + dc[1:]
            principal = ForallOne(x, A)
        _side(y not in _fv_list(ctx), f"{rule}: eigenvariable {y} free in the context")
        _side(y not in free_vars(principal), f"{rule}: eigenvariable {y} free in {principal}")
        if rule == "∃⇒":
            return tuple(da[:-1]) + (principal,), tuple(dc)
        return tuple(da), (principal,) + tuple(dc[1:])
    if rule in ("⇒∃", "∀⇒"):
        x, t = b["x"], b["t"]
        inst = _subst(A, x, t, rule)
        if rule == "⇒∃":
            _need(_first(dc, rule) == inst, f"{rule}: first succedent formula is not {inst}")
            return tuple(da), (Exists(x, A),) + tuple(dc[1:])
        _need(_last(da, rule) == inst, f"{rule}: last antecedent formula is not {inst}")
        return tuple(da[:-1]) + (ForallOne(x, A),), tuple(dc)
    if rule == "ind":
        x, t = b["x"], b["t"]
        _need(_last(da, rule) == A, f"ind: last antecedent formula is not {A}")
        step = _subst(A, x, Succ(Var(x)), rule)
        _need(_first(dc, rule) == step, f"ind: first succedent formula is not {step}")
        ctx = da[:-1] + dc[1:]
        _side(x not in _fv_list(ctx), f"ind: induction variable {x} free in the context")
        if cls is not None and not cls(A):
            _fail("class", f"induction formula {A} is not in class {cls.name}")
        base = _subst(A, x, Zero(), rule)
        goal = _subst(A, x, t, rule)
        return tuple(da[:-1]) + (base,), (goal,) + tuple(dc[1:])

    (la, lc), (ra, rc) = prems
    if rule == "Cut":
        a = _first(lc, rule)
        _need(a == A, f"Cut: left premise's first succedent formula is not {A}")
        _need(_last(ra, rule) == A, f"Cut: right premise's last antecedent formula is not {A}")
        return tuple(la) + tuple(ra[:-1]), tuple(lc[1:]) + tuple(rc)
    if rule == "⇒∧":
        a, bb = _first(lc, rule), _first(rc, rule)
        return tuple(la) + tuple(ra), (And(a, bb),) + tuple(lc[1:]) + tuple(rc[1:])
    if rule == "∨⇒":
        a, bb = _last(la, rule), _last(ra, rule)
        return tuple(la[:-1]) + tuple(ra[:-1]) + (Or(a, bb),), tuple(lc) + tuple(rc)
    if rule == "→⇒":
        a, bb = _first(lc, rule), _last(ra, rule)
        return tuple(la) + tuple(ra[:-1]) + (Imp(a, bb),), tuple(lc[1:]) + tuple(rc)
    _fail("rule", f"unknown rule {rule!r}")


def _axiom(rule, b):
    s, t, s2, t2 = b.get("s"), b.get("t"), b.get("s2"), b.get("t2")
    if rule == "=-ref":
        return (), (Eq(s, s),)
    if rule == "=-eqv":
        return (Eq(s, t), Eq(s2, t2), Eq(s, s2)), (Eq(t, t2),)
    if rule == "S-fnc":
        return (Eq(s, t),), (Eq(Succ(s), Succ(t)),)
    if rule == "+-fnc":
        return (Eq(s, t), Eq(s2, t2)), (Eq(Add(s, s2), Add(t, t2)),)
    if rule == "·-fnc":
        return (Eq(s, t), Eq(s2, t2)), (Eq(Mul(s, s2), Mul(t, t2)),)
    if rule == "<-rel":
        return (Eq(s, t), Eq(s2, t2), Lt(s, s2)), (Lt(t, t2),)
    if rule == "S-pos":
        return (Eq(Succ(s), Zero()),), ()
    if rule == "S-inj":
        return (Eq(Succ(s), Succ(t)),), (Eq(s, t),)
    if rule == "+-0":
        return (), (Eq(Add(s, Zero()), s),)
    if rule == "+-S":
        return (), (Eq(Add(s, Succ(t)), Succ(Add(s, t))),)
    if rule == "·-0":
        return (), (Eq(Mul(s, Zero()), Zero()),)
    return (), (Eq(Mul(s, Succ(t)), Add(Mul(s, t), s)),)


RULE_KEYS = {
    "Ax": ("A",), "Ex⇒": ("i",), "⇒Ex": ("i",), "W⇒": ("A",), "⇒W": ("A",),
    "C⇒": (), "⇒C": (), "Cut": ("A",), "⇒⊤": (), "⊥⇒": (), "¬⇒": (), "⇒¬": (),
    "∧⇒L": ("other",), "∧⇒R": ("other",), "⇒∧": (), "∨⇒": (), "⇒∨L": ("other",),
    "⇒∨R": ("other",), "→⇒": (), "⇒→": (), "∃⇒": ("A", "x", "y"), "⇒∃": ("A", "x", "t"),
    "∀⇒": ("A", "x", "t"), "⇒∀": ("A", "x", "y"), "=-ref": ("s",),
    "=-eqv": ("s", "t", "s2", "t2"), "S-fnc": ("s", "t"), "+-fnc": ("s", "t", "s2", "t2"),
    "·-fnc": ("s", "t", "s2", "t2"), "<-rel": ("s", "t", "s2", "t2"), "S-pos": ("s",),
    "S-inj": ("s", "t"), "+-0": ("s",), "+-S": ("s", "t"), "·-0": ("s",), "·-S": ("s", "t"),
    "ind": ("A", "x", "t"),
}


def _arity(rule):
    if rule.startswith("Theory("):
        return 0
    if rule not in RULE_KEYS:
        return None
    if rule in ("Cut", "⇒∧", "∨⇒", "→⇒"):
        return 2
    if rule in ("Ax", "⇒⊤", "⊥⇒") or rule in EQUALITY_AXIOMS or rule in ARITH_AXIOMS:
        return 0
    return 1


def rule_keys(rule):
    if rule.startswith("Theory("):
        return ()
    return RULE_KEYS.get(rule)


def _validate(rule, bind):
    keys = rule_keys(rule)
    if keys is None:
        _fail("rule", f"unknown rule {rule!r}")
    missing = [k for k in keys if k not in bind]
    if missing:
        _fail("binding", f"missing binding(s) {missing}")
    extra = [k for k in bind if k not in keys]
    if extra:
        _fail("binding", f"unexpected binding(s) {extra}")


def lk_node(rule, premises=(), cls=None, theory: LkTheory = PLAIN, **bind) -> LkProof:
    """Build a node with its conclusion computed from premises and bindings."""
    rule = canonical_rule(rule)
    _validate(rule, bind)
    premises = tuple(premises)
    concl = conclude(rule, bind, [q.conclusion for q in premises], cls, theory)
    return LkProof(concl, rule, dict(bind), premises)


# ----------------------------------------------------------------------------
# checking


@dataclass
class LkError:
    path: tuple
    rule: str
    kind: str
    message: str

    def __str__(self):
        where = "root" if not self.path else "root." + ".".join(map(str, self.path))
        return f"[{where}] {self.rule}: {self.kind}: {self.message}"


@dataclass
class LkReport:
    ok: bool
    errors: list
    nodes: int = 0

    def __bool__(self):
        return self.ok

    def __str__(self):
        return f"ok ({self.nodes} nodes)" if self.ok else "\n".join(map(str, self.errors))


def check_lk(p: LkProof, cls: ClassPredicate | None = POS, theory: LkTheory = PLAIN) -> LkReport:
    errors = []
    count = 0
    stack = [(p, ())]
    while stack:
        node, path = stack.pop()
        count += 1
        for i, q in enumerate(node.premises):
            stack.append((q, path + (i,)))
        try:
            _validate(node.rule, node.bind)
            got = conclude(node.rule, node.bind, [q.conclusion for q in node.premises], cls, theory)
        except LkRuleError as e:
            errors.append(LkError(path, node.rule, e.kind, str(e)))
            continue
        except (KeyError, TypeError, ValueError) as e:
            errors.append(LkError(path, node.rule, "instantiation", f"{type(e).__name__}: {e}"))
            continue
        if got != node.conclusion:
            errors.append(LkError(path, node.rule, "instantiation",
                                  f"conclusion {show_sequent(node.conclusion)} does not match "
                                  f"{show_sequent(got)}"))
    errors.sort(key=lambda e: e.path)
    return LkReport(not errors, errors, count)


# ----------------------------------------------------------------------------
# utilities


def show_sequent(seq) -> str:
    a, c = seq
    left = ", ".join(map(str, a))
    right = ", ".join(map(str, c))
    return f"{left} => {right}".strip()


def iter_nodes(p: LkProof):
    yield p
    for q in p.premises:
        yield from iter_nodes(q)


def lk_size(p: LkProof) -> int:
    return 1 + sum(lk_size(q) for q in p.premises)


def lk_height(p: LkProof) -> int:
    return 1 + max((lk_height(q) for q in p.premises), default=0)


def all_formulas(p: LkProof):
    for n in iter_nodes(p):
        yield from n.ante
        yield from n.cons


def cut_formulas(p: LkProof):
    return [n.bind["A"] for n in iter_nodes(p) if n.rule == "Cut"]


def degree(a) -> int:
    """Number of connectives and quantifiers."""
    if isinstance(a, ATOMS):
        return 0
    if isinstance(a, (And, Or)):
        return 1 + degree(a.l) + degree(a.r)
    if isinstance(a, (Exists, ForallOne)):
        return 1 + degree(a.body)
    if isinstance(a, Neg):
        return 1 + degree(a.body)
    if isinstance(a, (Imp, Block)):
        return 1 + degree(a.ante) + degree(a.cons)
    raise TypeError(a)


def ba_to_lk(seq):
    """BA sequent A => B as the LK sequent ([A], [B])."""
    return (seq.ante,), (seq.cons,)


# ----------------------------------------------------------------------------
# JSON


def _enc(k, v):
    if k in FORMULA_KEYS or k in TERM_KEYS:
        return str(v)
    return v


def _dec(k, v, language):
    if k in FORMULA_KEYS:
        return parse_formula(v, language)
    if k in TERM_KEYS:
        return parse_term(v, language)
    if k in INT_KEYS:
        return int(v)
    return v


def lk_to_json(p: LkProof) -> dict:
    return {
        "conclusion": show_sequent(p.conclusion),
        "rule": p.rule,
        "bind": {k: _enc(k, v) for k, v in p.bind.items()},
        "premises": [lk_to_json(q) for q in p.premises],
    }


def lk_from_json(d, language=L) -> LkProof:
    return LkProof(
        parse_lk_sequent(d["conclusion"], language),
        canonical_rule(d["rule"]),
        {k: _dec(k, v, language) for k, v in d.get("bind", {}).items()},
        tuple(lk_from_json(q, language) for q in d.get("premises", [])),
    )


def dump_lk(p: LkProof, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(lk_to_json(p), fh, indent=1, ensure_ascii=False)
        fh.write("\n")


def load_lk(path, language=L_C) -> LkProof:
    with open(path, encoding="utf-8") as fh:
        return lk_from_json(json.load(fh), language)
