"""Proof trees for BQC + BA and the theory packs BA+U, BA_c, EBA and BA+Gamma.

A node records its conclusion, a rule id and the explicit bindings of the
rule's metavariables.  The checker recomputes the premises and conclusion
from the bindings and compares them with the tree; nothing is inferred by
matching.

Binding keys and their types:

=========  =======================
A, B, C    formula
x, y       variable name
xs, ys     tuple of variable names
s, t       term
ts         tuple of terms
side       ``"left"`` or ``"right"``
=========  =======================
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .classes import is_positive
from .parser import L, L_C, parse_formula, parse_sequent, parse_term
from .syntax import (
    ATOMS, Add, And, Block, Bot, Eq, Exists, ForallOne, Imp, Lt, Monus, Mul, Neg,
    Or, Sequent, Succ, Top, Var, Zero, bound_vars, free_vars, has_monus,
    substitute, term_vars,
)
from .transforms import positive_part, semi_positive_part

FORMULA_KEYS = ("A", "B", "C")
VAR_KEYS = ("x", "y")
VARS_KEYS = ("xs", "ys")
TERM_KEYS = ("s", "t")
TERMS_KEYS = ("ts",)
STR_KEYS = ("side",)


@dataclass(frozen=True)
class BaProof:
    conclusion: Sequent
    rule: str
    bind: dict = field(default_factory=dict, hash=False, compare=True)
    premises: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))


# ----------------------------------------------------------------------------
# theory packs


@dataclass(frozen=True)
class TheoryPack:
    name: str
    extra: tuple = ()          # (label, Sequent) pairs
    language: str = L
    monus_axioms: bool = False

    def axiom(self, label):
        for lab, seq in self.extra:
            if lab == label:
                return seq
        return None


def _p(text):
    return parse_sequent(text, L_C)


AXIOM_U = _p("x + z = y + z => x = y")
AXIOM_EBA = Sequent(Block((), Top(), Bot()), Bot())

BA = TheoryPack("BA")
BA_U = TheoryPack("BA+U", (("U", AXIOM_U),))
BA_C = TheoryPack("BA_c", (), L_C, True)
EBA = TheoryPack("EBA", (("EBA", AXIOM_EBA),))

PACKS = {"ba": BA, "ba-u": BA_U, "ba-c": BA_C, "eba": EBA}


def with_gamma(seqs, name="BA+Gamma", base: TheoryPack = BA) -> TheoryPack:
    """BA (or ``base``) extended by the given sequents, labelled G0, G1, ..."""
    extra = base.extra + tuple((f"G{i}", s) for i, s in enumerate(seqs))
    return TheoryPack(name, extra, base.language, base.monus_axioms)


def pack_is_positive(pack: TheoryPack) -> bool:
    return all(is_positive(s.ante) and is_positive(s.cons) for _, s in pack.extra)


# ----------------------------------------------------------------------------
# rule schemas


class RuleError(Exception):
    def __init__(self, kind, msg):
        self.kind = kind
        super().__init__(msg)


def _side(cond, msg):
    if not cond:
        raise RuleError("side-condition", msg)


def _block(vs, a, b):
    try:
        return Block(tuple(vs), a, b)
    except ValueError as e:
        raise RuleError("instantiation", str(e)) from None


def _sub(a, xs, ts):
    if len(xs) != len(ts):
        raise RuleError("binding", "xs and ts differ in length")
    if len(set(xs)) != len(xs):
        raise RuleError("binding", "substituted variables must be distinct")
    return substitute(a, dict(zip(xs, ts)))


def _tsvars(ts):
    out = set()
    for t in ts:
        out |= term_vars(t)
    return out


def _S(a, b):
    return Sequent(a, b)


def _le(s, t):
    return Or(Lt(s, t), Eq(s, t))


def _schema(rule, b, pack: TheoryPack, strict: bool):
    """Return (premise sequents, conclusion) for a rule instance."""
    A, B, C = b.get("A"), b.get("B"), b.get("C")
    if rule == "BQC-Ax1":
        return [], _S(A, A)
    if rule == "BQC-Ax2":
        return [], _S(A, Top())
    if rule == "BQC-Ax3":
        return [], _S(Bot(), A)
    if rule == "BQC-Ax4":
        return [], _S(And(A, Or(B, C)), Or(And(A, B), And(A, C)))
    if rule == "BQC-Ax5":
        x = b["x"]
        _side(x not in free_vars(A), f"Ax5: {x} is free in {A}")
        return [], _S(And(A, Exists(x, B)), Exists(x, And(A, B)))
    if rule == "BQC-Ax6":
        t = b["t"]
        return [], _S(Top(), Eq(t, t))
    if rule == "BQC-Ax7":
        x, y = b["x"], b["y"]
        ok = isinstance(A, (Top, Bot, Eq)) or (isinstance(A, Lt) and not strict)
        _side(ok, f"Ax7: {A} is not atomic")
        return [], _S(And(Eq(Var(x), Var(y)), A), substitute(A, {x: Var(y)}))
    if rule in ("BQC-Ax8", "BQC-Ax9", "BQC-Ax10"):
        xs = b["xs"]
        if rule == "BQC-Ax8":
            return [], _S(And(_block(xs, A, B), _block(xs, B, C)), _block(xs, A, C))
        if rule == "BQC-Ax9":
            return [], _S(And(_block(xs, A, B), _block(xs, A, C)), _block(xs, A, And(B, C)))
        return [], _S(And(_block(xs, B, A), _block(xs, C, A)), _block(xs, Or(B, C), A))
    if rule == "BQC-Ax11":
        xs, ts = b["xs"], b["ts"]
        clash = _tsvars(ts) & (bound_vars(A) | bound_vars(B))
        _side(not clash, f"Ax11: term variable(s) {sorted(clash)} bound in the block body")
        return [], _S(_block(xs, A, B), _block(xs, _sub(A, xs, ts), _sub(B, xs, ts)))
    if rule == "BQC-Ax12":
        xs, ys = b["xs"], b["ys"]
        lhs = _block(xs, A, B)
        clash = set(ys) & free_vars(lhs)
        _side(not clash, f"Ax12: {sorted(clash)} free on the left hand side")
        return [], _S(lhs, _block(ys, A, B))
    if rule == "BQC-Ax13":
        ys, x = b["ys"], b["x"]
        _side(x not in free_vars(A), f"Ax13: {x} is free in {A}")
        return [], _S(_block(tuple(ys) + (x,), B, A), _block(ys, Exists(x, B), A))
    if rule == "BQC-R14":
        return [_S(A, B), _S(B, C)], _S(A, C)
    if rule == "BQC-R15":
        return [_S(A, B), _S(A, C)], _S(A, And(B, C))
    if rule == "BQC-R15rev":
        side = b["side"]
        return [_S(A, And(B, C))], _S(A, B if side == "left" else C)
    if rule == "BQC-R16":
        return [_S(B, A), _S(C, A)], _S(Or(B, C), A)
    if rule == "BQC-R16rev":
        side = b["side"]
        return [_S(Or(B, C), A)], _S(B if side == "left" else C, A)
    if rule == "BQC-R17":
        xs, ts = b["xs"], b["ts"]
        a2, b2 = _sub(A, xs, ts), _sub(B, xs, ts)
        clash = _tsvars(ts) & (bound_vars(a2) | bound_vars(b2))
        _side(not clash, f"R17: term variable(s) {sorted(clash)} bound in the conclusion")
        return [_S(A, B)], _S(a2, b2)
    if rule in ("BQC-R18", "BQC-R18rev"):
        x = b["x"]
        _side(x not in free_vars(A), f"R18: {x} is free in {A}")
        if rule == "BQC-R18":
            return [_S(B, A)], _S(Exists(x, B), A)
        return [_S(Exists(x, B), A)], _S(B, A)
    if rule == "BQC-R19":
        xs = b["xs"]
        clash = set(xs) & free_vars(A)
        _side(not clash, f"R19: {sorted(clash)} free in {A}")
        return [_S(And(A, B), C)], _S(A, _block(xs, B, C))
    if rule == "BA-Ax1":
        return [], _S(Eq(Succ(b["s"]), Zero()), Bot())
    if rule == "BA-Ax2":
        s, t = b["s"], b["t"]
        return [], _S(Eq(Succ(s), Succ(t)), Eq(s, t))
    if rule == "BA-Ax3":
        s = b["s"]
        return [], _S(Top(), Eq(Add(s, Zero()), s))
    if rule == "BA-Ax4":
        s, t = b["s"], b["t"]
        return [], _S(Top(), Eq(Add(s, Succ(t)), Succ(Add(s, t))))
    if rule == "BA-Ax5":
        s = b["s"]
        return [], _S(Top(), Eq(Mul(s, Zero()), Zero()))
    if rule == "BA-Ax6":
        s, t = b["s"], b["t"]
        return [], _S(Top(), Eq(Mul(s, Succ(t)), Add(Mul(s, t), s)))
    if rule == "BA-Ax7":
        ys, x = tuple(b["ys"]), b["x"]
        vs = ys + (x,)
        step = substitute(A, {x: Succ(Var(x))})
        base = substitute(A, {x: Zero()})
        return [], _S(_block(vs, A, step), _block(vs, base, A))
    if rule == "BA-IndRule":
        x = b["x"]
        return [_S(A, substitute(A, {x: Succ(Var(x))}))], _S(substitute(A, {x: Zero()}), A)
    if rule in ("BAc-MonusLe", "BAc-MonusGt"):
        if not pack.monus_axioms:
            raise RuleError("theory", f"{rule} is not an axiom of {pack.name}")
        s, t = b["s"], b["t"]
        if rule == "BAc-MonusLe":
            return [], _S(_le(s, t), Eq(Monus(s, t), Zero()))
        return [], _S(_le(t, s), Eq(Monus(Succ(s), t), Succ(Monus(s, t))))
    if rule.startswith("Theory(") and rule.endswith(")"):
        label = rule[len("Theory("):-1]
        seq = pack.axiom(label)
        if seq is None:
            raise RuleError("theory", f"axiom {label!r} is not in {pack.name}")
        return [], seq
    raise RuleError("rule", f"unknown rule {rule!r}")


RULE_KEYS = {
    "BQC-Ax1": ("A",), "BQC-Ax2": ("A",), "BQC-Ax3": ("A",), "BQC-Ax4": ("A", "B", "C"),
    "BQC-Ax5": ("A", "x", "B"), "BQC-Ax6": ("t",), "BQC-Ax7": ("x", "y", "A"),
    "BQC-Ax8": ("xs", "A", "B", "C"), "BQC-Ax9": ("xs", "A", "B", "C"),
    "BQC-Ax10": ("xs", "A", "B", "C"), "BQC-Ax11": ("xs", "A", "B", "ts"),
    "BQC-Ax12": ("xs", "ys", "A", "B"), "BQC-Ax13": ("ys", "x", "A", "B"),
    "BQC-R14": ("A", "B", "C"), "BQC-R15": ("A", "B", "C"),
    "BQC-R15rev": ("A", "B", "C", "side"), "BQC-R16": ("A", "B", "C"),
    "BQC-R16rev": ("A", "B", "C", "side"), "BQC-R17": ("xs", "ts", "A", "B"),
    "BQC-R18": ("A", "B", "x"), "BQC-R18rev": ("A", "B", "x"),
    "BQC-R19": ("xs", "A", "B", "C"),
    "BA-Ax1": ("s",), "BA-Ax2": ("s", "t"), "BA-Ax3": ("s",), "BA-Ax4": ("s", "t"),
    "BA-Ax5": ("s",), "BA-Ax6": ("s", "t"), "BA-Ax7": ("ys", "x", "A"),
    "BA-IndRule": ("A", "x"), "BAc-MonusLe": ("s", "t"), "BAc-MonusGt": ("s", "t"),
}

FORBIDDEN_AFTER_POSITIVIZE = frozenset(
    {"BQC-Ax8", "BQC-Ax9", "BQC-Ax10", "BQC-Ax11", "BQC-Ax12", "BQC-Ax13", "BQC-R19", "BA-Ax7"}
)


def rule_keys(rule):
    if rule.startswith("Theory("):
        return ()
    return RULE_KEYS.get(rule)


def _validate_binding(rule, bind):
    keys = rule_keys(rule)
    if keys is None:
        raise RuleError("rule", f"unknown rule {rule!r}")
    missing = [k for k in keys if k not in bind]
    if missing:
        raise RuleError("binding", f"missing binding(s) {missing}")
    extra = [k for k in bind if k not in keys]
    if extra:
        raise RuleError("binding", f"unexpected binding(s) {extra}")
    if rule in ("BQC-R15rev", "BQC-R16rev") and bind["side"] not in ("left", "right"):
        raise RuleError("binding", "side must be 'left' or 'right'")


def instantiate(rule, bind, pack: TheoryPack = BA, strict=False):
    """Compute (premise sequents, conclusion) of a rule instance or raise RuleError."""
    _validate_binding(rule, bind)
    return _schema(rule, bind, pack, strict)


# ----------------------------------------------------------------------------
# checking


@dataclass
class NodeError:
    path: tuple
    rule: str
    kind: str
    message: str

    def __str__(self):
        where = "root" if not self.path else "root." + ".".join(map(str, self.path))
        return f"[{where}] {self.rule}: {self.kind}: {self.message}"


@dataclass
class CheckReport:
    ok: bool
    errors: list
    nodes: int = 0

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return f"ok ({self.nodes} nodes)"
        return "\n".join(str(e) for e in self.errors)


def _in_ba_language(a) -> bool:
    if isinstance(a, (Neg, Imp, ForallOne)):
        return False
    if isinstance(a, ATOMS):
        return True
    if isinstance(a, (And, Or)):
        return _in_ba_language(a.l) and _in_ba_language(a.r)
    if isinstance(a, Exists):
        return _in_ba_language(a.body)
    if isinstance(a, Block):
        return _in_ba_language(a.ante) and _in_ba_language(a.cons)
    return False


def check_proof(p: BaProof, pack: TheoryPack = BA, strict: bool = False) -> CheckReport:
    errors = []
    count = 0
    stack = [(p, ())]
    while stack:
        node, path = stack.pop()
        count += 1
        for i, q in enumerate(node.premises):
            stack.append((q, path + (i,)))
        concl = node.conclusion

        def err(kind, msg):
            errors.append(NodeError(path, node.rule, kind, msg))

        if not isinstance(concl, Sequent):
            err("instantiation", "conclusion is not a sequent")
            continue
        if not (_in_ba_language(concl.ante) and _in_ba_language(concl.cons)):
            err("language", "first-order connectives outside the block language")
            continue
        if pack.language != L_C and has_monus(concl):
            err("language", f"cut-off used outside {L_C}")
            continue
        try:
            prem, expect = instantiate(node.rule, node.bind, pack, strict)
        except RuleError as e:
            err(e.kind, str(e))
            continue
        except Exception as e:  # capture violations and malformed bindings
            err("instantiation", f"{type(e).__name__}: {e}")
            continue
        if len(prem) != len(node.premises):
            err("arity", f"expected {len(prem)} premise(s), found {len(node.premises)}")
            continue
        if expect != concl:
            err("instantiation", f"conclusion {concl} does not match {expect}")
        for i, (want, q) in enumerate(zip(prem, node.premises)):
            if q.conclusion != want:
                err("instantiation", f"premise {i} proves {q.conclusion}, expected {want}")
    errors.sort(key=lambda e: e.path)
    return CheckReport(not errors, errors, count)


def height(p: BaProof) -> int:
    return 1 + max((height(q) for q in p.premises), default=0)


def proof_size(p: BaProof) -> int:
    return 1 + sum(proof_size(q) for q in p.premises)


def rules_used(p: BaProof) -> set:
    out = {p.rule}
    for q in p.premises:
        out |= rules_used(q)
    return out


def iter_nodes(p: BaProof):
    yield p
    for q in p.premises:
        yield from iter_nodes(q)


def node(rule, premises=(), pack: TheoryPack = BA, **bind) -> BaProof:
    """Build a node whose conclusion is computed from the bindings.

    Raises RuleError if the premises do not prove the required sequents.
    """
    bind = {k: (tuple(v) if k in VARS_KEYS + TERMS_KEYS else v) for k, v in bind.items()}
    prem, concl = instantiate(rule, bind, pack)
    premises = tuple(premises)
    if len(prem) != len(premises):
        raise RuleError("arity", f"{rule}: expected {len(prem)} premises")
    for want, q in zip(prem, premises):
        if q.conclusion != want:
            raise RuleError("instantiation", f"{rule}: premise proves {q.conclusion}, expected {want}")
    return BaProof(concl, rule, bind, premises)


# ----------------------------------------------------------------------------
# positivization


class PreconditionError(ValueError):
    pass


def _map_bind(bind, f):
    return {k: (f(v) if k in FORMULA_KEYS else v) for k, v in bind.items()}


def _rebuild(rule, bind, premises, pack):
    prem, concl = instantiate(rule, bind, pack)
    return BaProof(concl, rule, bind, tuple(premises))


def _require(p, pack):
    if not pack_is_positive(pack):
        raise PreconditionError(f"theory {pack.name} has non-positive extra axioms")
    rep = check_proof(p, pack)
    if not rep.ok:
        raise PreconditionError(f"input proof does not check:\n{rep}")


def positivize_proof(p: BaProof, pack: TheoryPack = BA) -> BaProof:
    """Proof of A^E => B^E from a proof of A => B, same shape, no block rules."""
    _require(p, pack)
    return _positivize(p, pack)


def _positivize(p, pack):
    if p.rule in FORBIDDEN_AFTER_POSITIVIZE:
        # the conclusion's right side is a block, whose positive part is T
        a = positive_part(p.conclusion.ante)
        return node("BQC-Ax2", pack=pack, A=a)
    if p.rule.startswith("Theory("):
        return p
    prem = [_positivize(q, pack) for q in p.premises]
    return _rebuild(p.rule, _map_bind(p.bind, positive_part), prem, pack)


def semi_positivize_proof(p: BaProof, pack: TheoryPack = BA) -> BaProof:
    """Proof of A^V => B^V from a proof of A => B."""
    _require(p, pack)
    return _semi(p, pack)


_BLOCK_AXIOMS = frozenset({"BQC-Ax8", "BQC-Ax9", "BQC-Ax10", "BQC-Ax11", "BQC-Ax12", "BQC-Ax13", "BA-Ax7"})


def _semi(p, pack):
    if p.rule in _BLOCK_AXIOMS:
        return _rebuild(p.rule, _map_bind(p.bind, positive_part), [], pack)
    if p.rule == "BQC-R19":
        b = p.bind
        q = _positivize(p.premises[0], pack)
        r19 = _rebuild("BQC-R19", _map_bind(b, positive_part), [q], pack)
        a = b["A"]
        down = synth_semipos_to_pos(a)
        return node("BQC-R14", [down, r19], pack=pack,
                    A=semi_positive_part(a), B=positive_part(a), C=r19.conclusion.cons)
    if p.rule.startswith("Theory("):
        return p
    prem = [_semi(q, pack) for q in p.premises]
    return _rebuild(p.rule, _map_bind(p.bind, semi_positive_part), prem, pack)


# ----------------------------------------------------------------------------
# synthesis of A => A^E and A^V => A^E


def _ax1(a):
    return node("BQC-Ax1", A=a)


def _synth(a, src, leaf):
    """Proof of src(a) => positive_part(a); ``leaf`` handles atoms and blocks."""
    if isinstance(a, ATOMS) or isinstance(a, Block):
        return leaf(a)
    if isinstance(a, And):
        lhs = src(a)
        pl, pr = _synth(a.l, src, leaf), _synth(a.r, src, leaf)
        sl, sr = lhs.l, lhs.r
        left = node("BQC-R15rev", [_ax1(lhs)], A=lhs, B=sl, C=sr, side="left")
        right = node("BQC-R15rev", [_ax1(lhs)], A=lhs, B=sl, C=sr, side="right")
        tl = pl.conclusion.cons
        tr = pr.conclusion.cons
        gl = node("BQC-R14", [left, pl], A=lhs, B=sl, C=tl)
        gr = node("BQC-R14", [right, pr], A=lhs, B=sr, C=tr)
        return node("BQC-R15", [gl, gr], A=lhs, B=tl, C=tr)
    if isinstance(a, Or):
        lhs = src(a)
        pl, pr = _synth(a.l, src, leaf), _synth(a.r, src, leaf)
        tl, tr = pl.conclusion.cons, pr.conclusion.cons
        tgt = Or(tl, tr)
        il = node("BQC-R16rev", [_ax1(tgt)], A=tgt, B=tl, C=tr, side="left")
        ir = node("BQC-R16rev", [_ax1(tgt)], A=tgt, B=tl, C=tr, side="right")
        gl = node("BQC-R14", [pl, il], A=lhs.l, B=tl, C=tgt)
        gr = node("BQC-R14", [pr, ir], A=lhs.r, B=tr, C=tgt)
        return node("BQC-R16", [gl, gr], A=tgt, B=lhs.l, C=lhs.r)
    if isinstance(a, Exists):
        lhs = src(a)
        pb = _synth(a.body, src, leaf)
        tb = pb.conclusion.cons
        tgt = Exists(a.var, tb)
        intro = node("BQC-R18rev", [_ax1(tgt)], A=tgt, B=tb, x=a.var)
        g = node("BQC-R14", [pb, intro], A=lhs.body, B=tb, C=tgt)
        return node("BQC-R18", [g], A=tgt, B=lhs.body, x=a.var)
    raise TypeError(f"not in the block language: {a!r}")


def synth_pos_upper(a) -> BaProof:
    """BA proof of A => A^E."""
    def leaf(b):
        return _ax1(b) if isinstance(b, ATOMS) else node("BQC-Ax2", A=b)
    return _synth(a, lambda b: b, leaf)


def synth_semipos_to_pos(a) -> BaProof:
    """BA proof of A^V => A^E."""
    def leaf(b):
        return _ax1(b) if isinstance(b, ATOMS) else node("BQC-Ax2", A=semi_positive_part(b))
    return _synth(a, semi_positive_part, leaf)


# ----------------------------------------------------------------------------
# JSON


def _enc(k, v):
    if k in FORMULA_KEYS or k in TERM_KEYS:
        return str(v)
    if k in TERMS_KEYS:
        return [str(t) for t in v]
    if k in VARS_KEYS:
        return list(v)
    return v


def _dec(k, v, language):
    if k in FORMULA_KEYS:
        return parse_formula(v, language)
    if k in TERM_KEYS:
        return parse_term(v, language)
    if k in TERMS_KEYS:
        if isinstance(v, str):
            v = [s for s in v.split(",") if s.strip()]
        return tuple(parse_term(s, language) for s in v)
    if k in VARS_KEYS:
        if isinstance(v, str):
            v = [s.strip() for s in v.split(",") if s.strip()]
        return tuple(v)
    return v


def proof_to_json(p: BaProof) -> dict:
    return {
        "conclusion": str(p.conclusion),
        "rule": p.rule,
        "bind": {k: _enc(k, v) for k, v in p.bind.items()},
        "premises": [proof_to_json(q) for q in p.premises],
    }


def proof_from_json(d, language=L_C) -> BaProof:
    return BaProof(
        parse_sequent(d["conclusion"], language),
        d["rule"],
        {k: _dec(k, v, language) for k, v in d.get("bind", {}).items()},
        tuple(proof_from_json(q, language) for q in d.get("premises", [])),
    )


def dump_proof(p: BaProof, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(proof_to_json(p), fh, indent=1, ensure_ascii=False)
        fh.write("\n")


def load_proof(path, language=L_C) -> BaProof:
    with open(path, encoding="utf-8") as fh:
        return proof_from_json(json.load(fh), language)
