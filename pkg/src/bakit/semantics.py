"""Classical structures, bounded three-valued evaluation and Kripke forcing.

Elements are canonical: a natural number is a Python ``int`` and the
nonstandard element is the singleton ``INF``.  A structure attached to a
Kripke node is classical; the node's domain embeds into the domains of its
successors by identity on element ids.

Verdicts are ``True``, ``False`` or ``Unknown(bound)``.  Unknown is returned
only when a quantifier over an infinite carrier could not be settled by the
bounded candidate search nor by the static interval check.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, Union

from .classes import bounded_exists, is_positive
from .syntax import (
    Add, And, Block, Bot, Eq, Exists, ForallOne, Imp, Lt, Monus, Mul, Neg, Or,
    Sequent, Succ, Top, Var, Zero, free_vars, term_vars,
)


# ----------------------------------------------------------------------------
# elements


class _Inf:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Inf, ())


INF = _Inf()
Element = Union[int, _Inf]


def element_str(e) -> str:
    return "inf" if e is INF else str(e)


def element_from_json(v):
    if v in ("inf", "INF", "∞"):
        return INF
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise ValueError(f"not an element id: {v!r}")
    return v


def element_to_json(e):
    return "inf" if e is INF else e


# ----------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class Unknown:
    bound: int

    def __str__(self):
        return f"Unknown({self.bound})"


Truth3 = Union[bool, Unknown]


def t_and(a, b):
    if a is False or b is False:
        return False
    if a is True and b is True:
        return True
    return a if isinstance(a, Unknown) else b


def t_or(a, b):
    if a is True or b is True:
        return True
    if a is False and b is False:
        return False
    return a if isinstance(a, Unknown) else b


def t_not(a):
    return a if isinstance(a, Unknown) else (not a)


def verdict_str(v) -> str:
    return str(v) if isinstance(v, Unknown) else ("True" if v else "False")


@dataclass(frozen=True)
class EvalBound:
    witness_bound: int = 8
    include_inf: bool = True

    def __post_init__(self):
        if self.witness_bound < 0:
            raise ValueError("witness bound must be >= 0")


class UnassignedVariable(KeyError):
    pass


class MonusDisabled(ValueError):
    pass


# ----------------------------------------------------------------------------
# structures


class Structure:
    kind = "abstract"
    finite = False
    monus_enabled = False

    def contains(self, e) -> bool:
        raise NotImplementedError

    def succ(self, a):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def lt(self, a, b) -> bool:
        raise NotImplementedError

    def monus(self, a, b):
        raise MonusDisabled(f"cut-off is not interpreted in {self.kind}")

    def candidates(self, b: EvalBound):
        """(elements to search, whether they exhaust the carrier)"""
        raise NotImplementedError

    def below(self, n):
        """All elements c with c < n when that set is finite, else None."""
        raise NotImplementedError

    def sample(self, limit=32):
        raise NotImplementedError

    def to_json(self):
        return {"kind": self.kind}


@dataclass(frozen=True)
class StdN(Structure):
    """The standard model; cut-off is interpreted as truncated subtraction."""
    monus_enabled: bool = True
    kind = "StdN"

    def contains(self, e):
        return isinstance(e, int) and not isinstance(e, bool) and e >= 0

    def succ(self, a):
        return a + 1

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def lt(self, a, b):
        return a < b

    def monus(self, a, b):
        if not self.monus_enabled:
            return Structure.monus(self, a, b)
        return max(a - b, 0)

    def candidates(self, b):
        return range(b.witness_bound + 1), False

    def below(self, n):
        return range(n)

    def sample(self, limit=32):
        return list(range(limit + 1))

    def to_json(self):
        return {"kind": self.kind, "monus": self.monus_enabled}


@dataclass(frozen=True)
class NStar(Structure):
    """N together with one absorbing nonstandard element INF."""
    kind = "NStar"

    def contains(self, e):
        return e is INF or StdN().contains(e)

    def succ(self, a):
        return INF if a is INF else a + 1

    def add(self, a, b):
        return INF if (a is INF or b is INF) else a + b

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return INF if (a is INF or b is INF) else a * b

    def lt(self, a, b):
        if b is INF:
            return True
        if a is INF:
            return False
        return a < b

    def candidates(self, b):
        base = list(range(b.witness_bound + 1))
        return (base + [INF] if b.include_inf else base), False

    def below(self, n):
        return None if n is INF else range(n)

    def sample(self, limit=32):
        return list(range(limit + 1)) + [INF]


@dataclass(frozen=True)
class FiniteTable(Structure):
    """A finite structure given by explicit operation tables.

    ``succ`` maps a to Sa, ``add``/``mul`` map pairs, ``lt`` is the set of
    pairs (a, b) with a < b.  Missing table entries are errors.
    """
    carrier: tuple
    succ_table: Mapping
    add_table: Mapping
    mul_table: Mapping
    lt_set: frozenset
    monus_table: Mapping | None = None
    kind = "FiniteTable"
    finite = True

    def __post_init__(self):
        if not self.carrier:
            raise ValueError("carrier must be nonempty")
        els = set(self.carrier)
        for a in self.carrier:
            if self.succ_table.get(a) not in els:
                raise ValueError(f"successor of {a} missing or outside carrier")
            for b in self.carrier:
                for tab in (self.add_table, self.mul_table):
                    if tab.get((a, b)) not in els:
                        raise ValueError(f"operation table incomplete at {(a, b)}")

    @property
    def monus_enabled(self):
        return self.monus_table is not None

    def contains(self, e):
        return e in self.carrier

    def succ(self, a):
        return self.succ_table[a]

    def add(self, a, b):
        return self.add_table[(a, b)]

    def mul(self, a, b):
        return self.mul_table[(a, b)]

    def lt(self, a, b):
        return (a, b) in self.lt_set

    def monus(self, a, b):
        if self.monus_table is None:
            return Structure.monus(self, a, b)
        return self.monus_table[(a, b)]

    def candidates(self, b):
        return self.carrier, True

    def below(self, n):
        return [c for c in self.carrier if (c, n) in self.lt_set]

    def sample(self, limit=32):
        return list(self.carrier)

    def to_json(self):
        e = element_to_json
        out = {
            "kind": self.kind,
            "carrier": [e(a) for a in self.carrier],
            "succ": [[e(a), e(self.succ_table[a])] for a in self.carrier],
            "add": [[e(a), e(b), e(self.add_table[(a, b)])] for a in self.carrier for b in self.carrier],
            "mul": [[e(a), e(b), e(self.mul_table[(a, b)])] for a in self.carrier for b in self.carrier],
            "lt": sorted([[e(a), e(b)] for a, b in self.lt_set], key=str),
        }
        if self.monus_table is not None:
            out["monus"] = [[e(a), e(b), e(c)] for (a, b), c in self.monus_table.items()]
        return out

    @staticmethod
    def from_json(d):
        el = element_from_json
        carrier = tuple(el(a) for a in d["carrier"])
        monus = None
        if "monus" in d:
            monus = {(el(a), el(b)): el(c) for a, b, c in d["monus"]}
        return FiniteTable(
            carrier,
            {el(a): el(b) for a, b in d["succ"]},
            {(el(a), el(b)): el(c) for a, b, c in d["add"]},
            {(el(a), el(b)): el(c) for a, b, c in d["mul"]},
            frozenset((el(a), el(b)) for a, b in d["lt"]),
            monus,
        )


def structure_from_json(d) -> Structure:
    kind = d.get("kind")
    if kind == "StdN":
        return StdN(d.get("monus", True))
    if kind == "NStar":
        return NStar()
    if kind == "FiniteTable":
        return FiniteTable.from_json(d)
    raise ValueError(f"unknown structure kind {kind!r}")


def eval_term(s: Structure, t, asg: Mapping):
    if isinstance(t, Var):
        try:
            return asg[t.name]
        except KeyError:
            raise UnassignedVariable(t.name) from None
    if isinstance(t, Zero):
        return 0
    if isinstance(t, Succ):
        return s.succ(eval_term(s, t.t, asg))
    if isinstance(t, Add):
        return s.add(eval_term(s, t.l, asg), eval_term(s, t.r, asg))
    if isinstance(t, Mul):
        return s.mul(eval_term(s, t.l, asg), eval_term(s, t.r, asg))
    if isinstance(t, Monus):
        return s.monus(eval_term(s, t.l, asg), eval_term(s, t.r, asg))
    raise TypeError(t)


# ----------------------------------------------------------------------------
# static interval analysis over N and N*
#
# Bounds live in N u {inf}.  For N* an upper bound of math.inf means "any
# element, possibly INF"; a lower bound of math.inf means "exactly INF".


def _imul(a, b):
    if a == 0 or b == 0:
        return 0
    return a * b


def _interval(s, t, asg):
    if isinstance(t, Var):
        if t.name in asg:
            v = asg[t.name]
            v = math.inf if v is INF else v
            return v, v
        return 0, math.inf
    if isinstance(t, Zero):
        return 0, 0
    if isinstance(t, Succ):
        lo, hi = _interval(s, t.t, asg)
        return lo + 1, hi + 1
    if isinstance(t, Add):
        (a, b), (c, d) = _interval(s, t.l, asg), _interval(s, t.r, asg)
        return a + c, b + d
    if isinstance(t, Mul):
        (a, b), (c, d) = _interval(s, t.l, asg), _interval(s, t.r, asg)
        return _imul(a, c), _imul(b, d)
    if isinstance(t, Monus):
        _, hi = _interval(s, t.l, asg)
        return 0, hi
    raise TypeError(t)


def _static_atom(s, a, asg):
    if not isinstance(s, (StdN, NStar)):
        return None
    try:
        (a1, b1), (a2, b2) = _interval(s, a.l, asg), _interval(s, a.r, asg)
    except MonusDisabled:
        return None
    if isinstance(a, Eq):
        if b1 < a2 or b2 < a1:
            return False
        if a1 == b1 == a2 == b2:
            return True
        return None
    # Lt
    if isinstance(s, NStar) and a2 == math.inf:
        return True
    if b2 != math.inf and a1 >= b2:
        return False
    if b1 != math.inf and b1 < a2:
        return True
    return None


# ----------------------------------------------------------------------------
# Kripke models


@dataclass(frozen=True)
class Node:
    id: object
    reflexive: bool
    structure: Structure


@dataclass(frozen=True)
class KripkeModel:
    nodes: tuple
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate node ids")
        for a, b in self.edges:
            if a not in ids or b not in ids:
                raise ValueError(f"edge {(a, b)} mentions an unknown node")
            if a == b:
                raise ValueError("self-loops are expressed with the reflexive flag")
        object.__setattr__(self, "_index", {n.id: n for n in self.nodes})

    def node(self, k) -> Node:
        return self._index[k]

    def structure(self, k) -> Structure:
        return self._index[k].structure

    def successors(self, k):
        """Nodes k' with k < k' (including k itself when k is reflexive)."""
        out = [n.id for n in self.nodes if (k, n.id) in self.edges]
        if self._index[k].reflexive:
            out.insert(0, k)
        return out

    def upset(self, k):
        out = [k]
        out.extend(n.id for n in self.nodes if (k, n.id) in self.edges)
        return out

    def related(self, a, b) -> bool:
        return (a == b and self._index[a].reflexive) or (a, b) in self.edges

    def to_json(self):
        return {
            "nodes": [
                {"id": n.id, "reflexive": n.reflexive, "structure": n.structure.to_json()}
                for n in self.nodes
            ],
            "edges": sorted([list(e) for e in self.edges], key=str),
        }

    @staticmethod
    def from_json(d):
        nodes = tuple(
            Node(n["id"], bool(n.get("reflexive", False)), structure_from_json(n["structure"]))
            for n in d["nodes"]
        )
        return KripkeModel(nodes, frozenset(tuple(e) for e in d.get("edges", [])))


def single_node(structure: Structure, reflexive=True, node_id="k0") -> KripkeModel:
    return KripkeModel((Node(node_id, reflexive, structure),))


def make_Kstar() -> KripkeModel:
    """One irreflexive node carrying N*."""
    return KripkeModel((Node("kstar", False, NStar()),))


def _transitive_closure(pairs):
    rel = set(pairs)
    while True:
        new = {(a, d) for a, b in rel for c, d in rel if b == c} - rel
        if not new:
            return rel
        rel |= new


def add_root(m: KripkeModel, reflexive: bool, root_id="root") -> KripkeModel:
    """New root carrying N below every node of ``m``."""
    rid = root_id
    ids = {n.id for n in m.nodes}
    i = 0
    while rid in ids:
        i += 1
        rid = f"{root_id}{i}"
    edges = set(m.edges) | {(rid, n.id) for n in m.nodes}
    closure = _transitive_closure(edges)
    loops = {a for a, b in closure if a == b}
    strict = frozenset((a, b) for a, b in closure if a != b)
    nodes = (Node(rid, reflexive, StdN()),) + tuple(
        Node(n.id, n.reflexive or n.id in loops, n.structure) for n in m.nodes
    )
    return KripkeModel(nodes, strict)


# ----------------------------------------------------------------------------
# forcing engine


def _block_parts(a):
    if isinstance(a, Block):
        return a.vars, a.ante, a.cons
    if isinstance(a, Neg):
        return (), a.body, Bot()
    if isinstance(a, Imp):
        return (), a.ante, a.cons
    if isinstance(a, ForallOne):
        return (a.var,), Top(), a.body
    return None


class _Forcer:
    def __init__(self, model: KripkeModel, bound: EvalBound):
        self.m = model
        self.b = bound
        self.unknown = Unknown(bound.witness_bound)
        self.memo = {}
        self.fvs = {}

    def fv(self, a):
        hit = self.fvs.get(id(a))
        if hit is None:
            hit = (a, tuple(sorted(free_vars(a))))
            self.fvs[id(a)] = hit
        return hit[1]

    # -- closed forcing: every free variable of ``a`` is in ``asg``
    def force(self, k, a, asg):
        if isinstance(a, Top):
            return True
        if isinstance(a, Bot):
            return False
        s = self.m.structure(k)
        if isinstance(a, Eq):
            return eval_term(s, a.l, asg) == eval_term(s, a.r, asg)
        if isinstance(a, Lt):
            return s.lt(eval_term(s, a.l, asg), eval_term(s, a.r, asg))
        key = (k, id(a), tuple(asg[v] for v in self.fv(a)))
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        res = self._force(k, a, asg, s)
        self.memo[key] = res
        return res

    def _force(self, k, a, asg, s):
        if isinstance(a, And):
            left = self.force(k, a.l, asg)
            if left is False:
                return False
            return t_and(left, self.force(k, a.r, asg))
        if isinstance(a, Or):
            left = self.force(k, a.l, asg)
            if left is True:
                return True
            return t_or(left, self.force(k, a.r, asg))
        if isinstance(a, Exists):
            return self._exists(k, a, asg, s)
        parts = _block_parts(a)
        if parts is not None:
            return self._block(k, parts, asg)
        raise TypeError(a)

    def _exists(self, k, a, asg, s):
        x = a.var
        m = bounded_exists(a)
        cands, exhaustive = None, False
        body = a.body
        if m is not None:
            n = eval_term(s, m[1], asg)
            below = s.below(n)
            if below is not None:
                cands, exhaustive, body = below, True, m[2]
        if cands is None:
            cands, exhaustive = s.candidates(self.b)
        res = False
        inner = dict(asg)
        for c in cands:
            inner[x] = c
            v = self.force(k, body, inner)
            if v is True:
                return True
            if v is not False:
                res = v
        if res is False and not exhaustive:
            outer = {v: asg[v] for v in self.fv(a)}
            if self.static(k, a.body, outer) is not False:
                return self.unknown
        return res

    def _block(self, k, parts, asg):
        vs, ante, cons = parts
        res = True
        for k2 in self.m.successors(k):
            s2 = self.m.structure(k2)
            exhaustive = True
            if not vs:
                tuples = [()]
            else:
                bnd = None
                if (len(vs) == 1 and isinstance(ante, Lt) and ante.l == Var(vs[0])
                        and vs[0] not in term_vars(ante.r)):
                    bnd = s2.below(eval_term(s2, ante.r, asg))
                if bnd is not None:
                    tuples = [(c,) for c in bnd]
                else:
                    cands, exhaustive = s2.candidates(self.b)
                    tuples = itertools.product(cands, repeat=len(vs))
            local = True
            inner = dict(asg)
            for c in tuples:
                inner.update(zip(vs, c))
                av = self.force(k2, ante, inner)
                if av is False:
                    continue
                bv = self.force(k2, cons, inner)
                if bv is True:
                    continue
                if av is True and bv is False:
                    return False
                local = self.unknown
            if local is not True or not exhaustive:
                outer = {v: asg[v] for v in asg if v not in vs}
                if (self.static(k2, ante, outer) is False
                        or self.static(k2, cons, outer) is True):
                    local = True
                elif local is True:
                    local = self.unknown
            res = t_and(res, local)
        return res

    # -- static check, sound for all values of unassigned variables at k
    def static(self, k, a, asg):
        if isinstance(a, Top):
            return True
        if isinstance(a, Bot):
            return False
        if isinstance(a, (Eq, Lt)):
            return _static_atom(self.m.structure(k), a, asg)
        if isinstance(a, And):
            left, right = self.static(k, a.l, asg), self.static(k, a.r, asg)
            if left is False or right is False:
                return False
            return True if (left is True and right is True) else None
        if isinstance(a, Or):
            left, right = self.static(k, a.l, asg), self.static(k, a.r, asg)
            if left is True or right is True:
                return True
            return False if (left is False and right is False) else None
        if isinstance(a, Exists):
            inner = {v: c for v, c in asg.items() if v != a.var}
            return self.static(k, a.body, inner)
        parts = _block_parts(a)
        if parts is not None:
            vs, ante, cons = parts
            inner = {v: c for v, c in asg.items() if v not in vs}
            for k2 in self.m.successors(k):
                if not (self.static(k2, ante, inner) is False
                        or self.static(k2, cons, inner) is True):
                    return None
            return True
        raise TypeError(a)

    # -- universal closure over the free variables missing from ``asg``
    def tuples_at(self, k, vs):
        if not vs:
            return [()], True
        cands, exhaustive = self.m.structure(k).candidates(self.b)
        return itertools.product(cands, repeat=len(vs)), exhaustive

    def force_open(self, k, a, asg):
        missing = sorted(free_vars(a) - set(asg))
        if not missing:
            return self.force(k, a, asg)
        res = True
        for k2 in self.m.upset(k):
            tuples, exhaustive = self.tuples_at(k2, missing)
            local = True
            for c in tuples:
                v = self.force(k2, a, {**asg, **dict(zip(missing, c))})
                if v is False:
                    return False
                if v is not True:
                    local = v
            if local is not True or not exhaustive:
                local = True if self.static(k2, a, asg) is True else self.unknown
            res = t_and(res, local)
        return res

    def sequent(self, k, seq: Sequent, asg):
        """Returns (verdict, counterexample) where the latter is (node, assignment)."""
        missing = sorted((free_vars(seq.ante) | free_vars(seq.cons)) - set(asg))
        res = True
        for k2 in self.m.upset(k):
            tuples, exhaustive = self.tuples_at(k2, missing)
            local = True
            for c in tuples:
                full = {**asg, **dict(zip(missing, c))}
                av = self.force(k2, seq.ante, full)
                if av is False:
                    continue
                bv = self.force(k2, seq.cons, full)
                if bv is True:
                    continue
                if av is True and bv is False:
                    return False, (k2, full)
                local = self.unknown
            if local is not True or not exhaustive:
                if (self.static(k2, seq.ante, asg) is False
                        or self.static(k2, seq.cons, asg) is True):
                    local = True
                elif local is True:
                    local = self.unknown
            res = t_and(res, local)
        return res, None


def _check_asg(asg):
    return dict(asg or {})


def force(m: KripkeModel, k, a, asg=None, b: EvalBound = EvalBound()):
    return _Forcer(m, b).force_open(k, a, _check_asg(asg))


def force_sequent(m: KripkeModel, k, seq: Sequent, b: EvalBound = EvalBound(), asg=None):
    return _Forcer(m, b).sequent(k, seq, _check_asg(asg))[0]


def sequent_counterexample(m: KripkeModel, k, seq: Sequent, b: EvalBound = EvalBound(), asg=None):
    """(verdict, (node, assignment) or None) for ``k |- seq``."""
    return _Forcer(m, b).sequent(k, seq, _check_asg(asg))


def force_rule(m: KripkeModel, k, premises, conclusion: Sequent, b: EvalBound = EvalBound()):
    eng = _Forcer(m, b)
    res = True
    for k2 in m.upset(k):
        prem = True
        for p in premises:
            prem = t_and(prem, eng.sequent(k2, p, {})[0])
            if prem is False:
                break
        if prem is False:
            continue
        concl = eng.sequent(k2, conclusion, {})[0]
        if concl is True:
            continue
        if prem is True and concl is False:
            return False
        res = eng.unknown
    return res


def sat(s: Structure, a, asg=None, b: EvalBound = EvalBound()):
    """Classical satisfaction: forcing at a single reflexive node is Tarskian truth."""
    asg = _check_asg(asg)
    missing = free_vars(a) - set(asg)
    if missing:
        raise UnassignedVariable(sorted(missing)[0])
    return _Forcer(single_node(s), b).force("k0", a, asg)


def find_witness(s: Structure, vs, body, asg=None, b: EvalBound = EvalBound()):
    """First tuple over the candidate set making ``body`` true, or None."""
    asg = _check_asg(asg)
    eng = _Forcer(single_node(s), b)
    cands, _ = s.candidates(b)
    for c in itertools.product(cands, repeat=len(vs)):
        if eng.force("k0", body, {**asg, **dict(zip(vs, c))}) is True:
            return c
    return None


# ----------------------------------------------------------------------------
# model validation


@dataclass
class ValidationReport:
    ok: bool
    violations: list

    def __str__(self):
        if self.ok:
            return "ok"
        return "\n".join(self.violations)


def _domain_included(s1: Structure, s2: Structure) -> bool:
    if s1.finite:
        return all(s2.contains(e) for e in s1.carrier)
    if isinstance(s1, StdN):
        return isinstance(s2, (StdN, NStar))
    if isinstance(s1, NStar):
        return isinstance(s2, NStar)
    return False


def validate_model(m: KripkeModel, sample_limit: int = 32) -> ValidationReport:
    bad = []
    ids = [n.id for n in m.nodes]
    for a in ids:
        for b in ids:
            if not m.related(a, b):
                continue
            for c in ids:
                if m.related(b, c) and not m.related(a, c):
                    bad.append(f"transitivity: {a} < {b} < {c} but not {a} < {c}")
    for a in ids:
        for b in ids:
            if a == b or not m.related(a, b):
                continue
            s1, s2 = m.structure(a), m.structure(b)
            if not _domain_included(s1, s2):
                bad.append(f"domain: D({a}) is not included in D({b})")
                continue
            els = s1.sample(sample_limit)
            for x in els:
                if s1.succ(x) != s2.succ(x):
                    bad.append(f"persistence: S{element_str(x)} differs between {a} and {b}")
                for y in els:
                    if s1.add(x, y) != s2.add(x, y):
                        bad.append(f"persistence: {element_str(x)}+{element_str(y)} differs between {a} and {b}")
                    if s1.mul(x, y) != s2.mul(x, y):
                        bad.append(f"persistence: {element_str(x)}*{element_str(y)} differs between {a} and {b}")
                    if s1.lt(x, y) and not s2.lt(x, y):
                        bad.append(f"persistence: {element_str(x)}<{element_str(y)} holds at {a} but not at {b}")
                    if s1.monus_enabled and s2.monus_enabled and s1.monus(x, y) != s2.monus(x, y):
                        bad.append(f"persistence: {element_str(x)}-.{element_str(y)} differs between {a} and {b}")
    return ValidationReport(not bad, bad)


# ----------------------------------------------------------------------------
# overspill


HYPOTHESIS_NOT_MET = "hypothesis not met"


@dataclass
class OverspillReport:
    status: str  # PASS, FAIL, UNKNOWN or HYPOTHESIS_NOT_MET
    formula: str
    sample_range: int
    first_miss: object = None
    at_inf: object = None
    witness: object = None

    def to_json(self):
        return {
            "status": self.status,
            "formula": self.formula,
            "sample_range": self.sample_range,
            "first_miss": self.first_miss,
            "at_inf": None if self.at_inf is None else verdict_str(self.at_inf),
            "witness": None if self.witness is None else [element_to_json(e) for e in self.witness],
        }


def overspill_check(a, x: str, sample_range: int, b: EvalBound = EvalBound(64, True)) -> OverspillReport:
    if not is_positive(a):
        raise ValueError(f"formula is not positive: {a}")
    if free_vars(a) != {x}:
        raise ValueError(f"formula must have exactly the free variable {x!r}")
    b = EvalBound(b.witness_bound, True)
    s = NStar()
    eng = _Forcer(single_node(s), b)
    for n in range(sample_range + 1):
        v = eng.force("k0", a, {x: n})
        if v is not True:
            return OverspillReport(HYPOTHESIS_NOT_MET, str(a), sample_range, first_miss=n)
    v = eng.force("k0", a, {x: INF})
    status = "UNKNOWN" if isinstance(v, Unknown) else ("PASS" if v else "FAIL")
    witness = None
    if v is True:
        witness = _disjunct_witness(eng, s, a, {x: INF}, b)
    return OverspillReport(status, str(a), sample_range, at_inf=v, witness=witness)


def _disjunct_witness(eng, s, a, asg, b):
    """Witness tuple for the leftmost true disjunct with an existential prefix."""
    stack = [a]
    while stack:
        d = stack.pop()
        if isinstance(d, Or):
            stack.extend((d.r, d.l))
            continue
        if isinstance(d, Exists) and eng.force("k0", d, asg) is True:
            vs, body = [], d
            while isinstance(body, Exists):
                vs.append(body.var)
                body = body.body
            return find_witness(s, vs, body, asg, b)
    return None
