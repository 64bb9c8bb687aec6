"""Registry of reproducible countermodel and construction scenarios.

Each scenario returns a :class:`ScenarioReport` whose assertions carry the
evidence (assignments, witnesses, node ids, rule ids) needed to re-check
them by hand.  Reports contain no timings so that repeated runs produce
identical JSON.
"""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .ba_fixtures import ba_fixtures
from .classes import is_positive, strip_exists
from .cutelim import eliminate_cuts_outside, offending_cuts
from .lk_fixtures import lk_fixtures
from .oracle import NatOracle
from .parser import parse_formula
from .proofs_ba import (
    FORBIDDEN_AFTER_POSITIVIZE, PreconditionError, check_proof, height, pack_is_positive,
    positivize_proof, rules_used,
    semi_positivize_proof, synth_semipos_to_pos,
)
from .proofs_lk import POS, check_lk, show_sequent
from .semantics import (
    INF, EvalBound, NStar, Unknown, add_root, element_to_json, find_witness, force,
    make_Kstar, overspill_check, sequent_counterexample, validate_model,
)
from .syntax import (
    And, Block, Eq, Exists, Lt, Or, Sequent, Succ, Top, Var, divides, numeral, substitute,
)
from .transforms import TotalizerInput, positive_part, semi_positive_part, sigma1_totalizer

PASS, FAIL, UNKNOWN = "PASS", "FAIL", "UNKNOWN"


class UnknownScenario(KeyError):
    pass


def _asg_str(asg):
    return ", ".join(f"{k}={element_to_json(v)}" for k, v in sorted(asg.items()))


def _asg_json(asg):
    return {k: element_to_json(v) for k, v in sorted(asg.items())}


def _jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    return str(v)


@dataclass
class Assertion:
    description: str
    expected: object          # True, False or "ok"
    actual: object
    provenance: str
    evidence: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        if isinstance(self.actual, Unknown):
            return UNKNOWN
        if isinstance(self.expected, bool):
            return PASS if self.actual is self.expected else FAIL
        return PASS if self.actual == self.expected else FAIL

    def to_json(self):
        return {
            "description": self.description,
            "expected": _jsonable(self.expected),
            "actual": _jsonable(self.actual),
            "status": self.status,
            "provenance": self.provenance,
            "evidence": self.evidence,
        }


@dataclass
class ScenarioReport:
    name: str
    summary: str
    assertions: list = field(default_factory=list)
    elapsed: float = 0.0      # wall time, excluded from JSON

    @property
    def status(self) -> str:
        st = [a.status for a in self.assertions]
        if FAIL in st:
            return FAIL
        if UNKNOWN in st:
            return UNKNOWN
        return PASS

    @property
    def exit_code(self) -> int:
        return {PASS: 0, FAIL: 1, UNKNOWN: 2}[self.status]

    def to_json(self):
        return {
            "scenario": self.name,
            "summary": self.summary,
            "status": self.status,
            "assertions": [a.to_json() for a in self.assertions],
        }

    def render(self) -> str:
        lines = [f"{self.status} {self.name}: {self.summary}"]
        for a in self.assertions:
            lines.append(f"  [{a.status}] {a.description} (expected {_jsonable(a.expected)}, "
                         f"got {_jsonable(a.actual)})")
        return "\n".join(lines)


_REGISTRY: dict = {}


def scenario(name, summary):
    def deco(fn):
        _REGISTRY[name] = (summary, fn)
        return fn
    return deco


def scenario_names():
    return list(_REGISTRY)


def run_scenario(name) -> ScenarioReport:
    if name not in _REGISTRY:
        raise UnknownScenario(f"unknown scenario {name!r}; known: {', '.join(_REGISTRY)}")
    summary, fn = _REGISTRY[name]
    rep = ScenarioReport(name, summary)
    t = time.perf_counter()
    fn(rep.assertions)
    rep.elapsed = time.perf_counter() - t
    return rep


def run_all(names=None, parallel: bool = False):
    names = list(names or _REGISTRY)
    if not parallel:
        return [run_scenario(n) for n in names]
    with ProcessPoolExecutor() as ex:
        return list(ex.map(run_scenario, names))


def overall_exit_code(reports) -> int:
    codes = {r.exit_code for r in reports}
    if 1 in codes:
        return 1
    if 2 in codes:
        return 2
    return 0


# ----------------------------------------------------------------------------
# shared builders

F = parse_formula
KSTAR_BOUND = EvalBound(8, True)


def uniqueness_sequent(a, y, u_name="u", v_name="v") -> Sequent:
    """A[y/u] & A[y/v] => u = v"""
    return Sequent(
        And(substitute(a, {y: Var(u_name)}), substitute(a, {y: Var(v_name)})),
        Eq(Var(u_name), Var(v_name)),
    )


def _force_assert(out, m, k, a, asg, expected, provenance, witness_vars=None):
    val = force(m, k, a, asg, KSTAR_BOUND)
    ev = {"node": k, "formula": str(a), "assignment": _asg_json(asg)}
    if witness_vars:
        vs, body = witness_vars
        w = find_witness(m.structure(k), vs, body, asg, KSTAR_BOUND)
        ev["witness"] = None if w is None else dict(zip(vs, map(element_to_json, w)))
    out.append(Assertion(f"{k} forces {a} at {_asg_str(asg)}", expected, val, provenance, ev))


def _refute_assert(out, m, k, seq, asg, expected_cx, provenance):
    """Sequent fails at ``k``; the engine's counterexample must match ``expected_cx``."""
    val, cx = sequent_counterexample(m, k, seq, KSTAR_BOUND, asg)
    ev = {"node": k, "sequent": str(seq), "fixed": _asg_json(asg or {})}
    if cx is not None:
        ev["counterexample"] = {"node": cx[0], "assignment": _asg_json(cx[1])}
    out.append(Assertion(f"{k} does not force {seq}", False, val, provenance, ev))
    if expected_cx is not None and val is False:
        node, want = expected_cx
        got = {} if cx is None else {kk: cx[1].get(kk) for kk in want}
        match = cx is not None and cx[0] == node and got == want
        out.append(Assertion(
            f"counterexample is {_asg_str(want)} at {node}", True, match, provenance,
            {"expected": _asg_json(want), "got": ev.get("counterexample")},
        ))


# ----------------------------------------------------------------------------
# countermodel scenarios

CUTOFF = F("(x < y & z = 0) | x = y + z")


@scenario("cutoff-uniqueness-failure",
          "the cut-off graph is forced total-valued twice at (inf, inf), so its uniqueness sequent fails in K*")
def _cutoff(out):
    k = make_Kstar()
    prov = "cut-off graph is not provably unique in BA; values derived by N* evaluation"
    _force_assert(out, k, "kstar", CUTOFF, {"x": INF, "y": INF, "z": 0}, True, prov)
    sx = substitute(CUTOFF, {"x": Succ(Var("x"))})
    _force_assert(out, k, "kstar", sx, {"x": INF, "y": INF, "z": 1}, True, prov + "; x := S inf")
    us = uniqueness_sequent(CUTOFF, "z")
    _refute_assert(out, k, "kstar", us, None, ("kstar", {"x": INF, "y": INF, "u": 0, "v": 1}), prov)


EVEN = F("((E w. x = w + w) & z = S0) | ((E w. x = w + w + S0) & z = 0)")
EVEN_B = Exists("z", And(EVEN, F("(z = 0 & y = 0) | (0 < z & y = S0)")))


@scenario("even-undecidable",
          "the characteristic function of Even is forced to take both values at inf")
def _even(out):
    k = make_Kstar()
    prov = "positive graph B(x,y) of the Even characteristic function; witnesses derived"
    for y in (0, 1):
        _force_assert(out, k, "kstar", EVEN_B, {"x": INF, "y": y}, True, prov,
                      witness_vars=(["z"], EVEN_B.body))
    us = uniqueness_sequent(EVEN_B, "y")
    _refute_assert(out, k, "kstar", us, {"x": INF}, ("kstar", {"x": INF, "u": 0, "v": 1}), prov)
    oracle = NatOracle(search_limit=8)   # w <= x <= 8 suffices
    bad = []
    for n in range(9):
        for y in range(3):
            hit = oracle.exists_upto(["z"], EVEN_B.body, {"x": n, "y": y}, 8)
            want = y == (1 if n % 2 == 0 else 0)
            if (hit is not None) != want:
                bad.append([n, y])
    out.append(Assertion("in N, B(n, y) holds iff y = [n even] for n <= 8, y <= 2", True, not bad,
                         "sanity check of the positive graph; oracle derived", {"mismatches": bad}))


def prime_formula(y="y"):
    """![d](d | y -> d = S0 | d = y) & S0 < y"""
    t = Var(y)
    return And(Block(("d",), divides(Var("d"), t), Or(Eq(Var("d"), numeral(1)), Eq(Var("d"), t))),
               Lt(numeral(1), t))


@scenario("prime-divisor-failure",
          "K* forces primality of inf while 2 divides inf")
def _prime(out):
    k = make_Kstar()
    prov = "primality is not BA-decidable; values derived"
    _force_assert(out, k, "kstar", prime_formula("y"), {"y": INF}, True, prov + "; block vacuous at an irreflexive node")
    two = divides(numeral(2), Var("x"))
    _force_assert(out, k, "kstar", two, {"x": INF}, True, prov, witness_vars=([two.var], two.body))
    px = prime_formula("x")
    seq = Sequent(And(px, divides(Var("y"), Var("x"))), Or(Eq(Var("y"), numeral(1)), Eq(Var("y"), Var("x"))))
    asg = {"x": INF, "y": 2}
    val = sequent_counterexample(k, "kstar", seq, KSTAR_BOUND, asg)[0]
    out.append(Assertion(f"kstar does not force {seq} at (x, y) = (inf, 2)", False, val, prov,
                         {"node": "kstar", "sequent": str(seq), "assignment": _asg_json(asg)}))


@scenario("cancellation-U-failure", "additive cancellation fails in K*")
def _cancel(out):
    k = make_Kstar()
    seq = Sequent(F("x + z = y + z"), F("x = y"))
    prov = "axiom U is not derivable in BA; counterexample derived"
    _refute_assert(out, k, "kstar", seq, None, None, prov)
    asg = {"x": 0, "y": 1, "z": INF}
    val = sequent_counterexample(k, "kstar", seq, KSTAR_BOUND, asg)[0]
    out.append(Assertion("fails at (x, y, z) = (0, S0, inf)", False, val, prov,
                         {"node": "kstar", "assignment": _asg_json(asg)}))


@scenario("two-node-cancellation-conditional",
          "a root carrying N below K* refutes the conditional form of cancellation")
def _two_node(out):
    m = add_root(make_Kstar(), False)
    prov = "cancellation conditional refuted on two irreflexive nodes; witness derived"
    rep = validate_model(m)
    out.append(Assertion("model validates", "ok", str(rep), prov,
                         {"nodes": [n.id for n in m.nodes], "edges": sorted(map(list, m.edges))}))
    hyp = F("E x. x + y = x + z")
    seq = Sequent(Top(), Block((), hyp, F("y = z")))
    val, cx = sequent_counterexample(m, "root", seq, KSTAR_BOUND)
    ev = {"node": "root", "sequent": str(seq)}
    if cx is not None:
        ev["counterexample"] = {"node": cx[0], "assignment": _asg_json(cx[1])}
    out.append(Assertion(f"root does not force {seq}", False, val, prov, ev))
    asg = {"y": 0, "z": 1}
    _force_assert(out, m, "kstar", hyp, asg, True, prov, witness_vars=(["x"], hyp.body))
    w = find_witness(NStar(), ["x"], hyp.body, asg, KSTAR_BOUND)
    out.append(Assertion("witness for x is inf", True, w == (INF,), prov,
                         {"witness": None if w is None else [element_to_json(e) for e in w]}))
    _force_assert(out, m, "kstar", F("y = z"), asg, False, prov)


# ----------------------------------------------------------------------------
# proof-transformation scenarios


def corollary_pipeline(fx):
    """Semi-positive image of a uniqueness fixture; returns (proof, expected conclusion)."""
    a, y, un, vn = fx.uniqueness
    q = semi_positivize_proof(fx.proof, fx.pack)
    pa = positive_part(a)
    want = Sequent(Top(), Block((), And(substitute(pa, {y: Var(un)}), substitute(pa, {y: Var(vn)})),
                                Eq(Var(un), Var(vn))))
    return q, want


@scenario("positivize-pipeline",
          "positive and semi-positive proof transformations over every bundled BA fixture")
def _positivize(out):
    prov = "positivization without block axioms; semi-positive transformation and synthesis"
    rows, bad, refused = [], [], []
    for fx in ba_fixtures():
        p = fx.proof
        if not pack_is_positive(fx.pack):
            try:
                positivize_proof(p, fx.pack)
            except PreconditionError:
                refused.append(fx.name)
            else:
                bad.append(fx.name)
            continue
        q = positivize_proof(p, fx.pack)
        want = Sequent(positive_part(p.conclusion.ante), positive_part(p.conclusion.cons))
        forbidden = sorted(rules_used(q) & FORBIDDEN_AFTER_POSITIVIZE)
        s = semi_positivize_proof(p, fx.pack)
        swant = Sequent(semi_positive_part(p.conclusion.ante), semi_positive_part(p.conclusion.cons))
        row = {
            "fixture": fx.name,
            "positive_checks": check_proof(q, fx.pack).ok,
            "positive_conclusion": q.conclusion == want,
            "forbidden_rules": forbidden,
            "height": [height(p), height(q)],
            "semi_checks": check_proof(s, fx.pack).ok,
            "semi_conclusion": s.conclusion == swant,
            "synth_checks": check_proof(synth_semipos_to_pos(p.conclusion.cons), fx.pack).ok,
        }
        ok = (row["positive_checks"] and row["positive_conclusion"] and not forbidden
              and height(q) <= height(p) and row["semi_checks"] and row["semi_conclusion"]
              and row["synth_checks"])
        rows.append(row)
        if not ok:
            bad.append(fx.name)
    out.append(Assertion(f"all {len(rows)} fixtures over positive theories transform correctly", True,
                         not bad, prov, {"failed": bad, "rows": rows}))
    out.append(Assertion("fixtures over theories with non-positive axioms are refused", True,
                         bool(refused) and not bad, prov, {"refused": refused}))
    for fx in ba_fixtures():
        if fx.uniqueness is None or not pack_is_positive(fx.pack):
            continue
        q, want = corollary_pipeline(fx)
        ok = check_proof(q, fx.pack).ok and q.conclusion == want
        out.append(Assertion(f"uniqueness pipeline on {fx.name}", True, ok,
                             "uniqueness transfers to the semi-positive part",
                             {"conclusion": str(q.conclusion), "expected": str(want)}))


@scenario("totalizer-demo",
          "the Sigma_1 totalizer defines cut-off subtraction and the identity on arguments <= 8")
def _totalizer(out):
    prov = "explicit Sigma_1 totalizer construction; N oracle by brute force"
    cases = [
        ("cut-off", F("((x1 < x2 & y = 0) | x1 = x2 + y) & z = z"), ("x1", "x2"),
         lambda a: max(a[0] - a[1], 0)),
        ("identity", F("y = x1 & z = z"), ("x1",), lambda a: a[0]),
    ]
    for label, a, xs, fn in cases:
        d = sigma1_totalizer(TotalizerInput(a, xs, "y", ("z",)))
        vs, body = strip_exists(d)
        oracle = NatOracle()
        mism, es_fail, us_fail = [], [], []
        grid = _grid(len(xs), 8)
        for args in grid:
            base = dict(zip(xs, args))
            holds = [y for y in range(9) if oracle.exists_upto(vs, body, {**base, "y": y}, 8) is not None]
            if holds != [fn(args)]:
                mism.append({"args": list(args), "values": holds, "expected": fn(args)})
            if not holds:
                es_fail.append(list(args))
            if len(holds) > 1:
                us_fail.append(list(args))
        ev = {"formula_size": len(str(d)), "arguments": len(grid), "mismatches": mism}
        out.append(Assertion(f"{label}: totalizer graph equals the function", True, not mism, prov, ev))
        out.append(Assertion(f"{label}: existence instances hold", True, not es_fail, prov,
                             {"failures": es_fail}))
        out.append(Assertion(f"{label}: uniqueness instances hold", True, not us_fail, prov,
                             {"failures": us_fail}))


def _grid(k, n):
    if k == 0:
        return [()]
    return [(i,) + rest for i in range(n + 1) for rest in _grid(k - 1, n)]


@scenario("cutelim-demo", "class-restricted cut elimination on the bundled LK fixtures")
def _cutelim(out):
    prov = "class-restricted cut elimination; every cut formula is positive"
    for fx in lk_fixtures():
        q = eliminate_cuts_outside(fx.proof, POS)
        ok = check_lk(q, POS).ok
        same = (q.ante, q.cons) == (fx.proof.ante, fx.proof.cons)
        left = offending_cuts(q, POS)
        out.append(Assertion(f"{fx.name}: checked, same end-sequent, no offending cut", True,
                             bool(ok and same and not left), prov,
                             {"end_sequent": show_sequent(q.conclusion), "offending_before": offending_cuts(fx.proof, POS),
                              "offending_after": left, "checks": bool(ok)}))


# ----------------------------------------------------------------------------
# overspill corpus

_OVERSPILL_FIXED = (
    "x = x", "0 < x | x = 0", "E w. x = w + w | E w. x = Sw + w", "E w. w * x = x",
    "E w. x < Sw", "E w. x + w = w + x", "E w. x = w", "0 * x = 0", "E w. w < x | x = 0",
    "E w. x = w + w", "x < SSS0", "SS0 < x", "E w. x * w = 0", "E w. (x = S(w + w) | x = w + w)",
    "E w. x + w = SSSSSSSS0", "x = x + 0 & 0 < Sx", "E w. x = w * SSS0 | E w. x = S(w * SSS0) | E w. x = SS(w * SSS0)",
    "E w. w + x = x", "S0 * x = x", "E w. x = w * w",
)
_ATOMS = ("x = x", "0 < Sx", "x < SSSS0", "SSSS0 < x", "x = SS0", "x + 0 = x", "0 * x = 0",
          "E w. x = w + w", "E w. x = S(w + w)", "E w. x = w * SSS0", "E w. x < w",
          "E w. x = w + SSS0", "E w. x + w = SSSSSSSSSS0", "x < x", "E w. x = Sw")


def overspill_corpus(n=50, seed=20240):
    """Deterministic corpus of positive formulas in the single free variable x."""
    rng = random.Random(seed)
    out = [F(t) for t in _OVERSPILL_FIXED]
    while len(out) < n:
        k = rng.randint(2, 3)
        parts = [F(rng.choice(_ATOMS)) for _ in range(k)]
        a = parts[0]
        for p in parts[1:]:
            a = Or(a, p) if rng.random() < 0.7 else And(a, p)
        if a not in out:
            out.append(a)
    assert all(is_positive(a) for a in out)
    return out[:n]


@scenario("overspill-suite",
          "positive formulas true on 0..64 in N* are true at inf")
def _overspill(out):
    prov = "overspill for positive formulas over N*"
    met = 0
    for a in overspill_corpus():
        rep = overspill_check(a, "x", 64, EvalBound(64, True))
        if rep.status == "hypothesis not met":
            actual = "not applicable"
        else:
            met += 1
            actual = {"PASS": True, "FAIL": False}.get(rep.status, rep.at_inf)
        exp = "not applicable" if actual == "not applicable" else True
        out.append(Assertion(f"overspill for {a}", exp, actual, prov, rep.to_json()))
    out.append(Assertion("at least 20 corpus formulas meet the sampling hypothesis", True, met >= 20,
                         "corpus design", {"meeting_hypothesis": met}))


__all__ = [
    "Assertion", "ScenarioReport", "UnknownScenario", "corollary_pipeline", "overall_exit_code",
    "overspill_corpus", "run_all", "run_scenario", "scenario_names", "uniqueness_sequent",
]
