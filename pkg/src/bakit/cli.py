"""Command-line entry point ``bakit``.

Formulas may be given inline or as ``@path`` (read from a file).  Every
subcommand accepts ``--json`` for structured output.  Configuration is by
flags only.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import transforms as tr
from .classes import classify
from .cutelim import PreconditionError as CutPreconditionError
from .cutelim import cut_elimination
from .parser import L, L_C, ParseError, parse_formula, parse_lk_sequent, parse_sequent
from .proofs_ba import BA, BA_C, BA_U, EBA, check_proof, load_proof
from .proofs_lk import CLASSES, check_lk, lk_to_json, load_lk, show_sequent
from .scenarios import UnknownScenario, overall_exit_code, run_all, run_scenario, scenario_names
from .semantics import (
    EvalBound, KripkeModel, element_from_json, sequent_counterexample, force, verdict_str,
)
from .syntax import Sequent

THEORIES = {"ba": BA, "ba-u": BA_U, "ba-c": BA_C, "eba": EBA}
PASSES = ("pos", "semipos", "openpos", "openneg", "bneg", "star", "totalize")


def _text(arg: str) -> str:
    if arg.startswith("@"):
        return Path(arg[1:]).read_text().strip()
    return arg


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=1, ensure_ascii=False))
    else:
        print(text)


def _language(args):
    return L_C if args.language == "L_c" else L


# -- subcommands -------------------------------------------------------------


def cmd_parse(args):
    src = _text(args.text)
    if args.lk:
        ante, cons = parse_lk_sequent(src, _language(args))
        out = show_sequent((ante, cons))
        kind = "lk-sequent"
    elif "=>" in src:
        out, kind = str(parse_sequent(src, _language(args))), "sequent"
    else:
        out, kind = str(parse_formula(src, _language(args))), "formula"
    _emit(args, {"kind": kind, "printed": out}, out)
    return 0


def cmd_classify(args):
    a = parse_formula(_text(args.text), _language(args))
    names = sorted(c.value for c in classify(a))
    _emit(args, {"formula": str(a), "classes": names}, ", ".join(names) or "(none)")
    return 0


def _csv(s):
    return tuple(v for v in (s or "").split(",") if v)


def cmd_transform(args):
    a = parse_formula(_text(args.file), _language(args))
    fn = {
        "pos": tr.positive_part,
        "semipos": tr.semi_positive_part,
        "openpos": tr.open_positive,
        "openneg": tr.open_negation,
        "bneg": tr.bounded_negation,
        "star": tr.star_translate,
    }.get(args.pass_)
    if fn is not None:
        b = fn(a)
    else:
        if not args.zs:
            raise SystemExit("totalize needs --xs, --y and --zs")
        b = tr.sigma1_totalizer(tr.TotalizerInput(a, _csv(args.xs), args.y, _csv(args.zs)))
    _emit(args, {"pass": args.pass_, "input": str(a), "output": str(b)}, str(b))
    return 0


def cmd_check_ba(args):
    pack = THEORIES[args.theory]
    p = load_proof(args.file)
    rep = check_proof(p, pack, strict=args.strict)
    payload = {
        "ok": rep.ok, "theory": pack.name, "nodes": rep.nodes,
        "conclusion": str(p.conclusion), "errors": [str(e) for e in rep.errors],
    }
    _emit(args, payload, f"{p.conclusion}\n{rep}")
    return 0 if rep.ok else 1


def cmd_check_lk(args):
    p = load_lk(args.file)
    rep = check_lk(p, CLASSES[args.class_])
    payload = {
        "ok": rep.ok, "class": args.class_, "nodes": rep.nodes,
        "end_sequent": show_sequent(p.conclusion), "errors": [str(e) for e in rep.errors],
    }
    _emit(args, payload, f"{show_sequent(p.conclusion)}\n{rep}")
    return 0 if rep.ok else 1


def cmd_cutelim(args):
    p = load_lk(args.file)
    try:
        q, stats = cut_elimination(p, CLASSES[args.class_])
    except CutPreconditionError as e:
        _emit(args, {"ok": False, "error": str(e)}, f"precondition failed: {e}")
        return 1
    if args.out:
        Path(args.out).write_text(json.dumps(lk_to_json(q), indent=1, ensure_ascii=False))
    payload = {
        "ok": True,
        "end_sequent": show_sequent(q.conclusion),
        "offending_before": stats.offending_before,
        "rounds": stats.rounds,
        "principal_reductions": stats.principal_reductions,
        "size_before": stats.size_before,
        "size_after": stats.size_after,
        "measure_trace": list(stats.measure_trace),
    }
    if args.json and not args.out:
        payload["proof"] = lk_to_json(q)
    text = (f"{show_sequent(q.conclusion)}\n{stats.offending_before} offending cut(s) removed; "
            f"size {stats.size_before} -> {stats.size_after}")
    _emit(args, payload, text)
    return 0


def _assignment(items):
    out = {}
    for it in items or ():
        k, _, v = it.partition("=")
        out[k.strip()] = element_from_json(v.strip() if v.strip() in ("inf", "INF") else int(v))
    return out


def cmd_force(args):
    m = KripkeModel.from_json(json.loads(Path(args.model).read_text()))
    node = _node_id(m, args.at)
    b = EvalBound(args.bound, args.inf)
    asg = _assignment(args.set)
    src = _text(args.formula)
    payload = {"node": node, "bound": args.bound, "inf": args.inf}
    if "=>" in src:
        seq: Sequent = parse_sequent(src, _language(args))
        val, cx = sequent_counterexample(m, node, seq, b, asg)
        payload.update(sequent=str(seq), verdict=verdict_str(val))
        if cx is not None:
            payload["counterexample"] = {"node": cx[0], "assignment": {k: str(v) for k, v in cx[1].items()}}
        text = verdict_str(val) + ("" if cx is None else f"  counterexample at {cx[0]}: {payload['counterexample']['assignment']}")
    else:
        a = parse_formula(src, _language(args))
        val = force(m, node, a, asg, b)
        payload.update(formula=str(a), verdict=verdict_str(val))
        text = verdict_str(val)
    _emit(args, payload, text)
    return 0


def _node_id(m, at):
    ids = [n.id for n in m.nodes]
    if at in ids:
        return at
    for k in ids:
        if str(k) == at:
            return k
    raise SystemExit(f"no node {at!r}; nodes are {ids}")


def cmd_scenario(args):
    if args.list:
        print("\n".join(scenario_names()))
        return 0
    if args.all:
        reps = run_all(parallel=args.parallel)
    elif args.name:
        try:
            reps = [run_scenario(args.name)]
        except UnknownScenario as e:
            print(e.args[0], file=sys.stderr)
            return 1
    else:
        raise SystemExit("give a scenario name, --all or --list")
    if args.json:
        print(json.dumps([r.to_json() for r in reps] if args.all else reps[0].to_json(),
                         indent=1, ensure_ascii=False))
    else:
        for r in reps:
            print(r.render() if args.verbose or r.status != "PASS" else f"{r.status} {r.name}")
    return overall_exit_code(reps)


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("--language", choices=("L", "L_c"), default="L_c",
                        help="admit cut-off (L_c, default) or not (L)")

    ap = argparse.ArgumentParser(prog="bakit", description="Basic Arithmetic proof and model toolkit")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("parse", parents=[common], help="parse and pretty-print")
    p.add_argument("text", help="formula, sequent or @file")
    p.add_argument("--lk", action="store_true", help="read an LK sequent (comma lists)")
    p.set_defaults(fn=cmd_parse)

    p = sub.add_parser("classify", parents=[common], help="syntactic classes of a formula")
    p.add_argument("text")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("transform", parents=[common], help="apply a formula translation")
    p.add_argument("--pass", dest="pass_", choices=PASSES, required=True)
    p.add_argument("file", help="formula, or @file")
    p.add_argument("--xs", help="totalize: comma-separated input variables")
    p.add_argument("--y", default="y", help="totalize: output variable")
    p.add_argument("--zs", help="totalize: comma-separated witness variables")
    p.set_defaults(fn=cmd_transform)

    p = sub.add_parser("check-ba", parents=[common], help="check a BA proof file")
    p.add_argument("file")
    p.add_argument("--theory", choices=sorted(THEORIES), default="ba")
    p.add_argument("--strict", action="store_true", help="reject proofs over a wider language")
    p.set_defaults(fn=cmd_check_ba)

    p = sub.add_parser("check-lk", parents=[common], help="check an LK proof file")
    p.add_argument("file")
    p.add_argument("--class", dest="class_", choices=sorted(CLASSES), default="pos")
    p.set_defaults(fn=cmd_check_lk)

    p = sub.add_parser("cutelim", parents=[common], help="eliminate cuts outside a class")
    p.add_argument("file")
    p.add_argument("--class", dest="class_", choices=sorted(CLASSES), default="pos")
    p.add_argument("--out", help="write the resulting proof JSON here")
    p.set_defaults(fn=cmd_cutelim)

    p = sub.add_parser("force", parents=[common], help="Kripke forcing of a formula or sequent")
    p.add_argument("model", help="model JSON file")
    p.add_argument("--at", required=True, help="node id")
    p.add_argument("--formula", required=True, help="formula, sequent or @file")
    p.add_argument("--bound", type=int, default=8, help="witness search bound")
    p.add_argument("--inf", action="store_true", help="include inf among witness candidates")
    p.add_argument("--set", action="append", metavar="VAR=VAL", help="assign a free variable (VAL an int or inf)")
    p.set_defaults(fn=cmd_force)

    p = sub.add_parser("scenario", parents=[common], help="run registered scenarios")
    p.add_argument("name", nargs="?")
    p.add_argument("--all", action="store_true")
    p.add_argument("--list", action="store_true")
    p.add_argument("--parallel", action="store_true", help="run scenarios in worker processes")
    p.add_argument("-v", "--verbose", action="store_true", help="print every assertion")
    p.set_defaults(fn=cmd_scenario)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
