"""Command line interface.

Exit status: 0 when the checked property holds, 1 when it fails (a witness
is printed where one exists), 2 on usage or parse errors.
"""

import argparse
import json
import sys

from . import conformance
from .decomposition import decompose_term, maps_to_json, maps_to_text, verify_decomposition
from .errors import IoconfError
from .gsos import (check_iocos_format, check_quiescent_consistent, derive_lts, load_gsos,
                   parse_term)
from .logic import (Evaluator, Var, bm_ioco_bounded, characteristic_formula, eval_declaration,
                    format_formula, parse_declaration, parse_formula)
from .lts import format_lts, load_lts


def _emit(args, data, text):
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _lts(args, strict=True):
    return load_lts(args.lts, close_quiescence=args.close_quiescence, strict=strict)


def cmd_validate(args):
    lts = _lts(args, strict=False)
    report = lts.validate_quiescence()
    data = {"coherent": not report, "violations": [{"state": p, "kind": k} for p, k in report]}
    text = "quiescence coherent" if not report else "\n".join(f"{p}: {k}" for p, k in report)
    _emit(args, data, text)
    return 0 if not report else 1


def _verdict_text(name, args, v):
    if v.holds:
        return f"{args.i} {name} {args.s}: holds"
    lines = [f"{args.i} {name} {args.s}: fails"]
    if v.witness is not None:
        p, q = v.pair
        lines.append(f"witness (true in {p}, false in {q}): {format_formula(v.witness)}")
        lines.append(f"rank: {v.rank}")
    return "\n".join(lines)


def cmd_iocos(args):
    lts = _lts(args)
    mode = "equivalence" if args.equiv else "preorder"
    v = conformance.iocos_holds(lts, args.i, args.s, mode)
    if v.witness is not None and args.fragment and args.fragment.lower().startswith("lt"):
        p, q = v.pair
        v.witness = conformance.distinguishing_formula(lts, p, q, "Lt_iocos")
        v.pair = (q, p)
    _emit(args, v.to_dict(), _verdict_text("iocos", args, v))
    return 0 if v.holds else 1


def cmd_ioco(args):
    lts = _lts(args)
    if args.depth is not None:
        holds, cex = bm_ioco_bounded(lts, args.i, args.s, args.depth)
    else:
        cex = conformance.ioco_counterexample(lts, args.i, args.s)
        holds = cex is None
    data = {"holds": holds, "witness": None, "rank": None}
    text = f"{args.i} ioco {args.s}: {'holds' if holds else 'fails'}"
    if cex is not None:
        sigma, b = cex
        trace = ".".join(map(str, sigma)) or "eps"
        data["witness"] = {"trace": trace, "output": str(b)}
        text += f"\nwitness: after {trace} the implementation can output {b}"
    _emit(args, data, text)
    return 0 if holds else 1


def cmd_bridge(args):
    lts = _lts(args)
    report = conformance.ioco_iocos_bridge(lts, args.i, args.s)
    text = "\n".join(f"{k}: {v}" for k, v in report.items() if k not in ("violations", "note"))
    if report.get("note"):
        text += f"\nnote: {report['note']}"
    if report["violations"]:
        text += "\nviolated: " + "; ".join(report["violations"])
    _emit(args, report, text)
    return 0 if report["ioco"] and report["iocos"] else 1


def _property(text):
    stripped = text.lstrip()
    if stripped.startswith(("max ", "min ", "max\t", "min\t")):
        decl = parse_declaration(text)
        return decl, Var(decl.variables[0])
    return None, parse_formula(text)


def cmd_mc(args):
    lts = _lts(args)
    decl, phi = _property(args.formula)
    env = eval_declaration(lts, decl) if decl else None
    holds = Evaluator(lts, env).satisfies(args.state, phi)
    shown = str(decl) if decl else format_formula(phi)
    _emit(args, {"holds": holds, "formula": shown},
          f"{args.state} {'satisfies' if holds else 'does not satisfy'} {shown}")
    return 0 if holds else 1


def cmd_charform(args):
    lts = _lts(args)
    decl, root = characteristic_formula(lts, args.state)
    _emit(args, {"root": root, "declaration": str(decl)}, str(decl))
    return 0


def cmd_distinguish(args):
    lts = _lts(args)
    fragment = args.fragment or "L_iocos"
    phi = conformance.distinguishing_formula(lts, args.i, args.s, fragment)
    if phi is None:
        _emit(args, {"witness": None}, f"no formula distinguishes: {args.i} iocos {args.s}")
        return 0
    _emit(args, {"witness": format_formula(phi), "fragment": fragment}, format_formula(phi))
    return 1


def cmd_gsos_check(args):
    lang = load_gsos(args.gsos)
    reports = {"iocos_format": check_iocos_format(lang)}
    if args.quiescence:
        reports["quiescent_consistency"] = check_quiescent_consistent(lang, cap=args.cap or 4096)
    ok = all(r.passes for r in reports.values())
    text = "\n".join(f"{name}: {r}" for name, r in reports.items())
    _emit(args, {name: r.to_dict() for name, r in reports.items()}, text)
    return 0 if ok else 1


def cmd_gsos_lts(args):
    lang = load_gsos(args.gsos)
    base = load_lts(args.base, close_quiescence=args.close_quiescence, strict=False)
    roots = [parse_term(t, lang.signature) for t in args.terms]
    lts = derive_lts(lang, base, roots, cap=args.cap or 10_000)
    text = format_lts(lts).rstrip()
    _emit(args, {"lts": format_lts(lts)}, text)
    return 0


def cmd_decompose(args):
    lang = load_gsos(args.gsos)
    t = parse_term(args.term, lang.signature)
    phi = parse_formula(args.formula)
    maps = decompose_term(lang, t, phi)
    data = {"decomposition": maps_to_json(maps)}
    text = maps_to_text(maps)
    status = 0
    if args.base:
        base = load_lts(args.base, close_quiescence=args.close_quiescence, strict=False)
        sigma = dict(s.split("=", 1) for s in args.subst)
        direct, decomposed = verify_decomposition(lang, base, t, sigma, phi, maps)
        data.update(direct=direct, decomposed=decomposed)
        text += f"\ndirect: {direct}\ndecomposed: {decomposed}"
        status = 0 if direct == decomposed else 1
    _emit(args, data, text)
    return status


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--close-quiescence", action="store_true",
                        help="add delta! loops to states without outputs before checking")
    common.add_argument("--cap", type=int, default=None, help="resource cap")
    common.add_argument("--depth", type=int, default=None, help="trace bound")
    common.add_argument("--fragment", default=None, help="L_iocos or Lt_iocos")

    parser = argparse.ArgumentParser(prog="ioconf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, *positional, help=None):
        p = sub.add_parser(name, parents=[common], help=help)
        for arg in positional:
            p.add_argument(arg)
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "lts", help="check quiescence coherence")
    p = add("iocos", cmd_iocos, "lts", "i", "s", help="decide i iocos s")
    p.add_argument("--equiv", action="store_true", help="check both directions")
    add("ioco", cmd_ioco, "lts", "i", "s", help="decide i ioco s")
    add("bridge", cmd_bridge, "lts", "i", "s", help="compare ioco and iocos")
    add("mc", cmd_mc, "lts", "state", "formula", help="model check a formula or declaration")
    add("charform", cmd_charform, "lts", "state", help="print the characteristic formula")
    add("distinguish", cmd_distinguish, "lts", "i", "s", help="print a distinguishing formula")
    p = add("gsos-check", cmd_gsos_check, "gsos", help="check the iocos rule format")
    p.add_argument("--quiescence", action="store_true", help="also check quiescent consistency")
    p = add("gsos-lts", cmd_gsos_lts, "gsos", "base", help="derive the LTS of closed terms")
    p.add_argument("terms", nargs="+")
    p = add("decompose", cmd_decompose, "gsos", "term", "formula", help="decompose a formula")
    p.add_argument("--base", help="base LTS used to verify the decomposition")
    p.add_argument("--subst", nargs="*", default=[], metavar="x=state")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.func(args)
    except (IoconfError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
