"""Command-line front end.

Exit codes: 0 for a successful (or positive) answer, 1 for a negative
answer (NO / decomposable / not verified), 2 for errors, including an
oracle mismatch under --verify (a mismatch is a bug, never a result).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import classify as _classify
from .classify import INFINITE, classify_components
from .deodhar import deodhar_decompose, longest_element
from .engine import enumerate_group, find_isomorphism
from .errors import CoxeterError, VerificationError
from .graph import CoxeterGraph, parse_graph
from .isomorph import (
    DirectDecomposition,
    aut_decomposition,
    aut_order_symproduct,
    coxeter_isomorphic,
)
from .rootspace import enumerate_roots, format_table
from .structure import (
    center_direct_factor,
    centralizer_of_normal_closure,
    core_of_normalizer,
    is_directly_indecomposable,
    richardson_form,
)
from .suites import ALL_SUITES, run_suites

DEFAULT_CAP = int(os.environ.get("COXTOOLS_CAP", "10000"))


def _load(path: str) -> CoxeterGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _subset(arg: Optional[str]) -> list[str]:
    if not arg:
        return []
    return [s for s in arg.split(",") if s]


def _emit(args, text: str, payload: dict, code: int = 0) -> int:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)
    return code


def _order_str(o) -> str:
    return "infinite" if o == INFINITE else str(o)


def cmd_classify(args) -> int:
    g = _load(args.file)
    labels = classify_components(g)
    order = _classify.graph_order(g)
    names = [str(t) for t in labels]
    text = " x ".join(names) if names else "(empty)"
    return _emit(args, f"{text} (order {_order_str(order)})",
                 {"components": names, "order": None if order == INFINITE else order})


def cmd_order(args) -> int:
    g = _load(args.file)
    order = _classify.graph_order(g)
    return _emit(args, _order_str(order),
                 {"order": None if order == INFINITE else order})


def cmd_roots(args) -> int:
    g = _load(args.file)
    table = enumerate_roots(g, cap=args.cap, eps=args.eps)
    payload = {
        "n_positive": table.n_positive,
        "roots": [[float(c) for c in row] for row in table.roots],
    }
    return _emit(args, format_table(table).rstrip("\n"), payload)


def cmd_longest(args) -> int:
    g = _load(args.file)
    G = enumerate_group(g, cap=args.cap, eps=args.eps)
    subset = _subset(args.subset) or list(g.vertices)
    w0, sigma = longest_element(G, subset)
    word = " ".join(G.word(w0)) or "(identity)"
    text = f"w0 = {word}\nlength {G.length(w0)}\nsigma: " + \
        " ".join(f"{s}->{t}" for s, t in sigma.items())
    return _emit(args, text, {
        "word": list(G.word(w0)), "length": G.length(w0), "sigma": sigma,
    })


def cmd_deodhar(args) -> int:
    g = _load(args.file)
    G = enumerate_group(g, cap=args.cap, eps=args.eps)
    subset = _subset(args.subset) or list(g.vertices)
    dec = deodhar_decompose(G, subset)
    lines = ["roots:"]
    for rid in dec.root_ids:
        coords = " ".join(f"{c:.12g}" for c in G.table.coefficients(rid))
        lines.append(f"  {coords}")
    seq = " ".join("{" + ",".join(k) + "}" for k in dec.generator_sequence)
    lines.append(f"generator sequence: {seq}")
    return _emit(args, "\n".join(lines), {
        "roots": [[float(c) for c in G.table.coefficients(r)] for r in dec.root_ids],
        "generator_sequence": [list(k) for k in dec.generator_sequence],
    })


def cmd_center_factor(args) -> int:
    g = _load(args.file)
    labels = classify_components(g)
    if len(labels) != 1:
        raise CoxeterError("center-factor expects a connected graph")
    decision = center_direct_factor(labels[0])
    code = 0 if decision.proper_factor else 1
    return _emit(args, str(decision), {
        "type": str(labels[0]),
        "center_trivial": decision.center_trivial,
        "proper_factor": decision.proper_factor,
        "complement": None if decision.complement is None else str(decision.complement),
        "complement_is_even_subgroup": decision.complement_is_even_subgroup,
    }, code)


def cmd_indecomposable(args) -> int:
    g = _load(args.file)
    labels = classify_components(g)
    if len(labels) != 1:
        raise CoxeterError("indecomposable expects a connected graph")
    answer = is_directly_indecomposable(labels[0])
    text = "directly indecomposable" if answer else "directly decomposable"
    note = None
    if labels[0].family == "Unknown":
        note = "assumed irreducible infinite"
        text += f" ({note})"
    return _emit(args, text,
                 {"type": str(labels[0]), "indecomposable": answer, "note": note},
                 0 if answer else 1)


_CASE_NAMES = {
    "whole": "W",
    "center": "Z(W)",
    "special_B": "case (i): tau(G_B)",
    "special_D": "case (ii): tau(G_D)",
}


def _subgroup_payload(G, resolved, words: bool) -> dict:
    payload = {"subgroup_order": len(resolved), "element_ids": resolved.sorted_ids()}
    if words:
        payload["words"] = ["-".join(G.word(a)) or "e" for a in resolved.sorted_ids()]
    return payload


def cmd_core(args) -> int:
    g = _load(args.file)
    G = enumerate_group(g, cap=args.cap, eps=args.eps)
    subset = _subset(args.subset)
    desc = core_of_normalizer(g, subset, verify=args.verify, G=G)
    resolved = desc.resolve(G)
    case = _CASE_NAMES.get(desc.kind, desc.kind)
    if desc.kind == "center":
        case = "case (iii): Z(W)"
    text = f"{case}, order {len(resolved)}"
    if args.words:
        text += "\n" + " ".join("-".join(G.word(a)) or "e" for a in resolved.sorted_ids())
    return _emit(args, text, {"case": desc.kind, **_subgroup_payload(G, resolved, args.words)})


def cmd_centralizer(args) -> int:
    g = _load(args.file)
    G = enumerate_group(g, cap=args.cap, eps=args.eps)
    xs = [G.from_word(w.split("-")) for w in args.involution]
    desc = centralizer_of_normal_closure(g, xs, verify=args.verify, G=G)
    resolved = desc.resolve(G)
    text = f"{_CASE_NAMES.get(desc.kind, desc.kind)}, order {len(resolved)}"
    if args.words:
        text += "\n" + " ".join("-".join(G.word(a)) or "e" for a in resolved.sorted_ids())
    return _emit(args, text, {"case": desc.kind, **_subgroup_payload(G, resolved, args.words)})


def cmd_richardson(args) -> int:
    g = _load(args.file)
    G = enumerate_group(g, cap=args.cap, eps=args.eps)
    w = G.from_word(args.word.split("-"))
    u, subset = richardson_form(G, w)
    text = f"u = {' '.join(G.word(u)) or '(identity)'}\nI = {{{','.join(subset)}}}"
    return _emit(args, text, {
        "u_word": list(G.word(u)), "subset": list(subset),
    })


def cmd_isomorphic(args) -> int:
    g1, g2 = _load(args.file_a), _load(args.file_b)
    verdict = coxeter_isomorphic(g1, g2)
    payload = {"verdict": verdict}
    witness = None
    if args.verify and verdict in ("YES", "NO"):
        o1, o2 = _classify.graph_order(g1), _classify.graph_order(g2)
        if o1 != INFINITE and o2 != INFINITE and max(o1, o2) <= args.cap:
            maps = find_isomorphism(enumerate_group(g1, cap=args.cap),
                                    enumerate_group(g2, cap=args.cap))
            witness = bool(maps)
            if witness != (verdict == "YES"):
                raise VerificationError(
                    f"decider said {verdict} but brute force "
                    f"{'found an isomorphism' if witness else 'found none'}"
                )
            payload["witness_found"] = witness
    text = verdict if witness is None else f"{verdict} (oracle agrees)"
    return _emit(args, text, payload, 0 if verdict != "NO" else 1)


def cmd_aut(args) -> int:
    from .isomorph import admissible_factor_handles

    g = _load(args.file)
    G = enumerate_group(g, cap=args.cap, eps=args.eps)
    dec = DirectDecomposition.of(G, admissible_factor_handles(G))
    budget = aut_decomposition(dec, brute=args.verify, cap=max(args.cap, 1200))
    text = (f"|Aut| = {budget.aut_order} "
            f"(|H1|={budget.h1}, |H2|={budget.h2}, |H3|={budget.h3}, |H4|={budget.h4})")
    if args.verify:
        text += f"; brute force agrees ({budget.brute_order})"
    return _emit(args, text, {
        "aut_order": budget.aut_order, "h1": budget.h1, "h2": budget.h2,
        "h3": budget.h3, "h4": budget.h4, "brute_order": budget.brute_order,
    })


def cmd_aut_order(args) -> int:
    mult = [int(x) for x in args.sym.split(",") if x != ""]
    value = aut_order_symproduct(mult)
    return _emit(args, str(value), {"aut_order": value})


def cmd_verify(args) -> int:
    names = args.suite or ["all"]
    results = run_suites(names, seed=args.seed)
    rows = []
    ok = True
    for r in results:
        rows.append(r.line())
        ok &= r.passed
    text = "\n".join(rows)
    payload = {"results": [{
        "suite": r.name, "passed": r.passed, "detail": r.detail,
        "seconds": round(r.seconds, 2), "checks": r.checks,
    } for r in results]}
    return _emit(args, text, payload, 0 if ok else 2)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="coxtools",
        description="Computational toolkit for finite Coxeter groups.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="enumeration cap (env COXTOOLS_CAP)")
    common.add_argument("--eps", type=float, default=1e-9,
                        help="root-identification tolerance")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--verify", action="store_true",
                        help="cross-check against the brute-force oracle")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized sweeps")
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, parents=[common], **kwargs)
        p.set_defaults(fn=fn)
        return p

    p = add("classify", cmd_classify, help="recognize the type of a .cox graph")
    p.add_argument("file")
    p = add("order", cmd_order, help="group order of a .cox graph")
    p.add_argument("file")
    p = add("roots", cmd_roots, help="print the root table")
    p.add_argument("file")
    p = add("longest", cmd_longest, help="longest element of a parabolic")
    p.add_argument("file")
    p.add_argument("--subset", help="comma-separated vertex names (default: all)")
    p = add("deodhar", cmd_deodhar, help="reflection decomposition of w0(I)")
    p.add_argument("file")
    p.add_argument("--subset", help="comma-separated vertex names (default: all)")
    p = add("center-factor", cmd_center_factor,
            help="is the center a proper direct factor?")
    p.add_argument("file")
    p = add("indecomposable", cmd_indecomposable,
            help="is the group directly indecomposable?")
    p.add_argument("file")
    p = add("core", cmd_core, help="core of the normalizer of a parabolic")
    p.add_argument("file")
    p.add_argument("--subset", required=True, help="comma-separated vertex names")
    p.add_argument("--words", action="store_true", help="print elements as reduced words")
    p = add("centralizer", cmd_centralizer,
            help="centralizer of the normal closure of involutions")
    p.add_argument("file")
    p.add_argument("--involution", nargs="+", required=True,
                   help="involutions as dash-joined generator words, e.g. s2-s1-s2")
    p.add_argument("--words", action="store_true", help="print elements as reduced words")
    p = add("richardson", cmd_richardson, help="Richardson form of an involution")
    p.add_argument("file")
    p.add_argument("--word", required=True,
                   help="involution as a dash-joined generator word")
    p = add("isomorphic", cmd_isomorphic, help="decide abstract isomorphism")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p = add("aut", cmd_aut, help="automorphism-group accounting")
    p.add_argument("file")
    p = add("aut-order", cmd_aut_order,
            help="|Aut| of a product of symmetric groups")
    p.add_argument("--sym", required=True,
                   help="multiplicities m1,m2,... of Sym_1, Sym_2, ...")
    p = add("verify", cmd_verify, help="run acceptance suites")
    p.add_argument("--suite", nargs="+", metavar="NAME",
                   help=f"suites to run: {', '.join(sorted(ALL_SUITES))} or 'all'")
    return top


def run(argv: Sequence[str]) -> int:
    parser = build_parser()
    args = parser.parse_args(list(argv))
    try:
        return args.fn(args)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 2
    except (CoxeterError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
