"""Batch command line interface.

Exit codes: 0 affirmative, 1 negative (including unmet map hypotheses),
2 input error, 3 budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .document import DocumentError, WorkspaceDocument, parse, serialize
from .dynamics import (
    are_homotopic,
    certify,
    fixed_points,
    has_fpp,
    has_mfpp,
    homotopy_class,
    implication_audit,
)
from .fixtures import FIXTURES, fixture
from .homology import homology, order_complex
from .lefschetz import induced_map, lefschetz_number
from .multimap import PreconditionError, classify, has_acyclic_values, selectors
from .poset import BudgetExhausted, PosetError

AFFIRMATIVE, NEGATIVE, INPUT_ERROR, UNKNOWN = 0, 1, 2, 3


def load(source: str) -> WorkspaceDocument:
    """A path, or ``fixture:NAME`` for a built-in document."""
    if source.startswith("fixture:"):
        return fixture(source.split(":", 1)[1])
    try:
        text = Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {source}: {exc.strerror}") from exc
    return parse(text)


def _ordered(X, subset) -> list:
    return list(X.sorted(subset))


def _exit(value) -> int:
    return {True: AFFIRMATIVE, False: NEGATIVE, None: UNKNOWN}[value]


# Each handler returns (exit code, JSON payload, text lines).


def cmd_validate(doc, args):
    X = doc.poset
    payload = {"elements": len(X), "covers": len(X.covers), "maps": list(doc.maps), "functions": list(doc.functions)}
    for name in doc.maps:
        doc.multimap(name)
    lines = [f"ok: {len(X)} elements, {len(X.covers)} covers, maps: {', '.join(doc.maps) or 'none'}"]
    return AFFIRMATIVE, payload, lines


def cmd_homology(doc, args):
    X = doc.poset
    H = homology(X)
    K = order_complex(X)
    payload = {"betti": list(H.betti), "torsion": [list(t) for t in H.torsion],
               "euler_characteristic": H.euler_characteristic(), "f_vector": list(K.f_vector())}
    lines = [f"H_{n}: Z^{b}" + "".join(f" + Z/{t}" for t in tors)
             for n, (b, tors) in enumerate(zip(H.betti, H.torsion))]
    lines.append(f"euler characteristic {payload['euler_characteristic']}, f-vector {tuple(payload['f_vector'])}")
    return AFFIRMATIVE, payload, lines


def cmd_classify(doc, args):
    F = doc.multimap(args.map)
    report = classify(F, verify=args.verify_all_characterizations)
    acyclic = has_acyclic_values(F)
    payload = report.as_dict()
    payload["acyclic_values"] = bool(acyclic)
    payload["values"] = acyclic.per_element
    lines = [f"{k}: {'yes' if getattr(report, k) else 'no'}" for k in ("usc", "lsc", "susc", "slsc")]
    lines.append(f"acyclic values: {'yes' if acyclic else 'no'}")
    for k, w in report.witnesses.items():
        lines.append(f"not {k}: witness {tuple(w)}")
    return AFFIRMATIVE, payload, lines


def cmd_lefschetz(doc, args):
    F = doc.multimap(args.map)
    routes = ["homology", "carrier"] if args.via == "both" else [args.via]
    values = {r: lefschetz_number(F, via=r) for r in routes}
    if len(set(values.values())) != 1:
        raise AssertionError(f"Lefschetz routes disagree: {values}")
    payload = {"lefschetz": values, "induced": induced_map(F).as_lists()}
    lines = [" / ".join(str(v) for v in values.values()) + f"  ({' / '.join(routes)})"]
    return AFFIRMATIVE, payload, lines


def cmd_fixed_points(doc, args):
    F = doc.multimap(args.map)
    fixed = _ordered(doc.poset, fixed_points(F))
    return (AFFIRMATIVE if fixed else NEGATIVE), {"fixed_points": fixed}, [f"fixed points: {{{', '.join(fixed)}}}"]


def cmd_certify(doc, args):
    cert = certify(doc.multimap(args.map), method=args.via)
    fixed = _ordered(doc.poset, cert.fixed_points)
    payload = {"lefschetz": cert.lefschetz, "fixed_points": fixed, "method": cert.method,
               "certified": cert.certified}
    verdict = "a fixed point is guaranteed" if cert.certified else "no conclusion from L = 0"
    lines = [f"L = {cert.lefschetz}: {verdict}", f"fixed points: {{{', '.join(fixed)}}}"]
    return (AFFIRMATIVE if cert.certified else NEGATIVE), payload, lines


def cmd_selectors(doc, args):
    X = doc.poset
    found = selectors(doc.multimap(args.map), args.budget)
    payload = {"count": len(found), "selectors": found}
    lines = [f"{len(found)} continuous selector(s)"]
    lines += ["  " + ", ".join(f"{x}->{f[x]}" for x in X.elements) for f in found]
    return (AFFIRMATIVE if found else NEGATIVE), payload, lines


def cmd_core(doc, args):
    X = doc.poset
    if not len(X):
        raise DocumentError("the core of an empty poset is undefined", "poset.elements")
    C = X.core()
    payload = {"elements": list(C.elements), "covers": [list(c) for c in C.covers],
               "contractible": len(C) == 1}
    lines = [f"core: {len(C)} element(s) {{{', '.join(C.elements)}}}",
             "contractible" if len(C) == 1 else "not contractible"]
    return AFFIRMATIVE, payload, lines


def _verdict(name, verdict):
    word = {True: "holds", False: "fails", None: "unknown (budget exhausted)"}[verdict.value]
    lines = [f"{name} {word} [{verdict.method}]"]
    if verdict.witness is not None:
        w = verdict.witness
        w = w.as_dict() if hasattr(w, "as_dict") else w
        lines.append(f"witness: {json.dumps(w, ensure_ascii=False)}")
    return _exit(verdict.value), verdict.as_dict(), lines


def cmd_fpp(doc, args):
    return _verdict("FPP", has_fpp(doc.poset, args.budget))


def cmd_mfpp(doc, args):
    return _verdict("MFPP", has_mfpp(doc.poset, args.budget))


def cmd_homotopic(doc, args):
    F, G = doc.multimap(args.map), doc.multimap(args.map2)
    result = are_homotopic(F, G, args.budget)
    payload = {"homotopic": result.value, "examined": result.examined,
               "fence": result.fence.as_dict() if result.fence else None}
    word = {True: "homotopic", False: "not homotopic", None: "unknown (budget exhausted)"}[result.value]
    lines = [word]
    if result.fence:
        names = [args.map] + [f"H{k}" for k in range(1, len(result.fence.maps) - 1)] + [args.map2]
        path = names[0]
        for rel, name in zip(result.fence.relations, names[1:]):
            path += f" {rel} {name}"
        lines.append(f"fence: {path}" if len(names) > 1 else "fence: trivial")
    return _exit(result.value), payload, lines


def cmd_homotopy_class(doc, args):
    maps = homotopy_class(doc.multimap(args.map), args.budget)
    payload = {"count": len(maps), "maps": [m.as_dict() for m in maps]}
    return AFFIRMATIVE, payload, [f"{len(maps)} map(s) in the homotopy class"] + [f"  {m!r}" for m in maps]


def cmd_audit(doc, args):
    report = implication_audit(doc.poset, args.budget)
    payload = report.as_dict()

    def word(v):
        return {True: "yes", False: "no", None: "unknown"}[v]

    lines = [f"rationally acyclic: {word(report.rationally_acyclic)}",
             f"MFPP: {word(report.mfpp.value)}", f"FPP: {word(report.fpp.value)}",
             "implication chain consistent"]
    unknown = report.mfpp.value is None or report.fpp.value is None
    return (UNKNOWN if unknown else AFFIRMATIVE), payload, lines


def cmd_examples(args):
    if args.name is None:
        payload = {name: data["description"] for name, data in FIXTURES.items()}
        return AFFIRMATIVE, payload, [f"{name:12s} {desc}" for name, desc in payload.items()]
    doc = fixture(args.name)
    return AFFIRMATIVE, doc.to_json(), serialize(doc).splitlines()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finlef", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, *, map_arg=False, budget=False, help=None):
        p = sub.add_parser(name, help=help)
        p.add_argument("file", metavar="FILE", help="document path or fixture:NAME")
        if map_arg:
            p.add_argument("--map", required=True)
        if budget:
            p.add_argument("--budget", type=int, default=None)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        p.set_defaults(handler=handler)
        return p

    add("validate", cmd_validate, help="check a document")
    add("homology", cmd_homology, help="integral homology of the order complex")
    p = add("classify", cmd_classify, map_arg=True, help="semicontinuity report")
    p.add_argument("--verify-all-characterizations", action="store_true")
    p = add("lefschetz", cmd_lefschetz, map_arg=True, help="Lefschetz number")
    p.add_argument("--via", choices=["homology", "carrier", "both"], default="homology")
    add("fixed-points", cmd_fixed_points, map_arg=True)
    p = add("certify", cmd_certify, map_arg=True, help="fixed point certificate")
    p.add_argument("--via", choices=["homology", "carrier", "both"], default="homology")
    add("selectors", cmd_selectors, map_arg=True, budget=True)
    add("core", cmd_core, help="remove beat points")
    add("fpp", cmd_fpp, budget=True)
    add("mfpp", cmd_mfpp, budget=True)
    p = add("homotopic", cmd_homotopic, map_arg=True, budget=True)
    p.add_argument("--map2", required=True)
    add("homotopy-class", cmd_homotopy_class, map_arg=True, budget=True)
    add("audit", cmd_audit, budget=True, help="rationally acyclic => MFPP => FPP")
    p = sub.add_parser("examples", help="list or print the built-in fixtures")
    p.add_argument("name", nargs="?")
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    p.set_defaults(handler=None)
    return parser


def _emit(payload, lines, as_json, out):
    if as_json:
        out.write(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False, default=list) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.handler is None:
            code, payload, lines = cmd_examples(args)
        else:
            if getattr(args, "budget", None) is not None and args.budget <= 0:
                raise DocumentError("budget must be positive", "--budget")
            code, payload, lines = args.handler(load(args.file), args)
    except (DocumentError, PosetError) as exc:
        _emit({"error": "input", "message": str(exc)}, [f"input error: {exc}"], args.json, err)
        return INPUT_ERROR
    except PreconditionError as exc:
        witness = exc.witness
        _emit({"error": "precondition", "message": str(exc), "witness": witness},
              [f"precondition failed: {exc}"],
              args.json, err)
        return NEGATIVE
    except BudgetExhausted as exc:
        _emit({"error": "budget", "message": str(exc), "examined": exc.examined},
              [f"budget exhausted after {exc.examined} candidates: {exc}"], args.json, err)
        return UNKNOWN
    _emit(payload, lines, args.json, out)
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))
