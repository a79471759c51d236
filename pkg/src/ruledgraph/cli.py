"""Command-line interface.

Exit status: 0 success, 1 semantic failure (including a negative
equivalence verdict or a failed check), 2 usage error, 3 parse error.
"""

from __future__ import annotations

import argparse
import sys

from . import dsl, emit
from .errors import DSLError, GraphError, SearchBudgetExceeded, UnknownReference
from .extended import mother_map, normalize, validate
from .graph import Role, classify_chain, is_standard_graph
from .invariants import (config_space_dim, configuration_invariant, decide_equivalence,
                         reverse_normalized)
from .presentation import dimension_base, schedule_from
from .surgery import reverse, standard_forms, standardize


class UsageError(Exception):
    pass


def _fmt_graph(g) -> str:
    if g.is_linear() and all(v.role is Role.BOUNDARY and not v.name for v in g.vertices):
        return "[[" + ",".join(str(g.weight(v)) for v in g.chain_order()) + "]]"
    lines = []
    for v in g.vertices:
        nb = ",".join(g.vertex(u).label for u in g.neighbors(v.id))
        extra = f" genus={v.genus}" if v.genus else ""
        lines.append(f"{v.label} w={v.weight} role={v.role.value}{extra} nbrs={nb}")
    return "\n".join(lines)


def _fmt_normalized(d) -> str:
    b = d.boundary
    delta = ", ".join(f"{b.vertex(k).label}={n}" for k, n in sorted(d.delta.items()))
    return _fmt_graph(b) + f"\ndelta: {delta}"


def _as_normalized(doc, name):
    kind = doc.kind(name)
    if kind == "extended":
        return normalize(doc.extended(name))
    if kind == "normalized":
        return doc.normalized(name)
    raise UsageError(f"{name} is a {kind}; expected an extended or normalized graph")


def _lookup(doc, name):
    try:
        return doc.kind(name)
    except UnknownReference:
        raise UsageError(f"no item named {name!r}") from None


def _out(args, text=None, data=None):
    if args.json and data is not None:
        sys.stdout.write(emit.canonical_json(data))
    elif text is not None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# -- subcommands ---------------------------------------------------------------

def cmd_check(args, doc):
    failures = 0
    report = []
    for name in doc.names:
        kind = doc.kind(name)
        try:
            if kind == "zigzag":
                info = classify_chain(doc.zigzag(name)).kind.value
            elif kind == "graph":
                g = doc.graph(name)
                info = "standard" if is_standard_graph(g) else "not standard"
            elif kind == "extended":
                rep = validate(doc.extended(name))
                if not rep.valid:
                    raise GraphError("; ".join(f.reason for f in rep.failures()))
                info = "fibers contract"
            elif kind == "normalized":
                schedule_from(doc.normalized(name), 0)
                info = "realizable"
            else:
                doc.instance(name)
                info = "instantiated"
            report.append({"item": name, "kind": kind, "ok": True, "info": info})
        except (GraphError, ValueError) as exc:
            failures += 1
            report.append({"item": name, "kind": kind, "ok": False, "info": str(exc)})
    text = "\n".join(f"{'ok  ' if r['ok'] else 'FAIL'} {r['kind']} {r['item']}: {r['info']}"
                     for r in report)
    _out(args, text, {"items": report, "ok": failures == 0})
    return 1 if failures else 0


def cmd_standardize(args, doc):
    _lookup(doc, args.item)
    g = doc.graph(args.item)
    h, tr = standardize(g, max_depth=args.depth)
    if args.transcript:
        with open(args.transcript, "w", encoding="utf-8") as fh:
            fh.write(tr.to_text())
    _out(args, _fmt_graph(h), {"result": emit.graph_data(h), "steps": len(tr)})
    return 0


def cmd_reverse(args, doc):
    kind = _lookup(doc, args.item)
    if kind == "zigzag":
        z, tr = reverse(doc.zigzag(args.item))
        _out(args, "[[" + ",".join(map(str, z.weights)) + "]]",
             {"weights": list(z.weights), "steps": len(tr)})
    else:
        d = reverse_normalized(_as_normalized(doc, args.item))
        _out(args, _fmt_normalized(d), emit.normalized_data(d))
    return 0


def cmd_normalize(args, doc):
    if _lookup(doc, args.item) != "extended":
        raise UsageError(f"{args.item} is not an extended graph")
    d = normalize(doc.extended(args.item))
    _out(args, _fmt_normalized(d), emit.normalized_data(d))
    return 0


def _genus_pair(text):
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError("--genus expects two integers, e.g. 0,0") from None
    return a, b


def cmd_equiv(args, doc):
    _lookup(doc, args.item1)
    _lookup(doc, args.item2)
    g1, g2 = _genus_pair(args.genus)
    v = decide_equivalence(_as_normalized(doc, args.item1), g1,
                           _as_normalized(doc, args.item2), g2)
    _out(args, f"{'equivalent' if v.equivalent else 'not equivalent'}: {v.witness.value}",
         {"equivalent": v.equivalent, "witness": v.witness.value})
    return 0 if v.equivalent else 1


def cmd_moduli(args, doc):
    kind = _lookup(doc, args.item)
    inst = None
    if kind == "instance":
        inst = doc.instance(args.item)
        e = inst.extended
    elif kind == "extended":
        e = doc.extended(args.item)
    elif kind == "normalized":
        e = doc.normalized(args.item).extended()
    else:
        raise UsageError(f"{args.item} is a {kind}")
    ma = mother_map(e)
    d = normalize(e)
    b = d.boundary
    per, total = config_space_dim(d, ma.kinds)
    data = {
        "delta": {b.vertex(k).label: n for k, n in d.delta.items()},
        "kinds": {b.vertex(k).label: ma.kinds[k].value for k in d.delta},
        "dimensions": {b.vertex(k).label: n for k, n in per.items()},
        "total_dimension": total,
    }
    lines = [f"{b.vertex(k).label}: delta={n} kind={ma.kinds[k].value} dim={per[k]}"
             for k, n in sorted(d.delta.items())]
    lines.append(f"configuration space dimension: {total}")
    if args.genus is not None:
        try:
            pres = dimension_base(args.genus) + len(schedule_from(d, args.genus).slots)
            data["presentation_dimension"] = pres
            lines.append(f"presentation dimension: {pres}")
        except GraphError as exc:
            lines.append(f"presentation: {exc}")
    if inst is not None:
        q = configuration_invariant(inst)
        data["configuration"] = {
            b.vertex(k).label: {"kind": c.kind.value, "points": list(c.points)}
            for k, c in q.entries.items()}
        lines.append("configuration:")
        lines.extend("  " + ln for ln in q.to_text().splitlines())
    _out(args, "\n".join(lines), data)
    return 0


def cmd_schedule(args, doc):
    _lookup(doc, args.item)
    d = _as_normalized(doc, args.item)
    s = schedule_from(d, args.genus)
    dim = dimension_base(args.genus) + len(s.slots)
    labels = [s.label(st) for st in s.steps]
    _out(args, s.to_text() + f"labels: {' '.join(labels)}\ndimension: {dim}",
         {"schedule": s.to_text(), "labels": labels, "dimension": dim})
    return 0


def cmd_oracle(args, doc):
    _lookup(doc, args.item)
    g = doc.graph(args.item)
    forms = standard_forms(g, args.depth, args.cap)
    shown = sorted(_fmt_graph(h) for h in forms.values())
    _out(args, "\n".join([f"{len(shown)} standard form(s)", *shown]),
         {"count": len(shown), "forms": shown})
    return 0


def cmd_dot(args, doc):
    kind = _lookup(doc, args.item)
    if kind == "zigzag":
        item = doc.zigzag(args.item)
    elif kind == "graph":
        item = doc.graph(args.item)
    elif kind == "extended":
        item = doc.extended_graph(args.item)
    elif kind == "normalized":
        item = doc.normalized(args.item)
    else:
        item = doc.instance(args.item).extended
    sys.stdout.write(emit.emit_dot(item, args.item))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ruledgraph",
                                description="Weighted dual graphs of ruled surface completions.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="validate every item of a file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("standardize", parents=[common], help="bring a graph to standard form")
    s.add_argument("item")
    s.add_argument("--transcript", metavar="OUT")
    s.add_argument("--depth", type=int, default=4)
    s.set_defaults(func=cmd_standardize)

    s = sub.add_parser("reverse", parents=[common], help="reverse a zigzag or normalized graph")
    s.add_argument("item")
    s.set_defaults(func=cmd_reverse)

    s = sub.add_parser("normalize", parents=[common], help="normalize an extended graph")
    s.add_argument("item")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("equiv", parents=[common], help="decide deformation equivalence")
    s.add_argument("item1")
    s.add_argument("item2")
    s.add_argument("--genus", required=True, metavar="G1,G2")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("moduli", parents=[common], help="feather counts and moduli data")
    s.add_argument("item")
    s.add_argument("--genus", type=int)
    s.set_defaults(func=cmd_moduli)

    s = sub.add_parser("schedule", parents=[common], help="blowup schedule and dimension")
    s.add_argument("item")
    s.add_argument("--genus", type=int, required=True)
    s.set_defaults(func=cmd_schedule)

    s = sub.add_parser("oracle", parents=[common], help="all reachable standard forms")
    s.add_argument("item")
    s.add_argument("--depth", type=int, default=2)
    s.add_argument("--cap", type=int, default=10)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("dot", parents=[common], help="Graphviz source")
    s.add_argument("item")
    s.set_defaults(func=cmd_dot)
    return p


def _fail(args, code, kind, message):
    if getattr(args, "json", False):
        sys.stderr.write(emit.canonical_json({"error": kind, "message": message,
                                              "status": code}))
    else:
        sys.stderr.write(f"error: {message}\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc = dsl.load(args.file)
    except OSError as exc:
        return _fail(args, 2, type(exc).__name__, str(exc))
    except DSLError as exc:
        return _fail(args, 3, type(exc).__name__, str(exc))
    try:
        return args.func(args, doc)
    except UsageError as exc:
        return _fail(args, 2, "UsageError", str(exc))
    except (GraphError, SearchBudgetExceeded, ValueError, TypeError, DSLError) as exc:
        return _fail(args, 1, type(exc).__name__, str(exc))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
