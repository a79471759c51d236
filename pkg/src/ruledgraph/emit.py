"""Graphviz and canonical JSON output."""

from __future__ import annotations

import json
from fractions import Fraction

from .extended import ExtendedGraph, NormalizedExtendedGraph
from .graph import Role, WeightedGraph, Zigzag


def _as_graph(item) -> WeightedGraph:
    if isinstance(item, WeightedGraph):
        return item
    if isinstance(item, ExtendedGraph):
        return item.graph
    if isinstance(item, NormalizedExtendedGraph):
        return item.realized()
    if isinstance(item, Zigzag):
        return item.graph()
    raise TypeError(f"cannot draw {type(item).__name__}")


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(item, name: str = "G") -> str:
    g = _as_graph(item)
    lines = [f"digraph {_quote(name)} {{", "  edge [dir=none];"]
    for v in g.vertices:
        label = f"{v.label}\\nw={v.weight}" + (f", g={v.genus}" if v.genus else "")
        attrs = [f'label="{label}"']
        if v.role is Role.FEATHER:
            attrs.append("style=dashed")
        if v.role is Role.SECTION:
            attrs.append("peripheries=2")
        lines.append(f"  n{v.id} [{', '.join(attrs)}];")
    for a, b in g.edges:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _default(o):
    if isinstance(o, Fraction):
        return f"{o.numerator}/{o.denominator}"
    raise TypeError(f"not serializable: {type(o).__name__}")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, default=_default, separators=(",", ": "),
                      indent=2) + "\n"


def graph_data(g: WeightedGraph) -> dict:
    names = {v.id: v.label for v in g.vertices}
    return {
        "vertices": [
            {"id": v.id, "name": v.label, "weight": v.weight, "genus": v.genus,
             "role": v.role.value}
            for v in g.vertices
        ],
        "edges": [[names[a], names[b]] for a, b in g.edges],
    }


def normalized_data(d: NormalizedExtendedGraph) -> dict:
    b = d.boundary
    return {
        "boundary": graph_data(b),
        "delta": {b.vertex(k).label: v for k, v in d.delta.items()},
    }
