"""Text format for zigzags, graphs, extended and normalized graphs, instances.

::

    # comments run to the end of the line
    zigzag Z = [[0,0,(-2)_3]]
    graph G { c0 w=0 role=fiber0; c1 w=0 role=section genus=0; c2 w=-2;
              edges: c0-c1, c1-c2 }
    extended E { boundary=G; fiber(c2) += feather f1 w=-1 on c2; }
    normalized N { boundary=G; delta: c2=1 }
    instance I { schedule_of=N; genus=0; params: slot1=2, slot2=6/1 }

``(w)_k`` repeats a weight k times.  Vertex ids follow declaration order;
feathers of an extended graph get the ids after the boundary's.  A feather
is attached ``on`` a boundary vertex or an earlier feather.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DSLSyntaxError, DuplicateName, InvalidExtendedGraph, UnknownReference
from .extended import ExtendedGraph, NormalizedExtendedGraph
from .graph import Role, Vertex, WeightedGraph, Zigzag
from .invariants import fmt_rational

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<int>-?\d+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_.]*)
  | (?P<op>\[\[|\]\]|\+=|[{}();,:=/()_\-])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    toks, pos, line, start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise DSLSyntaxError(line, pos - start + 1, "a token", text[pos])
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind != "ws":
            toks.append(Token(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    toks.append(Token("eof", "", line, pos - start + 1))
    return toks


# -- declarations ----------------------------------------------------------------

@dataclass(frozen=True)
class VertexDecl:
    name: str
    weight: int
    role: Role = Role.BOUNDARY
    genus: int = 0


@dataclass(frozen=True)
class ZigzagDecl:
    name: str
    weights: tuple


@dataclass(frozen=True)
class GraphDecl:
    name: str
    vertices: tuple
    edges: tuple


@dataclass(frozen=True)
class FeatherDecl:
    fiber: str
    name: str
    weight: int
    on: str


@dataclass(frozen=True)
class ExtendedDecl:
    name: str
    boundary: str
    feathers: tuple


@dataclass(frozen=True)
class NormalizedDecl:
    name: str
    boundary: str
    delta: tuple


@dataclass(frozen=True)
class InstanceDecl:
    name: str
    schedule_of: str
    genus: int
    params: tuple


_KIND = {ZigzagDecl: "zigzag", GraphDecl: "graph", ExtendedDecl: "extended",
         NormalizedDecl: "normalized", InstanceDecl: "instance"}


@dataclass
class Document:
    items: list = field(default_factory=list)

    def __eq__(self, other):
        return isinstance(other, Document) and self.items == other.items

    @property
    def names(self) -> list[str]:
        return [it.name for it in self.items]

    def decl(self, name: str):
        for it in self.items:
            if it.name == name:
                return it
        raise UnknownReference(name)

    def kind(self, name: str) -> str:
        return _KIND[type(self.decl(name))]

    # resolvers

    def zigzag(self, name: str) -> Zigzag:
        d = self.decl(name)
        if not isinstance(d, ZigzagDecl):
            raise TypeError(f"{name} is a {self.kind(name)}, not a zigzag")
        return Zigzag(d.weights)

    def graph(self, name: str) -> WeightedGraph:
        d = self.decl(name)
        if isinstance(d, ZigzagDecl):
            return Zigzag(d.weights).graph()
        if not isinstance(d, GraphDecl):
            raise TypeError(f"{name} is a {self.kind(name)}, not a graph")
        ids = {v.name: i for i, v in enumerate(d.vertices)}
        verts = [Vertex(i, v.weight, v.genus, v.role, v.name) for i, v in enumerate(d.vertices)]
        return WeightedGraph(verts, [(ids[a], ids[b]) for a, b in d.edges])

    def extended_graph(self, name: str) -> WeightedGraph:
        d = self.decl(name)
        if not isinstance(d, ExtendedDecl):
            raise TypeError(f"{name} is a {self.kind(name)}, not an extended graph")
        g = self.graph(d.boundary)
        ids = {v.name: v.id for v in g.vertices}
        for f in d.feathers:
            fid = g.fresh_id()
            g = g.with_vertex(Vertex(fid, f.weight, role=Role.FEATHER, name=f.name))
            g = g.with_edges(add=[(ids[f.on], fid)])
            ids[f.name] = fid
        return g

    def extended(self, name: str) -> ExtendedGraph:
        d = self.decl(name)
        g = self.extended_graph(name)
        e = ExtendedGraph.from_graph(g)
        by_dist = {g.vertex(f.distinguished).name: f for f in e.fibers}
        for f in d.feathers:
            fib = by_dist.get(f.fiber)
            if fib is None or g.by_name(f.name).id not in fib.members:
                raise InvalidExtendedGraph(
                    f"feather {f.name} is not in the fiber of {f.fiber}")
        return e

    def normalized(self, name: str) -> NormalizedExtendedGraph:
        d = self.decl(name)
        if not isinstance(d, NormalizedDecl):
            raise TypeError(f"{name} is a {self.kind(name)}, not a normalized graph")
        g = self.graph(d.boundary)
        ids = {v.name: v.id for v in g.vertices}
        return NormalizedExtendedGraph(g, {ids[v]: k for v, k in d.delta})

    def instance(self, name: str):
        from .presentation import instantiate, schedule_from

        d = self.decl(name)
        if not isinstance(d, InstanceDecl):
            raise TypeError(f"{name} is a {self.kind(name)}, not an instance")
        sched = schedule_from(self.normalized(d.schedule_of), d.genus)
        return instantiate(sched, dict(d.params))


# -- parser ----------------------------------------------------------------------

class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def fail(self, expected, tok=None):
        tok = tok or self.tok
        raise DSLSyntaxError(tok.line, tok.col, expected, tok.text or "end of input")

    def take(self, kind, text=None, expected=None):
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            self.fail(expected or (repr(text) if text else kind))
        self.i += 1
        return t

    def at(self, text):
        return self.tok.kind in ("op", "ident") and self.tok.text == text

    def ident(self, what="a name"):
        return self.take("ident", expected=what).text

    def integer(self, what="an integer"):
        return int(self.take("int", expected=what).text)

    def rational(self):
        num = self.integer("a rational")
        if self.at("/"):
            self.i += 1
            den = self.integer("a denominator")
            if den == 0:
                self.fail("a nonzero denominator", self.toks[self.i - 1])
            return Fraction(num, den)
        return Fraction(num)

    def document(self):
        items = []
        while self.tok.kind != "eof":
            kw = self.take("ident", expected="a declaration keyword")
            parse = {"zigzag": self._zigzag, "graph": self._graph, "extended": self._extended,
                     "normalized": self._normalized, "instance": self._instance}.get(kw.text)
            if parse is None:
                self.fail("zigzag, graph, extended, normalized or instance",
                          kw)
            items.append(parse())
        return Document(items)

    def _zigzag(self):
        name = self.ident()
        self.take("op", "=")
        self.take("op", "[[")
        ws = []
        while True:
            if self.at("("):
                self.i += 1
                w = self.integer("a weight")
                self.take("op", ")")
                self.take("op", "_")
                k = self.integer("a repeat count")
                if k < 1:
                    self.fail("a positive repeat count", self.toks[self.i - 1])
                ws.extend([w] * k)
            else:
                ws.append(self.integer("a weight"))
            if self.at(","):
                comma = self.tok
                self.i += 1
                if not (self.tok.kind == "int" or self.at("(")):
                    self.fail("a weight after ','", comma)
                continue
            self.take("op", "]]", "',' or ']]'")
            return ZigzagDecl(name, tuple(ws))

    def _attrs(self, allowed):
        out = {}
        while self.tok.kind == "ident" and self.toks[self.i + 1].text == "=":
            key = self.tok
            if key.text not in allowed:
                self.fail(" or ".join(allowed), key)
            self.i += 2
            if key.text == "role":
                t = self.take("ident", expected="a role")
                try:
                    out["role"] = Role(t.text)
                except ValueError:
                    self.fail("section, fiber0, boundary or feather", t)
            else:
                out[key.text] = self.integer()
        return out

    def _graph(self):
        name = self.ident()
        self.take("op", "{")
        verts, edges, seen = [], [], set()
        while not self.at("}"):
            if self.at("edges"):
                self.i += 1
                self.take("op", ":")
                while True:
                    a = self.ident("a vertex name")
                    self.take("op", "-")
                    b = self.ident("a vertex name")
                    edges.append((a, b))
                    if not self.at(","):
                        break
                    self.i += 1
            else:
                vname = self.ident("a vertex name or 'edges'")
                if vname in seen:
                    raise DuplicateName(vname)
                seen.add(vname)
                a = self._attrs(("w", "role", "genus"))
                if "w" not in a:
                    self.fail("w=<weight>")
                verts.append(VertexDecl(vname, a["w"], a.get("role", Role.BOUNDARY),
                                        a.get("genus", 0)))
            if not self.at("}"):
                self.take("op", ";", "';' or '}'")
        self.take("op", "}")
        for a, b in edges:
            for v in (a, b):
                if v not in seen:
                    raise UnknownReference(v)
        return GraphDecl(name, tuple(verts), tuple(edges))

    def _boundary(self):
        self.take("ident", "boundary")
        self.take("op", "=")
        return self.ident("a graph name")

    def _extended(self):
        name = self.ident()
        self.take("op", "{")
        boundary = self._boundary()
        feathers = []
        while self.at(";"):
            self.i += 1
            if self.at("}"):
                break
            self.take("ident", "fiber")
            self.take("op", "(")
            fib = self.ident("a vertex name")
            self.take("op", ")")
            self.take("op", "+=")
            self.take("ident", "feather")
            fname = self.ident("a feather name")
            a = self._attrs(("w",))
            if "w" not in a:
                self.fail("w=<weight>")
            self.take("ident", "on")
            on = self.ident("a vertex name")
            feathers.append(FeatherDecl(fib, fname, a["w"], on))
        self.take("op", "}")
        return ExtendedDecl(name, boundary, tuple(feathers))

    def _pairs(self, value):
        out = []
        while True:
            k = self.ident()
            self.take("op", "=")
            out.append((k, value()))
            if not self.at(","):
                return tuple(out)
            self.i += 1

    def _normalized(self):
        name = self.ident()
        self.take("op", "{")
        boundary = self._boundary()
        delta = ()
        if self.at(";"):
            self.i += 1
            if self.at("delta"):
                self.i += 1
                self.take("op", ":")
                delta = self._pairs(self.integer)
                if self.at(";"):
                    self.i += 1
        self.take("op", "}")
        return NormalizedDecl(name, boundary, delta)

    def _instance(self):
        name = self.ident()
        self.take("op", "{")
        self.take("ident", "schedule_of")
        self.take("op", "=")
        of = self.ident("a normalized graph name")
        genus, params = 0, ()
        while self.at(";"):
            self.i += 1
            if self.at("genus"):
                self.i += 1
                self.take("op", "=")
                genus = self.integer("a genus")
            elif self.at("params"):
                self.i += 1
                self.take("op", ":")
                params = self._pairs(self.rational)
        self.take("op", "}")
        return InstanceDecl(name, of, genus, params)


def _check_refs(doc: Document):
    seen = {}
    for it in doc.items:
        if it.name in seen:
            raise DuplicateName(it.name)
        if isinstance(it, (ExtendedDecl, NormalizedDecl)):
            target = seen.get(it.boundary)
            if not isinstance(target, GraphDecl):
                raise UnknownReference(it.boundary)
            names = {v.name for v in target.vertices}
            if isinstance(it, ExtendedDecl):
                for f in it.feathers:
                    if f.name in names:
                        raise DuplicateName(f.name)
                    if f.fiber not in names:
                        raise UnknownReference(f.fiber)
                    if f.on not in names:
                        raise UnknownReference(f.on)
                    names.add(f.name)
            else:
                for v, _ in it.delta:
                    if v not in names:
                        raise UnknownReference(v)
        if isinstance(it, InstanceDecl) and not isinstance(seen.get(it.schedule_of),
                                                           NormalizedDecl):
            raise UnknownReference(it.schedule_of)
        seen[it.name] = it


def parse(text: str) -> Document:
    doc = _Parser(text).document()
    _check_refs(doc)
    return doc


# -- printer ---------------------------------------------------------------------

def _weights_text(ws):
    parts, i = [], 0
    while i < len(ws):
        j = i
        while j < len(ws) and ws[j] == ws[i]:
            j += 1
        parts.append(f"({ws[i]})_{j - i}" if j - i > 2 else ",".join([str(ws[i])] * (j - i)))
        i = j
    return "[[" + ",".join(parts) + "]]"


def dump(doc: Document) -> str:
    out = []
    for it in doc.items:
        if isinstance(it, ZigzagDecl):
            out.append(f"zigzag {it.name} = {_weights_text(it.weights)}")
        elif isinstance(it, GraphDecl):
            lines = [f"graph {it.name} {{"]
            for v in it.vertices:
                s = f"  {v.name} w={v.weight}"
                if v.role is not Role.BOUNDARY:
                    s += f" role={v.role.value}"
                if v.genus:
                    s += f" genus={v.genus}"
                lines.append(s + ";")
            lines.append("  edges: " + ", ".join(f"{a}-{b}" for a, b in it.edges))
            out.append("\n".join(lines) + "\n}")
        elif isinstance(it, ExtendedDecl):
            lines = [f"extended {it.name} {{", f"  boundary={it.boundary};"]
            for f in it.feathers:
                lines.append(f"  fiber({f.fiber}) += feather {f.name} w={f.weight} on {f.on};")
            out.append("\n".join(lines) + "\n}")
        elif isinstance(it, NormalizedDecl):
            body = f"boundary={it.boundary}"
            if it.delta:
                body += "; delta: " + ", ".join(f"{v}={k}" for v, k in it.delta)
            out.append(f"normalized {it.name} {{ {body} }}")
        else:
            body = f"schedule_of={it.schedule_of}; genus={it.genus}"
            if it.params:
                body += "; params: " + ", ".join(f"{k}={fmt_rational(v)}" for k, v in it.params)
            out.append(f"instance {it.name} {{ {body} }}")
    return "\n\n".join(out) + "\n"


def load(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
