"""Weighted dual graphs, zigzags, standardness predicates and tree codes.

Vertices carry an integer weight (the self-intersection of the curve), a
genus and a role.  Graphs are immutable; every modifying method returns a
new graph.  Vertex ids are integers handed out by a per-lineage counter, so
an id that disappeared in a blowdown is never reused by a later blowup.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import GraphError, LoopsUnsupported


class Role(str, Enum):
    SECTION = "section"
    FIBER_ZERO = "fiber0"
    BOUNDARY = "boundary"
    FEATHER = "feather"

    @property
    def is_boundary(self):
        return self is not Role.FEATHER


@dataclass(frozen=True)
class Vertex:
    id: int
    weight: int
    genus: int = 0
    role: Role = Role.BOUNDARY
    name: str | None = None

    def __post_init__(self):
        if self.genus < 0:
            raise GraphError(f"negative genus on vertex {self.id}")
        if self.genus > 0 and self.role is not Role.SECTION:
            raise GraphError(
                f"vertex {self.label}: only the section may have positive genus"
            )

    @property
    def label(self):
        return self.name if self.name is not None else f"v{self.id}"

    def replace(self, **changes):
        fields = dict(
            id=self.id, weight=self.weight, genus=self.genus, role=self.role, name=self.name
        )
        fields.update(changes)
        return Vertex(**fields)


def _edge(a, b):
    return (a, b) if a <= b else (b, a)


class WeightedGraph:
    """A finite weighted graph; loops and multi-edges are representable."""

    __slots__ = ("_v", "_edges", "_next_id", "_adj")

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[tuple[int, int]] = (),
                 next_id: int | None = None):
        vdict = {}
        for v in vertices:
            if v.id in vdict:
                raise GraphError(f"duplicate vertex id {v.id}")
            vdict[v.id] = v
        elist = []
        for a, b in edges:
            if a not in vdict or b not in vdict:
                raise GraphError(f"edge ({a}, {b}) has an endpoint outside the graph")
            elist.append(_edge(a, b))
        floor = max(vdict, default=-1) + 1
        self._init(vdict, tuple(sorted(elist)), max(floor, next_id or 0))

    def _init(self, vdict, edges, next_id):
        self._v = vdict
        self._edges = edges
        self._next_id = next_id
        self._adj = None

    @classmethod
    def _raw(cls, vdict, edges, next_id):
        g = cls.__new__(cls)
        g._init(vdict, edges, next_id)
        return g

    @classmethod
    def chain(cls, weights: Sequence[int], roles: Sequence[Role] | None = None,
              names: Sequence[str] | None = None) -> "WeightedGraph":
        """Linear graph with ids 0..n-1 read left to right."""
        roles = roles or [Role.BOUNDARY] * len(weights)
        names = names or [None] * len(weights)
        verts = [Vertex(i, int(w), role=r, name=nm)
                 for i, (w, r, nm) in enumerate(zip(weights, roles, names))]
        return cls(verts, [(i, i + 1) for i in range(len(weights) - 1)])

    # -- inspection -------------------------------------------------------

    def __len__(self):
        return len(self._v)

    def __contains__(self, vid):
        return vid in self._v

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self._v == other._v and self._edges == other._edges

    def __hash__(self):
        return hash((tuple(sorted(self._v.items())), self._edges))

    def __repr__(self):
        vs = ", ".join(f"{v.label}({v.weight})" for v in self.vertices)
        es = ", ".join(f"{a}-{b}" for a, b in self._edges)
        return f"WeightedGraph([{vs}]; [{es}])"

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return tuple(self._v[k] for k in sorted(self._v))

    @property
    def ids(self) -> list[int]:
        return sorted(self._v)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def next_id(self) -> int:
        return self._next_id

    def vertex(self, vid) -> Vertex:
        return self._v[vid]

    def weight(self, vid) -> int:
        return self._v[vid].weight

    def by_name(self, name) -> Vertex:
        for v in self.vertices:
            if v.name == name:
                return v
        raise KeyError(name)

    def _adjacency(self):
        if self._adj is None:
            adj = defaultdict(list)
            for a, b in self._edges:
                adj[a].append(b)
                adj[b].append(a)
            self._adj = adj
        return self._adj

    def neighbors(self, vid) -> list[int]:
        """Neighbors with multiplicity; a loop lists the vertex twice."""
        return sorted(self._adjacency().get(vid, ()))

    def degree(self, vid) -> int:
        return len(self._adjacency().get(vid, ()))

    def has_loops(self):
        return any(a == b for a, b in self._edges)

    def has_multi_edges(self):
        return len(set(self._edges)) != len(self._edges)

    def components(self) -> list[list[int]]:
        seen, comps = set(), []
        adj = self._adjacency()
        for start in self.ids:
            if start in seen:
                continue
            comp, stack = [], [start]
            seen.add(start)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in adj.get(u, ()):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_forest(self):
        return (not self.has_loops() and not self.has_multi_edges()
                and len(self._edges) == len(self._v) - len(self.components()))

    def is_tree(self):
        return len(self._v) > 0 and self.is_forest() and len(self.components()) == 1

    def is_linear(self):
        """True for a nonempty path graph (a chain)."""
        return self.is_tree() and all(self.degree(v) <= 2 for v in self._v)

    def chain_order(self) -> list[int]:
        """Vertex ids along a chain, starting at the end with the smaller id."""
        if not self.is_linear():
            raise GraphError("graph is not a chain")
        if len(self._v) == 1:
            return self.ids
        start = min(v for v in self._v if self.degree(v) == 1)
        order, prev = [start], None
        while len(order) < len(self._v):
            cur = order[-1]
            nxt = [w for w in self.neighbors(cur) if w != prev]
            prev = cur
            order.append(nxt[0])
        return order

    def induced(self, keep: Iterable[int]) -> "WeightedGraph":
        keep = set(keep)
        return WeightedGraph._raw(
            {k: v for k, v in self._v.items() if k in keep},
            tuple(e for e in self._edges if e[0] in keep and e[1] in keep),
            self._next_id,
        )

    # -- modification (returns new graphs) --------------------------------

    def with_vertex(self, v: Vertex) -> "WeightedGraph":
        vd = dict(self._v)
        vd[v.id] = v
        return WeightedGraph._raw(vd, self._edges, max(self._next_id, v.id + 1))

    def with_weights(self, deltas: dict[int, int]) -> "WeightedGraph":
        vd = dict(self._v)
        for k, d in deltas.items():
            vd[k] = vd[k].replace(weight=vd[k].weight + d)
        return WeightedGraph._raw(vd, self._edges, self._next_id)

    def replace_vertex(self, vid, **changes) -> "WeightedGraph":
        vd = dict(self._v)
        vd[vid] = vd[vid].replace(**changes)
        return WeightedGraph._raw(vd, self._edges, self._next_id)

    def without(self, vid) -> "WeightedGraph":
        vd = dict(self._v)
        del vd[vid]
        return WeightedGraph._raw(
            vd, tuple(e for e in self._edges if vid not in e), self._next_id)

    def with_edges(self, add=(), remove=()) -> "WeightedGraph":
        edges = list(self._edges)
        for e in remove:
            edges.remove(_edge(*e))
        edges.extend(_edge(*e) for e in add)
        return WeightedGraph._raw(self._v, tuple(sorted(edges)), self._next_id)

    def fresh_id(self) -> int:
        return self._next_id


# -- zigzags ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Zigzag:
    """Weights of a chain, stored in one orientation, compared unoriented."""

    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if not self.weights:
            raise GraphError("a zigzag has at least one component")

    def _key(self):
        return min(self.weights, self.weights[::-1])

    def __eq__(self, other):
        if isinstance(other, Zigzag):
            return self._key() == other._key()
        return NotImplemented

    def __hash__(self):
        return hash(self._key())

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __repr__(self):
        return "[[" + ",".join(map(str, self.weights)) + "]]"

    def reflected(self) -> "Zigzag":
        return Zigzag(self.weights[::-1])

    def graph(self) -> WeightedGraph:
        return WeightedGraph.chain(self.weights)

    @classmethod
    def of(cls, g: WeightedGraph) -> "Zigzag":
        return cls(tuple(g.weight(v) for v in g.chain_order()))


class ChainKind(str, Enum):
    STANDARD = "standard"
    SEMISTANDARD = "semistandard"
    NEITHER = "neither"


@dataclass(frozen=True)
class ChainClass:
    kind: ChainKind
    w1: int | None = None

    @property
    def is_semistandard(self):
        return self.kind is not ChainKind.NEITHER


def _is_standard_oriented(ws):
    if all(w == 0 for w in ws):
        return len(ws) <= 3
    if ws[:2] == (0, 0):
        rest = ws[2:]
    else:
        rest = ws
    return len(rest) >= 1 and all(w <= -2 for w in rest)


def _semistandard_w1(ws):
    """The w_1 slot if ``ws`` reads as [[0,w1,w2..]] or [[0,w1,0]], else None."""
    if len(ws) < 2 or ws[0] != 0:
        return None
    if len(ws) == 3 and ws[2] == 0:
        return ws[1]
    if all(w <= -2 for w in ws[2:]):
        return ws[1]
    return None


def classify_chain(z) -> ChainClass:
    ws = tuple(z.weights if isinstance(z, Zigzag) else z)
    if not ws:
        raise GraphError("empty chain")
    for o in (ws, ws[::-1]):
        if _is_standard_oriented(o):
            return ChainClass(ChainKind.STANDARD)
    for o in (ws, ws[::-1]):
        w1 = _semistandard_w1(o)
        if w1 is not None:
            return ChainClass(ChainKind.SEMISTANDARD, w1)
    return ChainClass(ChainKind.NEITHER)


def _rotations_and_reflections(ws):
    n = len(ws)
    for seq in (ws, ws[::-1]):
        for k in range(n):
            yield seq[k:] + seq[:k]


def is_standard_circular(weights: Sequence[int]) -> bool:
    ws = tuple(weights)
    if not ws:
        return False
    for c in _rotations_and_reflections(ws):
        if all(w <= -2 for w in c):
            return True
        if len(c) > 2 and c[:2] == (0, 0) and all(w <= -2 for w in c[2:]):
            return True
        if len(c) <= 4 and all(w == 0 for w in c[:-1]) and c[-1] <= 0:
            return True
        if c == (0, 0, -1, -1):
            return True
    return False


# -- segments and standard graphs -------------------------------------------

@dataclass(frozen=True)
class Segment:
    vertices: tuple[int, ...]  # along the path
    is_outer: bool

    def weights(self, g: WeightedGraph) -> tuple[int, ...]:
        return tuple(g.weight(v) for v in self.vertices)


def branch_points(g: WeightedGraph) -> set[int]:
    return {v for v in g.ids if g.degree(v) >= 3}


def segments(g: WeightedGraph) -> list[Segment]:
    cut = branch_points(g) | {v.id for v in g.vertices if v.genus > 0}
    rest = g.induced(v for v in g.ids if v not in cut)
    out = []
    for comp in rest.components():
        sub = rest.induced(comp)
        if sub.is_linear():
            path = tuple(sub.chain_order())
        else:
            # only a loop or a double edge inside a segment gets here
            path = tuple(comp)
        outer = any(g.degree(v) <= 1 for v in comp)
        out.append(Segment(path, outer))
    return out


def is_standard_graph(g: WeightedGraph, semi: bool = False) -> bool:
    for seg in segments(g):
        sub = g.induced(seg.vertices)
        if not sub.is_linear():
            return False
        cls = classify_chain(seg.weights(g))
        if semi:
            if not cls.is_semistandard:
                return False
        elif cls.kind is not ChainKind.STANDARD:
            return False
        if seg.is_outer and any(g.weight(v) == 0 for v in seg.vertices):
            if not any(g.degree(v) <= 1 and g.weight(v) == 0 for v in seg.vertices):
                return False
    if not semi:
        for v in g.ids:
            if g.degree(v) == 1 and g.weight(v) == 0:
                (u,) = g.neighbors(v)
                if g.weight(u) != 0:
                    return False
    return True


# -- canonical codes ----------------------------------------------------------

CanonicalCode = bytes


_ROLE_LETTER = {Role.SECTION: "S", Role.FIBER_ZERO: "Z", Role.BOUNDARY: "B", Role.FEATHER: "F"}


def _label(v: Vertex) -> str:
    return f"{_ROLE_LETTER[v.role]}{v.weight}g{v.genus}"


def _centroids(g, comp, adj):
    n = len(comp)
    if n == 1:
        return comp
    root = comp[0]
    parent, order = {root: None}, [root]
    for u in order:
        for w in adj[u]:
            if w != parent[u]:
                parent[w] = u
                order.append(w)
    size = {}
    for u in reversed(order):
        size[u] = 1 + sum(size[w] for w in adj[u] if w != parent[u])
    best, cents = None, []
    for u in comp:
        heaviest = max([size[w] for w in adj[u] if w != parent[u]] + [n - size[u]])
        if best is None or heaviest < best:
            best, cents = heaviest, [u]
        elif heaviest == best:
            cents.append(u)
    return cents


def _rooted_code(g, root, adj):
    parent, order = {root: None}, [root]
    for u in order:
        for w in adj[u]:
            if w != parent[u]:
                parent[w] = u
                order.append(w)
    code = {}
    for u in reversed(order):
        kids = sorted(code[w] for w in adj[u] if w != parent[u])
        code[u] = "(" + _label(g.vertex(u)) + "".join(kids) + ")"
    return code[root]


def canonical_code(g: WeightedGraph) -> CanonicalCode:
    """Isomorphism-invariant code of a labeled forest.

    Two forests get equal codes iff some bijection preserves adjacency,
    weight, genus and role.  Each tree is encoded from its centroid(s) by
    sorting child codes bottom up; the least code over the centroids wins.
    """
    if g.has_loops() or g.has_multi_edges():
        raise LoopsUnsupported("canonical_code needs a graph without loops or multi-edges")
    if not g.is_forest():
        raise GraphError("canonical_code needs a forest")
    adj = g._adjacency()
    adj = {v: adj.get(v, []) for v in g.ids}
    codes = []
    for comp in g.components():
        codes.append(min(_rooted_code(g, c, adj) for c in _centroids(g, comp, adj)))
    return "|".join(sorted(codes)).encode("ascii")
