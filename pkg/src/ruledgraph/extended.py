"""Extended graphs: boundary tree plus the degenerate fibers of the ruling.

The boundary Γ consists of the section, the full fibers C0i hanging off it
and the boundary vertices of each degenerate fiber.  Feather vertices are
everything else.  A fiber is the connected piece of the graph, minus the
section, containing one of the section's boundary neighbors (its
distinguished vertex C2j).

Fibers are contracted canonically: each round blows down, all at once,
every (-1)-vertex of degree <= 2 in a fiber other than the distinguished
one.  Reading that contraction backwards tells which boundary vertex each
feather vertex was born on (its mother), whether two feather vertices were
born at the same point, and which boundary vertices came from blowing up a
point where two boundary curves met (star components).
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

from .errors import InvalidExtendedGraph, NoBoundaryNeighbor
from .graph import Role, Vertex, WeightedGraph


class ComponentKind(str, Enum):
    PLUS = "plus"
    STAR = "star"


@dataclass(frozen=True)
class Fiber:
    distinguished: int
    members: frozenset

    def __post_init__(self):
        if self.distinguished not in self.members:
            raise InvalidExtendedGraph("distinguished vertex outside its fiber")


@dataclass(frozen=True)
class ExtendedGraph:
    graph: WeightedGraph
    section: int
    full_fibers: tuple
    fibers: tuple

    @classmethod
    def from_graph(cls, g: WeightedGraph) -> "ExtendedGraph":
        """Read section, full fibers and fibers off the vertex roles."""
        if not g.is_tree():
            raise InvalidExtendedGraph("an extended graph must be a tree")
        sections = [v.id for v in g.vertices if v.role is Role.SECTION]
        if len(sections) != 1:
            raise InvalidExtendedGraph(f"expected one section vertex, found {len(sections)}")
        (s,) = sections
        full = tuple(v.id for v in g.vertices if v.role is Role.FIBER_ZERO)
        for c in full:
            if g.weight(c) != 0 or g.neighbors(c) != [s]:
                raise InvalidExtendedGraph(
                    f"full fiber {g.vertex(c).label} must be a 0-leaf on the section")
        rest = g.without(s)
        comp_of = {}
        for comp in rest.components():
            for u in comp:
                comp_of[u] = comp
        fibers = []
        for d in g.neighbors(s):
            role = g.vertex(d).role
            if role is Role.FIBER_ZERO:
                continue
            if role is not Role.BOUNDARY:
                raise InvalidExtendedGraph(
                    f"section neighbor {g.vertex(d).label} must be a boundary vertex")
            fibers.append(Fiber(d, frozenset(comp_of[d])))
        covered = {s, *full}.union(*(f.members for f in fibers))
        stray = [g.vertex(u).label for u in g.ids if u not in covered]
        if stray:
            raise InvalidExtendedGraph(f"vertices outside every fiber: {', '.join(stray)}")
        e = cls(g, s, full, tuple(fibers))
        e._check_feathers()
        return e

    def _check_feathers(self):
        g = self.graph
        feathers = set(self.feathers)
        if not g.induced(self.boundary_ids).is_tree():
            raise InvalidExtendedGraph("boundary vertices do not span a connected subtree")
        for comp in g.induced(feathers).components():
            sub = g.induced(comp)
            if not sub.is_linear():
                raise InvalidExtendedGraph("a feather is not a linear chain")
            links = [(u, w) for u in comp for w in g.neighbors(u) if w not in feathers]
            if len(links) != 1:
                raise InvalidExtendedGraph(
                    f"feather at {g.vertex(comp[0]).label} meets the boundary {len(links)} times")
            bridge = links[0][0]
            if len(comp) > 1 and sub.degree(bridge) != 1:
                raise InvalidExtendedGraph(
                    f"bridge {g.vertex(bridge).label} is not at the end of its feather")

    @property
    def feathers(self) -> list[int]:
        return [v.id for v in self.graph.vertices if v.role is Role.FEATHER]

    @property
    def boundary_ids(self) -> list[int]:
        return [v.id for v in self.graph.vertices if v.role is not Role.FEATHER]

    @property
    def boundary(self) -> WeightedGraph:
        return self.graph.induced(self.boundary_ids)

    @property
    def genus(self) -> int:
        return self.graph.vertex(self.section).genus


# -- canonical contraction ------------------------------------------------------

@dataclass(frozen=True)
class ContractionEvent:
    vertex: int
    neighbors: tuple
    onto: int | None


@dataclass(frozen=True)
class ContractionTranscript:
    rounds: tuple

    @property
    def events(self) -> list[ContractionEvent]:
        return [ev for rnd in self.rounds for ev in rnd]

    def round_sets(self) -> list[set]:
        return [{ev.vertex for ev in rnd} for rnd in self.rounds]

    def replay(self, g: WeightedGraph) -> WeightedGraph:
        for ev in self.events:
            g = _contract_vertex(g, ev.vertex)
        return g


@dataclass(frozen=True)
class FiberResult:
    distinguished: int
    success: bool
    multiplicities: Mapping[int, int]
    side_condition: bool
    reason: str | None = None


@dataclass(frozen=True)
class FiberReport:
    fibers: tuple

    @property
    def valid(self) -> bool:
        return all(f.success and f.side_condition for f in self.fibers)

    def failures(self) -> list[FiberResult]:
        return [f for f in self.fibers if not (f.success and f.side_condition)]


def _contract_vertex(g, v):
    nbrs = g.neighbors(v)
    h = g.without(v).with_weights({u: 1 for u in nbrs})
    if len(nbrs) == 2:
        h = h.with_edges(add=[tuple(nbrs)])
    return h


def _toward(g, members, root):
    """Parent pointers toward ``root`` inside the alive part of a fiber."""
    parent = {root: None}
    dq = deque([root])
    while dq:
        u = dq.popleft()
        for w in g.neighbors(u):
            if w in members and w not in parent:
                parent[w] = u
                dq.append(w)
    return parent


@dataclass
class _Run:
    transcript: ContractionTranscript
    final: WeightedGraph
    results: tuple
    pt_class: dict = field(default_factory=dict)
    kinds: dict = field(default_factory=dict)
    mothers: dict = field(default_factory=dict)


def _run(e: ExtendedGraph, track=False) -> _Run:
    g = e.graph
    alive = {f.distinguished: set(f.members) - {f.distinguished} for f in e.fibers}
    failed = {}
    rounds = []
    # pt[(a, b)]: the point of a where b meets it
    pt = {}
    if track:
        for i, (a, b) in enumerate(g.edges):
            pt[(a, b)] = 2 * i
            pt[(b, a)] = 2 * i + 1
    is_feather = {v.id: v.role is Role.FEATHER for v in g.vertices}
    mothers, kinds = {}, {}
    while True:
        batch = []
        for d, rem in alive.items():
            if d in failed:
                continue
            cands = [v for v in sorted(rem) if g.weight(v) == -1 and g.degree(v) <= 2]
            cset = set(cands)
            if any(w in cset for v in cands for w in g.neighbors(v)):
                failed[d] = "adjacent (-1)-vertices in one round"
                continue
            if cands:
                parent = _toward(g, rem | {d}, d)
                batch.extend((d, v, parent.get(v)) for v in cands)
        if not batch:
            break
        events = []
        for d, v, onto in batch:
            events.append(ContractionEvent(v, tuple(g.neighbors(v)), onto))
        for ev in events:
            nb = ev.neighbors
            if track:
                bnb = [u for u in nb if not is_feather[u]]
                if is_feather[ev.vertex]:
                    if len(bnb) != 1:
                        raise NoBoundaryNeighbor(
                            f"feather vertex {g.vertex(ev.vertex).label} is contracted with "
                            f"{len(bnb)} boundary neighbors")
                    mothers[ev.vertex] = (bnb[0], pt[(bnb[0], ev.vertex)])
                else:
                    kinds[ev.vertex] = ComponentKind.STAR if len(bnb) == 2 else ComponentKind.PLUS
                if len(nb) == 2:
                    x, y = nb
                    pt[(x, y)] = pt[(x, ev.vertex)]
                    pt[(y, x)] = pt[(y, ev.vertex)]
            g = _contract_vertex(g, ev.vertex)
        for d, v, _ in batch:
            alive[d].discard(v)
        rounds.append(tuple(events))
    results = []
    events_all = [ev for rnd in rounds for ev in rnd]
    for f in e.fibers:
        d = f.distinguished
        reason = failed.get(d)
        if reason is None and alive[d]:
            reason = "contraction stalls"
        if reason is None and g.weight(d) != 0:
            reason = f"distinguished vertex ends at weight {g.weight(d)}"
        mult = {}
        if reason is None:
            mult[d] = 1
            for ev in reversed(events_all):
                if ev.vertex in f.members:
                    mult[ev.vertex] = sum(mult[u] for u in ev.neighbors)
        results.append(FiberResult(d, reason is None, mult, d not in failed, reason))
    return _Run(ContractionTranscript(tuple(rounds)), g, tuple(results), pt, kinds, mothers)


def validate(e: ExtendedGraph) -> FiberReport:
    """Try the canonical contraction on every fiber and report the outcome."""
    return FiberReport(_run(e).results)


def _require_valid(run):
    bad = [r for r in run.results if not (r.success and r.side_condition)]
    if bad:
        raise InvalidExtendedGraph(
            "; ".join(f"fiber at vertex {r.distinguished}: {r.reason}" for r in bad))


def contract_canonically(e: ExtendedGraph) -> ContractionTranscript:
    run = _run(e)
    _require_valid(run)
    return run.transcript


# -- mothers and normalization --------------------------------------------------

@dataclass(frozen=True)
class MotherAssignment:
    mothers: Mapping[int, tuple]
    kinds: Mapping[int, ComponentKind]

    def mother(self, feather: int) -> int:
        return self.mothers[feather][0]

    def base_point_class(self, feather: int) -> int:
        return self.mothers[feather][1]

    def delta(self) -> dict[int, int]:
        return dict(Counter(m for m, _ in self.mothers.values()))


def mother_map(e: ExtendedGraph) -> MotherAssignment:
    """Mothers, base-point classes and component kinds from the contraction.

    Base-point classes are small integers numbered per mother in order of
    first appearance along the feather ids.
    """
    run = _run(e, track=True)
    _require_valid(run)
    kinds = {v: ComponentKind.PLUS for v in e.boundary_ids}
    kinds.update(run.kinds)
    renumber, mothers = {}, {}
    for f in sorted(run.mothers):
        m, raw = run.mothers[f]
        key = (m, raw)
        if key not in renumber:
            renumber[key] = sum(1 for k in renumber if k[0] == m)
        mothers[f] = (m, renumber[key])
    return MotherAssignment(mothers, kinds)


class NormalizedExtendedGraph:
    """Boundary graph Γ together with a feather count δ_C per boundary vertex."""

    __slots__ = ("boundary", "_delta")

    def __init__(self, boundary: WeightedGraph, delta: Mapping[int, int] | None = None):
        delta = {int(k): int(v) for k, v in (delta or {}).items() if v}
        for k, v in delta.items():
            if k not in boundary:
                raise InvalidExtendedGraph(f"delta names vertex {k} outside the boundary")
            if v < 0:
                raise InvalidExtendedGraph(f"negative delta at vertex {k}")
        if any(v.role is Role.FEATHER for v in boundary.vertices):
            raise InvalidExtendedGraph("boundary graph contains feather vertices")
        self.boundary = boundary
        self._delta = tuple(sorted(delta.items()))

    @property
    def delta(self) -> dict[int, int]:
        return dict(self._delta)

    def delta_of(self, vid) -> int:
        return self.delta.get(vid, 0)

    @property
    def section(self) -> int:
        (s,) = [v.id for v in self.boundary.vertices if v.role is Role.SECTION]
        return s

    def __eq__(self, other):
        if not isinstance(other, NormalizedExtendedGraph):
            return NotImplemented
        return self.boundary == other.boundary and self._delta == other._delta

    def __hash__(self):
        return hash((self.boundary, self._delta))

    def __repr__(self):
        return f"NormalizedExtendedGraph({self.boundary!r}, delta={self.delta})"

    def realized(self) -> WeightedGraph:
        """Γ with δ_C extremal (-1)-leaves hung on each C, ids after Γ's."""
        g = self.boundary
        for c, k in self._delta:
            base = g.vertex(c).label
            for i in range(k):
                f = g.fresh_id()
                g = g.with_vertex(Vertex(f, -1, role=Role.FEATHER, name=f"{base}.f{i + 1}"))
                g = g.with_edges(add=[(c, f)])
        return g

    def extended(self) -> ExtendedGraph:
        return ExtendedGraph.from_graph(self.realized())


def normalize(e: ExtendedGraph) -> NormalizedExtendedGraph:
    ma = mother_map(e)
    return NormalizedExtendedGraph(e.boundary, ma.delta())
