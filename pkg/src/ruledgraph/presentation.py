"""Blowup schedules that build a normalized graph from its one-skeleton.

The one-skeleton is the section together with its neighbors.  A schedule
lists the blowups that grow it into the realized normalized graph; every
outer blowup (at a free point of a curve) costs one rational parameter, the
position of its center, and inner blowups (at the meeting point of two
boundary curves) cost nothing.  The skeleton itself costs one parameter
per section neighbor beyond the first, whose point is fixed at infinity.

Instantiating a schedule with concrete parameters tracks a chart on every
boundary curve: infinity is where the curve meets the side of the section,
and on a curve born between two boundary curves, 0 is where it meets the
far one.  When an outer center lands on the point where a feather already
meets its curve, the new curve is inserted between them and the feather
jumps onto it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import (InvalidExtendedGraph, NoExtremalZero, NotRealizable, OrderingConflict,
                     SlotViolation)
from .extended import ExtendedGraph, NormalizedExtendedGraph, _run
from .graph import Role, Vertex, WeightedGraph
from .invariants import fmt_rational
from .surgery import StepKind, SurgeryStep, apply_step, format_steps, parse_steps

INF = float("inf")


@dataclass(frozen=True)
class OneSkeleton:
    graph: WeightedGraph
    section: int
    full_fibers: tuple
    leaves: tuple

    @property
    def a(self) -> int:
        return len(self.full_fibers)

    @property
    def b(self) -> int:
        return len(self.leaves)

    @property
    def genus(self) -> int:
        return self.graph.vertex(self.section).genus


def one_skeleton(d: NormalizedExtendedGraph, g: int) -> OneSkeleton:
    b = d.boundary
    s = d.section
    nbrs = b.neighbors(s)
    full = tuple(u for u in nbrs if b.vertex(u).role is Role.FIBER_ZERO and b.degree(u) == 1
                 and b.weight(u) == 0)
    if not full:
        raise NoExtremalZero("the section has no extremal 0-neighbor")
    leaves = tuple(u for u in nbrs if u not in full)
    sv = b.vertex(s)
    verts = [sv.replace(weight=-2 * g, genus=g)]
    verts += [b.vertex(u).replace(weight=0) for u in (*full, *leaves)]
    graph = WeightedGraph(verts, [(s, u) for u in (*full, *leaves)], next_id=b.next_id)
    return OneSkeleton(graph, s, full, leaves)


def dimension_base(g: int) -> int:
    if g == 0:
        return 0
    if g == 1:
        return 2
    return 4 * g - 2


@dataclass(frozen=True)
class Slot:
    name: str
    kind: str  # "skeleton" or "outer"
    ref: int  # skeleton leaf id, or step index


@dataclass(frozen=True)
class BlowupSchedule:
    skeleton: OneSkeleton
    steps: tuple
    section_weight: int = 0

    @property
    def slots(self) -> tuple:
        out = []
        for u in self.skeleton_slot_vertices:
            out.append(Slot(f"slot{len(out) + 1}", "skeleton", u))
        for i, st in enumerate(self.steps):
            if st.kind is StepKind.OUTER_BLOWUP:
                out.append(Slot(f"slot{len(out) + 1}", "outer", i))
        return tuple(out)

    @property
    def skeleton_slot_vertices(self) -> tuple:
        sk = self.skeleton
        return (*sk.full_fibers[1:], *sk.leaves)

    @staticmethod
    def label(step: SurgeryStep) -> str:
        if step.kind is StepKind.INNER_BLOWUP:
            return "B2"
        return "A" if step.role is Role.FEATHER else "B1"

    def replay(self) -> WeightedGraph:
        g = self.skeleton.graph
        for st in self.steps:
            g = apply_step(g, st)
        return g.replace_vertex(self.skeleton.section, weight=self.section_weight)

    def to_text(self) -> str:
        sk = self.skeleton
        sv = sk.graph.vertex(sk.section)
        head = [f"skeleton section={sk.section}:{sv.label} genus={sv.genus} "
                f"section_weight={self.section_weight}"]
        for u in (*sk.full_fibers, *sk.leaves):
            v = sk.graph.vertex(u)
            head.append(f"leaf {u}:{v.label} role={v.role.value}")
        body = format_steps(self.steps)
        slots = ", ".join(f"{s.name}={s.kind}:{s.ref}" for s in self.slots)
        return "\n".join(head) + "\n" + body + f"slots: {slots}\n"

    @classmethod
    def from_text(cls, text: str) -> "BlowupSchedule":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        first = dict(kv.split("=", 1) for kv in lines[0].split()[1:])
        sid, sname = first["section"].split(":", 1)
        g = int(first["genus"])
        verts = [Vertex(int(sid), -2 * g, g, Role.SECTION, sname)]
        full, leaves, steps_text = [], [], []
        for ln in lines[1:]:
            if ln.startswith("leaf "):
                ref, role = ln.split()[1], ln.split()[2].split("=", 1)[1]
                u, name = ref.split(":", 1)
                verts.append(Vertex(int(u), 0, role=Role(role), name=name))
                (full if Role(role) is Role.FIBER_ZERO else leaves).append(int(u))
            elif ln.startswith("slots:") or ln.startswith("params:"):
                continue
            else:
                steps_text.append(ln)
        sk_graph = WeightedGraph(verts, [(int(sid), u) for u in (*full, *leaves)])
        sk = OneSkeleton(sk_graph, int(sid), tuple(full), tuple(leaves))
        return cls(sk, tuple(parse_steps("\n".join(steps_text))),
                   int(first["section_weight"]))


# -- construction -----------------------------------------------------------------

def _order_feathers_first(created, kinds):
    """Put each boundary vertex's feathers right after it, skeleton's first."""
    feathers_of = {}
    others = []
    for st in created:
        if kinds[st.created[0]] == "A":
            feathers_of.setdefault(st.site[0], []).append(st)
        else:
            others.append(st)
    out = []
    pending = dict(feathers_of)
    skeleton_mothers = [m for m in pending if not any(o.created[0] == m for o in others)]
    for m in sorted(skeleton_mothers):
        out.extend(pending.pop(m))
    for st in others:
        out.append(st)
        out.extend(pending.pop(st.created[0], []))
    if pending:
        raise OrderingConflict("feathers whose mother is never created")
    return out


def _check_dependencies(skeleton, steps):
    alive = set(skeleton.graph.ids)
    for st in steps:
        if not set(st.site) <= alive:
            raise OrderingConflict(f"step creating {st.created[0]} precedes its site")
        alive.add(st.created[0])


def schedule_from(d: NormalizedExtendedGraph, g: int) -> BlowupSchedule:
    """Reverse the canonical contraction of the realized graph into blowups."""
    sk = one_skeleton(d, g)
    real = d.realized()
    try:
        e = ExtendedGraph.from_graph(real)
    except InvalidExtendedGraph as exc:
        raise NotRealizable(str(exc)) from exc
    run = _run(e)
    bad = [r for r in run.results if not (r.success and r.side_condition)]
    if bad:
        raise NotRealizable("; ".join(
            f"fiber at {real.vertex(r.distinguished).label}: {r.reason}" for r in bad))
    creation = []
    kinds = {}
    for rnd in reversed(run.transcript.rounds):
        for ev in sorted(rnd, key=lambda ev: ev.vertex):
            v = real.vertex(ev.vertex)
            if len(ev.neighbors) == 1:
                step = SurgeryStep(StepKind.OUTER_BLOWUP, (ev.neighbors[0],), (v.id,), (),
                                   ((ev.neighbors[0], -1),), v.role, v.name)
            else:
                x, y = ev.neighbors
                step = SurgeryStep(StepKind.INNER_BLOWUP, (x, y), (v.id,), (),
                                   ((x, -1), (y, -1)), v.role, v.name)
            kinds[v.id] = BlowupSchedule.label(step)
            creation.append(step)
    ordered = _order_feathers_first(creation, kinds)
    _check_dependencies(sk, ordered)
    sched = BlowupSchedule(sk, tuple(ordered), real.weight(sk.section))
    got = sched.replay()
    want = real.replace_vertex(sk.section, genus=g)
    if got != want:
        raise NotRealizable("replaying the schedule does not rebuild the graph")
    return sched


def presentation_dimension(d: NormalizedExtendedGraph, g: int) -> int:
    sched = schedule_from(d, g)
    return dimension_base(g) + len(sched.slots)


# -- instantiation ---------------------------------------------------------------

@dataclass(frozen=True)
class Instance:
    """An extended graph produced from a schedule, with feather base points."""

    extended: ExtendedGraph
    base_points: Mapping[int, tuple]
    schedule: BlowupSchedule
    params: Mapping[str, Fraction]

    def params_text(self) -> str:
        return "params: " + ", ".join(
            f"{k}={fmt_rational(v)}" for k, v in sorted(
                self.params.items(), key=lambda kv: int(kv[0][4:]))) + "\n"

    def to_text(self) -> str:
        return self.schedule.to_text() + self.params_text()


class _Builder:
    """Replays a schedule, keeping for each boundary curve the map from
    chart coordinates to the neighbor meeting it there."""

    def __init__(self, sched: BlowupSchedule):
        self.sched = sched
        sk = sched.skeleton
        self.g = sk.graph
        self.occ = {u: {INF: sk.section} for u in (*sk.full_fibers, *sk.leaves)}
        self.occ[sk.section] = {INF: sk.full_fibers[0]}
        self.base_points = {}
        self.is_feather = {}

    def place_skeleton(self, u, p):
        p = Fraction(p)
        occ = self.occ[self.sched.skeleton.section]
        if p in occ:
            raise SlotViolation(f"skeleton point {p} used twice")
        occ[p] = u

    def boundary_points(self, m):
        return {p for p, u in self.occ[m].items()
                if p != INF and not self.is_feather.get(u, False)}

    def feather_points(self, m):
        return sorted(p for p, u in self.occ[m].items() if self.is_feather.get(u, False))

    def apply(self, st: SurgeryStep, p=None):
        e = st.created[0]
        feather = st.role is Role.FEATHER
        if st.kind is StepKind.INNER_BLOWUP:
            x, y = st.site
            px = next(q for q, u in self.occ[x].items() if u == y)
            py = next(q for q, u in self.occ[y].items() if u == x)
            near, far = (x, y) if py == INF else (y, x)
            self.g = apply_step(self.g, st)
            self.occ[x][px] = e
            self.occ[y][py] = e
            self.occ[e] = {INF: near, Fraction(0): far}
            self.is_feather[e] = feather
            return
        (m,) = st.site
        p = Fraction(p)
        hit = self.occ[m].get(p)
        if hit is not None and not self.is_feather.get(hit, False):
            raise SlotViolation(
                f"center {p} on {self.g.vertex(m).label} is where a boundary curve meets it")
        if hit is None:
            self.g = apply_step(self.g, st)
            self.occ[e] = {INF: m}
        else:
            jump = SurgeryStep(StepKind.INNER_BLOWUP, (m, hit), (e,), (), (), st.role, st.name)
            self.g = apply_step(self.g, jump)
            self.occ[e] = {INF: m, Fraction(0): hit}
        self.occ[m][p] = e
        self.is_feather[e] = feather
        if feather:
            self.base_points[e] = (m, p)


def _params_by_slot(sched, params):
    vals = {}
    for s in sched.slots:
        if s.name not in params:
            raise SlotViolation(f"missing parameter {s.name}")
        vals[s.name] = Fraction(params[s.name])
    extra = set(params) - set(vals)
    if extra:
        raise SlotViolation(f"unknown parameters: {', '.join(sorted(extra))}")
    return vals


def instantiate(sched: BlowupSchedule, params: Mapping[str, object]) -> Instance:
    vals = _params_by_slot(sched, params)
    b = _Builder(sched)
    by_step = {}
    for s in sched.slots:
        if s.kind == "skeleton":
            b.place_skeleton(s.ref, vals[s.name])
        else:
            by_step[s.ref] = vals[s.name]
    for i, st in enumerate(sched.steps):
        b.apply(st, by_step.get(i))
    g = b.g.replace_vertex(sched.skeleton.section, weight=sched.section_weight)
    return Instance(ExtendedGraph.from_graph(g), b.base_points, sched, vals)


def random_params(sched: BlowupSchedule, rng: random.Random, jump_rate: float = 0.3,
                  spread: int = 9) -> dict[str, Fraction]:
    """A valid parameter assignment; with probability ``jump_rate`` an outer
    center is put on an existing feather point so that the feather jumps."""

    def fresh(taken):
        while True:
            q = Fraction(rng.randint(-spread, spread), rng.randint(1, 3))
            if q not in taken:
                return q

    b = _Builder(sched)
    out = {}
    used = set()
    for s in sched.slots:
        if s.kind == "skeleton":
            q = fresh(used)
            used.add(q)
            b.place_skeleton(s.ref, q)
            out[s.name] = q
    outer = {s.ref: s.name for s in sched.slots if s.kind == "outer"}
    for i, st in enumerate(sched.steps):
        q = None
        if i in outer:
            (m,) = st.site
            fp = b.feather_points(m)
            if fp and rng.random() < jump_rate:
                q = rng.choice(fp)
            else:
                q = fresh(set(b.occ[m]))
            out[outer[i]] = q
        b.apply(st, q)
    return out
