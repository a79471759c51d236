"""Blowups, blowdowns and elementary transformations on weighted trees.

Every operation returns the new graph together with a :class:`SurgeryStep`
that records enough to replay it exactly: the site, the ids created and
destroyed, and the weight changes of the surviving vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .errors import (DegreeTooHigh, NotATree, NotMinusOne, NotReversible,
                     NotZeroVertex, SearchBudgetExceeded, SiteMissing, WrongDegree)
from .graph import Role, Vertex, WeightedGraph, Zigzag, canonical_code, is_standard_graph


class StepKind(str, Enum):
    INNER_BLOWUP = "inner_blowup"
    OUTER_BLOWUP = "outer_blowup"
    BLOWDOWN = "blowdown"
    ELEM_INNER = "elem_inner"
    ELEM_OUTER = "elem_outer"


@dataclass(frozen=True)
class SurgeryStep:
    kind: StepKind
    site: tuple[int, ...]
    created: tuple[int, ...] = ()
    destroyed: tuple[int, ...] = ()
    deltas: tuple[tuple[int, int], ...] = ()
    role: Role | None = None
    name: str | None = None


@dataclass
class SurgeryTranscript:
    initial: WeightedGraph
    steps: list[SurgeryStep] = field(default_factory=list)
    final: WeightedGraph | None = None

    def __post_init__(self):
        if self.final is None:
            self.final = self.replay()

    def __len__(self):
        return len(self.steps)

    def replay(self, upto: int | None = None) -> WeightedGraph:
        g = self.initial
        for step in self.steps[:upto]:
            g = apply_step(g, step)
        return g

    def to_text(self) -> str:
        return format_steps(self.steps)


def _require_tree(g):
    if not g.is_tree():
        raise NotATree("surgery needs a tree")


def _inner_blowup(g, u, v, role, name, new_id):
    e = g.fresh_id() if new_id is None else new_id
    h = g.with_edges(remove=[(u, v)]).with_weights({u: -1, v: -1})
    h = h.with_vertex(Vertex(e, -1, role=role, name=name)).with_edges(add=[(u, e), (e, v)])
    step = SurgeryStep(StepKind.INNER_BLOWUP, (u, v) if u <= v else (v, u), (e,), (),
                       tuple(sorted({u: -1, v: -1}.items())), role, name)
    return h, step


def _outer_blowup(g, v, role, name, new_id):
    e = g.fresh_id() if new_id is None else new_id
    h = g.with_weights({v: -1}).with_vertex(Vertex(e, -1, role=role, name=name))
    h = h.with_edges(add=[(v, e)])
    return h, SurgeryStep(StepKind.OUTER_BLOWUP, (v,), (e,), (), ((v, -1),), role, name)


def _blowdown(g, v):
    nbrs = g.neighbors(v)
    h = g.without(v).with_weights({u: 1 for u in nbrs})
    if len(nbrs) == 2:
        h = h.with_edges(add=[tuple(nbrs)])
    return h, SurgeryStep(StepKind.BLOWDOWN, (v,), (), (v,), tuple((u, 1) for u in nbrs))


def blow_up(g: WeightedGraph, site, role: Role = Role.FEATHER, name: str | None = None,
            new_id: int | None = None):
    """Blow up an edge ``(u, v)`` (inner) or a vertex ``v`` (outer).

    The new (-1)-vertex gets role ``role``; ids are fresh unless ``new_id``
    is given (used when replaying).
    """
    _require_tree(g)
    if isinstance(site, tuple):
        u, v = site
        if (min(u, v), max(u, v)) not in g.edges:
            raise SiteMissing(f"no edge {site}")
        return _inner_blowup(g, u, v, role, name, new_id)
    if site not in g:
        raise SiteMissing(f"no vertex {site}")
    return _outer_blowup(g, site, role, name, new_id)


def blow_down(g: WeightedGraph, v: int):
    """Contract the (-1)-vertex ``v`` of degree at most two."""
    _require_tree(g)
    if v not in g:
        raise SiteMissing(f"no vertex {v}")
    if g.weight(v) != -1:
        raise NotMinusOne(f"vertex {v} has weight {g.weight(v)}")
    if g.degree(v) > 2:
        raise DegreeTooHigh(f"vertex {v} has degree {g.degree(v)}")
    return _blowdown(g, v)


def _elementary(g, z, toward, new_id=None):
    vz = g.vertex(z)
    if toward is None:
        h, s1 = _outer_blowup(g, z, vz.role, vz.name, new_id)
    else:
        h, s1 = _inner_blowup(g, z, toward, vz.role, vz.name, new_id)
    (e,) = s1.created
    h, _ = _blowdown(h, z)
    net = tuple((u, h.weight(u) - g.weight(u)) for u in g.ids
                if u != z and h.weight(u) != g.weight(u))
    if toward is None:
        step = SurgeryStep(StepKind.ELEM_OUTER, (z,), (e,), (z,), net, vz.role, vz.name)
    else:
        step = SurgeryStep(StepKind.ELEM_INNER, (z, toward), (e,), (z,), net, vz.role, vz.name)
    return h, step


def elementary_transform(g: WeightedGraph, zero: int, toward: int | None = None):
    """Elementary transformation at the 0-vertex ``zero``.

    With ``toward`` set to a neighbor this is the inner form: blow up the
    edge to that neighbor and contract the image of ``zero``; on a chain
    ``[[a, 0, b]]`` toward ``b`` the result is ``[[a+1, 0, b-1]]``.  With
    ``toward=None`` it is the outer form at a vertex of degree <= 1: on
    ``[[0, w, ...]]`` the result is ``[[0, w+1, ...]]``.  The new 0-vertex
    inherits role and name of the old one.
    """
    _require_tree(g)
    if zero not in g:
        raise SiteMissing(f"no vertex {zero}")
    if g.weight(zero) != 0:
        raise NotZeroVertex(f"vertex {zero} has weight {g.weight(zero)}")
    if toward is None:
        if g.degree(zero) > 1:
            raise WrongDegree("outer elementary transformation needs degree <= 1")
    else:
        if g.degree(zero) != 2:
            raise WrongDegree("inner elementary transformation needs degree 2")
        if toward not in g.neighbors(zero):
            raise SiteMissing(f"{toward} is not a neighbor of {zero}")
    return _elementary(g, zero, toward)


def apply_step(g: WeightedGraph, step: SurgeryStep) -> WeightedGraph:
    """Replay ``step`` on ``g``, reusing the recorded ids."""
    k = step.kind
    new_id = step.created[0] if step.created else None
    if k is StepKind.INNER_BLOWUP:
        h, _ = blow_up(g, tuple(step.site), step.role, step.name, new_id)
    elif k is StepKind.OUTER_BLOWUP:
        h, _ = blow_up(g, step.site[0], step.role, step.name, new_id)
    elif k is StepKind.BLOWDOWN:
        h, _ = blow_down(g, step.site[0])
    elif k is StepKind.ELEM_INNER:
        elementary_transform(g, *step.site)  # precondition check
        h, _ = _elementary(g, step.site[0], step.site[1], new_id)
    elif k is StepKind.ELEM_OUTER:
        elementary_transform(g, step.site[0])
        h, _ = _elementary(g, step.site[0], None, new_id)
    else:  # pragma: no cover
        raise ValueError(k)
    return h


# -- text log -------------------------------------------------------------------

def _fmt_site(step):
    if step.kind is StepKind.ELEM_INNER:
        return f"{step.site[0]}>{step.site[1]}"
    return "-".join(map(str, step.site))


def format_steps(steps: Sequence[SurgeryStep]) -> str:
    lines = []
    for s in steps:
        parts = [s.kind.value, f"site={_fmt_site(s)}"]
        if s.created:
            parts.append("created=" + ",".join(map(str, s.created)))
        if s.destroyed:
            parts.append("destroyed=" + ",".join(map(str, s.destroyed)))
        if s.role is not None:
            parts.append(f"role={s.role.value}")
        if s.name is not None:
            parts.append(f"name={s.name}")
        parts.append("deltas=" + ",".join(f"{u}:{d:+d}" for u, d in s.deltas))
        lines.append(" ".join(parts))
    return "\n".join(lines) + ("\n" if lines else "")


def parse_steps(text: str) -> list[SurgeryStep]:
    steps = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *fields = line.split()
        kind = StepKind(head)
        kv = dict(f.split("=", 1) for f in fields)
        if kind is StepKind.ELEM_INNER:
            a, b = kv["site"].split(">")
            site = (int(a), int(b))
        else:
            site = tuple(int(x) for x in kv["site"].split("-"))

        def ints(key):
            return tuple(int(x) for x in kv[key].split(",")) if kv.get(key) else ()

        deltas = tuple(
            (int(u), int(d)) for u, d in (p.split(":") for p in kv.get("deltas", "").split(",") if p)
        )
        steps.append(SurgeryStep(kind, site, ints("created"), ints("destroyed"), deltas,
                                 Role(kv["role"]) if "role" in kv else None, kv.get("name")))
    return steps


# -- reversion --------------------------------------------------------------------

def reverse(z) -> tuple[Zigzag, SurgeryTranscript]:
    """Move the zero pair of [[0,0,w2..wn]] to the far end by inner
    elementary transformations, giving [[0,0,wn..w2]].
    """
    z = z if isinstance(z, Zigzag) else Zigzag(tuple(z))
    ws = z.weights
    if all(w == 0 for w in ws) and len(ws) <= 3:
        return z, SurgeryTranscript(z.graph(), [])
    if ws[:2] != (0, 0):
        ws = ws[::-1]
    if ws[:2] != (0, 0) or len(ws) < 3 or any(w > -2 for w in ws[2:]):
        raise NotReversible(f"{z} is not of the form [[0,0,w2..wn]] with all wj <= -2")
    g = WeightedGraph.chain(ws)
    order = list(g.ids)
    steps = []
    for p in range(len(ws) - 2):
        # zero pair sits at positions p, p+1; push it past position p+2
        while g.weight(order[p + 2]) != 0:
            g, step = _elementary(g, order[p + 1], order[p])
            order[p + 1] = step.created[0]
            steps.append(step)
    out = tuple(g.weight(v) for v in reversed(order))
    return Zigzag(out), SurgeryTranscript(WeightedGraph.chain(ws), steps, g)


# -- search -------------------------------------------------------------------------

def _moves(h: WeightedGraph, allow_blowup: bool, role: Role):
    """Deterministically ordered (cost, graph, step) successors of ``h``."""
    ids = h.ids
    for v in ids:
        if h.weight(v) == -1 and h.degree(v) <= 2 and len(h) > 1:
            g2, st = _blowdown(h, v)
            yield 0, g2, st
    for v in ids:
        if h.weight(v) != 0:
            continue
        d = h.degree(v)
        if d == 2:
            for u in h.neighbors(v):
                g2, st = _elementary(h, v, u)
                yield 0, g2, st
        elif d <= 1:
            g2, st = _elementary(h, v, None)
            yield 0, g2, st
    if allow_blowup:
        for u, v in h.edges:
            g2, st = _inner_blowup(h, u, v, role, None, None)
            yield 1, g2, st
        for v in ids:
            g2, st = _outer_blowup(h, v, role, None, None)
            yield 1, g2, st


def _chain_moves(w: tuple, allow_blowup: bool, cap: int):
    """Successors of a weight tuple that stay chains: (cost, tuple, move).

    Successors with a weight outside ``[-cap, cap]`` are skipped.
    """
    n = len(w)
    if n > 1:
        for i, x in enumerate(w):
            if x == -1:
                if i == 0:
                    if w[1] < cap:
                        yield 0, (w[1] + 1,) + w[2:], ("down", 0)
                elif i == n - 1:
                    if w[-2] < cap:
                        yield 0, w[:-2] + (w[-2] + 1,), ("down", i)
                elif w[i - 1] < cap and w[i + 1] < cap:
                    yield 0, w[:i - 1] + (w[i - 1] + 1, w[i + 1] + 1) + w[i + 2:], ("down", i)
            elif x == 0:
                if 0 < i < n - 1:
                    a, b = w[i - 1], w[i + 1]
                    if a > -cap and b < cap:
                        yield 0, w[:i - 1] + (a - 1, 0, b + 1) + w[i + 2:], ("et", i, i - 1)
                    if a < cap and b > -cap:
                        yield 0, w[:i - 1] + (a + 1, 0, b - 1) + w[i + 2:], ("et", i, i + 1)
                elif i == 0:
                    if w[1] < cap:
                        yield 0, (0, w[1] + 1) + w[2:], ("et", 0, None)
                elif w[-2] < cap:
                    yield 0, w[:-2] + (w[-2] + 1, 0), ("et", i, None)
    if allow_blowup:
        for i in range(n - 1):
            if w[i] > -cap and w[i + 1] > -cap:
                yield 1, w[:i] + (w[i] - 1, -1, w[i + 1] - 1) + w[i + 2:], ("in", i)
        if w[0] > -cap:
            yield 1, (-1, w[0] - 1) + w[1:], ("out", 0)
        if n > 1 and w[-1] > -cap:
            yield 1, w[:-1] + (w[-1] - 1, -1), ("out", n - 1)


def _chain_standard(w: tuple) -> bool:
    # same verdict as classify_chain(...).kind is STANDARD, on the hot path
    top = max(w)
    if top <= -2:
        return True
    if top != 0:
        return False
    n = len(w)
    if min(w) == 0:
        return n <= 3
    if n > 2 and w[0] == 0 and w[1] == 0:
        return max(w[2:]) <= -2
    if n > 2 and w[-1] == 0 and w[-2] == 0:
        return max(w[:-2]) <= -2
    return False


def _chain_search(w, depth, size_cap, weight_cap, max_states):
    """Chain-only analogue of :func:`_search` on oriented weight tuples.

    States are keyed by the lesser orientation.  Yields ``(key, stored,
    parent)`` for standard chains; ``parent`` maps a key to ``(parent_key,
    move)`` with the move expressed on the tuple stored for the parent.
    """
    r = w[::-1]
    start = w if w <= r else r
    best = {start: 0}
    stored = {start: w}
    parent = {start: None}
    dq = deque([(0, start)])
    while dq:
        cost, key = dq.popleft()
        if cost > best[key]:
            continue
        h = stored[key]
        if _chain_standard(h):
            yield key, stored, parent
        can_grow = cost < depth and len(h) < size_cap
        for c, t, move in _chain_moves(h, can_grow, weight_cap):
            r = t[::-1]
            k = t if t <= r else r
            nc = cost + c
            old = best.get(k)
            if old is not None and old <= nc:
                continue
            if old is None and len(best) >= max_states:
                raise SearchBudgetExceeded(max_states)
            best[k] = nc
            stored[k] = t
            parent[k] = (key, move)
            if c:
                dq.append((nc, k))
            else:
                dq.appendleft((nc, k))


def _chain_replay(g, order, moves, role):
    """Carry out abstract chain moves on ``g`` whose chain order is ``order``."""
    order = list(order)
    steps = []
    for move in moves:
        kind, i = move[0], move[1]
        if kind == "down":
            g, st = _blowdown(g, order[i])
            del order[i]
        elif kind == "et":
            toward = None if move[2] is None else order[move[2]]
            g, st = _elementary(g, order[i], toward)
            order[i] = st.created[0]
        elif kind == "in":
            g, st = _inner_blowup(g, order[i], order[i + 1], role, None, None)
            order.insert(i + 1, st.created[0])
        else:
            g, st = _outer_blowup(g, order[i], role, None, None)
            order.insert(0 if i == 0 else len(order), st.created[0])
        steps.append(st)
    return g, order, steps


def _plain_chain(g: WeightedGraph) -> bool:
    return g.is_linear() and all(
        v.role is Role.BOUNDARY and v.genus == 0 for v in g.vertices)


def default_weight_cap(g: WeightedGraph, depth: int) -> int:
    return max((abs(v.weight) for v in g.vertices), default=0) + depth + 2


def _search(g, depth, size_cap, weight_cap, max_states, want_path):
    """0-1 breadth-first search; blowups cost one, everything else is free.

    Yields ``(code, graph)`` for standard graphs in order of nondecreasing
    blowup count.  When ``want_path`` the parent map is filled in.
    """
    start = canonical_code(g)
    best = {start: 0}
    graphs = {start: g}
    parent = {start: None}
    dq = deque([(0, start)])
    while dq:
        cost, code = dq.popleft()
        if cost > best[code]:
            continue
        h = graphs[code]
        if is_standard_graph(h):
            yield code, h, parent
        can_grow = cost < depth and len(h) < size_cap
        for c, g2, step in _moves(h, can_grow, Role.BOUNDARY):
            if any(abs(v.weight) > weight_cap for v in g2.vertices):
                continue
            k = canonical_code(g2)
            nc = cost + c
            if k in best and best[k] <= nc:
                continue
            if k not in best and len(best) >= max_states:
                raise SearchBudgetExceeded(max_states)
            best[k] = nc
            graphs[k] = g2
            if want_path:
                parent[k] = (code, step)
            if c == 0:
                dq.appendleft((nc, k))
            else:
                dq.append((nc, k))


def _path(parent, code):
    steps = []
    while parent[code] is not None:
        code, step = parent[code]
        steps.append(step)
    return steps[::-1]


def standardize(g: WeightedGraph, max_depth: int = 4, size_cap: int | None = None,
                weight_cap: int | None = None, max_states: int = 200_000):
    """Bring a tree to standard form.

    First contracts (-1)-vertices of degree <= 2 greedily (lowest id first,
    never emptying the graph), then searches blowdowns, elementary
    transformations and up to ``max_depth`` blowups, fewest blowups first.
    Raises :class:`SearchBudgetExceeded` when nothing standard is found.
    """
    _require_tree(g)
    steps = []
    h = g
    while True:
        cands = [v for v in h.ids if h.weight(v) == -1 and h.degree(v) <= 2 and len(h) > 1]
        if not cands:
            break
        h, st = _blowdown(h, cands[0])
        steps.append(st)
    if is_standard_graph(h):
        return h, SurgeryTranscript(g, steps, h)
    size_cap = size_cap or len(h) + max_depth
    weight_cap = weight_cap if weight_cap is not None else default_weight_cap(h, max_depth)
    if _plain_chain(h):
        order = h.chain_order()
        w = tuple(h.weight(v) for v in order)
        for key, stored, parent in _chain_search(w, max_depth, size_cap, weight_cap, max_states):
            moves = _path(parent, key)
            found, _, more = _chain_replay(h, order, moves, Role.BOUNDARY)
            steps.extend(more)
            return found, SurgeryTranscript(g, steps, found)
    else:
        for code, found, parent in _search(h, max_depth, size_cap, weight_cap, max_states, True):
            steps.extend(_path(parent, code))
            return found, SurgeryTranscript(g, steps, found)
    raise SearchBudgetExceeded(
        f"depth={max_depth}", f"no standard form within {max_depth} blowups")


def standard_forms(g: WeightedGraph, depth: int = 2, size_cap: int = 10,
                   weight_cap: int | None = None,
                   max_states: int = 500_000) -> dict[bytes, WeightedGraph]:
    """Every standard graph reachable from ``g``, keyed by canonical code.

    Explores blowdowns and elementary transformations freely and at most
    ``depth`` blowups along any path, keeping at most ``size_cap`` vertices
    and weights within ``weight_cap`` in absolute value.  Plain chains are
    explored through chains only, with states keyed by unoriented weights.
    """
    _require_tree(g)
    weight_cap = weight_cap if weight_cap is not None else default_weight_cap(g, depth)
    if _plain_chain(g):
        w = tuple(g.weight(v) for v in g.chain_order())
        found = {}
        for key, _, _ in _chain_search(w, depth, size_cap, weight_cap, max_states):
            h = WeightedGraph.chain(key)
            found[canonical_code(h)] = h
        return found
    return {code: h for code, h, _ in
            _search(g, depth, size_cap, weight_cap, max_states, False)}


def confluence_oracle(g: WeightedGraph, depth: int = 2, size_cap: int = 10,
                      weight_cap: int | None = None, max_states: int = 500_000) -> frozenset:
    """Codes of every standard graph reachable from ``g``; see :func:`standard_forms`."""
    return frozenset(standard_forms(g, depth, size_cap, weight_cap, max_states))
