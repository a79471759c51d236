"""Builders for the standard families of examples.

Boundary chains are laid out as C0, C1, C2, ..., Cn with ids 0..n, C0 a
full fiber, C1 the section and C2 the distinguished vertex of the single
degenerate fiber.
"""

from __future__ import annotations

from typing import Sequence

from .extended import NormalizedExtendedGraph
from .graph import Role, Vertex, WeightedGraph


def gizatullin_boundary(tail: Sequence[int], genus: int = 0,
                        section_weight: int = 0) -> WeightedGraph:
    """The chain [[0, s, w2, ..., wn]] with roles and names C0..Cn."""
    ws = [0, section_weight, *tail]
    verts = []
    for i, w in enumerate(ws):
        role = Role.FIBER_ZERO if i == 0 else Role.SECTION if i == 1 else Role.BOUNDARY
        verts.append(Vertex(i, w, genus if i == 1 else 0, role, f"C{i}"))
    return WeightedGraph(verts, [(i, i + 1) for i in range(len(ws) - 1)])


def _feather(g, on, weight, name):
    f = g.fresh_id()
    return g.with_vertex(Vertex(f, weight, role=Role.FEATHER, name=name)).with_edges(
        add=[(on, f)])


def jump_pair(genus: int = 0) -> tuple[WeightedGraph, WeightedGraph]:
    """The generic and the special member of the jumping-feather family.

    Generic: F1(-1) on C2, F2(-1) on C3.  Special: F1(-2) and F2(-1) both on
    C3.  Ids: C0..C3 are 0..3, F1 is 4, F2 is 5.
    """
    base = gizatullin_boundary([-2, -2], genus)
    generic = _feather(_feather(base, 2, -1, "F1"), 3, -1, "F2")
    special = _feather(_feather(base, 3, -2, "F1"), 3, -1, "F2")
    return generic, special


def dg_extended(n: int, r: int, genus: int = 0) -> WeightedGraph:
    """Boundary [[0,0,(-2)_{n-1}]] with F1(-r) on C_{r+1} and F0(-1) on Cn."""
    if n < 2 or not 1 <= r <= n - 1:
        raise ValueError(f"need n >= 2 and 1 <= r <= n-1, got n={n}, r={r}")
    g = gizatullin_boundary([-2] * (n - 1), genus)
    g = _feather(g, r + 1, -r, "F1")
    return _feather(g, n, -1, "F0")


def special_delta(n: int, r: int, t: int, genus: int = 0) -> NormalizedExtendedGraph:
    """Normalized graph with C_t at weight -2-r, r feathers on C_t, one on C2 and Cn."""
    if n < 3 or not 2 <= t <= n or r < 1:
        raise ValueError(f"need n >= 3, 2 <= t <= n, r >= 1; got {(n, r, t)}")
    tail = [-2 - r if i == t else -2 for i in range(2, n + 1)]
    delta = {2: 1}
    delta[n] = delta.get(n, 0) + 1
    delta[t] = delta.get(t, 0) + r
    return NormalizedExtendedGraph(gizatullin_boundary(tail, genus), delta)


def star_fiber(delta: int = 2, genus: int = 0) -> WeightedGraph:
    """A fiber whose middle vertex is a star component carrying ``delta`` feathers.

    Boundary [[0,0,-2,-1-delta,-2]]; C3 is born at the point where C2 and C4
    meet, and every feather is a (-1)-leaf on C3.
    """
    g = gizatullin_boundary([-2, -1 - delta, -2], genus)
    for i in range(delta):
        g = _feather(g, 3, -1, f"F{i + 1}")
    return g
