"""Configuration invariants, reversion of normalized graphs, equivalence."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import permutations
from typing import Mapping

from .errors import (IndexOutOfRange, InvalidExtendedGraph, MissingCoordinates, NotAZigzag,
                     NotReversible, ZeroPointInStar)
from .extended import ComponentKind, NormalizedExtendedGraph, mother_map
from .graph import Role, WeightedGraph, Zigzag, canonical_code
from .surgery import reverse

AUT_DIM = {ComponentKind.PLUS: 2, ComponentKind.STAR: 1}


def fmt_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class PointConfig:
    kind: ComponentKind
    points: tuple

    def __post_init__(self):
        pts = tuple(sorted(Fraction(p) for p in self.points))
        if self.kind is ComponentKind.STAR and any(p == 0 for p in pts):
            raise ZeroPointInStar("star components exclude the point 0")
        object.__setattr__(self, "kind", ComponentKind(self.kind))
        object.__setattr__(self, "points", pts)

    @property
    def degree(self) -> int:
        return len(self.points)


def canonical_config(c: PointConfig) -> PointConfig:
    """Orbit representative under z -> az+b (plus) or z -> az (star)."""
    pts = c.points
    if c.kind is ComponentKind.PLUS:
        if len(set(pts)) <= 1:
            return PointConfig(c.kind, (Fraction(0),) * len(pts))
        best = min(
            tuple(sorted((z - p) / (q - p) for z in pts))
            for p, q in permutations(sorted(set(pts)), 2))
        return PointConfig(c.kind, best)
    if len(set(pts)) <= 1:
        return PointConfig(c.kind, (Fraction(1),) * len(pts))
    best = min(tuple(sorted(z / p for z in pts)) for p in set(pts))
    return PointConfig(c.kind, best)


class ConfigurationInvariant:
    """Canonical point configurations keyed by boundary vertex id."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[int, PointConfig]):
        self._entries = tuple(sorted((k, canonical_config(v)) for k, v in entries.items()))

    @property
    def entries(self) -> dict[int, PointConfig]:
        return dict(self._entries)

    def __eq__(self, other):
        if not isinstance(other, ConfigurationInvariant):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        return hash(self._entries)

    def __repr__(self):
        return f"ConfigurationInvariant({self.entries})"

    def to_text(self) -> str:
        lines = []
        for k, c in self._entries:
            pts = ",".join(fmt_rational(p) for p in c.points)
            lines.append(f"{k} {c.kind.value} {pts}")
        return "\n".join(lines) + ("\n" if lines else "")


def configuration_invariant(inst) -> ConfigurationInvariant:
    """Per mother, the canonical multiset of its feathers' base points.

    ``inst`` needs ``extended`` (an ExtendedGraph) and ``base_points``
    mapping each feather vertex to ``(mother, coordinate)`` in the chart of
    that mother.
    """
    e = inst.extended
    ma = mother_map(e)
    per = {}
    for f in sorted(ma.mothers):
        m = ma.mother(f)
        if f not in inst.base_points:
            raise MissingCoordinates(f"no base point for feather vertex {f}")
        born_on, p = inst.base_points[f]
        if born_on != m:
            raise InvalidExtendedGraph(
                f"feather vertex {f}: coordinates given on {born_on}, mother is {m}")
        per.setdefault(m, []).append(p)
    return ConfigurationInvariant(
        {m: PointConfig(ma.kinds[m], pts) for m, pts in per.items()})


# -- reversion and equivalence ---------------------------------------------------

def _gizatullin_order(b: WeightedGraph) -> list[int]:
    """Ids of C0, C1, C2, ..., Cn, or NotAZigzag."""
    if not b.is_linear() or len(b) < 3:
        raise NotAZigzag("boundary is not a chain of length >= 3")
    order = b.chain_order()
    if b.vertex(order[0]).role is not Role.FIBER_ZERO:
        order.reverse()
    roles = [b.vertex(v).role for v in order]
    if roles[0] is not Role.FIBER_ZERO or roles[1] is not Role.SECTION or any(
            r is not Role.BOUNDARY for r in roles[2:]):
        raise NotAZigzag("boundary does not read C0, C1, C2, ... along the chain")
    if b.weight(order[0]) != 0 or b.weight(order[1]) != 0:
        raise NotAZigzag("boundary does not start with two zeros")
    return order


def reverse_normalized(d: NormalizedExtendedGraph) -> NormalizedExtendedGraph:
    """Move the zero pair to the other end; curve C_i becomes position n-i+2.

    Every vertex keeps its id, weight and feather count, so the transported
    delta is the old one; only the order along the chain changes.
    """
    b = d.boundary
    order = _gizatullin_order(b)
    c0, c1, tail = order[0], order[1], order[2:]
    ws = [b.weight(v) for v in order]
    try:
        rz, _ = reverse(Zigzag(ws))
    except NotReversible as exc:
        raise NotAZigzag(str(exc)) from exc
    new_tail = tail[::-1]
    expect = (0, 0, *(b.weight(v) for v in new_tail))
    if rz != Zigzag(expect):
        raise NotAZigzag("reversion does not follow the chain")
    chain = [c0, c1, *new_tail]
    nb = WeightedGraph(b.vertices, list(zip(chain, chain[1:])), next_id=b.next_id)
    return NormalizedExtendedGraph(nb, d.delta)


class Witness(str, Enum):
    DIRECT_ISO = "DirectIso"
    REVERSED_ISO = "ReversedIso"
    GENUS_MISMATCH = "GenusMismatch"
    GRAPH_MISMATCH = "GraphMismatch"


@dataclass(frozen=True)
class Verdict:
    equivalent: bool
    witness: Witness


def _code(d: NormalizedExtendedGraph):
    return canonical_code(d.realized())


def decide_equivalence(d1: NormalizedExtendedGraph, g1: int,
                       d2: NormalizedExtendedGraph, g2: int) -> Verdict:
    if g1 != g2:
        return Verdict(False, Witness.GENUS_MISMATCH)
    c1 = _code(d1)
    if c1 == _code(d2):
        return Verdict(True, Witness.DIRECT_ISO)
    try:
        _gizatullin_order(d1.boundary)
        r2 = reverse_normalized(d2)
    except NotAZigzag:
        return Verdict(False, Witness.GRAPH_MISMATCH)
    if c1 == _code(r2):
        return Verdict(True, Witness.REVERSED_ISO)
    return Verdict(False, Witness.GRAPH_MISMATCH)


# -- matching data and dimensions -------------------------------------------------

@dataclass(frozen=True)
class FeatherData:
    """Triples (mother index along the zigzag, base point, chain length)."""

    entries: tuple

    def __post_init__(self):
        norm = []
        for t, p, m in self.entries:
            if int(m) < 1:
                raise ValueError(f"chain length must be positive, got {m}")
            norm.append((int(t), Fraction(p), int(m)))
        object.__setattr__(self, "entries", tuple(norm))


def match_feather_data(fd: FeatherData, n: int) -> FeatherData:
    out = []
    for t, p, m in fd.entries:
        if not 2 <= t <= n:
            raise IndexOutOfRange(f"mother index {t} outside 2..{n}")
        out.append((n - t + 2, p, m))
    return FeatherData(tuple(out))


def config_space_dim(d: NormalizedExtendedGraph,
                     kinds: Mapping[int, ComponentKind]) -> tuple[dict[int, int], int]:
    """Generic dimension of the configuration space, per component and total."""
    per = {}
    for c, k in sorted(d.delta.items()):
        kind = ComponentKind(kinds.get(c, ComponentKind.PLUS))
        per[c] = max(0, k - AUT_DIM[kind])
    return per, sum(per.values())

