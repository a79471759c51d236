import itertools
import random
from fractions import Fraction as Q
from importlib.resources import files

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ruledgraph import (ComponentKind, ConfigurationInvariant, ExtendedGraph, FeatherData,
                        IndexOutOfRange, MissingCoordinates, NotAZigzag,
                        NormalizedExtendedGraph, PointConfig, Witness, ZeroPointInStar,
                        canonical_code, canonical_config, config_space_dim,
                        configuration_invariant, decide_equivalence, dsl, instantiate,
                        match_feather_data, mother_map, normalize, reverse_normalized,
                        schedule_from)
from ruledgraph.catalog import dg_extended, gizatullin_boundary, special_delta
from ruledgraph.invariants import AUT_DIM

from builders import random_delta

PLUS, STAR = ComponentKind.PLUS, ComponentKind.STAR


def pc(kind, *pts):
    return PointConfig(kind, tuple(Q(p) for p in pts))


def related(kind, a, b):
    """Whether some z -> sz + t (t = 0 for a star) maps multiset ``a`` onto ``b``.

    Solves for the map from two points of ``a`` to every choice of two
    points of ``b`` and checks the whole multiset, independently of the
    canonical forms.
    """
    a, b = sorted(a), sorted(b)
    if len(a) != len(b):
        return False
    if len(set(a)) == 1:
        return len(set(b)) == 1
    if kind is STAR:
        x = next(p for p in a if p)
        cands = [(q / x, Q(0)) for q in set(b) if q]
    else:
        x, y = sorted(set(a))[:2]
        cands = []
        for u, v in itertools.permutations(set(b), 2):
            s = (v - u) / (y - x)
            cands.append((s, u - s * x))
    return any(sorted(s * p + t for p in a) == b for s, t in cands if s)


def rationals():
    return st.fractions(min_value=-20, max_value=20, max_denominator=6)


# -- canonical forms ---------------------------------------------------------

def test_canonical_examples():
    assert canonical_config(pc(PLUS, 7)).points == (0,)
    assert canonical_config(pc(PLUS, 0, 1, 3)).points == (-2, 0, 1)
    assert canonical_config(pc(STAR, 2, 6)).points == (Q(1, 3), 1)
    assert canonical_config(pc(STAR, 5, 5)).points == (1, 1)
    assert canonical_config(pc(PLUS)).points == ()


def test_star_rejects_zero():
    with pytest.raises(ZeroPointInStar):
        pc(STAR, 0, 1)


@settings(max_examples=200, deadline=None)
@given(st.lists(rationals(), min_size=1, max_size=5), rationals(), rationals())
def test_plus_invariance_and_idempotence(pts, s, t):
    if s == 0:
        return
    c = pc(PLUS, *pts)
    moved = pc(PLUS, *(s * p + t for p in pts))
    k = canonical_config(c)
    assert canonical_config(moved) == k
    assert canonical_config(k) == k


@settings(max_examples=200, deadline=None)
@given(st.lists(rationals().filter(bool), min_size=1, max_size=5), rationals())
def test_star_invariance_and_idempotence(pts, s):
    if s == 0:
        return
    k = canonical_config(pc(STAR, *pts))
    assert canonical_config(pc(STAR, *(s * p for p in pts))) == k
    assert canonical_config(k) == k


@settings(max_examples=300, deadline=None)
@given(st.sampled_from([PLUS, STAR]),
       st.lists(st.integers(-3, 3), min_size=1, max_size=4),
       st.lists(st.integers(-3, 3), min_size=1, max_size=4))
def test_canonical_forms_separate_orbits(kind, a, b):
    if kind is STAR and (0 in a or 0 in b):
        return
    a, b = [Q(x) for x in a], [Q(x) for x in b]
    same = canonical_config(pc(kind, *a)) == canonical_config(pc(kind, *b))
    assert same == related(kind, a, b)


# -- configuration invariants of instances -----------------------------------

def corpus(name):
    return dsl.load(files("ruledgraph") / "data" / name)


def test_star_instances():
    doc = corpus("special.dg")
    a, b = doc.instance("StarA"), doc.instance("StarB")
    qa, qb = configuration_invariant(a), configuration_invariant(b)
    assert qa == qb
    (entry,) = qa.entries.values()
    assert entry.kind is STAR and entry.points == (Q(1, 3), 1)
    assert qa.to_text() == "3 star 1/3,1/1\n"


def test_empty_invariant():
    d = NormalizedExtendedGraph(gizatullin_boundary([0]))
    inst = instantiate(schedule_from(d, 0), {"slot1": 0})
    assert configuration_invariant(inst).entries == {}


def test_jump_instances_give_single_points():
    doc = corpus("jump.dg")
    for name in ("Generic", "Special"):
        q = configuration_invariant(doc.instance(name))
        assert {k: c.points for k, c in q.entries.items()} == {2: (0,), 3: (0,)}


def test_missing_coordinates():
    doc = corpus("jump.dg")
    inst = doc.instance("Generic")

    class Bare:
        extended = inst.extended
        base_points = {}

    with pytest.raises(MissingCoordinates):
        configuration_invariant(Bare)


def special_params(pts, tail=100):
    """Parameters for special_delta(5, r, 3): C_t's feathers at ``pts``."""
    r = len(pts)
    out = {"slot1": 0, "slot2": 1, "slot3": 2}
    for i, p in enumerate(pts):
        out[f"slot{4 + i}"] = Q(p)
    out[f"slot{4 + r}"] = Q(tail)
    out[f"slot{5 + r}"] = Q(1)
    out[f"slot{6 + r}"] = Q(1)
    return out


def test_special_instances_compare_by_orbit():
    s = schedule_from(special_delta(5, 3, 3), 0)
    q1 = configuration_invariant(instantiate(s, special_params([0, 1, 3])))
    q2 = configuration_invariant(instantiate(s, special_params([5, 7, 11])))
    q3 = configuration_invariant(instantiate(s, special_params([0, 1, 2])))
    assert q1 == q2
    assert q1 != q3
    assert q1.entries[3].points == (-2, 0, 1)


# -- reversion ------------------------------------------------------------------

def test_reverse_dg_is_fixed():
    for n in range(3, 8):
        d = normalize(ExtendedGraph.from_graph(dg_extended(n, 1)))
        r = reverse_normalized(d)
        assert canonical_code(r.realized()) == canonical_code(d.realized())


@pytest.mark.parametrize("n, r, t", [(5, 2, 3), (5, 1, 2), (6, 3, 4), (4, 2, 3)])
def test_reverse_special(n, r, t):
    got = reverse_normalized(special_delta(n, r, t))
    want = special_delta(n, r, n - t + 2)
    assert canonical_code(got.realized()) == canonical_code(want.realized())


def test_reverse_bare_palindrome():
    d = NormalizedExtendedGraph(gizatullin_boundary([-3, -3]))
    assert reverse_normalized(reverse_normalized(d)) == d
    assert canonical_code(reverse_normalized(d).realized()) == canonical_code(d.realized())


def test_reverse_needs_zigzag():
    with pytest.raises(NotAZigzag):
        reverse_normalized(NormalizedExtendedGraph(gizatullin_boundary([-1, -2])))


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 7), st.integers(1, 3), st.data())
def test_reverse_is_involution(n, r, data):
    t = data.draw(st.integers(2, n))
    d = special_delta(n, r, t)
    rr = reverse_normalized(reverse_normalized(d))
    assert canonical_code(rr.realized()) == canonical_code(d.realized())
    assert rr.delta == d.delta


# -- equivalence ----------------------------------------------------------------

def test_equivalence_examples():
    d1 = normalize(ExtendedGraph.from_graph(dg_extended(5, 1)))
    d3 = normalize(ExtendedGraph.from_graph(dg_extended(5, 3)))
    v = decide_equivalence(d1, 0, d3, 0)
    assert v.equivalent and v.witness is Witness.DIRECT_ISO
    v = decide_equivalence(special_delta(5, 2, 3), 0, special_delta(5, 2, 4), 0)
    assert v.equivalent and v.witness is Witness.REVERSED_ISO
    v = decide_equivalence(d1, 0, d1, 1)
    assert not v.equivalent and v.witness is Witness.GENUS_MISMATCH
    v = decide_equivalence(special_delta(5, 2, 3), 0, special_delta(5, 1, 3), 0)
    assert not v.equivalent and v.witness is Witness.GRAPH_MISMATCH


def test_equivalence_is_an_equivalence_relation():
    rng = random.Random(3)
    pool = [special_delta(n, r, t) for n in (4, 5) for r in (1, 2) for t in range(2, n + 1)]
    pool += [random_delta(rng, 8) for _ in range(4)]
    eq = [[decide_equivalence(a, 0, b, 0).equivalent for b in pool] for a in pool]
    k = len(pool)
    for i in range(k):
        assert eq[i][i]
        for j in range(k):
            assert eq[i][j] == eq[j][i]
            for m in range(k):
                if eq[i][j] and eq[j][m]:
                    assert eq[i][m]


# -- matching data and dimensions ---------------------------------------------

def test_match_feather_data():
    fd = FeatherData(((2, Q(1), 1),))
    assert match_feather_data(fd, 6).entries == ((6, Q(1), 1),)
    fd = FeatherData(((3, Q(5, 7), 2),))
    assert match_feather_data(fd, 5).entries == ((4, Q(5, 7), 2),)
    assert match_feather_data(match_feather_data(fd, 5), 5) == fd
    with pytest.raises(IndexOutOfRange):
        match_feather_data(FeatherData(((7, 0, 1),)), 5)
    with pytest.raises(ValueError):
        FeatherData(((2, 0, 0),))


def test_config_space_dim():
    d = special_delta(5, 3, 3)
    per, total = config_space_dim(d, {3: PLUS})
    assert per == {2: 0, 3: 1, 5: 0} and total == 1
    per, _ = config_space_dim(NormalizedExtendedGraph(gizatullin_boundary([-3]), {2: 2}),
                              {2: STAR})
    assert per == {2: 1}


def test_dim_matches_sampled_forms():
    # generic canonical forms pin dim(Aut) coordinates (0 and 1, or just 1)
    # and leave the rest free, which is what config_space_dim reports
    rng = random.Random(5)
    pinned = {PLUS: {Q(0), Q(1)}, STAR: {Q(1)}}
    for kind in (PLUS, STAR):
        for k in range(AUT_DIM[kind], 6):
            seen = []
            for _ in range(20):
                pts = {Q(rng.randint(1, 500), rng.randint(1, 7)) for _ in range(k)}
                if len(pts) < k:
                    continue
                c = canonical_config(PointConfig(kind, tuple(pts))).points
                assert pinned[kind] <= set(c)
                seen.append(tuple(x for x in c if x not in pinned[kind]))
            assert all(len(t) == k - AUT_DIM[kind] for t in seen)
            if k > AUT_DIM[kind]:
                assert len(set(seen)) > 1
            d = NormalizedExtendedGraph(gizatullin_boundary([-1 - k]), {2: k})
            assert config_space_dim(d, {2: kind})[1] == k - AUT_DIM[kind]


def test_invariant_entries_are_canonical():
    q = ConfigurationInvariant({3: pc(PLUS, 4, 9, 10)})
    (c,) = q.entries.values()
    assert canonical_config(c) == c


def test_invariant_on_star_kinds_from_mothers():
    doc = corpus("special.dg")
    inst = doc.instance("StarA")
    assert mother_map(inst.extended).kinds[3] is STAR
