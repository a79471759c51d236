import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ruledgraph import (BlowupSchedule, ExtendedGraph, NoExtremalZero, NormalizedExtendedGraph,
                        NotRealizable, Role, SlotViolation, canonical_code, instantiate,
                        normalize, one_skeleton, presentation_dimension, random_params,
                        schedule_from)
from ruledgraph.catalog import gizatullin_boundary, jump_pair, special_delta
from ruledgraph.presentation import dimension_base
from ruledgraph.surgery import StepKind

from builders import random_delta, skeleton_boundary


def jump_delta():
    generic, _ = jump_pair()
    return normalize(ExtendedGraph.from_graph(generic))


def created_names(s):
    return [st.name for st in s.steps]


# -- skeleton ----------------------------------------------------------------------

def test_skeleton_of_jump_delta():
    sk = one_skeleton(jump_delta(), 0)
    assert (sk.a, sk.b) == (1, 1)
    assert sorted(v.label for v in sk.graph.vertices) == ["C0", "C1", "C2"]
    assert all(sk.graph.weight(v) == 0 for v in sk.graph.ids)


def test_skeleton_of_special_delta():
    sk = one_skeleton(special_delta(6, 2, 4), 0)
    assert (sk.a, sk.b) == (1, 1)


def test_skeleton_genus_two():
    sk = one_skeleton(jump_delta(), 2)
    assert sk.graph.weight(sk.section) == -4 and sk.genus == 2


def test_skeleton_needs_extremal_zero():
    g = gizatullin_boundary([-2]).replace_vertex(0, role=Role.BOUNDARY, weight=-1)
    with pytest.raises(NoExtremalZero):
        one_skeleton(NormalizedExtendedGraph(g), 0)


def test_dimension_base():
    assert [dimension_base(g) for g in range(4)] == [0, 2, 6, 10]


# -- schedules ----------------------------------------------------------------------

def test_jump_schedule_order():
    s = schedule_from(jump_delta(), 0)
    assert created_names(s) == ["C2.f1", "C3", "C3.f1"]
    assert [s.label(st) for st in s.steps] == ["A", "B1", "A"]
    assert s.steps[0].site == (2,) and s.steps[2].site == (3,)


def test_empty_schedule():
    d = NormalizedExtendedGraph(gizatullin_boundary([0]))
    s = schedule_from(d, 0)
    assert s.steps == ()
    assert presentation_dimension(d, 0) == 1
    inst = instantiate(s, {"slot1": 5})
    assert inst.extended.graph == d.realized()


def test_unrealizable():
    with pytest.raises(NotRealizable):
        schedule_from(NormalizedExtendedGraph(gizatullin_boundary([-2, -2])), 0)


def test_presentation_dimension():
    d = jump_delta()
    assert presentation_dimension(d, 0) == 4
    assert presentation_dimension(d, 2) == 10


def test_schedule_text_round_trip():
    s = schedule_from(special_delta(5, 2, 3), 1)
    t = BlowupSchedule.from_text(s.to_text())
    assert t == s


def test_star_schedule_has_inner_step():
    d = NormalizedExtendedGraph(gizatullin_boundary([-2, -3, -2]), {3: 2})
    s = schedule_from(d, 0)
    assert [s.label(st) for st in s.steps] == ["B1", "B2", "A", "A"]


def test_section_weight_is_kept():
    d = NormalizedExtendedGraph(gizatullin_boundary([-2, -2], section_weight=3), {2: 1, 3: 1})
    s = schedule_from(d, 0)
    assert s.section_weight == 3
    assert s.replay() == d.realized()


# -- instances ----------------------------------------------------------------------

def jump_params(**over):
    p = {"slot1": 1, "slot2": 5, "slot3": 2, "slot4": 2}
    p.update(over)
    return p


def test_generic_and_special_instances():
    s = schedule_from(jump_delta(), 0)
    generic, special = jump_pair()
    a = instantiate(s, jump_params())
    b = instantiate(s, jump_params(slot3=5))
    assert canonical_code(a.extended.graph) == canonical_code(generic)
    assert canonical_code(b.extended.graph) == canonical_code(special)
    assert normalize(a.extended) == normalize(b.extended) == jump_delta()


def test_base_points_recorded():
    s = schedule_from(jump_delta(), 0)
    inst = instantiate(s, jump_params())
    pts = sorted((inst.extended.graph.vertex(f).label, m, p)
                 for f, (m, p) in inst.base_points.items())
    assert pts == [("C2.f1", 2, Q(5)), ("C3.f1", 3, Q(2))]


def test_slot_violations():
    s = schedule_from(jump_delta(), 0)
    with pytest.raises(SlotViolation):
        instantiate(s, {"slot1": 1})
    with pytest.raises(SlotViolation):
        instantiate(s, jump_params(slot9=1))
    d = NormalizedExtendedGraph(gizatullin_boundary([-2, -3, -2]), {3: 2})
    star = schedule_from(d, 0)
    # the feathers on C3 may not sit where C4 meets it
    with pytest.raises(SlotViolation):
        instantiate(star, {"slot1": 1, "slot2": 3, "slot3": 0, "slot4": 6})


def test_params_text():
    s = schedule_from(jump_delta(), 0)
    inst = instantiate(s, jump_params(slot2=Q(1, 2)))
    assert inst.params_text() == "params: slot1=1/1, slot2=1/2, slot3=2/1, slot4=2/1\n"


def test_special_round_trip_example():
    d = special_delta(5, 1, 3)
    s = schedule_from(d, 0)
    p = {x.name: Q(1) for x in s.slots}
    p["slot1"], p["slot3"], p["slot5"] = Q(0), Q(2), Q(3)
    assert normalize(instantiate(s, p).extended) == d


# -- properties ---------------------------------------------------------------------

@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_round_trip(seed):
    rng = random.Random(seed)
    d = random_delta(rng)
    g = rng.randint(0, 2)
    d = NormalizedExtendedGraph(d.boundary.replace_vertex(d.section, genus=g), d.delta)
    s = schedule_from(d, g)
    for _ in range(3):
        inst = instantiate(s, random_params(s, rng))
        assert normalize(inst.extended) == d
        assert inst.extended.genus == g


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_schedule_length(seed):
    d = random_delta(random.Random(seed))
    s = schedule_from(d, 0)
    assert len(s.steps) == len(d.realized()) - len(s.skeleton.graph)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_feathers_first(seed):
    d = random_delta(random.Random(seed))
    s = schedule_from(d, 0)
    current = None
    for st_ in s.steps:
        if st_.role is Role.FEATHER:
            # a feather step always hangs on the latest boundary curve or the skeleton
            m = st_.site[0]
            assert m == current or (current is None and m in s.skeleton.graph)
        else:
            current = st_.created[0]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.data())
def test_one_more_feather_adds_one_dimension(seed, data):
    d = random_delta(random.Random(seed), max_vertices=11)
    fiber = [v.id for v in d.boundary.vertices
             if v.role is Role.BOUNDARY and v.id not in one_skeleton(d, 0).leaves]
    if not fiber:
        return
    c = data.draw(st.sampled_from(fiber))
    delta = d.delta
    delta[c] = delta.get(c, 0) + 1
    bigger = NormalizedExtendedGraph(d.boundary.with_weights({c: -1}), delta)
    assert presentation_dimension(bigger, 0) == presentation_dimension(d, 0) + 1


def test_multiple_fibers_and_full_fibers():
    g = skeleton_boundary(2, full=2)
    d = NormalizedExtendedGraph(g.with_weights({3: -1, 4: -2}), {3: 1, 4: 2})
    s = schedule_from(d, 0)
    # C01 and both leaves need a point on the section
    assert [x.kind for x in s.slots].count("skeleton") == 3
    assert presentation_dimension(d, 0) == 3 + 3
    inst = instantiate(s, random_params(s, random.Random(0)))
    assert normalize(inst.extended) == d
    assert {step.kind for step in s.steps} == {StepKind.OUTER_BLOWUP}
