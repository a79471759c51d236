"""
Blowup schedules and configuration invariants
=============================================

A normalized graph fixes a schedule of blowups over its skeleton.  Each
free slot is a point on a curve, so instances of the schedule form a
family whose dimension the schedule reports.  Feather positions on a
boundary curve, taken up to the automorphisms of that curve, separate
instances that normalize identically.
"""

# %%
# Schedule of the jump pair's normalized graph
# --------------------------------------------

import random
from fractions import Fraction

from ruledgraph import (ExtendedGraph, configuration_invariant, instantiate, normalize,
                        presentation_dimension, random_params, schedule_from)
from ruledgraph.catalog import jump_pair, special_delta

d = normalize(ExtendedGraph.from_graph(jump_pair()[0]))
s = schedule_from(d, 0)
print(s.to_text())
print("dimension, genus 0:", presentation_dimension(d, 0))
print("dimension, genus 2:", presentation_dimension(d, 2))

# %%
# Random instances all normalize back.

rng = random.Random(1)
for _ in range(5):
    inst = instantiate(s, random_params(s, rng))
    print(len(inst.extended.graph), normalize(inst.extended) == d)

# %%
# Three feathers on C3
# --------------------
# Their positions matter only up to z -> az + b.

s = schedule_from(special_delta(5, 3, 3), 0)


def params(pts):
    p = {x.name: Fraction(100 + i) for i, x in enumerate(s.slots)}
    p.update(slot1=0, slot2=1, slot3=2)
    for i, q in enumerate(pts):
        p[f"slot{4 + i}"] = Fraction(q)
    return p


for pts in ([0, 1, 3], [5, 7, 11], [0, 1, 2]):
    q = configuration_invariant(instantiate(s, params(pts)))
    print(pts, "->", [str(x) for x in q.entries[3].points])
