"""
Two completions with different fibers, one normalized graph
===========================================================

The generic and special members of a jump pair have non-isomorphic
extended graphs.  Contracting each fiber canonically and keeping only the
feather counts per boundary curve makes them agree.
"""

# %%
# The pair
# --------

from ruledgraph import ExtendedGraph, contract_canonically, emit, mother_map, normalize
from ruledgraph.catalog import jump_pair

generic, special = jump_pair()
for name, g in (("generic", generic), ("special", special)):
    print(name, sorted((v.label, v.weight) for v in g.vertices))

# %%
# Canonical contraction
# ---------------------
# Each round blows down every (-1) curve of the fiber at once.

for name, g in (("generic", generic), ("special", special)):
    tr = contract_canonically(ExtendedGraph.from_graph(g))
    rounds = [sorted(g.vertex(v).label for v in r) for r in tr.round_sets()]
    print(name, "rounds:", rounds)

# %%
# Mothers decide where the feathers are counted.

for name, g in (("generic", generic), ("special", special)):
    e = ExtendedGraph.from_graph(g)
    ma = mother_map(e)
    print(name, {g.vertex(f).label: g.vertex(ma.mother(f)).label for f in e.feathers})

# %%
# Both normalize to the same graph.

a = normalize(ExtendedGraph.from_graph(generic))
b = normalize(ExtendedGraph.from_graph(special))
print("equal:", a == b)
print(emit.canonical_json(emit.normalized_data(a)))
