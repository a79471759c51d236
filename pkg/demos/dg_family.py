"""
Danilov-Gizatullin boundaries
=============================

For a fixed boundary length n, the completions built with r = 1, ..., n-1
carry their single feather in different places.  After normalization the
choice of r disappears, and every pair is declared equivalent.
"""

# %%

from ruledgraph import ExtendedGraph, decide_equivalence, mother_map, normalize
from ruledgraph.catalog import dg_extended

n = 5
forms = {}
for r in range(1, n):
    g = dg_extended(n, r)
    e = ExtendedGraph.from_graph(g)
    m = mother_map(e).mother(n + 1)
    forms[r] = normalize(e)
    on = [g.vertex(u).label for u in g.neighbors(n + 1)]
    print(f"r={r}: {g.vertex(n + 1).label} meets {on}, mother {g.vertex(m).label}")

# %%
# One normalized graph for the whole family.

print(all(d == forms[1] for d in forms.values()))
print(forms[1])

# %%
# Equivalence verdicts, genus 0 on both sides, then a genus mismatch.

for r in range(2, n):
    print(r, decide_equivalence(forms[1], 0, forms[r], 0).witness.name)
print(decide_equivalence(forms[1], 0, forms[1], 1).witness.name)
