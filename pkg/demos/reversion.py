"""
Standard zigzags and their reversions
=====================================

A standard zigzag [[0,0,w2,...,wn]] can be turned around by a sequence of
elementary transformations, giving [[0,0,wn,...,w2]].  These are the only
two standard forms reachable from the start.
"""

# %%

from ruledgraph import WeightedGraph, Zigzag, canonical_code, confluence_oracle, reverse, standardize
from ruledgraph.surgery import format_steps


def zeros_first(g):
    ws = Zigzag.of(g).weights
    return ws if ws[:2] == (0, 0) else ws[::-1]


z = Zigzag((0, 0, -2, -3, -4))
rz, transcript = reverse(z)
print(z.weights, "->", rz.weights)
print(format_steps(transcript.steps))

# %%
# Halfway through, the chain is not standard.

mid = transcript.replay(len(transcript.steps) // 2)
print(Zigzag.of(mid).weights)

# %%
# From an arbitrary chain: standardize, then ask the exhaustive search
# which standard forms it can reach.

g = WeightedGraph.chain((-1, -2, 1, -3))
h, _ = standardize(g)
print("standard form:", zeros_first(h))
codes = confluence_oracle(g, 3, 10)
print("reachable standard forms:", len(codes))
print(codes == {canonical_code(h), canonical_code(reverse(Zigzag.of(h))[0].graph())})
