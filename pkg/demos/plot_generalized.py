"""
Dense graphs through their complements
======================================

In generalized mode each node also summarises its non-neighbours, so a
vertex may be peeled when it has few neighbours or few non-neighbours.
"""

# %%
from oneround.degeneracy import DegeneracyProtocol
from oneround.graph import LabelledGraph
from oneround.model import run

k20 = LabelledGraph.complete(20)
print("plain:      ", run(DegeneracyProtocol(1), k20).output.render())
out = run(DegeneracyProtocol(1, generalized=True), k20).output
print("generalized:", out.graph == k20)

# %%
# A 5-cycle plus a vertex joined to all of it.
g = LabelledGraph.cycle(5).with_edges([(v, 6) for v in range(1, 6)], n=6)
print(run(DegeneracyProtocol(2, generalized=True), g).output.render())
