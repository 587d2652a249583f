"""
Rebuilding a sparse graph from one short message per node
=========================================================

Every node of a graph with degeneracy ``k`` sends its power-sum summary.
The referee peels low-degree vertices and recovers every edge.
"""

# %%
from oneround.degeneracy import DegeneracyProtocol
from oneround.graph import degeneracy, gen_k_degenerate
from oneround.model import run

g = gen_k_degenerate(200, 3, seed=1)
print("n =", g.n, "m =", g.m, "degeneracy =", degeneracy(g))

# %%
t = run(DegeneracyProtocol(3), g)
print("exact:", t.output.graph == g)
print("bits per node:", t.max_bits)

# %%
# The same messages with too small a ``k`` leave the referee stuck.
print(run(DegeneracyProtocol(2), g).output.render())
