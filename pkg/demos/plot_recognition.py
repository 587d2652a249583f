"""
Deciding degeneracy from the messages alone
===========================================

Running the peeling loop in recognition mode answers "is the degeneracy at
most k?" without building the graph.
"""

# %%
from oneround.degeneracy import DegeneracyProtocol
from oneround.graph import LabelledGraph, gen_planar
from oneround.model import run

planar = gen_planar(150, seed=4)
for k in (2, 3, 4, 5):
    verdict = run(DegeneracyProtocol(k, mode="recognize"), planar).output
    print(f"planar graph, k={k}:", verdict.render())

# %%
print("K4, k=2:", run(DegeneracyProtocol(2, mode="recognize"), LabelledGraph.complete(4)).output.render())
