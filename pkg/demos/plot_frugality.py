"""
Measuring message sizes
=======================

A protocol is frugal when its messages grow like ``log n``.  The power-sum
protocol uses exactly ``(2 + k(k+1)) * ceil(log2(n+1))`` bits; shipping whole
adjacency lists does not stay within any fixed multiple of ``log n``.
"""

# %%
from oneround.degeneracy import DegeneracyProtocol
from oneround.graph import LabelledGraph, gen_k_degenerate
from oneround.model import FullNeighborhoodProtocol, frugality_report

proto = DegeneracyProtocol(2)
graphs = [gen_k_degenerate(n, 2, s) for n in (8, 64, 512) for s in range(3)]
report = frugality_report(proto, graphs, proto.message_bits)
print(report.max_bits_by_n, "c =", round(report.constant, 2), "bound holds:", report.bound_holds)

# %%
stars = [LabelledGraph.star(n) for n in (8, 64, 512)]
full = frugality_report(FullNeighborhoodProtocol(), stars)
print({n: round(r, 1) for n, r in full.ratios().items()})
