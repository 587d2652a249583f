"""
Power-sum summaries of a neighbourhood
======================================

A vertex with at most ``k`` neighbours can describe them exactly with its
degree and the first ``k`` power sums of their IDs.
"""

# %%
# Encode vertex 1 of a 10-vertex graph with neighbours 4, 7 and 9.
from oneround.powersum import decode, deserialize, encode, message_width, serialize

s = encode(1, {4, 7, 9}, n=10, k=3)
print(s)

# %%
# On the wire the summary takes a fixed ``W(n, k)`` bits.
bits = serialize(s, 10, 3)
print(len(bits), message_width(10, 3), bits)

# %%
# Newton's identities turn the power sums back into the polynomial
# ``(x - 4)(x - 7)(x - 9)``, whose integer roots are the neighbours.
print(sorted(decode(deserialize(bits, 10, 3), 10)))

# %%
# Deleting a neighbour is a subtraction, which is what the referee does.
print(s.without(7), sorted(decode(s.without(7), 10)))
