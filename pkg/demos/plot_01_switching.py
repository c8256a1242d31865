"""
Switching and signed girths
===========================

Switching at a vertex set flips every edge leaving it. Cycle signs survive,
so closed-walk girths split by parity and sign do too.
"""

from signedhom.core import SignedGraph, cycle_sign, is_switching_equivalent, signed_girths, switch
from signedhom.generators import make_complete, make_cstar

# a triangle with one negative edge
tri = SignedGraph(3, [(0, 1, -1), (1, 2, 1), (2, 0, 1)])
print("triangle sign:", cycle_sign(tri, [0, 1, 2]))

# switching at {0} moves the minus sign around, the product stays negative
flipped = switch(tri, {0})
print("after switching at 0:", [int(s) for s in flipped.signs()])
print("cycle sign still:", cycle_sign(flipped, [0, 1, 2]))

# which signatures are reachable?  all-positive is not, two minus signs is
print(is_switching_equivalent(tri, [1, 1, 1]))
print(is_switching_equivalent(make_complete(3), [-1, -1, 1]))

# shortest closed walk for each (parity, sign)
for name, g in [("positive triangle", make_complete(3)), ("C*_3", make_cstar(3)), ("C*_4", make_cstar(4))]:
    print(f"{name:18s}", signed_girths(g).as_dict())
