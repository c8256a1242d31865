"""
Circular colourings of the signed Petersen graph
================================================

A p/q-colouring is an edge-sign preserving map into the circular clique
K^s_{p;q}. Sweeping ratios in increasing order gives the circular chromatic
number, with a refuted search for every smaller candidate.
"""

from fractions import Fraction

from signedhom.circular import circular_chromatic_number, find_circular_coloring
from signedhom.generators import make_cycle, make_petersen

p = make_petersen()
res = circular_chromatic_number(p)
print("chi_c(P) =", res, "witness colours", res.witness.phi)
print("refuted below it:", ", ".join(f"{a}/{b}" for a, b, _ in res.failures))

# the same value at a doubled denominator
c = find_circular_coloring(p, 20, 6)
print("20/6 colouring:", c.phi)

# the positive 5-cycle is the classical 5/2
print("positive C5:", circular_chromatic_number(make_cycle(5)))
print("3 < 10/3:", Fraction(3) < res.value)
