"""
Critical signed graphs and the 3v-1 edge bound
==============================================

W has 5 vertices and 7 edges and does not map to C*_3, while every one of its
edge-deleted subgraphs does. The family S_k sits at exactly 3v/2 edges.
"""

from signedhom.core import delete_edge, potential
from signedhom.critical import density_check, is_critical
from signedhom.generators import make_cstar, make_Sk, make_W
from signedhom.hom import hom

target = make_cstar(3)
w = make_W()

report = is_critical(w, target)
print("W:", report.verdict, "| potential", potential(w), "| 2e =", 2 * w.m, "3v-1 =", 3 * w.n - 1)

# the witnesses for every deletion come back with the report
for eid, h in sorted(report.witnesses.items()):
    print(f"  W - e{eid}: map {h.mapping}, switch at {sorted(h.switch_set)}")

# a sanity check without the report
print("every deletion maps:", all(hom(delete_edge(w, e), target) for e in w.edge_ids()))

for k in range(3, 9):
    s = make_Sk(k)
    print(f"S_{k}: v={s.n:2d} e={s.m:2d} verdict={is_critical(s, target).verdict} density ok={density_check(s)}")
