"""
A small census and the discharging rules
========================================

Enumerate connected signed graphs of minimum degree 2 up to switching
isomorphism, keep the C*_3-critical ones, then watch charge move under the
three rules.
"""

from signedhom.census import find_critical_up_to
from signedhom.generators import make_W
from signedhom.structure import hypotheses, run_discharging, scan_theta_and_X

res = find_critical_up_to(6)
print(f"{sum(res.examined.values())} classes examined, {len(res.critical)} critical, {res.seconds:.2f}s")
for e in res.critical:
    g = e.graph
    print(f"  n={g.n} e={g.m} rho={3 * g.n - 2 * g.m} theta/X copies={len(scan_theta_and_X(g))}")

# charges start at the degree; only rule 1 fires on W
ledger = run_discharging(make_W())
for t in ledger.transfers:
    print(f"rule {t.rule}: {t.source} -> {t.target} ({t.amount})")
print("final", [str(x) for x in ledger.final], "sum", ledger.total())
print(hypotheses(make_W()))
