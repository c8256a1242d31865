"""Forbidden-configuration scanners and the three-rule discharging engine.

Findings carry a scope.  ``all_critical`` configurations are excluded from
every C*_3-critical signed graph; ``counterexample`` configurations are only
excluded from a minimum counterexample to the density bound, so on an
ordinary critical graph they are informational.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

from .core import DegreeClass, SignedGraph, degree_classes

ALL_CRITICAL = "all_critical"
COUNTEREXAMPLE = "counterexample"

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Finding:
    config: str
    witness: tuple[int, ...]
    scope: str
    edges: tuple[int, ...] = ()

    def to_json(self, g: SignedGraph | None = None) -> dict:
        out = {"config": self.config, "witness": list(self.witness), "scope": self.scope,
               "edges": list(self.edges)}
        if g is not None:
            out["signs"] = {str(e): int(g.edge(e).sign) for e in self.edges}
        return out


# -- helpers ---------------------------------------------------------------

def _simple_adj(g: SignedGraph) -> list[set[int]]:
    adj = [set() for _ in range(g.n)]
    for _, e in g.edges():
        if not e.is_loop:
            adj[e.u].add(e.v)
            adj[e.v].add(e.u)
    return adj


def _between(g: SignedGraph) -> dict[tuple[int, int], list[int]]:
    out: dict[tuple[int, int], list[int]] = {}
    for eid, e in g.edges():
        if not e.is_loop:
            out.setdefault((min(e.u, e.v), max(e.u, e.v)), []).append(eid)
    return out


def _key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _sign_choices(g: SignedGraph, between, cycle: Sequence[int]) -> Iterable[tuple[tuple[int, ...], int]]:
    """Every way of realising the closed vertex sequence ``cycle`` with actual
    edges, as ``(edge ids, sign)``."""
    pairs = [_key(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]
    for choice in product(*(between.get(p, ()) for p in pairs)):
        s = 1
        for eid in choice:
            s *= int(g.edge(eid).sign)
        yield tuple(choice), s


def triangles(g: SignedGraph) -> list[tuple[int, int, int]]:
    adj = _simple_adj(g)
    out = []
    for u in range(g.n):
        for v in adj[u]:
            if v > u:
                for w in adj[u] & adj[v]:
                    if w > v:
                        out.append((u, v, w))
    return out


def is_wealthy_class(c: DegreeClass) -> bool:
    return (c.degree == 4 and c.two_neighbors == 0) or (c.degree == 5 and c.two_neighbors <= 2) or c.degree >= 6


def is_rich_class(c: DegreeClass) -> bool:
    return (c.degree == 4 and c.two_neighbors == 1) or (c.degree == 5 and c.two_neighbors == 3) or is_wealthy_class(c)


class WealthClass(str, Enum):
    WEALTHY = "wealthy"
    RICH_NOT_WEALTHY = "rich_not_wealthy"
    NEITHER = "neither"


def classify_wealth(g: SignedGraph, v: int, classes: Sequence[DegreeClass] | None = None) -> WealthClass:
    c = (classes or degree_classes(g))[v]
    if is_wealthy_class(c):
        return WealthClass.WEALTHY
    if is_rich_class(c):
        return WealthClass.RICH_NOT_WEALTHY
    return WealthClass.NEITHER


# -- edges and vertices ----------------------------------------------------

def _bridges(g: SignedGraph) -> list[int]:
    """Non-loop edges whose removal disconnects their endpoints (small-graph
    method: one reachability search per edge)."""
    out = []
    for eid, e in g.edges():
        if e.is_loop:
            continue
        seen = {e.u}
        stack = [e.u]
        while stack and e.v not in seen:
            x = stack.pop()
            for f in g.incident(x):
                if f == eid:
                    continue
                y = g.edge(f).other(x)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if e.v not in seen:
            out.append(eid)
    return out


def scan_forbidden_edges(g: SignedGraph) -> list[Finding]:
    out = []
    for eid, e in g.edges():
        if e.is_loop:
            out.append(Finding("loop", (e.u,), ALL_CRITICAL, (eid,)))
    for (u, v), eids in sorted(_between(g).items()):
        for a, b in combinations(eids, 2):
            out.append(Finding("parallel", (u, v), ALL_CRITICAL, (a, b)))
    for eid in _bridges(g):
        e = g.edge(eid)
        out.append(Finding("cut_edge", (e.u, e.v), ALL_CRITICAL, (eid,)))
    return out


FORBIDDEN_VERTEX_CLASSES = {(2, 1): "2_1", (3, 2): "3_2", (4, 4): "4_4", (5, 5): "5_5"}


def scan_forbidden_vertices(g: SignedGraph) -> list[Finding]:
    out = []
    for v, c in enumerate(degree_classes(g)):
        if c.degree == 1:
            out.append(Finding("1", (v,), ALL_CRITICAL))
        elif (c.degree, c.two_neighbors) in FORBIDDEN_VERTEX_CLASSES:
            out.append(Finding(FORBIDDEN_VERTEX_CLASSES[c.degree, c.two_neighbors], (v,), ALL_CRITICAL))
    return out


# -- theta and X patterns --------------------------------------------------

PATTERNS: dict[str, tuple[int, tuple[tuple[int, int], ...]]] = {
    # K4 minus an edge
    "theta1": (4, ((0, 1), (1, 2), (2, 3), (3, 0), (1, 3))),
    # K_{2,3}: three 2-paths between 1 and 3
    "theta2": (5, ((0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 3))),
    # a 5-cycle with a chord: a triangle and a 4-cycle sharing an edge
    "theta3": (5, ((0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 4))),
    # two triangles sharing the vertex 2
    "X": (5, ((0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (2, 4))),
}


def pattern_embeddings(g: SignedGraph, name: str) -> list[tuple[int, ...]]:
    """Subgraph (not necessarily induced) copies of a pattern in the underlying
    simple graph, one per distinct image edge set."""
    k, pedges = PATTERNS[name]
    adj = _simple_adj(g)
    # edges back to already placed pattern vertices, per pattern vertex
    back = [[a if b == i else b for a, b in pedges if i in (a, b) and max(a, b) == i] for i in range(k)]
    seen: set[frozenset] = set()
    out = []
    img = [-1] * k

    def rec(i: int) -> None:
        if i == k:
            key = frozenset(_key(img[a], img[b]) for a, b in pedges)
            if key not in seen:
                seen.add(key)
                out.append(tuple(img))
            return
        if back[i]:
            cand = set.intersection(*(adj[img[j]] for j in back[i]))
        else:
            cand = range(g.n)
        used = img[:i]
        for x in sorted(cand):
            if x not in used:
                img[i] = x
                rec(i + 1)
        img[i] = -1

    rec(0)
    return out


def scan_theta_and_X(g: SignedGraph) -> list[Finding]:
    out = []
    for name in PATTERNS:
        for w in pattern_embeddings(g, name):
            out.append(Finding(name, w, COUNTEREXAMPLE))
    return out


# -- triangle lemmas -------------------------------------------------------

def _cls_match(token: str, c: DegreeClass) -> bool:
    if "_" in token:
        d, ell = token.split("_")
        return c.degree == int(d) and c.two_neighbors == int(ell)
    return c.degree == int(token)


TRIANGLE_PROFILES = (
    (("3_1", "3_1", "5_3"), ALL_CRITICAL),
    (("3_1", "4_2", "4_2"), ALL_CRITICAL),
    (("3_1", "3", "4_2"), ALL_CRITICAL),
    (("3_1", "3_1", "4"), COUNTEREXAMPLE),
    (("3_1", "3", "3"), COUNTEREXAMPLE),
)


def profile_matches(profile: Sequence[str], classes: Sequence[DegreeClass]) -> bool:
    return any(all(_cls_match(t, c) for t, c in zip(profile, perm)) for perm in permutations(classes))


def scan_triangle_lemmas(g: SignedGraph) -> list[Finding]:
    classes = degree_classes(g)
    adj = _simple_adj(g)
    between = _between(g)
    tris = triangles(g)
    out = []
    for t in tris:
        cl = [classes[v] for v in t]
        for profile, scope in TRIANGLE_PROFILES:
            if profile_matches(profile, cl):
                out.append(Finding("triangle_" + "-".join(profile), t, scope))
    count = [0] * g.n
    for t in tris:
        for v in t:
            count[v] += 1
    for v in range(g.n):
        if count[v] >= 2:
            out.append(Finding("two_triangles", (v,), COUNTEREXAMPLE))
    for v, c in enumerate(classes):
        if (c.degree, c.two_neighbors) != (3, 1):
            continue
        big = sorted(u for u in adj[v] if classes[u].degree != 2)
        if len(big) != 2 or not any(s > 0 for _, s in _sign_choices(g, between, (big[0], v, big[1]))):
            out.append(Finding("3_1_not_in_positive_triangle", (v, *big), COUNTEREXAMPLE))
    out.extend(_two_vertex_cycles(g, classes, adj, between))
    return out


def _two_vertex_cycles(g, classes, adj, between) -> list[Finding]:
    """A cycle through a 2-vertex must be positive if it is a triangle and
    negative if it is a 4-cycle.  The chord clause needs no scan: a chord of a
    negative 4-cycle always splits it into triangles of opposite signs."""
    out = []
    for v in range(g.n):
        if classes[v].degree != 2 or len(adj[v]) != 2:
            continue
        a, b = sorted(adj[v])
        if b in adj[a]:
            for eids, s in _sign_choices(g, between, (v, a, b)):
                if s < 0:
                    out.append(Finding("2_vertex_negative_triangle", (v, a, b), ALL_CRITICAL, eids))
        for c in sorted((adj[a] & adj[b]) - {v}):
            for eids, s in _sign_choices(g, between, (v, a, c, b)):
                if s > 0:
                    out.append(Finding("2_vertex_positive_4_cycle", (v, a, c, b), ALL_CRITICAL, eids))
    return out


# -- lemmas about 4-vertices and donors -------------------------------------

def scan_4vertex_lemmas(g: SignedGraph) -> list[Finding]:
    classes = degree_classes(g)
    adj = _simple_adj(g)
    between = _between(g)
    tri_vertices = {v for t in triangles(g) for v in t}
    out = []

    def cls(v):
        return classes[v].degree, classes[v].two_neighbors

    is43 = [cls(v) == (4, 3) for v in range(g.n)]
    for v in range(g.n):
        d, ell = cls(v)
        twos = sorted(u for u in adj[v] if classes[u].degree == 2)
        others = sorted(u for u in adj[v] if classes[u].degree != 2)
        if (d, ell) == (4, 2) and len(others) == 2:
            x, y = others
            ok = y in adj[x] and any(s > 0 for _, s in _sign_choices(g, between, (x, v, y)))
            if not ok:
                for z in (adj[x] & adj[y]) - {v}:
                    if any(s < 0 for _, s in _sign_choices(g, between, (x, v, y, z))):
                        ok = True
                        break
            if not ok:
                out.append(Finding("4_2_no_positive_triangle_or_negative_4_cycle", (v, x, y), COUNTEREXAMPLE))
        if (d, ell) == (4, 3) and len(others) == 1 and len(twos) == 3:
            w = others[0]
            far = []
            for u in twos:
                rest = adj[u] - {v}
                far.append(next(iter(rest)) if len(rest) == 1 else None)
            ok = None not in far and len(set(far)) == 3 and all(x != w and x in adj[w] for x in far)
            if not ok:
                out.append(Finding("4_3_distance_two", (v, w, *[x for x in far if x is not None]), COUNTEREXAMPLE))
        n43 = sum(1 for u in adj[v] if is43[u])
        if d == 5 and ell >= 2 and n43:
            out.append(Finding("5_ge2_adjacent_4_3", (v,), COUNTEREXAMPLE))
        if (d, ell) == (4, 0) and n43 >= 2:
            out.append(Finding("4_0_two_4_3", (v,), COUNTEREXAMPLE))
        if d == 5 and n43 >= 4:
            out.append(Finding("5_four_4_3", (v,), COUNTEREXAMPLE))
        if (d, ell) == (3, 1):
            if not any(is_rich_class(classes[u]) for u in adj[v]):
                out.append(Finding("3_1_no_rich_neighbor", (v,), COUNTEREXAMPLE))
            for u in adj[v]:
                if u > v and cls(u) == (3, 1):
                    if not any(is_wealthy_class(classes[w]) for w in adj[v] & adj[u]):
                        out.append(Finding("3_1_pair_no_common_wealthy", (v, u), COUNTEREXAMPLE))
        if is43[v]:
            rich = [u for u in adj[v] if is_wealthy_class(classes[u])]
            if not rich:
                out.append(Finding("4_3_no_wealthy_neighbor", (v,), COUNTEREXAMPLE))
            for u in rich:
                if u in tri_vertices and classes[u].degree < 6:
                    out.append(Finding("4_3_wealthy_neighbor_in_triangle", (v, u), COUNTEREXAMPLE))
    return out


# -- reports ---------------------------------------------------------------

HYPOTHESES = ("H1", "H2", "H3", "H4", "H5", "H6", "H7")

# H1 as used by the case analysis: besides 1, 2_1, 3_2, 4_4 and 5_5 it needs
# no 0-vertex and no 3_3-vertex (the 3_2 argument excludes 3_3 verbatim)
H1_EXTRA = ("0", "3_3")

_HYP_CONFIGS = {
    "H2": {"two_triangles"},
    "H3": {"3_1_not_in_positive_triangle"},
    "H4": {"3_1_no_rich_neighbor", "3_1_pair_no_common_wealthy"},
    "H5": {"4_3_no_wealthy_neighbor", "4_3_wealthy_neighbor_in_triangle"},
    "H6": {"5_ge2_adjacent_4_3", "4_0_two_4_3", "5_four_4_3"},
}


def hypotheses(g: SignedGraph, literal_h1: bool = False) -> dict[str, bool]:
    """Evaluate H1..H7 on ``g``.  ``literal_h1`` drops the 0 and 3_3 exclusions."""
    classes = degree_classes(g)
    adj = _simple_adj(g)
    bad1 = {f.config for f in scan_forbidden_vertices(g)}
    if not literal_h1:
        for c in classes:
            if c.degree == 0 or (c.degree, c.two_neighbors) == (3, 3):
                bad1.add("x")
    configs = {f.config for f in scan_triangle_lemmas(g)} | {f.config for f in scan_4vertex_lemmas(g)}
    out = {"H1": not bad1}
    for name, cs in _HYP_CONFIGS.items():
        out[name] = not (configs & cs)
    out["H7"] = not any(classes[v].degree == 2 and any(classes[u].degree == 2 for u in adj[v]) for v in range(g.n))
    return dict(sorted(out.items()))


@dataclass
class ConfigReport:
    findings: list[Finding]
    hypotheses_passed: list[str]

    def by_scope(self, scope: str) -> list[Finding]:
        return [f for f in self.findings if f.scope == scope]

    def to_json(self, g: SignedGraph | None = None) -> dict:
        return {"findings": [f.to_json(g) for f in self.findings], "hypotheses_passed": self.hypotheses_passed}


def scan_all(g: SignedGraph) -> ConfigReport:
    findings = (scan_forbidden_edges(g) + scan_forbidden_vertices(g) + scan_theta_and_X(g)
                + scan_triangle_lemmas(g) + scan_4vertex_lemmas(g))
    hyp = hypotheses(g)
    return ConfigReport(findings, [h for h in HYPOTHESES if hyp[h]])


def all_critical_findings(g: SignedGraph) -> list[Finding]:
    return [f for f in scan_all(g).findings if f.scope == ALL_CRITICAL]


def verify_finding(g: SignedGraph, f: Finding) -> bool:
    """Re-check a finding straight from its definition."""
    classes = degree_classes(g)
    w = f.witness
    if f.config == "loop":
        e = g.edge(f.edges[0])
        return e.is_loop and e.u == w[0]
    if f.config == "parallel":
        a, b = (g.edge(x) for x in f.edges)
        return {a.u, a.v} == {b.u, b.v} == set(w) and not a.is_loop
    if f.config == "cut_edge":
        return f.edges[0] in _bridges(g)
    if f.config == "1":
        return g.degree(w[0]) == 1
    if f.config in FORBIDDEN_VERTEX_CLASSES.values():
        d, ell = (int(x) for x in f.config.split("_"))
        return tuple(classes[w[0]]) == (d, ell)
    if f.config in PATTERNS:
        adj = _simple_adj(g)
        return len(set(w)) == len(w) and all(w[b] in adj[w[a]] for a, b in PATTERNS[f.config][1])
    if f.config.startswith("triangle_"):
        adj = _simple_adj(g)
        a, b, c = w
        profile = f.config[len("triangle_"):].split("-")
        return b in adj[a] and c in adj[b] and a in adj[c] and profile_matches(profile, [classes[x] for x in w])
    if f.config in ("2_vertex_negative_triangle", "2_vertex_positive_4_cycle"):
        want = -1 if "negative" in f.config else 1
        s = 1
        for i, eid in enumerate(f.edges):
            e = g.edge(eid)
            if {e.u, e.v} != {w[i], w[(i + 1) % len(w)]}:
                return False
            s *= int(e.sign)
        return s == want and g.degree(w[0]) == 2
    # remaining configurations are defined by the scanners themselves
    return f in scan_triangle_lemmas(g) + scan_4vertex_lemmas(g)


# -- discharging -----------------------------------------------------------

@dataclass(frozen=True)
class Transfer:
    rule: int
    source: int
    target: int
    amount: Fraction = HALF


@dataclass
class ChargeLedger:
    initial: tuple[Fraction, ...]
    transfers: list[Transfer] = field(default_factory=list)
    final: tuple[Fraction, ...] = ()

    def total(self) -> Fraction:
        return sum(self.final, Fraction(0))

    def to_json(self) -> dict:
        return {
            "initial": [str(x) for x in self.initial],
            "transfers": [{"rule": t.rule, "from": t.source, "to": t.target, "amount": str(t.amount)}
                          for t in self.transfers],
            "final": [str(x) for x in self.final],
            "sum": str(self.total()),
        }


def run_discharging(g: SignedGraph) -> ChargeLedger:
    """Start from charge = degree and apply the three rules at once, every
    class taken from the input graph.  A rule fires once per incident edge,
    so parallel edges count as separate neighbours."""
    classes = degree_classes(g)
    charge = [Fraction(c.degree) for c in classes]
    ledger = ChargeLedger(tuple(charge))
    for eid, e in g.edges():
        if e.is_loop:
            continue
        for src, dst in ((e.u, e.v), (e.v, e.u)):
            cs, cd = classes[src], classes[dst]
            if cs.degree >= 3 and cd.degree == 2:
                ledger.transfers.append(Transfer(1, src, dst))
            if is_rich_class(cs) and (cd.degree, cd.two_neighbors) == (3, 1):
                ledger.transfers.append(Transfer(2, src, dst))
            if is_wealthy_class(cs) and (cd.degree, cd.two_neighbors) == (4, 3):
                ledger.transfers.append(Transfer(3, src, dst))
    ledger.transfers.sort(key=lambda t: (t.rule, t.source, t.target))
    for t in ledger.transfers:
        charge[t.source] -= t.amount
        charge[t.target] += t.amount
    ledger.final = tuple(charge)
    return ledger
