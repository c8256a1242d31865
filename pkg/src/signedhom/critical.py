"""Criticality decisions plus the density and potential checks for critical graphs."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .core import GirthTable, SignedGraph, delete_edge, potential, signed_girths
from .hom import BudgetExceeded, Homomorphism, SearchStats, hom

VERDICTS = ("critical", "maps", "girth_violation", "non_minimal", "undecided")


@dataclass(frozen=True)
class GirthCheck:
    ok: bool
    source: GirthTable
    target: GirthTable
    # (parity, sign) entries where the source girth is smaller than the target's
    violations: tuple[tuple[int, int], ...] = ()

    def to_json(self) -> dict:
        def enc(x):
            return None if math.isinf(x) else int(x)
        return {
            "ok": self.ok,
            "source": {k: enc(v) for k, v in self.source.as_dict().items()},
            "target": {k: enc(v) for k, v in self.target.as_dict().items()},
            "violations": [f"{'odd' if p else 'even'}{'+' if s > 0 else '-'}" for p, s in self.violations],
        }


def girth_dominates(g: SignedGraph, h: SignedGraph) -> GirthCheck:
    """Entrywise ``g_ij(g) >= g_ij(h)``; infinity dominates everything."""
    sg, sh = signed_girths(g), signed_girths(h)
    bad = tuple((p, s) for p in (0, 1) for s in (1, -1) if sg[p, s] < sh[p, s])
    return GirthCheck(not bad, sg, sh, bad)


@dataclass(frozen=True)
class CriticalityReport:
    verdict: str
    girth: GirthCheck
    maps_to_target: bool | None
    failing_edge: int | None = None
    isolated: tuple[int, ...] = ()
    # edge id -> witness for g - e, when the sweep ran to completion
    witnesses: dict = field(default_factory=dict)
    # the map of g itself when it maps
    witness: Homomorphism | None = None
    # search nodes spent proving g has no map (the exhausted-search token)
    refutation_nodes: int | None = None
    budget: int | None = None
    undecided_at: str | None = None

    @property
    def is_critical(self) -> bool:
        return self.verdict == "critical"

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "girth": self.girth.to_json(),
            "maps_to_target": self.maps_to_target,
            "failing_edge": self.failing_edge,
            "isolated": list(self.isolated),
            "refutation_nodes": self.refutation_nodes,
            "budget": self.budget,
            "witnesses": [{"deleted_edge": e, **w.to_json()} for e, w in sorted(self.witnesses.items())],
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.undecided_at is not None:
            out["undecided_at"] = self.undecided_at
        return out


def _deletion_probe(args):
    g, h, eid, budget = args
    try:
        return eid, hom(delete_edge(g, eid), h, node_budget=budget), False
    except BudgetExceeded:
        return eid, None, True


def is_critical(g: SignedGraph, h: SignedGraph, node_budget: int | None = None, workers: int = 1) -> CriticalityReport:
    """Decide whether ``g`` is ``h``-critical.

    Every proper subgraph lies inside some ``g - e`` or misses a vertex, so
    checking single-edge deletions plus isolated vertices is enough.
    The edge sweep stops at the first edge whose deletion still fails to map.
    """
    gc = girth_dominates(g, h)
    if not gc.ok:
        return CriticalityReport("girth_violation", gc, None, budget=node_budget)
    stats = SearchStats()
    try:
        w = hom(g, h, node_budget=node_budget, stats=stats)
    except BudgetExceeded:
        return CriticalityReport("undecided", gc, None, budget=node_budget, undecided_at="graph")
    if w is not None:
        return CriticalityReport("maps", gc, True, witness=w, budget=node_budget)
    refutation = stats.nodes
    isolated = tuple(v for v in range(g.n) if g.degree(v) == 0)
    if isolated:
        return CriticalityReport("non_minimal", gc, False, isolated=isolated,
                                 refutation_nodes=refutation, budget=node_budget)
    eids = g.edge_ids()
    jobs = [(g, h, e, node_budget) for e in eids]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_deletion_probe, jobs))
    else:
        results = []
        for job in jobs:
            r = _deletion_probe(job)
            results.append(r)
            if r[1] is None and not r[2]:
                break
    witnesses = {}
    undecided = None
    # scan in edge order so the reported failing edge does not depend on scheduling
    for eid, found, blew in results:
        if blew:
            undecided = undecided if undecided is not None else eid
            continue
        if found is None:
            return CriticalityReport("non_minimal", gc, False, failing_edge=eid,
                                     refutation_nodes=refutation, budget=node_budget)
        witnesses[eid] = found
    if undecided is not None:
        return CriticalityReport("undecided", gc, False, witnesses=witnesses, refutation_nodes=refutation,
                                 budget=node_budget, undecided_at=f"edge {undecided}")
    return CriticalityReport("critical", gc, False, witnesses=witnesses,
                             refutation_nodes=refutation, budget=node_budget)


def density_check(g: SignedGraph) -> bool:
    """``2e >= 3v - 1``, the edge bound every C*_3-critical graph meets."""
    return 2 * g.m >= 3 * g.n - 1


def potential_check(g: SignedGraph) -> bool:
    return potential(g) <= 1
