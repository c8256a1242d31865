"""Small signed graphs up to switching isomorphism, and the critical ones among them.

Underlying graphs come from the networkx graph atlas (every graph on at most
seven vertices).  For a fixed underlying graph G, fix a spanning forest F
(greedy in edge order) and make it positive by switching; the switching
classes are then exactly the sign vectors on the cotree edges.  An
automorphism of G acts on those vectors as a GF(2)-linear map, and one
representative per orbit is kept.
"""
from __future__ import annotations

import json
import os
import platform
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterator

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import GraphMatcher

from .core import SignedGraph, parse_sg, serialize_sg
from .critical import CriticalityReport, density_check, is_critical, potential_check
from .generators import make_cstar
from .structure import Finding, all_critical_findings

LIMIT = 7
CHECKPOINT_EVERY = 10**5

CanonicalKey = bytes


class CensusLimitError(ValueError):
    pass


# -- canonical form --------------------------------------------------------

def _refine(adj: list[set[int]], cells: list[list[int]]) -> list[list[int]]:
    """Split cells by neighbour counts per cell until stable; cell order is
    determined by the invariants alone."""
    while True:
        where = {}
        for i, c in enumerate(cells):
            for v in c:
                where[v] = i
        new = []
        for i, c in enumerate(cells):
            sig = {}
            for v in c:
                counts = [0] * len(cells)
                for u in adj[v]:
                    counts[where[u]] += 1
                sig.setdefault(tuple(counts), []).append(v)
            new.extend(sig[k] for k in sorted(sig))
        if len(new) == len(cells):
            return new
        cells = new


def _leaf_code(n: int, edges: list[tuple[int, int, int]], pos: list[int]) -> tuple:
    rel = sorted((min(pos[u], pos[v]), max(pos[u], pos[v]), 0 if s > 0 else 1) for u, v, s in edges)
    parent = list(range(n))
    parity = [0] * n

    def find(x):
        p = 0
        while parent[x] != x:
            p ^= parity[x]
            x = parent[x]
        return x, p

    out = []
    for a, b, s in rel:
        ra, pa = find(a)
        rb, pb = find(b)
        if ra != rb:
            # switch so that this forest edge becomes positive
            parent[rb] = ra
            parity[rb] = pa ^ pb ^ s
            out.append((a, b, 0))
        else:
            out.append((a, b, s ^ pa ^ pb))
    return tuple(out)


def canonical_form(g: SignedGraph, limit: int = 10) -> CanonicalKey:
    """Equal for two simple signed graphs iff a relabelling followed by a
    switching turns one into the other.

    The minimum leaf code of an individualisation-refinement tree; at each
    leaf the switching class is normalised by making a greedy spanning forest
    positive, which yields the lexicographically least signature of the class.
    """
    if not g.is_simple():
        raise ValueError("canonical_form needs a simple signed graph (no loops or parallel edges)")
    if g.n > limit:
        raise CensusLimitError(f"canonical_form is limited to {limit} vertices")
    n = g.n
    adj = [set() for _ in range(n)]
    edges = []
    for _, e in g.edges():
        adj[e.u].add(e.v)
        adj[e.v].add(e.u)
        edges.append((e.u, e.v, int(e.sign)))
    best = None

    def search(cells):
        nonlocal best
        cells = _refine(adj, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            pos = [0] * n
            for i, c in enumerate(cells):
                pos[c[0]] = i
            code = _leaf_code(n, edges, pos)
            if best is None or code < best:
                best = code
            return
        cell = cells[target]
        for v in cell:
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    search([list(range(n))] if n else [])
    flat = [n]
    for a, b, s in best or ():
        flat.extend((a, b, s))
    return bytes(flat)


# -- enumeration -----------------------------------------------------------

def _atlas() -> list[nx.Graph]:
    return nx.graph_atlas_g()


def underlying_graphs(n: int) -> list[nx.Graph]:
    """All graphs on exactly ``n`` vertices up to isomorphism."""
    if n > LIMIT:
        raise CensusLimitError(f"census is limited to {LIMIT} vertices (atlas size)")
    return [G for G in _atlas() if G.number_of_nodes() == n]


def _forest_split(n: int, edges: list[tuple[int, int]]) -> tuple[list[int], list[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    forest, cotree = [], []
    for i, (u, v) in enumerate(edges):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            forest.append(i)
        else:
            cotree.append(i)
    return forest, cotree


def _normalized_cotree(n: int, edges, forest: list[int], cotree: list[int], signs: list[int]) -> int:
    """Cotree bits (1 = negative) after switching every forest edge positive."""
    adj = [[] for _ in range(n)]
    for i in forest:
        u, v = edges[i]
        adj[u].append((v, signs[i]))
        adj[v].append((u, signs[i]))
    bit = [-1] * n
    for r in range(n):
        if bit[r] < 0:
            bit[r] = 0
            stack = [r]
            while stack:
                x = stack.pop()
                for y, s in adj[x]:
                    if bit[y] < 0:
                        bit[y] = bit[x] ^ s
                        stack.append(y)
    x = 0
    for j, i in enumerate(cotree):
        u, v = edges[i]
        if signs[i] ^ bit[u] ^ bit[v]:
            x |= 1 << j
    return x


def _generators(G: nx.Graph) -> list[dict]:
    """A generating set of Aut(G), picked greedily from the full automorphism list."""
    nodes = sorted(G)
    autos = [tuple(m[v] for v in nodes) for m in GraphMatcher(G, G).isomorphisms_iter()]
    ident = tuple(nodes)
    closure = {ident}
    gens: list[tuple] = []
    for a in autos:
        if a in closure:
            continue
        gens.append(a)
        frontier = list(closure)
        while frontier:
            nxt = []
            for p in frontier:
                for s in gens:
                    q = tuple(s[p[i]] for i in range(len(p)))
                    if q not in closure:
                        closure.add(q)
                        nxt.append(q)
            frontier = nxt
    return gens


def _orbit_representatives(G: nx.Graph) -> tuple[list[tuple[int, int]], list[int], list[int], np.ndarray]:
    nodes = sorted(G)
    assert nodes == list(range(len(nodes)))
    n = len(nodes)
    edges = sorted((min(u, v), max(u, v)) for u, v in G.edges())
    forest, cotree = _forest_split(n, edges)
    k = len(cotree)
    index = {e: i for i, e in enumerate(edges)}
    labels = np.arange(1 << k, dtype=np.int64)
    maps = []
    for a in _generators(G):
        cols = []
        for j in range(k):
            signs = [0] * len(edges)
            u, v = edges[cotree[j]]
            # the image of basis vector j: the edge a(u)a(v) negative, all else positive
            signs[index[(min(a[u], a[v]), max(a[u], a[v]))]] = 1
            cols.append(_normalized_cotree(n, edges, forest, cotree, signs))
        img = np.zeros(1 << k, dtype=np.int64)
        for j, c in enumerate(cols):
            img ^= ((labels >> j) & 1) * c
        maps.append(img)
    lab = labels.copy()
    changed = True
    while changed:
        changed = False
        for img in maps:
            # propagate the smaller label both ways along x -> img[x]
            new = np.minimum(lab, lab[img])
            np.minimum.at(new, img, new)
            if not np.array_equal(new, lab):
                lab = new
                changed = True
    reps = np.flatnonzero(lab == labels)
    return edges, forest, cotree, reps


def _signed(n: int, edges, cotree, x: int) -> SignedGraph:
    neg = {cotree[j] for j in range(len(cotree)) if (x >> j) & 1}
    return SignedGraph(n, [(u, v, -1 if i in neg else 1) for i, (u, v) in enumerate(edges)])


def enumerate_signed_graphs(n: int, min_degree: int = 0,
                            filter: Callable[[nx.Graph], bool] | None = None) -> Iterator[SignedGraph]:
    """One simple signed graph on ``n`` vertices per switching-isomorphism class."""
    for G in underlying_graphs(n):
        if n and min(d for _, d in G.degree()) < min_degree:
            continue
        if filter is not None and not filter(G):
            continue
        edges, _, cotree, reps = _orbit_representatives(G)
        for x in reps:
            yield _signed(n, edges, cotree, int(x))


def count_signed_graphs(n: int, min_degree: int = 0) -> int:
    return sum(1 for _ in enumerate_signed_graphs(n, min_degree))


# -- critical census -------------------------------------------------------

@dataclass
class CensusEntry:
    graph: SignedGraph
    report: CriticalityReport
    key: CanonicalKey
    density_ok: bool
    potential_ok: bool
    findings: list[Finding] = field(default_factory=list)


@dataclass
class CensusResult:
    n_max: int
    critical: list[CensusEntry]
    undecided: list[SignedGraph]
    examined: dict[int, int]
    budget: int | None
    seconds: float = 0.0

    @property
    def flagged(self) -> bool:
        return bool(self.undecided)


def _census_candidate(G: nx.Graph) -> bool:
    return nx.is_connected(G)


def _process_underlying(args):
    g6, target, budget = args
    G = nx.from_graph6_bytes(g6)
    n = G.number_of_nodes()
    edges, _, cotree, reps = _orbit_representatives(G)
    crit, undecided = [], []
    for x in reps:
        g = _signed(n, edges, cotree, int(x))
        rep = is_critical(g, target, node_budget=budget)
        if rep.verdict == "critical":
            crit.append((g, rep))
        elif rep.verdict == "undecided":
            undecided.append(g)
    return len(reps), crit, undecided


def _entry(g: SignedGraph, rep: CriticalityReport) -> CensusEntry:
    return CensusEntry(g, rep, canonical_form(g), density_check(g), potential_check(g), all_critical_findings(g))


def _work_items(n_max: int) -> list[tuple[int, int, bytes]]:
    items = []
    for n in range(1, n_max + 1):
        for i, G in enumerate(underlying_graphs(n)):
            if min(d for _, d in G.degree()) >= 2 and _census_candidate(G):
                items.append((n, i, nx.to_graph6_bytes(G, header=False).strip()))
    return items


def find_critical_up_to(n_max: int, target: SignedGraph | None = None, node_budget: int | None = None,
                        workers: int = 1, checkpoint: str | os.PathLike | None = None,
                        checkpoint_every: int = CHECKPOINT_EVERY) -> CensusResult:
    """Every target-critical signed graph on at most ``n_max`` vertices.

    Only connected underlying graphs of minimum degree 2 are searched: a
    critical graph has no 1-vertex and no isolated vertex, and a disconnected
    one would have a non-mapping proper component.  ``checkpoint`` names a
    JSON file recording finished underlying graphs so a long run can resume.
    """
    if n_max > LIMIT:
        raise CensusLimitError(f"census is limited to {LIMIT} vertices (atlas size)")
    target = target if target is not None else make_cstar(3)
    t0 = time.perf_counter()
    items = _work_items(n_max)
    state = {"done": {}, "examined": 0}
    ck = Path(checkpoint) if checkpoint else None
    if ck and ck.exists():
        state = json.loads(ck.read_text())
    done: dict[str, dict] = state["done"]
    pending = [it for it in items if f"{it[0]}:{it[1]}" not in done]
    since = 0

    def record(item, result):
        nonlocal since
        count, crit, und = result
        done[f"{item[0]}:{item[1]}"] = {
            "count": count,
            "critical": [serialize_sg(g) for g, _ in crit],
            "undecided": [serialize_sg(g) for g in und],
        }
        since += count
        if ck and since >= checkpoint_every:
            ck.write_text(json.dumps({"done": done, "examined": 0}))
            since = 0

    jobs = [(it[2], target, node_budget) for it in pending]
    if workers > 1 and jobs:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for it, res in zip(pending, pool.map(_process_underlying, jobs, chunksize=4)):
                record(it, res)
    else:
        for it, job in zip(pending, jobs):
            record(it, _process_underlying(job))
    if ck:
        ck.write_text(json.dumps({"done": done, "examined": 0}))

    critical, undecided = [], []
    examined: dict[int, int] = {}
    for n, i, _ in items:
        rec = done[f"{n}:{i}"]
        examined[n] = examined.get(n, 0) + rec["count"]
        for text in rec["critical"]:
            g = parse_sg(text)
            # re-derive the report so witnesses are in hand even after a resume
            critical.append(_entry(g, is_critical(g, target, node_budget=node_budget)))
        undecided.extend(parse_sg(t) for t in rec["undecided"])
    return CensusResult(n_max, critical, undecided, examined, node_budget, time.perf_counter() - t0)


def write_census(result: CensusResult, root: str | os.PathLike) -> Path:
    """Lay out ``census/n<k>/critical/*.sg`` plus ``manifest.json``."""
    root = Path(root)
    for n in range(1, result.n_max + 1):
        (root / f"n{n}" / "critical").mkdir(parents=True, exist_ok=True)
    per_n: dict[int, int] = {}
    for entry in result.critical:
        n = entry.graph.n
        per_n[n] = per_n.get(n, 0) + 1
        name = f"{n}_{entry.graph.m}_{entry.key.hex()}.sg"
        (root / f"n{n}" / "critical" / name).write_text(
            serialize_sg(entry.graph, comments=[f"key {entry.key.hex()}", f"density {entry.density_ok}",
                                                f"potential {3 * entry.graph.n - 2 * entry.graph.m}"]))
    manifest = {
        "n_max": result.n_max,
        "examined": {str(k): v for k, v in sorted(result.examined.items())},
        "critical": {str(k): per_n.get(k, 0) for k in range(1, result.n_max + 1)},
        "undecided": len(result.undecided),
        "flagged": result.flagged,
        "node_budget": result.budget,
        "seconds": round(result.seconds, 3),
        "versions": {"python": platform.python_version(), "networkx": nx.__version__,
                     "numpy": np.__version__},
    }
    (root / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    return root
