"""Slow, obviously-correct reference computations used only by the tests."""
from __future__ import annotations

import math
from itertools import combinations, permutations, product

import numpy as np

from signedhom.core import SignedGraph


def girths_by_walk_matrices(g: SignedGraph) -> dict[str, float]:
    """Shortest closed walk per type from boolean walk matrices.

    ``P[L][i, j]`` / ``N[L][i, j]``: there is a positive / negative walk of
    length L from i to j.  Any closed-walk type that exists has a witness of
    length at most 4n (the state space vertex x parity x sign), so stopping
    there is exact.
    """
    n = g.n
    ap = np.zeros((n, n), dtype=bool)
    an = np.zeros((n, n), dtype=bool)
    for _, e in g.edges():
        a = ap if e.sign > 0 else an
        a[e.u, e.v] = a[e.v, e.u] = True
    best = {"odd+": math.inf, "even-": math.inf, "odd-": math.inf, "even+": math.inf}
    pos = np.eye(n, dtype=bool)
    neg = np.zeros((n, n), dtype=bool)
    for length in range(1, 4 * n + 1):
        pos, neg = ((pos.astype(int) @ ap + neg.astype(int) @ an) > 0,
                    (pos.astype(int) @ an + neg.astype(int) @ ap) > 0)
        par = "odd" if length % 2 else "even"
        if np.diag(pos).any() and best[par + "+"] == math.inf:
            best[par + "+"] = length
        if np.diag(neg).any() and best[par + "-"] == math.inf:
            best[par + "-"] = length
    return best


def relabel(g: SignedGraph, perm) -> SignedGraph:
    return SignedGraph(g.n, [(perm[e.u], perm[e.v], e.sign) for _, e in g.edges()])


def _edge_multiset(g: SignedGraph, switched: int = 0) -> list:
    out = []
    for _, e in g.edges():
        s = int(e.sign)
        if e.u != e.v and ((switched >> e.u) ^ (switched >> e.v)) & 1:
            s = -s
        out.append((min(e.u, e.v), max(e.u, e.v), s))
    return sorted(out)


def switching_isomorphic(g1: SignedGraph, g2: SignedGraph) -> bool:
    """Every relabelling times every switch set; multigraphs allowed."""
    if g1.n != g2.n or g1.m != g2.m:
        return False
    want = _edge_multiset(g2)
    for perm in permutations(range(g1.n)):
        mapped = relabel(g1, perm)
        if sorted((a, b) for a, b, _ in _edge_multiset(mapped)) != [(a, b) for a, b, _ in want]:
            continue
        if any(_edge_multiset(mapped, s) == want for s in range(1 << g1.n)):
            return True
    return False


def burnside_class_count(n: int) -> int:
    """Simple signed graphs on n labelled vertices up to relabelling and
    switching, counted with Burnside's lemma over S_n x Z_2^n.

    For a group element (pi, S) the pairs fall into cycles under pi; a cycle
    is either empty, or fully present with signs forced along the cycle,
    which is consistent (two choices) iff the switching factors multiply to
    +1 around it.
    """
    pairs = list(combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    total = 0
    for perm in permutations(range(n)):
        img = [index[tuple(sorted((perm[a], perm[b])))] for a, b in pairs]
        cycles = []
        seen = [False] * len(pairs)
        for i in range(len(pairs)):
            if not seen[i]:
                cyc = []
                j = i
                while not seen[j]:
                    seen[j] = True
                    cyc.append(j)
                    j = img[j]
                cycles.append(cyc)
        for bits in range(1 << n):
            fix = 1
            for cyc in cycles:
                par = 0
                for j in cyc:
                    a, b = pairs[img[j]]
                    par ^= ((bits >> a) ^ (bits >> b)) & 1
                fix *= 3 if par == 0 else 1
            total += fix
    return total // (math.factorial(n) << n)


def naive_pattern_images(g: SignedGraph, k: int, pedges) -> set[frozenset]:
    adj = set()
    for _, e in g.edges():
        if not e.is_loop:
            adj.add((e.u, e.v))
            adj.add((e.v, e.u))
    out = set()
    for img in permutations(range(g.n), k):
        if all((img[a], img[b]) in adj for a, b in pedges):
            out.add(frozenset(tuple(sorted((img[a], img[b]))) for a, b in pedges))
    return out


def circular_colorable_bruteforce(g: SignedGraph, p: int, q: int) -> bool:
    """Enumerate all p^n colourings directly from the two distance clauses."""
    if g.n == 0:
        return True
    cols = np.array(list(product(range(p), repeat=g.n)), dtype=np.int64)
    ok = np.ones(len(cols), dtype=bool)
    half = p // 2
    for _, e in g.edges():
        d = np.abs(cols[:, e.u] - cols[:, e.v])
        if e.sign > 0:
            ok &= (q <= d) & (d <= p - q)
        else:
            ok &= (d <= half - q) | (d >= half + q)
    return bool(ok.any())
