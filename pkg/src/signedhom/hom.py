"""Exact search for edge-sign preserving and switching homomorphisms.

Every source vertex is a CSP variable whose values are pairs
``(target vertex, switch bit)`` packed as ``2 * target + bit``.  A source edge
``u v`` of sign ``s`` is satisfied by ``(a, bu), (b, bv)`` iff the target has
an edge ``a b`` of sign ``s * (-1)**bu * (-1)**bv``.  Edge-sign preserving
search is the special case where every switch bit is pinned to 0.

Domains are int bitmasks; search is backtracking with forward checking,
smallest domain first (ties by vertex id), values in increasing
``(target, bit)`` order.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping

import numpy as np

from .core import SignedGraph, connected_components, switch


class BudgetExceeded(RuntimeError):
    """The node budget ran out before the search was decided."""

    def __init__(self, nodes: int):
        super().__init__(f"search undecided after {nodes} nodes")
        self.nodes = nodes


def default_budget() -> int | None:
    raw = os.environ.get("SIGNEDHOM_BUDGET")
    return int(raw) if raw else None


@dataclass(frozen=True)
class Homomorphism:
    mapping: tuple[int, ...]
    switch_set: frozenset = frozenset()

    def to_json(self) -> dict:
        return {"mapping": list(self.mapping), "switch_set": sorted(self.switch_set)}


@dataclass
class SearchStats:
    nodes: int = 0
    budget: int | None = None
    exhausted: bool = False


def check_homomorphism(g: SignedGraph, h: SignedGraph, hom: Homomorphism) -> bool:
    """Direct O(e) check: after switching ``g`` at ``hom.switch_set`` each edge
    must land on a target edge of the same sign."""
    if len(hom.mapping) != g.n or any(not 0 <= a < h.n for a in hom.mapping):
        return False
    if any(not 0 <= v < g.n for v in hom.switch_set):
        return False
    have = _pair_signs(h)
    gs = switch(g, hom.switch_set)
    for _, e in gs.edges():
        a, b = hom.mapping[e.u], hom.mapping[e.v]
        if int(e.sign) not in have.get((min(a, b), max(a, b)), ()):
            return False
    return True


def _pair_signs(h: SignedGraph) -> dict[tuple[int, int], set[int]]:
    have: dict[tuple[int, int], set[int]] = {}
    for _, e in h.edges():
        have.setdefault((min(e.u, e.v), max(e.u, e.v)), set()).add(int(e.sign))
    return have


class _Target:
    """Compatibility tables of a target graph, cached per graph object."""

    def __init__(self, h: SignedGraph):
        self.n = h.n
        have = _pair_signs(h)
        nv = 2 * h.n
        # compat[sign_index][val] -> bitmask of allowed neighbour values
        self.compat = ([0] * nv, [0] * nv)
        for si, s in enumerate((1, -1)):
            table = self.compat[si]
            for x in range(nv):
                a, bx = divmod(x, 2)
                mask = 0
                for y in range(nv):
                    b, by = divmod(y, 2)
                    need = s * (-1 if bx else 1) * (-1 if by else 1)
                    if need in have.get((min(a, b), max(a, b)), ()):
                        mask |= 1 << y
                table[x] = mask
        pos = neg = 0
        for a in range(h.n):
            signs = have.get((a, a), ())
            if 1 in signs:
                pos |= 0b11 << (2 * a)
            if -1 in signs:
                neg |= 0b11 << (2 * a)
        self.loop_mask = (pos, neg)
        self.all_mask = (1 << nv) - 1
        self.bit0_mask = sum(1 << (2 * a) for a in range(h.n))


_TARGET_CACHE: dict[int, tuple[SignedGraph, _Target]] = {}


def _target(h: SignedGraph) -> _Target:
    key = id(h)
    hit = _TARGET_CACHE.get(key)
    if hit is not None and hit[0] is h:
        return hit[1]
    t = _Target(h)
    if len(_TARGET_CACHE) > 256:
        _TARGET_CACHE.clear()
    _TARGET_CACHE[key] = (h, t)
    return t


def _solve(g: SignedGraph, t: _Target, domains: list[int], stats: SearchStats,
           mac: bool = False) -> list[int] | None:
    """Backtracking search.  Forward checking by default; ``mac`` keeps full
    arc consistency after every choice, which pays off on wide domains such
    as circular cliques."""
    n = g.n
    cons: list[list[tuple[int, list[int]]]] = [[] for _ in range(n)]
    for _, e in g.edges():
        table = t.compat[0 if e.sign > 0 else 1]
        if e.is_loop:
            domains[e.u] &= t.loop_mask[0 if e.sign > 0 else 1]
        else:
            cons[e.u].append((e.v, table))
            cons[e.v].append((e.u, table))
    if any(d == 0 for d in domains):
        stats.exhausted = True
        return None
    assign = [-1] * n
    budget = stats.budget

    def support(mask: int, table: list[int]) -> int:
        out = 0
        while mask:
            low = mask & -mask
            mask ^= low
            out |= table[low.bit_length() - 1]
        return out

    def arc_consistent(start: list[int], saved: list[tuple[int, int]]) -> bool:
        queue = list(start)
        queued = set(queue)
        while queue:
            u = queue.pop()
            queued.discard(u)
            du = domains[u]
            for w, table in cons[u]:
                dw = domains[w]
                nd = dw & support(du, table)
                if nd != dw:
                    saved.append((w, dw))
                    domains[w] = nd
                    if not nd:
                        return False
                    if w not in queued:
                        queued.add(w)
                        queue.append(w)
        return True

    if mac:
        initial: list[tuple[int, int]] = []
        if not arc_consistent(range(n), initial):
            stats.exhausted = True
            return None

    def rec() -> bool:
        best, best_count = -1, 1 << 30
        for v in range(n):
            if assign[v] < 0:
                c = domains[v].bit_count()
                if c < best_count:
                    best, best_count = v, c
                    if c == 1:
                        break
        if best < 0:
            return True
        v = best
        orig = domains[v]
        mask = orig
        while mask:
            low = mask & -mask
            mask ^= low
            val = low.bit_length() - 1
            stats.nodes += 1
            if budget is not None and stats.nodes > budget:
                raise BudgetExceeded(stats.nodes)
            saved = [(v, orig)]
            domains[v] = low
            if mac:
                ok = arc_consistent([v], saved)
            else:
                ok = True
                for w, table in cons[v]:
                    if assign[w] < 0:
                        dw = domains[w]
                        nd = dw & table[val]
                        if nd != dw:
                            saved.append((w, dw))
                            domains[w] = nd
                            if not nd:
                                ok = False
                                break
            if ok:
                assign[v] = val
                if rec():
                    return True
                assign[v] = -1
            for w, dw in reversed(saved):
                domains[w] = dw
        return False

    found = rec()
    stats.exhausted = not found
    return assign if found else None


def _to_hom(assign: list[int]) -> Homomorphism:
    return Homomorphism(tuple(a >> 1 for a in assign), frozenset(v for v, a in enumerate(assign) if a & 1))


def esp_hom(g: SignedGraph, h: SignedGraph, node_budget: int | None = None,
            stats: SearchStats | None = None, mac: bool = False) -> Homomorphism | None:
    """Edge-sign preserving homomorphism ``g -> h`` (no switching), or None."""
    t = _target(h)
    stats = stats if stats is not None else SearchStats()
    stats.budget = node_budget if node_budget is not None else default_budget()
    found = _solve(g, t, [t.bit0_mask] * g.n, stats, mac=mac)
    return None if found is None else _to_hom(found)


def hom(g: SignedGraph, h: SignedGraph, node_budget: int | None = None,
        stats: SearchStats | None = None, mac: bool = False) -> Homomorphism | None:
    """Switching homomorphism ``g -> h``: an edge-sign preserving map of some
    switching of ``g``.  Returns a witness with its switch set, or None.

    Switching a whole component changes nothing, so the lowest vertex of each
    component keeps switch bit 0.
    """
    t = _target(h)
    stats = stats if stats is not None else SearchStats()
    stats.budget = node_budget if node_budget is not None else default_budget()
    domains = [t.all_mask] * g.n
    for comp in connected_components(g):
        domains[comp[0]] = t.bit0_mask
    found = _solve(g, t, domains, stats, mac=mac)
    return None if found is None else _to_hom(found)


def extend_esp_hom(g: SignedGraph, h: SignedGraph, partial: Mapping[int, int],
                   switch_allowed: Iterable[int] = (), lists: Mapping[int, Iterable[int]] | None = None,
                   node_budget: int | None = None, stats: SearchStats | None = None,
                   mac: bool = False) -> Homomorphism | None:
    """Extend a precolouring ``partial`` to an edge-sign preserving map of
    ``g`` switched only at vertices of ``switch_allowed``.

    ``lists`` optionally restricts further vertices to target subsets (list
    homomorphism); precoloured vertices may not be switched.
    """
    switch_allowed = frozenset(switch_allowed)
    lists = dict(lists or {})
    for v, a in partial.items():
        if not 0 <= v < g.n or not 0 <= a < h.n:
            raise ValueError(f"partial map {v} -> {a} references an invalid vertex")
    for v in switch_allowed:
        if not 0 <= v < g.n:
            raise ValueError(f"switch_allowed has invalid vertex {v}")
        if v in partial:
            raise ValueError(f"precoloured vertex {v} cannot be switched")
    t = _target(h)
    domains = []
    for v in range(g.n):
        if v in partial:
            d = 1 << (2 * partial[v])
        else:
            d = t.all_mask if v in switch_allowed else t.bit0_mask
            if v in lists:
                allowed = 0
                for a in lists[v]:
                    if not 0 <= a < h.n:
                        raise ValueError(f"list for {v} references invalid target {a}")
                    allowed |= 0b11 << (2 * a)
                d &= allowed
        domains.append(d)
    stats = stats if stats is not None else SearchStats()
    stats.budget = node_budget if node_budget is not None else default_budget()
    found = _solve(g, t, domains, stats, mac=mac)
    return None if found is None else _to_hom(found)


# -- brute-force oracle ----------------------------------------------------

DEFAULT_ENUMERATION_BUDGET = 10**8


def _esp_tables(h: SignedGraph) -> tuple[np.ndarray, np.ndarray]:
    pos = np.zeros((h.n, h.n), dtype=bool)
    neg = np.zeros((h.n, h.n), dtype=bool)
    for _, e in h.edges():
        tab = pos if e.sign > 0 else neg
        tab[e.u, e.v] = tab[e.v, e.u] = True
    return pos, neg


def _iter_valid_maps(g: SignedGraph, h: SignedGraph, budget: int, chunk: int = 1 << 18):
    total = h.n ** g.n
    if total > budget:
        raise BudgetExceeded(total)
    if g.n == 0:
        yield np.zeros((1, 0), dtype=np.int64)
        return
    if h.n == 0:
        return
    pos, neg = _esp_tables(h)
    edges = [(e.u, e.v, e.sign) for _, e in g.edges()]
    weights = h.n ** np.arange(g.n - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        maps = (idx[:, None] // weights[None, :]) % h.n
        ok = np.ones(len(idx), dtype=bool)
        for u, v, s in edges:
            tab = pos if s > 0 else neg
            ok &= tab[maps[:, u], maps[:, v]]
        if ok.any():
            yield maps[ok]


def all_esp_homs(g: SignedGraph, h: SignedGraph, budget: int = DEFAULT_ENUMERATION_BUDGET) -> list[Homomorphism]:
    """Every edge-sign preserving map ``g -> h`` by exhaustive product enumeration."""
    out = []
    for block in _iter_valid_maps(g, h, budget):
        out.extend(Homomorphism(tuple(int(x) for x in row)) for row in block)
    return out


def esp_hom_exists_bruteforce(g: SignedGraph, h: SignedGraph, budget: int = DEFAULT_ENUMERATION_BUDGET) -> bool:
    return any(len(block) for block in _iter_valid_maps(g, h, budget))


def hom_exists_bruteforce(g: SignedGraph, h: SignedGraph, budget: int = DEFAULT_ENUMERATION_BUDGET) -> bool:
    """Try every one of the ``2**n`` switchings with the product enumerator."""
    for bits in product((0, 1), repeat=g.n):
        s = [v for v, b in enumerate(bits) if b]
        if esp_hom_exists_bruteforce(switch(g, s), h, budget):
            return True
    return False
