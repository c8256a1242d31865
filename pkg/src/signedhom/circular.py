"""Circular p/q-colourings of signed graphs and the circular chromatic number."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import SignedGraph, connected_components
from .generators import _check_pq, make_circular_clique
from .hom import SearchStats, extend_esp_hom

Rational = Fraction


@dataclass(frozen=True)
class CircularColoring:
    p: int
    q: int
    phi: tuple[int, ...]


class NotColorableError(ValueError):
    """No candidate p/q in the sweep admits a colouring."""


def check_circular_coloring(g: SignedGraph, c: CircularColoring) -> bool:
    _check_pq(c.p, c.q)
    if len(c.phi) != g.n or any(not 0 <= x < c.p for x in c.phi):
        raise ValueError("colouring must give every vertex a colour in 0..p-1")
    half = c.p // 2
    for _, e in g.edges():
        d = abs(c.phi[e.u] - c.phi[e.v])
        if e.sign > 0:
            if not c.q <= d <= c.p - c.q:
                return False
        elif not (d <= half - c.q or d >= half + c.q):
            return False
    return True


def find_circular_coloring(g: SignedGraph, p: int, q: int, node_budget: int | None = None,
                           stats: SearchStats | None = None) -> CircularColoring | None:
    """A p/q-colouring is exactly an edge-sign preserving map into K^s_{p;q}.

    Rotating all colours of a component keeps a colouring valid, so the
    lowest vertex of each component is pinned to colour 0.
    """
    _check_pq(p, q)
    pins = {comp[0]: 0 for comp in connected_components(g)}
    found = extend_esp_hom(g, make_circular_clique(p, q), pins, node_budget=node_budget, stats=stats, mac=True)
    return None if found is None else CircularColoring(p, q, found.mapping)


def candidates(max_value: Fraction, denominator_bound: int) -> list[tuple[int, int]]:
    """Pairs ``(p, q)`` with p even, ``2 <= p/q <= max_value`` and q at most the
    bound, one per value (smallest q), sorted by value then p."""
    best: dict[Fraction, tuple[int, int]] = {}
    for q in range(1, denominator_bound + 1):
        p = 2 * q
        while Fraction(p, q) <= max_value:
            r = Fraction(p, q)
            if r not in best:
                best[r] = (p, q)
            p += 2
    return [best[r] for r in sorted(best)]


@dataclass(frozen=True)
class ChromaticResult:
    value: Fraction
    p: int
    q: int
    witness: CircularColoring | None
    denominator_bound: int
    # (p, q, search nodes) for every smaller candidate proven uncolourable
    failures: tuple[tuple[int, int, int], ...] = field(default=())
    convention: str | None = None

    def __str__(self) -> str:
        if self.convention == "edgeless":
            return "2/2"
        return str(self.value)


def _probe(args):
    g, p, q, budget = args
    stats = SearchStats()
    c = find_circular_coloring(g, p, q, node_budget=budget, stats=stats)
    return p, q, c, stats.nodes


def circular_chromatic_number(g: SignedGraph, denominator_bound: int | None = None,
                              node_budget: int | None = None, workers: int = 1) -> ChromaticResult:
    """Smallest p/q (p even, q <= bound) admitting a circular colouring.

    Candidates are swept in increasing order of value; the first colourable
    one is the answer.  Every loopless signed graph on n vertices is
    2n/1-colourable, so the sweep stops at 2n.  Edgeless graphs follow the
    reporting convention chi_c = 1, printed ``2/2``.
    """
    if g.m == 0:
        phi = (0,) * g.n
        return ChromaticResult(Fraction(1), 2, 1, CircularColoring(2, 1, phi), denominator_bound or max(g.n, 1),
                               convention="edgeless")
    bound = denominator_bound if denominator_bound is not None else max(g.n, 1)
    if bound < 1:
        raise ValueError("denominator bound must be positive")
    cands = candidates(Fraction(2 * max(g.n, 1)), bound)
    failures: list[tuple[int, int, int]] = []

    def finish(p, q, c):
        return ChromaticResult(Fraction(p, q), p, q, c, bound, tuple(failures))

    if workers <= 1:
        for p, q in cands:
            _, _, c, nodes = _probe((g, p, q, node_budget))
            if c is not None:
                return finish(p, q, c)
            failures.append((p, q, nodes))
    else:
        # ascending batches; within a batch the smallest success wins
        batch = 2 * workers
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for start in range(0, len(cands), batch):
                chunk = cands[start:start + batch]
                results = list(pool.map(_probe, [(g, p, q, node_budget) for p, q in chunk]))
                for p, q, c, nodes in results:
                    if c is not None:
                        return finish(p, q, c)
                    failures.append((p, q, nodes))
    raise NotColorableError(f"no p/q with q <= {bound} and p/q <= {2 * g.n} admits a colouring")


def is_colorable_at(g: SignedGraph, value: Fraction | Sequence[int], node_budget: int | None = None) -> bool:
    """Convenience wrapper taking a ratio; odd numerators are doubled."""
    r = Fraction(*value) if isinstance(value, (tuple, list)) else Fraction(value)
    p, q = r.numerator, r.denominator
    if p % 2:
        p, q = 2 * p, 2 * q
    return find_circular_coloring(g, p, q, node_budget=node_budget) is not None
