"""Signed multigraphs, switching, signed girths and the ``.sg`` text format.

A :class:`SignedGraph` is an immutable multigraph on vertices ``0..n-1`` whose
edges carry a sign in ``{+1, -1}``.  Loops and parallel edges are allowed.
Edge ids are stable: deleting an edge or a vertex never renumbers surviving
edges, so reports can refer to edges of the original input.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

INF = math.inf


class Sign(IntEnum):
    POS = 1
    NEG = -1

    def __str__(self) -> str:
        return "+" if self is Sign.POS else "-"

    @classmethod
    def parse(cls, token: str) -> "Sign":
        if token == "+":
            return cls.POS
        if token == "-":
            return cls.NEG
        raise ValueError(f"bad sign token {token!r}")

    @staticmethod
    def product(signs: Iterable[int]) -> "Sign":
        neg = sum(1 for s in signs if s < 0)
        return Sign.NEG if neg % 2 else Sign.POS


class Edge(NamedTuple):
    u: int
    v: int
    sign: Sign

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


class SignedGraph:
    """Immutable signed multigraph with stable edge ids.

    ``edges`` may be a sequence of ``(u, v, sign)`` triples (ids become
    ``0..m-1``) or a mapping ``id -> (u, v, sign)``.
    """

    __slots__ = ("n", "_edges", "_adj")

    def __init__(self, n: int, edges: Iterable | Mapping = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        items = edges.items() if isinstance(edges, Mapping) else enumerate(edges)
        table: dict[int, Edge] = {}
        adj: list[list[int]] = [[] for _ in range(n)]
        for eid, (u, v, s) in sorted(items):
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {eid} endpoint out of range for n={n}: {u} {v}")
            s = Sign(int(s))
            table[eid] = Edge(u, v, s)
            adj[u].append(eid)
            if v != u:
                adj[v].append(eid)
        self.n = n
        self._edges = table
        self._adj = tuple(tuple(a) for a in adj)

    # -- basic queries -------------------------------------------------
    @property
    def m(self) -> int:
        return len(self._edges)

    def edge_ids(self) -> tuple[int, ...]:
        return tuple(self._edges)

    def edge(self, eid: int) -> Edge:
        try:
            return self._edges[eid]
        except KeyError:
            raise KeyError(f"no edge with id {eid}") from None

    def edges(self) -> Iterator[tuple[int, Edge]]:
        """Yield ``(edge id, Edge)`` in id order."""
        return iter(self._edges.items())

    def edge_list(self) -> list[Edge]:
        return list(self._edges.values())

    def signs(self) -> tuple[Sign, ...]:
        return tuple(e.sign for e in self._edges.values())

    def incident(self, v: int) -> tuple[int, ...]:
        """Edge ids incident to ``v``; a loop is listed once."""
        return self._adj[v]

    def degree(self, v: int) -> int:
        return sum(2 if self._edges[e].is_loop else 1 for e in self._adj[v])

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.n)]

    def neighbors(self, v: int) -> list[int]:
        """Non-loop neighbours of ``v`` with multiplicity."""
        out = []
        for eid in self._adj[v]:
            e = self._edges[eid]
            if not e.is_loop:
                out.append(e.other(v))
        return out

    def has_loops(self) -> bool:
        return any(e.is_loop for e in self._edges.values())

    def is_simple(self) -> bool:
        seen = set()
        for e in self._edges.values():
            if e.is_loop:
                return False
            key = (min(e.u, e.v), max(e.u, e.v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def with_signs(self, signs: Sequence[int]) -> "SignedGraph":
        """Same underlying graph, signs replaced in edge-id order."""
        if len(signs) != self.m:
            raise ValueError(f"expected {self.m} signs, got {len(signs)}")
        return SignedGraph(self.n, {eid: (e.u, e.v, s) for (eid, e), s in zip(self._edges.items(), signs)})

    def check_invariants(self) -> None:
        """Rebuild the adjacency index from the edge table and compare."""
        rebuilt = SignedGraph(self.n, dict(self._edges))
        if rebuilt._adj != self._adj:
            raise AssertionError("adjacency index out of sync with edge list")

    # -- dunder --------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        # ids are bookkeeping; equality is on the ordered edge sequence
        if not isinstance(other, SignedGraph):
            return NotImplemented
        return self.n == other.n and tuple(self._edges.values()) == tuple(other._edges.values())

    def __hash__(self) -> int:
        return hash((self.n, tuple(self._edges.values())))

    def __repr__(self) -> str:
        body = ", ".join(f"{e.u}{str(e.sign)}{e.v}" for e in self._edges.values())
        return f"SignedGraph(n={self.n}, [{body}])"

    def __reduce__(self):
        return (SignedGraph, (self.n, dict(self._edges)))


SwitchSet = frozenset


class DegreeClass(NamedTuple):
    """A ``k_l``-vertex: degree ``k`` with ``l`` neighbours of degree 2."""

    degree: int
    two_neighbors: int

    def __str__(self) -> str:
        return f"{self.degree}_{self.two_neighbors}"


@dataclass(frozen=True)
class GirthTable:
    """Shortest closed-walk length per (length parity, walk sign); ``inf`` if none."""

    even_pos: float
    even_neg: float
    odd_pos: float
    odd_neg: float

    def __getitem__(self, key: tuple) -> float:
        """Index by ``(parity, sign)``: parity is ``"even"``/``"odd"`` or 0/1,
        sign is ``"+"``/``"-"`` or +1/-1."""
        parity, sign = key
        if not isinstance(parity, str):
            parity = "odd" if parity % 2 else "even"
        sign = int(Sign.parse(sign)) if isinstance(sign, str) else int(sign)
        name = f"{parity}_{'pos' if sign > 0 else 'neg'}"
        return getattr(self, name)

    def as_dict(self) -> dict[str, float]:
        return {"odd+": self.odd_pos, "even-": self.even_neg, "odd-": self.odd_neg, "even+": self.even_pos}


# -- switching -----------------------------------------------------------

def switch(g: SignedGraph, s: Iterable[int]) -> SignedGraph:
    """Negate every non-loop edge with exactly one endpoint in ``s``."""
    s = frozenset(s)
    bad = [v for v in s if not 0 <= v < g.n]
    if bad:
        raise ValueError(f"switch set has invalid vertices {sorted(bad)}")
    new = {}
    for eid, e in g.edges():
        sign = e.sign
        if (e.u in s) != (e.v in s):
            sign = Sign(-sign)
        new[eid] = (e.u, e.v, sign)
    return SignedGraph(g.n, new)


def is_switching_equivalent(g: SignedGraph, sigma2: Sequence[int]) -> frozenset | None:
    """Return a switch set turning the signs of ``g`` into ``sigma2``, or None.

    The edges where the two signatures disagree must form an edge cut; we
    2-colour each component with "disagree" meaning "opposite sides".
    """
    if len(sigma2) != g.m:
        raise ValueError(f"expected {g.m} signs, got {len(sigma2)}")
    differ = {}
    for (eid, e), s2 in zip(g.edges(), sigma2):
        d = int(e.sign) != int(s2)
        if d and e.is_loop:
            return None
        differ[eid] = d
    side = [-1] * g.n
    for root in range(g.n):
        if side[root] >= 0:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for eid in g.incident(x):
                e = g.edge(eid)
                if e.is_loop:
                    continue
                y = e.other(x)
                want = side[x] ^ differ[eid]
                if side[y] < 0:
                    side[y] = want
                    queue.append(y)
                elif side[y] != want:
                    return None
    return frozenset(v for v in range(g.n) if side[v] == 1)


def cycle_sign(g: SignedGraph, edge_ids: Iterable[int]) -> Sign:
    return Sign.product(g.edge(e).sign for e in edge_ids)


# -- girths, potential, degree classes --------------------------------------

def signed_girths(g: SignedGraph) -> GirthTable:
    """Shortest closed walks of each type via BFS on vertex x parity x sign."""
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for _, e in g.edges():
        neg = 1 if e.sign < 0 else 0
        nbrs[e.u].append((e.v, neg))
        if not e.is_loop:
            nbrs[e.v].append((e.u, neg))
    best = [INF] * 4  # index = parity * 2 + negbit
    for start in range(g.n):
        dist = [-1] * (4 * g.n)
        queue: deque[int] = deque()
        for w, neg in nbrs[start]:
            st = 4 * w + 2 + neg
            if dist[st] < 0:
                dist[st] = 1
                queue.append(st)
        while queue:
            st = queue.popleft()
            x, par, neg0 = st >> 2, (st >> 1) & 1, st & 1
            for w, neg in nbrs[x]:
                nxt = 4 * w + ((par ^ 1) << 1) + (neg0 ^ neg)
                if dist[nxt] < 0:
                    dist[nxt] = dist[st] + 1
                    queue.append(nxt)
        for k in range(4):
            d = dist[4 * start + k]
            if d > 0 and d < best[k]:
                best[k] = d
    return GirthTable(even_pos=best[0], even_neg=best[1], odd_pos=best[2], odd_neg=best[3])


def potential(g: SignedGraph) -> int:
    return 3 * g.n - 2 * g.m


def classify_vertex(g: SignedGraph, v: int, degrees: Sequence[int] | None = None) -> DegreeClass:
    """Degree (loops count twice) and the number of incident non-loop edges
    leading to a vertex of degree exactly 2."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    deg = degrees if degrees is not None else g.degrees()
    ell = 0
    for eid in g.incident(v):
        e = g.edge(eid)
        if not e.is_loop and deg[e.other(v)] == 2:
            ell += 1
    return DegreeClass(deg[v], ell)


def degree_classes(g: SignedGraph) -> list[DegreeClass]:
    deg = g.degrees()
    return [classify_vertex(g, v, deg) for v in range(g.n)]


# -- graph surgery ---------------------------------------------------------

def delete_edge(g: SignedGraph, eid: int) -> SignedGraph:
    g.edge(eid)
    return SignedGraph(g.n, {i: e for i, e in g.edges() if i != eid})


def delete_vertex(g: SignedGraph, v: int) -> SignedGraph:
    """Remove ``v`` and its edges; vertices above ``v`` shift down by one."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    shift = lambda x: x - 1 if x > v else x  # noqa: E731
    kept = {i: (shift(e.u), shift(e.v), e.sign) for i, e in g.edges() if v not in (e.u, e.v)}
    return SignedGraph(g.n - 1, kept)


def delete_vertices(g: SignedGraph, vs: Iterable[int]) -> SignedGraph:
    for v in sorted(set(vs), reverse=True):
        g = delete_vertex(g, v)
    return g


def identify_vertices(g: SignedGraph, u: int, v: int) -> SignedGraph:
    """Merge ``v`` into ``u``.  An edge ``uv`` becomes a loop.  Parallel edges
    of equal sign created by the merge collapse to the lowest id; edges of
    distinct signs are kept."""
    for x in (u, v):
        if not 0 <= x < g.n:
            raise ValueError(f"vertex {x} out of range")
    if u == v:
        return g
    shift = lambda x: x - 1 if x > v else x  # noqa: E731
    target = shift(u)
    seen = set()
    out = {}
    for eid, e in g.edges():
        a = target if e.u in (u, v) else shift(e.u)
        b = target if e.v in (u, v) else shift(e.v)
        if target in (a, b):
            key = (min(a, b), max(a, b), e.sign)
            if key in seen:
                continue
            seen.add(key)
        out[eid] = (a, b, e.sign)
    return SignedGraph(g.n - 1, out)


def connected_components(g: SignedGraph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        comp, stack = [], [root]
        while stack:
            x = stack.pop()
            comp.append(x)
            for w in g.neighbors(x):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: SignedGraph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


# -- .sg format ------------------------------------------------------------

class SgParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_sg(text: str) -> SignedGraph:
    """Parse a ``.sg`` document: ``#`` comments, header ``sg <n> <m>``, then
    ``m`` lines ``<u> <v> <+|->``."""
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[0] != "sg":
                raise SgParseError(f"malformed header {line!r}, expected 'sg <n> <m>'", lineno)
            try:
                n, m = int(parts[1]), int(parts[2])
            except ValueError:
                raise SgParseError(f"malformed header {line!r}", lineno) from None
            if n < 0 or m < 0:
                raise SgParseError("negative counts in header", lineno)
            header = (n, m)
            continue
        if len(parts) != 3:
            raise SgParseError(f"expected '<u> <v> <sign>', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise SgParseError(f"bad endpoint in {line!r}", lineno) from None
        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise SgParseError(f"endpoint out of range for n={n}: {line!r}", lineno)
        try:
            s = Sign.parse(parts[2])
        except ValueError:
            raise SgParseError(f"bad sign token {parts[2]!r}", lineno) from None
        edges.append((u, v, s))
    if header is None:
        raise SgParseError("missing header", 0)
    if len(edges) != header[1]:
        raise SgParseError(f"header announces {header[1]} edges, found {len(edges)}", lineno if text else 0)
    return SignedGraph(header[0], edges)


def serialize_sg(g: SignedGraph, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"sg {g.n} {g.m}")
    lines.extend(f"{e.u} {e.v} {e.sign}" for _, e in g.edges())
    return "\n".join(lines) + "\n"
