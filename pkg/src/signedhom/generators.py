"""Named signed graphs and seeded random instances."""
from __future__ import annotations

from itertools import combinations

import numpy as np

from .core import Sign, SignedGraph, switch

P, N = Sign.POS, Sign.NEG

RNG_ALGORITHM = "numpy.random.PCG64 (default_rng) v1"


def make_cstar(ell: int) -> SignedGraph:
    """C*_ell: an ell-cycle with an odd number of positive edges plus a
    negative loop on every vertex.

    Cycle edges ``i -- i+1`` come first (ids ``0..ell-1``), loops after.  For
    even ``ell`` the closing edge ``(ell-1, 0)`` is the negative one.
    """
    if ell < 2:
        raise ValueError("C*_ell needs ell >= 2")
    edges = [(i, i + 1, P) for i in range(ell - 1)]
    edges.append((ell - 1, 0, N if ell % 2 == 0 else P))
    edges.extend((i, i, N) for i in range(ell))
    return SignedGraph(ell, edges)


def _check_pq(p: int, q: int) -> None:
    if p <= 0 or q <= 0 or p % 2 or p < 2 * q:
        raise ValueError(f"need positive integers with p even and p >= 2q, got p={p}, q={q}")


def make_circular_clique(p: int, q: int) -> SignedGraph:
    """K^s_{p;q} on colours ``0..p-1``; ``|i-j| = 0`` gives the negative loops."""
    _check_pq(p, q)
    half = p // 2
    edges = []
    for i in range(p):
        for j in range(i, p):
            d = j - i
            if q <= d <= p - q:
                edges.append((i, j, P))
            if d <= half - q or d >= half + q:
                edges.append((i, j, N))
    return SignedGraph(p, edges)


def make_switching_core(p: int, q: int) -> SignedGraph:
    """Switch K^s_{p;q} at ``{p/2..p-1}`` and fold each vertex onto its antipode.

    Parallel edges of equal sign produced by the folding are merged.
    """
    _check_pq(p, q)
    half = p // 2
    k = switch(make_circular_clique(p, q), range(half, p))
    seen = set()
    edges = []
    for _, e in k.edges():
        a, b = e.u % half, e.v % half
        key = (min(a, b), max(a, b), e.sign)
        if key not in seen:
            seen.add(key)
            edges.append(key)
    edges.sort(key=lambda t: (t[0], t[1], -t[2]))
    return SignedGraph(half, edges)


def make_W() -> SignedGraph:
    """The 5-vertex, 7-edge C*_3-critical graph; ``v1 v4`` is the only negative edge."""
    return SignedGraph(5, [
        (2, 3, P), (3, 1, P), (1, 0, P), (2, 0, P), (3, 0, P), (2, 4, P), (1, 4, N),
    ])


def make_Sk(k: int) -> SignedGraph:
    """Negative k-cycle ``0..k-1`` with an apex ``k+i`` on each cycle edge ``(i, i+1)``.

    The cycle edge ``(k-1, 0)`` and the apex edge ``(2k-1, 0)`` are the two
    negative edges, so every triangle is positive and the k-cycle is negative.
    """
    if k < 3:
        raise ValueError("S_k needs k >= 3")
    edges = []
    for i in range(k):
        j = (i + 1) % k
        last = i == k - 1
        edges.append((i, j, N if last else P))
    for i in range(k):
        j = (i + 1) % k
        last = i == k - 1
        edges.append((k + i, i, P))
        edges.append((k + i, j, N if last else P))
    return SignedGraph(2 * k, edges)


def make_petersen() -> SignedGraph:
    """Petersen graph with outer cycle ``v1..v5`` (ids 0-4), spokes ``v_i u_i``
    and inner pentagram ``u1 u3 u5 u2 u4`` (ids 5-9); only the inner cycle is negative."""
    outer = [(i, (i + 1) % 5, P) for i in range(5)]
    spokes = [(i, i + 5, P) for i in range(5)]
    order = [0, 2, 4, 1, 3]
    inner = [(5 + order[i], 5 + order[(i + 1) % 5], N) for i in range(5)]
    return SignedGraph(10, outer + spokes + inner)


def make_cycle(k: int, negative: int = 0) -> SignedGraph:
    """k-cycle whose first ``negative`` edges are negative (k = 2 gives a digon pair)."""
    return SignedGraph(k, [(i, (i + 1) % k, N if i < negative else P) for i in range(k)])


def make_path(signs) -> SignedGraph:
    signs = list(signs)
    return SignedGraph(len(signs) + 1, [(i, i + 1, s) for i, s in enumerate(signs)])


def make_complete(n: int, sign: int = P) -> SignedGraph:
    return SignedGraph(n, [(i, j, sign) for i, j in combinations(range(n), 2)])


def random_signed_graph(n: int, m: int, seed: int, simple: bool = True) -> SignedGraph:
    """Uniform edge choice followed by independent fair signs.

    ``simple=True`` draws ``m`` distinct pairs without replacement; otherwise
    each edge is an independent uniform pair ``(u, v)`` with ``u <= v`` allowed
    to repeat, loops included.  Deterministic for a fixed seed
    (see :data:`RNG_ALGORITHM`).
    """
    if n < 0 or m < 0:
        raise ValueError("n and m must be non-negative")
    rng = np.random.default_rng(seed)
    if simple:
        pairs = list(combinations(range(n), 2))
        if m > len(pairs):
            raise ValueError(f"a simple graph on {n} vertices has at most {len(pairs)} edges, asked for {m}")
        idx = sorted(rng.choice(len(pairs), size=m, replace=False).tolist()) if m else []
        chosen = [pairs[i] for i in idx]
    else:
        if n == 0 and m > 0:
            raise ValueError("cannot place edges on zero vertices")
        chosen = []
        for _ in range(m):
            a, b = rng.integers(0, n, size=2).tolist()
            chosen.append((min(a, b), max(a, b)))
    flips = rng.integers(0, 2, size=m).tolist() if m else []
    return SignedGraph(n, [(u, v, N if f else P) for (u, v), f in zip(chosen, flips)])

