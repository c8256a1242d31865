import networkx as nx
import pytest

from oracles import switching_isomorphic
from signedhom.core import Sign, cycle_sign, delete_edge, potential, signed_girths
from signedhom.generators import (
    make_circular_clique, make_complete, make_cstar, make_cycle, make_path, make_petersen, make_Sk,
    make_switching_core, make_W, random_signed_graph,
)
from signedhom.structure import triangles


def _adjacent(g, u, v, sign):
    return any({e.u, e.v} == {u, v} and e.sign == sign for e in g.edge_list())


def test_cstar3_shape():
    g = make_cstar(3)
    assert g.n == 3 and g.m == 6
    assert sorted(int(e.sign) for e in g.edge_list() if not e.is_loop) == [1, 1, 1]
    assert [e.u for e in g.edge_list() if e.is_loop and e.sign < 0] == [0, 1, 2]


def test_cstar2_has_digon_and_loops():
    g = make_cstar(2)
    between = sorted(int(e.sign) for e in g.edge_list() if not e.is_loop)
    assert between == [-1, 1]
    assert sum(1 for e in g.edge_list() if e.is_loop and e.sign < 0) == 2


@pytest.mark.parametrize("ell", range(2, 8))
def test_cstar_cycle_has_odd_number_of_positive_edges(ell):
    g = make_cstar(ell)
    pos = sum(1 for e in g.edge_list() if not e.is_loop and e.sign > 0)
    assert pos % 2 == 1


def test_cstar_rejects_small():
    with pytest.raises(ValueError):
        make_cstar(1)


def test_clique_6_2_loops_and_neighbours():
    k = make_circular_clique(6, 2)
    for v in range(6):
        assert _adjacent(k, v, v, Sign.NEG)
    pos = {x for x in range(6) if _adjacent(k, 0, x, Sign.POS)}
    neg = {x for x in range(6) if _adjacent(k, 0, x, Sign.NEG)}
    assert pos == {2, 3, 4} and neg == {0, 1, 5}


@pytest.mark.parametrize("p,q", [(p, q) for p in range(2, 15, 2) for q in range(1, p // 2 + 1)])
def test_clique_digon_iff_ratio_at_least_4(p, q):
    k = make_circular_clique(p, q)
    has_digon = any(_adjacent(k, 0, x, Sign.POS) and _adjacent(k, 0, x, Sign.NEG) for x in range(1, p))
    assert has_digon == (p >= 4 * q)


@pytest.mark.parametrize("p,q", [(6, 2), (8, 3), (10, 3), (10, 4), (12, 5), (20, 6)])
def test_clique_antipode_complement(p, q):
    # negative neighbours of i are the positive neighbours shifted by p/2
    k = make_circular_clique(p, q)
    half = p // 2
    for i in range(p):
        for j in range(p):
            assert _adjacent(k, i, j, Sign.NEG) == _adjacent(k, i, (j + half) % p, Sign.POS)


@pytest.mark.parametrize("p,q", [(3, 1), (4, 3), (0, 1), (6, 0)])
def test_clique_rejects_bad_parameters(p, q):
    with pytest.raises(ValueError):
        make_circular_clique(p, q)
    with pytest.raises(ValueError):
        make_switching_core(p, q)


@pytest.mark.parametrize("ell", range(2, 7))
def test_core_matches_cstar(ell):
    assert switching_isomorphic(make_switching_core(2 * ell, ell - 1), make_cstar(ell))


def test_core_vertex_count():
    assert make_switching_core(10, 3).n == 5


def test_W_shape():
    w = make_W()
    assert (w.n, w.m) == (5, 7)
    assert [eid for eid, e in w.edges() if e.sign < 0] == [6]
    assert potential(w) == 1


@pytest.mark.parametrize("k", range(3, 9))
def test_Sk_structure(k):
    g = make_Sk(k)
    assert g.n == 2 * k and 2 * g.m == 3 * g.n
    # for k = 3 the base cycle is itself a (negative) triangle
    tris = [t for t in triangles(g) if max(t) >= k]
    assert len(tris) == k
    ids = {}
    for eid, e in g.edges():
        ids[frozenset((e.u, e.v))] = eid
    for a, b, c in tris:
        assert cycle_sign(g, [ids[frozenset(p)] for p in ((a, b), (b, c), (a, c))]) == Sign.POS
    cyc = [ids[frozenset((i, (i + 1) % k))] for i in range(k)]
    assert cycle_sign(g, cyc) == Sign.NEG
    negs = [e for e in g.edge_list() if e.sign < 0]
    assert len(negs) == 2
    assert any(set(t) >= {negs[0].u, negs[0].v, negs[1].u, negs[1].v} for t in tris)


def test_Sk_rejects_small():
    with pytest.raises(ValueError):
        make_Sk(2)


def test_petersen_shape():
    g = make_petersen()
    assert (g.n, g.m) == (10, 15)
    und = nx.Graph([(e.u, e.v) for e in g.edge_list()])
    assert nx.is_isomorphic(und, nx.petersen_graph())
    assert sorted(eid for eid, e in g.edges() if e.sign < 0) == [10, 11, 12, 13, 14]
    assert cycle_sign(g, [10, 11, 12, 13, 14]) == Sign.NEG
    assert signed_girths(g).odd_pos == 5


def test_petersen_minus_edge_potential():
    g = make_petersen()
    assert potential(g) == 0
    assert all(potential(delete_edge(g, eid)) == 2 for eid in g.edge_ids())


def test_cycle_and_path_helpers():
    assert make_cycle(2, negative=1).signs() == (Sign.NEG, Sign.POS)
    assert make_path([1, -1]).m == 2
    assert make_complete(5).m == 10


def test_random_edgeless_and_deterministic():
    assert random_signed_graph(6, 0, seed=3).m == 0
    assert random_signed_graph(8, 12, seed=7) == random_signed_graph(8, 12, seed=7)
    assert random_signed_graph(8, 12, seed=7, simple=False) == random_signed_graph(8, 12, seed=7, simple=False)


def test_random_simple_and_multi():
    for seed in range(30):
        g = random_signed_graph(7, 15, seed)
        assert g.is_simple() and g.m == 15
    multi = [random_signed_graph(3, 9, s, simple=False) for s in range(10)]
    assert any(not g.is_simple() for g in multi)


def test_random_signs_are_mixed():
    signs = [int(s) for seed in range(20) for s in random_signed_graph(8, 12, seed).signs()]
    assert 80 < signs.count(1) < 160


def test_random_infeasible():
    with pytest.raises(ValueError):
        random_signed_graph(4, 7, seed=0)
    with pytest.raises(ValueError):
        random_signed_graph(0, 1, seed=0, simple=False)
