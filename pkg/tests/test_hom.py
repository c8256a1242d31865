import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import signed_graphs
from signedhom.core import SignedGraph, delete_edge, signed_girths, switch
from signedhom.generators import (
    make_circular_clique, make_complete, make_cstar, make_path, make_petersen, make_switching_core, make_W,
    random_signed_graph,
)
from signedhom.hom import (
    BudgetExceeded, Homomorphism, SearchStats, all_esp_homs, check_homomorphism, default_budget, esp_hom,
    esp_hom_exists_bruteforce, extend_esp_hom, hom, hom_exists_bruteforce,
)

C3 = make_cstar(3)
TARGETS = [make_cstar(2), C3, make_cstar(4), make_circular_clique(6, 2), make_switching_core(10, 3)]


@st.composite
def theta_graphs(draw):
    """Three internally disjoint x-y paths; at most one of them is a single edge."""
    lengths = sorted(draw(st.lists(st.integers(1, 4), min_size=3, max_size=3)))
    lengths = lengths[:1] + [max(2, x) for x in lengths[1:]]
    n, edges = 2, []
    for length in lengths:
        prev = 0
        for step in range(length):
            nxt = 1 if step == length - 1 else n
            if nxt == n:
                n += 1
            edges.append((prev, nxt, draw(st.sampled_from((1, -1)))))
            prev = nxt
    return SignedGraph(n, edges)


def test_all_esp_homs_counts():
    assert len(all_esp_homs(SignedGraph(1), C3)) == 3
    assert len(all_esp_homs(make_complete(2), C3)) == 6
    assert len(all_esp_homs(make_complete(2, sign=-1), C3)) == 3


def test_all_esp_homs_are_valid():
    g = make_path([1, -1, 1])
    maps = all_esp_homs(g, C3)
    assert maps and all(check_homomorphism(g, C3, h) for h in maps)
    assert len(set(maps)) == len(maps)


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        all_esp_homs(SignedGraph(12), C3, budget=1000)


def test_esp_examples():
    tri = make_complete(3)
    h = esp_hom(tri, C3)
    assert h is not None and sorted(h.mapping) == [0, 1, 2] and h.switch_set == frozenset()
    one_neg = SignedGraph(3, [(0, 1, 1), (1, 2, 1), (2, 0, -1)])
    h = esp_hom(one_neg, C3)
    assert h is not None and h.mapping[0] == h.mapping[2]
    assert esp_hom(make_W(), C3) is None


def test_W_and_subgraphs():
    w = make_W()
    assert hom(w, C3) is None
    for eid in w.edge_ids():
        sub = delete_edge(w, eid)
        h = hom(sub, C3)
        assert h is not None and check_homomorphism(sub, C3, h)


def test_petersen():
    p = make_petersen()
    assert hom(p, C3) is None
    assert all(hom(delete_edge(p, eid), C3) is not None for eid in p.edge_ids())


def test_random_8_12_7_matches_bruteforce():
    g = random_signed_graph(8, 12, seed=7)
    for target in (make_cstar(2), C3):
        assert (hom(g, target) is not None) == hom_exists_bruteforce(g, target)
        assert (esp_hom(g, target) is not None) == esp_hom_exists_bruteforce(g, target)


@given(signed_graphs(max_n=5, max_m=8), st.sampled_from(range(len(TARGETS))))
def test_esp_agrees_with_bruteforce(g, ti):
    t = TARGETS[ti]
    found = esp_hom(g, t)
    assert (found is not None) == esp_hom_exists_bruteforce(g, t)
    if found is not None:
        assert check_homomorphism(g, t, found) and found.switch_set == frozenset()


@given(signed_graphs(max_n=5, max_m=8), st.sampled_from(range(3)))
def test_hom_agrees_with_bruteforce(g, ti):
    t = TARGETS[ti]
    found = hom(g, t)
    assert (found is not None) == hom_exists_bruteforce(g, t)
    if found is not None:
        assert check_homomorphism(g, t, found)


@given(signed_graphs(max_n=6, max_m=10), st.sampled_from(range(len(TARGETS))))
def test_mac_and_forward_checking_agree(g, ti):
    t = TARGETS[ti]
    assert (esp_hom(g, t) is None) == (esp_hom(g, t, mac=True) is None)
    assert (hom(g, t) is None) == (hom(g, t, mac=True) is None)


@given(signed_graphs(max_n=6, max_m=10), st.sets(st.integers(0, 5)))
def test_switching_invariance(g, s):
    s = {v for v in s if v < g.n}
    assert (hom(g, C3) is None) == (hom(switch(g, s), C3) is None)


@given(signed_graphs(max_n=6, max_m=10))
def test_girth_necessity(g):
    if hom(g, C3) is not None:
        mine, theirs = signed_girths(g).as_dict(), signed_girths(C3).as_dict()
        assert all(mine[k] >= theirs[k] for k in mine)


@given(signed_graphs(max_n=6, max_m=10))
def test_subgraph_monotonicity(g):
    if hom(g, C3) is not None:
        for eid in g.edge_ids():
            assert hom(delete_edge(g, eid), C3) is not None


@given(theta_graphs())
def test_theta_graphs_map_to_cstar3(g):
    h = hom(g, C3)
    assert h is not None and check_homomorphism(g, C3, h)


def test_extend_examples():
    pos = make_complete(2)
    assert extend_esp_hom(pos, C3, {0: 0, 1: 0}) is None
    neg = make_complete(2, sign=-1)
    assert extend_esp_hom(neg, C3, {0: 0, 1: 1}) is None
    path = make_path([1, 1])
    h = extend_esp_hom(path, C3, {0: 0, 2: 0}, switch_allowed={1})
    assert h is not None and check_homomorphism(path, C3, h)
    assert h.mapping[0] == h.mapping[2] == 0
    # even without switching the middle vertex has somewhere to go
    h = extend_esp_hom(path, C3, {0: 0, 2: 0})
    assert h is not None and h.mapping[1] != 0


def test_extend_lists_and_errors():
    path = make_path([1, 1])
    assert extend_esp_hom(path, C3, {0: 0}, lists={1: [0], 2: [1, 2]}) is None
    h = extend_esp_hom(path, C3, {0: 0}, lists={1: [1]})
    assert h.mapping[:2] == (0, 1)
    with pytest.raises(ValueError):
        extend_esp_hom(path, C3, {0: 7})
    with pytest.raises(ValueError):
        extend_esp_hom(path, C3, {0: 0}, switch_allowed={0})
    with pytest.raises(ValueError):
        extend_esp_hom(path, C3, {}, lists={1: [9]})


def test_node_budget():
    stats = SearchStats()
    with pytest.raises(BudgetExceeded):
        hom(make_petersen(), C3, node_budget=5, stats=stats)
    stats = SearchStats()
    assert hom(make_petersen(), C3, stats=stats) is None
    assert stats.exhausted and stats.nodes > 5


def test_default_budget_from_env(monkeypatch):
    monkeypatch.delenv("SIGNEDHOM_BUDGET", raising=False)
    assert default_budget() is None
    monkeypatch.setenv("SIGNEDHOM_BUDGET", "3")
    assert default_budget() == 3
    with pytest.raises(BudgetExceeded):
        hom(make_petersen(), C3)


def test_check_homomorphism_rejects_garbage():
    k2 = make_complete(2)
    assert not check_homomorphism(k2, C3, Homomorphism((0,)))
    assert not check_homomorphism(k2, C3, Homomorphism((0, 5)))
    assert not check_homomorphism(k2, C3, Homomorphism((0, 0)))
    assert check_homomorphism(k2, C3, Homomorphism((0, 0), frozenset({1})))
    assert Homomorphism((0, 1), frozenset({1})).to_json() == {"mapping": [0, 1], "switch_set": [1]}


def test_positive_loop_never_maps_to_cstar():
    g = SignedGraph(1, [(0, 0, 1)])
    assert hom(g, C3) is None and not hom_exists_bruteforce(g, C3)


def test_edgeless_and_empty():
    assert hom(SignedGraph(0), C3) is not None
    assert hom(SignedGraph(4), C3).mapping == (0, 0, 0, 0)
