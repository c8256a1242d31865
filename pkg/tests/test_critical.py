import json

import pytest
from hypothesis import given

from conftest import signed_graphs
from oracles import girths_by_walk_matrices
from signedhom.core import SignedGraph, delete_edge, potential
from signedhom.critical import density_check, girth_dominates, is_critical, potential_check
from signedhom.generators import make_complete, make_cstar, make_cycle, make_petersen, make_Sk, make_W
from signedhom.hom import check_homomorphism, hom_exists_bruteforce

C3 = make_cstar(3)


def test_girth_dominates_examples():
    assert girth_dominates(make_W(), C3).ok
    digon = girth_dominates(make_cycle(2, negative=1), C3)
    assert not digon.ok and (0, -1) in digon.violations
    loop = girth_dominates(SignedGraph(1, [(0, 0, 1)]), C3)
    assert not loop.ok and (1, 1) in loop.violations
    assert loop.to_json()["violations"] == ["odd+"]
    assert loop.to_json()["source"]["even-"] is None


def test_W_is_critical():
    r = is_critical(make_W(), C3)
    assert r.verdict == "critical" and r.is_critical
    assert sorted(r.witnesses) == list(make_W().edge_ids())
    for eid, w in r.witnesses.items():
        assert check_homomorphism(delete_edge(make_W(), eid), C3, w)
    assert r.refutation_nodes > 0


def test_petersen_is_critical():
    assert is_critical(make_petersen(), C3).verdict == "critical"


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_Sk_is_critical(k):
    assert is_critical(make_Sk(k), C3).verdict == "critical"


def test_other_verdicts():
    r = is_critical(make_complete(3), C3)
    assert r.verdict == "maps" and check_homomorphism(make_complete(3), C3, r.witness)
    assert is_critical(make_cycle(2, negative=1), C3).verdict == "girth_violation"
    w_plus = SignedGraph(6, [(a, b, s) for _, (a, b, s) in make_W().edges()])
    r = is_critical(w_plus, C3)
    assert r.verdict == "non_minimal" and r.isolated == (5,)
    w_pendant = SignedGraph(6, [(a, b, s) for _, (a, b, s) in make_W().edges()] + [(0, 5, 1)])
    r = is_critical(w_pendant, C3)
    assert r.verdict == "non_minimal" and r.failing_edge is not None


def test_undecided_on_tiny_budget():
    r = is_critical(make_petersen(), C3, node_budget=3)
    assert r.verdict == "undecided" and r.undecided_at == "graph"


def test_report_json_round_trips():
    r = is_critical(make_W(), C3, node_budget=10**6)
    data = json.loads(json.dumps(r.to_json()))
    assert data["verdict"] == "critical" and data["budget"] == 10**6
    assert len(data["witnesses"]) == 7


def _critical_bruteforce(g):
    mine, theirs = girths_by_walk_matrices(g), girths_by_walk_matrices(C3)
    if any(mine[k] < theirs[k] for k in mine):
        return "girth_violation"
    if hom_exists_bruteforce(g, C3):
        return "maps"
    if any(g.degree(v) == 0 for v in range(g.n)):
        return "non_minimal"
    if all(hom_exists_bruteforce(delete_edge(g, e), C3) for e in g.edge_ids()):
        return "critical"
    return "non_minimal"


@given(signed_graphs(min_n=2, max_n=5, max_m=9))
def test_verdict_matches_bruteforce(g):
    assert is_critical(g, C3).verdict == _critical_bruteforce(g)


def test_workers_give_same_report():
    for g in (make_W(), make_petersen(), make_Sk(4)):
        a, b = is_critical(g, C3, workers=1), is_critical(g, C3, workers=4)
        assert (a.verdict, a.failing_edge, sorted(a.witnesses)) == (b.verdict, b.failing_edge, sorted(b.witnesses))


def test_density_examples():
    assert density_check(make_W())
    assert 2 * make_W().m == 3 * make_W().n - 1
    assert density_check(make_Sk(6)) and 2 * make_Sk(6).m == 36
    assert not density_check(SignedGraph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1), (0, 2, 1)]))


def test_potential_examples():
    assert potential_check(make_W()) and potential(make_W()) == 1
    assert potential_check(make_petersen()) and potential(make_petersen()) == 0
    assert not potential_check(make_complete(2))
