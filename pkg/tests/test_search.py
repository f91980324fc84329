from fractions import Fraction

import pytest

from ramsey_forge.chromatic import chromatic_number
from ramsey_forge.graph import (
    Graph,
    canonical_form,
    complete_graph,
    cycle_graph,
    empty_graph,
    nonisomorphic_graphs,
    path_graph,
    turan_graph,
)
from ramsey_forge.objective import SizeError, m_objective, make_context, turan_baseline
from ramsey_forge.search import (
    CONTAINS_NON_TURAN,
    BudgetError,
    Scorer,
    XorShift64Star,
    best_partition,
    minimizer_verdict,
    clone_move,
    exhaustive_minimize,
    graph_from_id,
    graph_id,
    local_search,
    random_graph,
)

K2, K3 = complete_graph(2), complete_graph(3)


def test_ids_round_trip():
    for gid in range(1 << 10):
        assert graph_id(graph_from_id(5, gid)) == gid


def test_scorer_agrees_with_objective():
    c = make_context(K3, path_graph(3))
    s = Scorer(c, 6)
    for g in list(nonisomorphic_graphs(6))[::7]:
        assert s.value(s.score(g)) == m_objective(c, g).value


def test_exhaustive_goodman():
    c = make_context(K3, K3)
    r5 = exhaustive_minimize(c, 5)
    assert r5.min_value == 0
    assert canonical_form(cycle_graph(5)) in r5.minimizers
    assert r5.turan_verdict == CONTAINS_NON_TURAN
    assert r5.graphs_examined == 1 << 10
    assert exhaustive_minimize(c, 6).min_value == Fraction(2, 5)


def test_exhaustive_edges_pair():
    c = make_context(K2, K2)
    r = exhaustive_minimize(c, 3)
    assert r.min_value == 1
    assert len(r.minimizers) == 4
    assert minimizer_verdict(c, 4) == CONTAINS_NON_TURAN


def test_exhaustive_regression_n6_verdict():
    # 12 isomorphism classes have exactly two monochromatic triangles
    c = make_context(K3, K3)
    r = exhaustive_minimize(c, 6)
    assert r.turan_verdict == CONTAINS_NON_TURAN
    assert len(r.minimizers) == 12
    assert canonical_form(turan_graph(6, 2)) in r.minimizers


def test_exhaustive_limits():
    c = make_context(K3, K3)
    with pytest.raises(BudgetError):
        exhaustive_minimize(c, 8)
    with pytest.raises(BudgetError):
        exhaustive_minimize(c, 9, max_n=9)
    with pytest.raises(SizeError):
        exhaustive_minimize(c, 2)


def test_exhaustive_parallel_matches_serial():
    c = make_context(K3, K3)
    assert exhaustive_minimize(c, 7, jobs=2) == exhaustive_minimize(c, 7, jobs=1)


def test_rng_deterministic():
    a, b = XorShift64Star(5, 1), XorShift64Star(5, 1)
    assert [a.next() for _ in range(5)] == [b.next() for _ in range(5)]
    assert XorShift64Star(5, 2).next() != XorShift64Star(5, 1).next()
    assert random_graph(9, 3, 0) == random_graph(9, 3, 0)


def test_clone_move():
    p = path_graph(3)  # a=0, b=1, c=2
    out = clone_move(p, 0, 2)
    assert sorted(out.edges()) == [(0, 1), (1, 2)]
    assert clone_move(K2, 0, 1) == empty_graph(2)
    g = Graph.from_edges(4, [(0, 1), (0, 2), (2, 3)])
    assert sorted(clone_move(g, 0, 3).edges()) == [(0, 1), (0, 2), (1, 3), (2, 3)]


@pytest.mark.parametrize("seed", range(4))
def test_local_search_fixtures(seed):
    c = make_context(K3, K3)
    assert local_search(c, 5, seed=seed, restarts=6).min_value == 0
    assert local_search(c, 6, seed=seed, restarts=6).min_value == Fraction(2, 5)


def test_local_search_never_above_baseline():
    c = make_context(K3, path_graph(3))
    for n in (5, 7, 9):
        r = local_search(c, n, seed=1, restarts=4, max_steps=50)
        assert r.min_value <= turan_baseline(c, n).value


def test_local_search_parallel_and_repeatable():
    c = make_context(K3, K3)
    a = local_search(c, 8, seed=7, restarts=6)
    assert a == local_search(c, 8, seed=7, restarts=6, jobs=3)
    assert a.to_json() == local_search(c, 8, seed=7, restarts=6).to_json()


def test_best_partition_fixtures():
    k33 = turan_graph(6, 2)
    p = best_partition(k33, 2)
    assert p.internal_edges == 0
    assert sorted(sorted(x) for x in p.classes) == [[0, 2, 4], [1, 3, 5]]
    assert best_partition(complete_graph(4), 2).internal_edges == 2
    assert best_partition(cycle_graph(7), 7).internal_edges == 0


def test_best_partition_vs_chromatic_number():
    for n in range(1, 7):
        for g in nonisomorphic_graphs(n):
            chi = chromatic_number(g)
            for r in range(1, n + 1):
                assert (best_partition(g, r).internal_edges == 0) == (chi <= r)
