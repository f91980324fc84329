from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_isomorphic, labelled_graphs
from ramsey_forge.graph import (
    Graph,
    GraphError,
    GraphTooLargeError,
    HairySpec,
    MalformedHeaderError,
    TruncatedPayloadError,
    canonical_form,
    canonical_graph,
    complement,
    complete_graph,
    component_count,
    cycle_graph,
    disjoint_union,
    empty_graph,
    is_turan,
    make_hairy,
    nonisomorphic_graphs,
    parse_edge_list,
    parse_graph6,
    path_graph,
    petersen_graph,
    strip_isolated,
    turan_graph,
    write_graph6,
)


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(n), 2))
    bits = draw(st.integers(0, (1 << len(pairs)) - 1))
    return Graph.from_edges(n, [p for i, p in enumerate(pairs) if bits >> i & 1])


def test_graph6_small_fixtures():
    assert parse_graph6("A_") == complete_graph(2)
    assert parse_graph6("@") == empty_graph(1)
    assert write_graph6(complete_graph(1)) == "@"
    assert write_graph6(complete_graph(2)) == "A_"
    assert parse_graph6(">>graph6<<A_") == complete_graph(2)


def test_graph6_known_encodings():
    # standard encodings of K4 and C5
    assert write_graph6(complete_graph(4)) == "C~"
    assert parse_graph6("Dhc") == cycle_graph(5)


@given(graphs(max_n=12))
def test_graph6_round_trip(g):
    assert parse_graph6(write_graph6(g)) == g


def test_graph6_large_header_round_trip():
    g = cycle_graph(64)
    s = write_graph6(g)
    assert s.startswith("~")
    assert parse_graph6(s) == g


def test_graph6_errors():
    with pytest.raises(MalformedHeaderError):
        parse_graph6("")
    with pytest.raises(MalformedHeaderError):
        parse_graph6("\x20")
    with pytest.raises(TruncatedPayloadError):
        parse_graph6("D")
    with pytest.raises(GraphTooLargeError):
        parse_graph6("~?@@" + "?" * 400)


def test_edge_list():
    g = parse_edge_list("# triangle\n0 1\n1 2\n2 0\n")
    assert g == complete_graph(3)
    assert parse_edge_list("0 1\n", n=4).n == 4
    with pytest.raises(GraphError):
        parse_edge_list("0 0\n")


def test_complement_and_turan():
    assert complement(complete_graph(4)) == empty_graph(4)
    assert brute_isomorphic(complement(cycle_graph(5)), cycle_graph(5))
    t = turan_graph(5, 2)
    assert t.num_edges == 6 and sorted(t.degrees()) == [2, 2, 2, 3, 3]
    assert turan_graph(4, 1) == empty_graph(4)
    assert turan_graph(4, 4) == complete_graph(4)


def test_hairy_fixtures():
    h = make_hairy(HairySpec(complete_graph(3), (0, 0, 1)))
    assert (h.n, h.num_edges) == (6, 6)
    assert tuple(sorted(h.degrees(), reverse=True)) == (4, 3, 2, 1, 1, 1)
    assert make_hairy(HairySpec(cycle_graph(5), ())) == cycle_graph(5)
    h = make_hairy(HairySpec(complete_graph(4), (0,)))
    assert (h.n, h.num_edges) == (5, 7)
    with pytest.raises(GraphError):
        HairySpec(complete_graph(3), (3,))


def test_hairy_pendants_have_degree_one():
    h = make_hairy(HairySpec(petersen_graph(), (0, 3, 3, 9)))
    for i, base in enumerate((0, 3, 3, 9)):
        p = 10 + i
        assert h.degree(p) == 1 and h.has_edge(p, base)


def test_is_turan():
    assert is_turan(empty_graph(5), 1)
    assert not is_turan(cycle_graph(5), 2)
    assert is_turan(turan_graph(6, 2), 2)
    assert is_turan(turan_graph(7, 3).relabel([3, 1, 4, 0, 5, 6, 2]), 3)
    # complete bipartite but unbalanced
    assert not is_turan(Graph.from_edges(5, [(0, j) for j in range(1, 5)]), 2)


def test_components():
    assert component_count(complete_graph(5)) == 1
    assert component_count(empty_graph(4)) == 4
    assert component_count(disjoint_union(complete_graph(3), complete_graph(3))) == 2
    assert strip_isolated(disjoint_union(complete_graph(3), empty_graph(2))) == complete_graph(3)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)])
def test_nonisomorphic_counts(n, count):
    assert sum(1 for _ in nonisomorphic_graphs(n)) == count


@pytest.mark.parametrize("n, count", [(4, 6), (5, 21), (6, 112)])
def test_connected_counts(n, count):
    assert sum(1 for _ in nonisomorphic_graphs(n, connected=True)) == count


def test_canonical_form_by_filtering_labelled_graphs():
    for n in range(1, 6):
        forms = {canonical_form(g) for g in labelled_graphs(n)}
        assert forms == {canonical_form(g) for g in nonisomorphic_graphs(n)}
    assert len({canonical_form(g) for g in labelled_graphs(4)}) == 11


def test_canonical_form_matches_brute_isomorphism():
    reps = list(nonisomorphic_graphs(5))
    for a, b in combinations(reps, 2):
        assert not brute_isomorphic(a, b)
    assert canonical_form(cycle_graph(5)) == canonical_form(complement(cycle_graph(5)))


@settings(max_examples=60)
@given(graphs(max_n=9), st.randoms(use_true_random=False))
def test_canonical_form_relabel_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert canonical_form(g.relabel(perm)) == canonical_form(g)
    assert canonical_form(canonical_graph(canonical_form(g))) == canonical_form(g)


def test_canonical_form_regular_graphs():
    # regular graphs defeat colour refinement alone
    a = disjoint_union(complete_graph(3), complete_graph(3))
    b = turan_graph(6, 2)
    c = cycle_graph(6)
    forms = {canonical_form(x) for x in (a, b, c, complement(c))}
    assert len(forms) == 4
    assert canonical_form(petersen_graph().relabel([9, 8, 7, 6, 5, 4, 3, 2, 1, 0])) == canonical_form(petersen_graph())


def test_graph_validation():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(GraphError):
        Graph(2, (1, 0))
    assert path_graph(4).num_edges == 3
