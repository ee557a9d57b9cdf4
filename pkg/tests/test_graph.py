import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import graphs

from recongraph.graph import (
    GraphError,
    SimpleGraph,
    complete_graph,
    connected_components,
    cycle_graph,
    delete_vertex,
    degree,
    empty_graph,
    is_isomorphism,
    make_graph,
    path_graph,
    preserves_adjacency,
)


def test_basic_queries():
    G = make_graph(4, [(0, 1), (1, 2), (1, 3)])
    assert G.edges() == [(0, 1), (1, 2), (1, 3)]
    assert G.degrees() == [1, 3, 1, 1]
    assert G.edge_count == 3
    assert G.neighbors(1) == [0, 2, 3]
    assert G.has_edge(2, 1) and not G.has_edge(0, 2)
    assert degree(G, 1) == 3


def test_duplicate_edges_collapse():
    assert make_graph(3, [(0, 1), (1, 0), (0, 1)]).edge_count == 1


@pytest.mark.parametrize(
    "n, edges",
    [(3, [(0, 0)]), (3, [(0, 3)]), (0, []), (2, [(-1, 0)])],
)
def test_make_graph_rejects(n, edges):
    with pytest.raises(GraphError):
        make_graph(n, edges)


def test_constructor_validates_rows():
    with pytest.raises(GraphError):
        SimpleGraph(2, (0b10, 0))  # not symmetric
    with pytest.raises(GraphError):
        SimpleGraph(2, (0b01, 0b00))  # loop
    with pytest.raises(GraphError):
        SimpleGraph(2, (0b100, 0))
    with pytest.raises(GraphError):
        make_graph(2, [], labels=["x", "x"])


def test_labels_default_and_lookup():
    G = make_graph(3, [(0, 1)])
    assert [G.label(v) for v in range(3)] == ["v1", "v2", "v3"]
    assert G.index_of("v3") == 2
    H = G.with_labels(["a1", "a2", "a3"])
    assert H.index_of("a2") == 1
    with pytest.raises(GraphError):
        H.index_of("v1")


def test_delete_vertex_keeps_order():
    G = path_graph(4)
    card, kept = delete_vertex(G, 1)
    assert kept == (0, 2, 3)
    assert card.edges() == [(1, 2)]
    with pytest.raises(GraphError):
        delete_vertex(G, 4)
    with pytest.raises(GraphError):
        delete_vertex(empty_graph(1), 0)


def test_standard_families():
    assert complete_graph(5).edge_count == 10
    assert cycle_graph(5).degrees() == [2] * 5
    assert path_graph(1).edge_count == 0
    assert [sorted(c) for c in connected_components(make_graph(5, [(0, 3), (1, 4)]))] == [[0, 3], [1, 4], [2]]


def test_induced_reindexes_and_keeps_labels():
    G = make_graph(4, [(0, 1), (1, 2), (2, 3)], labels=["a", "b", "c", "d"])
    S = G.induced([3, 2, 0])
    assert S.edges() == [(0, 1)]
    assert S.labels == ("d", "c", "a")


def test_preserves_adjacency_witness():
    G = path_graph(3)
    assert preserves_adjacency(G, G, {0: 2, 1: 1}) is None
    assert preserves_adjacency(G, G, {0: 0, 2: 1}) == (0, 2)
    assert preserves_adjacency(G, G, {0: 1, 1: 1}) == (0, 1)


@given(graphs())
def test_complement_involution(G):
    C = G.complement()
    assert C.complement() == G
    assert G.edge_count + C.edge_count == G.n * (G.n - 1) // 2


@given(graphs(), st.randoms(use_true_random=False))
def test_relabel_is_isomorphism(G, rnd):
    perm = list(range(G.n))
    rnd.shuffle(perm)
    H = G.relabel(perm)
    assert is_isomorphism(G, H, perm)
    assert sorted(G.degrees()) == sorted(H.degrees())


@settings(max_examples=50)
@given(graphs(min_n=2))
def test_components_partition(G):
    comps = connected_components(G)
    assert sorted(v for c in comps for v in c) == list(range(G.n))
    for a, b in itertools.combinations(comps, 2):
        assert not any(G.has_edge(u, v) for u in a for v in b)


def test_offset_family_examples_from_edge_lists():
    from recongraph.abcfamily import AbcSpec, build_abc
    from recongraph.iso import is_isomorphic

    G = make_graph(8, [(0, 3), (2, 5), (4, 7), (1, 2), (3, 4), (5, 6)])
    assert G.edges() == build_abc(AbcSpec(8, {3}, {1})).edges()
    comps = connected_components(G)
    assert [len(c) for c in comps] == [4, 4]
    assert all(is_isomorphic(G.induced(sorted(c)), path_graph(4)) for c in comps)
    A = build_abc(AbcSpec(8, {1, 3, 4}, {1, 5}))
    assert degree(A, 0) == 3
    assert degree(A, 7) == 2


def test_degree_examples():
    assert degree(empty_graph(3), 2) == 0
    assert path_graph(4).degrees() == [1, 2, 2, 1]
    with pytest.raises(GraphError):
        degree(empty_graph(3), 3)
