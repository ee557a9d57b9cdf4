import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from recongraph.abcfamily import AbcSpec, build_abc
from recongraph.graph import complete_graph, is_isomorphism, make_graph, path_graph
from recongraph.iso import (
    VertexMap,
    automorphisms,
    canonical_form,
    canonical_key,
    enumerate_isomorphisms,
    find_isomorphism,
    is_isomorphic,
    refine,
)

from strategies import graphs


def brute_isos(G, H):
    if G.n != H.n:
        return []
    return [p for p in itertools.permutations(range(H.n)) if is_isomorphism(G, H, p)]


def brute_key(G):
    """Least upper-triangle encoding over all orderings, as an oracle."""
    best = None
    for order in itertools.permutations(range(G.n)):
        bits = tuple(int(G.has_edge(order[i], order[j])) for i in range(G.n) for j in range(i + 1, G.n))
        if best is None or bits < best:
            best = bits
    return best


P3 = path_graph(3)
P4 = path_graph(4)
K3 = complete_graph(3)


def test_enumerate_examples():
    assert len(list(enumerate_isomorphisms(K3, K3, 100))) == 6
    maps = [m.images for m in enumerate_isomorphisms(P4, P4, 100)]
    assert maps == [(0, 1, 2, 3), (3, 2, 1, 0)]
    assert list(enumerate_isomorphisms(K3, P3, 100)) == []


def test_find_isomorphism_identity_first():
    assert find_isomorphism(P4, P4).images == (0, 1, 2, 3)


def test_limit_stops_stream():
    assert len(list(enumerate_isomorphisms(complete_graph(4), complete_graph(4), 5))) == 5


def test_offset_family_examples():
    A = build_abc(AbcSpec(8, {3}, {1}))
    Ap = build_abc(AbcSpec(8, {1}, {3}))
    m = find_isomorphism(A, Ap)
    assert m is not None and is_isomorphism(A, Ap, m.images)
    assert canonical_key(A) == canonical_key(Ap)
    assert find_isomorphism(build_abc(AbcSpec(8, {1, 3, 4}, {1, 5})), build_abc(AbcSpec(8, {1, 5}, {1, 3, 4}))) is None


def test_canonical_examples():
    assert canonical_key(P4) == canonical_key(P4.relabel([3, 2, 1, 0]))
    assert canonical_key(K3) != canonical_key(P3)


def test_vertex_map_helpers():
    m = VertexMap((2, None, 0), 3)
    assert m.domain == [0, 2]
    assert m(None) is None and m(0) == 2
    assert m.is_injective() and not m.is_bijective()
    assert m.inverse().images == (2, None, 0)


def test_refine_is_equitable():
    G = make_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    cells, _ = refine(G)
    # path P5: ends, next-to-ends, centre
    assert sorted(sorted(c) for c in cells) == [[0, 4], [1, 3], [2]]


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=6), st.randoms(use_true_random=False))
def test_isomorphisms_match_brute_force(G, rnd):
    perm = list(range(G.n))
    rnd.shuffle(perm)
    H = G.relabel(perm)
    got = [m.images for m in enumerate_isomorphisms(G, H)]
    assert got == brute_isos(G, H)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=6), graphs(max_n=6))
def test_canonical_key_exact(G, H):
    same = G.n == H.n and brute_key(G) == brute_key(H)
    assert (canonical_key(G) == canonical_key(H)) == same
    assert is_isomorphic(G, H) == same


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7))
def test_canonical_form_invariant(G):
    F = canonical_form(G)
    assert is_isomorphic(F, G)
    assert canonical_form(G.relabel(list(reversed(range(G.n))))).adj == F.adj


def test_automorphism_counts_small():
    # |Aut| for C5, K_{1,3}, K4
    from recongraph.graph import cycle_graph

    assert len(list(automorphisms(cycle_graph(5)))) == 10
    assert len(list(automorphisms(make_graph(4, [(0, 1), (0, 2), (0, 3)])))) == 6
    assert len(list(automorphisms(complete_graph(4)))) == 24
