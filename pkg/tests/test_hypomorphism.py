import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import graphs

from recongraph.abcfamily import AbcSpec, build_abc
from recongraph.graph import complete_graph, empty_graph, make_graph, path_graph
from recongraph.harness import enumerate_graphs
from recongraph.hypomorphism import (
    CardMatcher,
    Hypomorphism,
    ShapeError,
    count_hypomorphisms,
    deck,
    decks_equal,
    find_hypomorphisms,
    identity_hypomorphism,
    validate_hypomorphism,
)
from recongraph.iso import canonical_key


def brute_card_maps(G, H, v, w):
    """Every bijection V - v -> V' - w that is a card isomorphism, by exhaustion."""
    src = [u for u in range(G.n) if u != v]
    dst = [x for x in range(H.n) if x != w]
    out = []
    for imgs in itertools.permutations(dst):
        m = dict(zip(src, imgs))
        if all(G.has_edge(a, b) == H.has_edge(m[a], m[b]) for a, b in itertools.combinations(src, 2)):
            out.append(tuple(None if u == v else m[u] for u in range(G.n)))
    return out


def brute_hypomorphisms(G, H):
    out = set()
    for f in itertools.permutations(range(H.n)):
        choices = [brute_card_maps(G, H, v, f[v]) for v in range(G.n)]
        for phi in itertools.product(*choices):
            out.add(Hypomorphism(tuple(f), tuple(phi)))
    return out


def brute_count(G, H):
    cache = {}
    total = 0
    for f in itertools.permutations(range(H.n)):
        p = 1
        for v in range(G.n):
            if (v, f[v]) not in cache:
                cache[v, f[v]] = len(brute_card_maps(G, H, v, f[v]))
            p *= cache[v, f[v]]
            if not p:
                break
        total += p
    return total


K3 = complete_graph(3)
P3 = path_graph(3)
P4 = path_graph(4)


def test_deck_examples():
    k2 = canonical_key(complete_graph(2))
    assert deck(K3).cards == (k2,) * 3
    p3 = canonical_key(P3)
    k2k1 = canonical_key(make_graph(3, [(0, 1)]))
    assert sorted(deck(P4).cards) == sorted([p3, p3, k2k1, k2k1])
    assert deck(empty_graph(3)).cards == (canonical_key(empty_graph(2)),) * 3
    with pytest.raises(ValueError):
        deck(empty_graph(1))


def test_decks_equal_examples():
    assert decks_equal(P4, P4)
    assert not decks_equal(K3, P3)
    A = build_abc(AbcSpec(8, {1, 3, 4}, {1, 5}))
    Ap = build_abc(AbcSpec(8, {1, 5}, {1, 3, 4}))
    assert not decks_equal(A, Ap)


def test_first_yield_on_triangle_is_identity():
    first = next(find_hypomorphisms(K3, K3, limit=10))
    assert first == identity_hypomorphism(3)


def test_no_yield_when_decks_differ():
    assert list(find_hypomorphisms(K3, P3, limit=10)) == []
    assert count_hypomorphisms(K3, P3) == 0


def test_path_stream_validates():
    found = list(find_hypomorphisms(P4, P4, limit=1000))
    assert found
    assert all(validate_hypomorphism(P4, P4, hy).ok for hy in found)


def test_search_rejects_bad_shapes():
    with pytest.raises(ShapeError):
        next(find_hypomorphisms(P3, P4))
    with pytest.raises(ShapeError):
        next(find_hypomorphisms(path_graph(2), path_graph(2)))


def test_degree_violation_reported():
    hy = identity_hypomorphism(4)
    swapped = Hypomorphism((1, 0, 2, 3), hy.phi)
    report = validate_hypomorphism(P4, P4, swapped)
    assert any("degree" in msg for msg in report.violations)


def test_validate_shape_error():
    with pytest.raises(ShapeError):
        validate_hypomorphism(P3, P4, identity_hypomorphism(3))


def test_json_round_trip():
    for hy in find_hypomorphisms(P4, P4, limit=20):
        assert Hypomorphism.from_dict(hy.to_dict()) == hy
    with pytest.raises(ShapeError):
        Hypomorphism.from_dict({"f": [0, 1, 2], "phi": {"0": [1], "1": [0, 2], "2": [0, 1]}})


def test_from_maps_places_blanks():
    hy = Hypomorphism.from_maps([0, 1, 2], {0: {1: 1, 2: 2}, 1: {0: 0, 2: 2}, 2: {0: 0, 1: 1}})
    assert hy == identity_hypomorphism(3)
    assert hy.phi_inv == hy.phi


def test_limits():
    assert len(list(find_hypomorphisms(complete_graph(4), complete_graph(4), limit=7))) == 7
    per_f = list(find_hypomorphisms(complete_graph(4), complete_graph(4), limit=None, per_f_limit=2))
    assert len(per_f) == 24 * 2


@pytest.mark.parametrize("n", [3, 4, 5])
def test_count_matches_brute_force_on_every_graph(n):
    for G in enumerate_graphs(n):
        assert count_hypomorphisms(G, G) == brute_count(G, G)


@settings(max_examples=25, deadline=None)
@given(graphs(min_n=3, max_n=4), st.randoms(use_true_random=False))
def test_stream_equals_brute_force(G, rnd):
    perm = list(range(G.n))
    rnd.shuffle(perm)
    H = G.relabel(perm)
    got = list(find_hypomorphisms(G, H, limit=None))
    assert len(got) == len(set(got))
    assert set(got) == brute_hypomorphisms(G, H)
    assert len(got) == count_hypomorphisms(G, H)


@settings(max_examples=30, deadline=None)
@given(graphs(min_n=3, max_n=6))
def test_yields_validate_and_preserve_degree(G):
    for hy in find_hypomorphisms(G, G, limit=50, per_f_limit=3):
        assert validate_hypomorphism(G, G, hy).ok
        assert all(G.degree(v) == G.degree(hy.f[v]) for v in range(G.n))


def test_stream_order_is_lexicographic():
    got = [hy.f for hy in find_hypomorphisms(P4, P4, limit=None, per_f_limit=1)]
    assert got == sorted(got)
    cm = CardMatcher(P4, P4)
    assert list(cm.bijections()) == got
