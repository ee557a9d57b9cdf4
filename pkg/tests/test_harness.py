import itertools

import pytest

from recongraph.abcfamily import AbcSpec
from recongraph.graph import make_graph
from recongraph.harness import (
    CapError,
    Caps,
    _admissible,
    deck_classes,
    enumerate_graphs,
    rigid_hypomorphisms,
    sweep_abc,
    verify_exhaustive,
)
from recongraph.hypomorphism import CardMatcher
from recongraph.iso import canonical_key, is_isomorphic


def brute_classes(n):
    """Isomorphism classes of labelled graphs on n vertices, by exhaustion."""
    pairs = list(itertools.combinations(range(n), 2))
    keys = set()
    for mask in range(1 << len(pairs)):
        G = make_graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
        keys.add(canonical_key(G))
    return len(keys)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156), (7, 1044)])
def test_enumeration_counts(n, count):
    graphs = list(enumerate_graphs(n))
    assert len(graphs) == count
    keys = [canonical_key(G) for G in graphs]
    assert len(set(keys)) == count
    assert keys == sorted(keys)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_enumeration_matches_labelled_oracle(n):
    assert len(list(enumerate_graphs(n))) == brute_classes(n)


def test_enumeration_caps():
    with pytest.raises(CapError):
        next(enumerate_graphs(0))
    with pytest.raises(CapError):
        next(enumerate_graphs(9))
    with pytest.raises(CapError):
        verify_exhaustive(8)
    with pytest.raises(CapError):
        verify_exhaustive(2)
    with pytest.raises(CapError):
        sweep_abc([10])
    with pytest.raises(ValueError):
        sweep_abc([4], checks=["nope"])


def test_deck_classes_are_singletons_up_to_six():
    for n in range(3, 7):
        classes = deck_classes(enumerate_graphs(n))
        assert all(len(c) == 1 for c in classes)


@pytest.mark.parametrize("n, count", [(3, 0), (4, 4), (5, 48), (6, 176)])
def test_rigid_hypomorphism_totals(n, count):
    total = 0
    for G in enumerate_graphs(n):
        total += sum(1 for _ in rigid_hypomorphisms(G, G, CardMatcher(G, G)))
    assert total == count


def test_verify_small_is_clean():
    rep = verify_exhaustive(4)
    assert rep.ok, rep.violations
    c = rep.counts
    assert c["graphs"] == 4 + 11
    assert c["deck_equal_pairs"] == 15 and c.get("distinct_deck_equal_pairs", 0) == 0
    assert c["rigid_checked"] == 4
    assert c["clause_I"] + c["clause_II"] + c["clause_III"] >= c["digraphs"]


def test_verify_tight_caps_reports_incomplete():
    rep = verify_exhaustive(4, Caps(hypomorphisms=2, per_f=1, rigid=1))
    assert rep.ok
    assert rep.incomplete
    assert all(p["checked"] < p["total"] or p.get("rigid_capped") for p in rep.incomplete)


def test_verify_is_deterministic():
    a = verify_exhaustive(4).to_json(timing=False)
    b = verify_exhaustive(4).to_json(timing=False)
    assert a == b
    assert "timing" not in a and "timing" in verify_exhaustive(3).to_json()


def test_verify_parallel_matches_serial():
    serial = verify_exhaustive(4, jobs=1).to_dict(timing=False)
    par = verify_exhaustive(4, jobs=2).to_dict(timing=False)
    serial["scope"].pop("jobs")
    par["scope"].pop("jobs")
    assert serial == par


def test_sweep_small_is_clean_and_flags():
    rep = sweep_abc([3, 4, 5])
    assert rep.ok
    assert rep.counts["specs"] == 16 + 64 + 256
    for fl in rep.flags:
        spec = AbcSpec(fl["spec"]["n"], fl["spec"]["B"], fl["spec"]["C"])
        assert _admissible(spec) and fl["non_isomorphic"]


def test_sweep_flags_the_non_isomorphic_example():
    rep = sweep_abc([8], flag_problem=True)
    assert rep.ok
    specs = {(f["spec"]["n"], tuple(f["spec"]["B"]), tuple(f["spec"]["C"])) for f in rep.flags}
    assert (8, (1, 3, 4), (1, 5)) in specs
    assert not any(f["decks_equal"] for f in rep.flags)


def test_sweep_parallel_matches_serial():
    a = sweep_abc([4, 5, 6], jobs=1).to_dict(timing=False)
    b = sweep_abc([4, 5, 6], jobs=2).to_dict(timing=False)
    a["scope"].pop("jobs")
    b["scope"].pop("jobs")
    assert a == b


def test_admissible_offsets():
    assert _admissible(AbcSpec(8, set(), {1}))
    assert not _admissible(AbcSpec(7, set(), {1}))
    assert _admissible(AbcSpec(7, {1}, {1, 3}))
    assert not _admissible(AbcSpec(6, {1}, set()))


def test_enumerated_graphs_pairwise_non_isomorphic():
    graphs = list(enumerate_graphs(5))
    for G, H in itertools.combinations(graphs, 2):
        assert not is_isomorphic(G, H)
