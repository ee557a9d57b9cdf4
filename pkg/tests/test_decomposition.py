import pytest

from recongraph.abcfamily import AbcSpec, beta_gamma, build_abc, reflection_hypomorphism
from recongraph.assoc import build_assoc, mutual_normal_pairs
from recongraph.fixtures import bar_instance, load_fixture
from recongraph.graph import path_graph
from recongraph.hypomorphism import Hypomorphism, identity_hypomorphism
from recongraph.io import read_graph6
from recongraph.iso import is_isomorphic
from recongraph.decomposition import PreconditionError, StructureViolation, decompose_pair

ITEMS = [str(i) for i in range(1, 17)]

SELF_PAIRS = [
    AbcSpec(6, {1}, {1}),
    AbcSpec(7, {1, 2, 3}, {1, 4}),
    AbcSpec(8, {1, 3}, {1, 5}),
    AbcSpec(8, {3}, {1}),
    AbcSpec(8, {3, 4}, {1}),
]


@pytest.mark.parametrize("spec", SELF_PAIRS, ids=str)
def test_self_pairs_pass_every_item(spec):
    A, Ap, hy = reflection_hypomorphism(spec)
    n = spec.n
    rep = decompose_pair(A, Ap, hy, 0, n - 1)
    assert rep.ok and sorted(rep.checks) == sorted(ITEMS)
    assert rep.n == n and rep.A_vertices == list(range(n))
    assert (rep.B, rep.C) == (sorted(spec.B), sorted(spec.C))
    assert rep.X == rep.Y == rep.X_prime == rep.Y_prime == []


@pytest.mark.parametrize("spec", SELF_PAIRS, ids=str)
def test_reverse_orientation_reads_an_isomorphic_pattern(spec):
    A, Ap, hy = reflection_hypomorphism(spec)
    n = spec.n
    rep = decompose_pair(A, Ap, hy, n - 1, 0)
    assert rep.ok and rep.A_vertices == list(reversed(range(n)))
    assert is_isomorphic(build_abc(rep.spec()), A)
    bg = beta_gamma(rep.spec())
    assert 1 in rep.C and bg.beta == bg.gamma


def test_report_serialises():
    A, Ap, hy = reflection_hypomorphism(AbcSpec(6, {1}, {1}))
    d = decompose_pair(A, Ap, hy, 0, 5).to_dict()
    assert d["ok"] and d["B"] == [1] and set(d["checks"]) == set(ITEMS)


def test_non_mutual_pair_rejected():
    G = path_graph(4)
    with pytest.raises(PreconditionError):
        decompose_pair(G, G, identity_hypomorphism(4), 0, 3)
    A, Ap, hy = reflection_hypomorphism(AbcSpec(6, {1}, {1}))
    with pytest.raises(PreconditionError):
        decompose_pair(A, Ap, hy, 2, 2)


def test_beta_cycle_rejected():
    G, H, hy, v1, v2 = bar_instance(load_fixture("ex7.1"))
    with pytest.raises(PreconditionError, match="BETA"):
        decompose_pair(G, H, hy, v1, v2)


# A 5-vertex self-pair found by the exhaustive sweep. Its mutual pair (2, 3)
# is ALPHA with a 3-vertex pattern, yet the pattern is a path on one side and
# a triangle on the other, so the two offset counts disagree.
SMALL_G = "D]{"
SMALL_HY = {
    "f": [0, 2, 1, 3, 4],
    "phi": {
        "0": [1, 2, 3, 4],
        "1": [3, 0, 1, 4],
        "2": [2, 3, 4, 0],
        "3": [0, 1, 4, 2],
        "4": [0, 1, 2, 3],
    },
}


@pytest.fixture(scope="module")
def small_pair():
    G = read_graph6(SMALL_G)
    return G, Hypomorphism.from_dict(SMALL_HY)


def test_small_pair_is_alpha_mutual(small_pair):
    G, hy = small_pair
    D = build_assoc(G, G, hy)
    assert (2, 3) in mutual_normal_pairs(D)


def test_small_pair_fails_only_the_offset_count_item(small_pair):
    G, hy = small_pair
    rep = decompose_pair(G, G, hy, 2, 3, strict=False)
    assert rep.n == 3 and rep.A_vertices == [2, 1, 3]
    assert (rep.B, rep.C) == ([1], [1, 2])
    assert beta_gamma(rep.spec()).as_tuple() == (0, 1, 1, 1)
    assert rep.failed == ["6"]
    assert G.induced(rep.A_vertices).edge_count == 2
    assert G.induced(rep.A_prime_vertices).edge_count == 3
    with pytest.raises(StructureViolation) as info:
        decompose_pair(G, G, hy, 2, 3)
    assert info.value.report.failed == ["6"]
