import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from apg import corpus
from apg.errors import MalformedClaim, SearchBudgetExceeded
from apg.families import build_family, cyclic
from apg.graph import SplitPartitionClaim, build_commuting_graph, max_clique, max_noncommuting_set, verify_mn_split
from apg.partition import check_partition

SMALL = ["dihedral:6", "dihedral:8", "quaternion:8", "dihedral:10", "dihedral:12", "quaternion:12",
         "alternating:4", "dihedral:14", "dihedral:16", "quaternion:16"]


def _brute_n(G):
    """Largest pairwise noncommuting set by growing all noncommuting sets level by level."""
    C = np.array([G.centralizer_mask(x) for x in range(G.order)])
    level = [(x,) for x in range(G.order)]
    best = 1
    while level:
        nxt = []
        for s in level:
            for y in range(s[-1] + 1, G.order):
                if not C[y, list(s)].any():
                    nxt.append(s + (y,))
        if nxt:
            best = len(nxt[0])
        level = nxt
    return best


def test_abelian_graph_complete():
    g = build_commuting_graph(cyclic(6))
    assert g.n_edges() == 15
    assert g.is_clique(range(6))


def test_s3_graph_and_noncommuting_triple():
    G = build_family("symmetric:3")
    g = build_commuting_graph(G)
    for i in range(6):
        for j in range(6):
            if i != j:
                assert g.adjacent(i, j) == bool(G.centralizer_mask(i)[j])
    x, y = next((a, b) for a in range(6) for b in range(6) if G.mul(a, b) != G.mul(b, a))
    trio = [x, y, int(G.mul(x, y))]
    assert g.is_independent(trio)


def test_q8_centre_adjacent_to_all():
    G = build_family("quaternion:8")
    g = build_commuting_graph(G)
    for z in G.center_members:
        assert g.degree(int(z)) == 7


def test_subset_graph():
    G = build_family("dihedral:8")
    X = np.setdiff1d(np.arange(8), G.center_members)
    g = build_commuting_graph(G, X)
    assert g.n_vertices == 6
    assert list(g.vertex_map) == list(X)


def test_n_of_a5():
    n, w = max_noncommuting_set(build_family("alternating:5"))
    assert n == 21 == len(w)


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_n_of_d4n(k):
    assert max_noncommuting_set(build_family(f"dihedral:{4 * k}"))[0] == k + 1


def test_n_of_abelian():
    assert max_noncommuting_set(cyclic(5)) == (1, [0])


@pytest.mark.parametrize("name", SMALL)
def test_n_matches_brute_force(name):
    G = build_family(name)
    n, w = max_noncommuting_set(G)
    assert n == _brute_n(G)
    assert all(not G.commutes(a, b) for a, b in itertools.combinations(w, 2))
    assert w == sorted(w)


def test_n_at_least_three_for_nonabelian():
    for name in corpus.names():
        G = corpus.group(name)
        if not G.is_abelian():
            assert max_noncommuting_set(G)[0] >= 3


def test_budget_reports_partial_result():
    with pytest.raises(SearchBudgetExceeded) as exc:
        max_noncommuting_set(build_family("psl2:7"), budget=5)
    assert exc.value.lower_bound is not None


def test_witness_deterministic():
    G = build_family("symmetric:4")
    assert max_noncommuting_set(G) == max_noncommuting_set(G)


def test_symmetry_and_complement():
    G = build_family("symmetric:4")
    g = build_commuting_graph(G)
    for i in range(G.order):
        assert not g.adj[i] >> i & 1
        for j in range(G.order):
            assert g.adjacent(i, j) == g.adjacent(j, i)
        assert g.adj[i] | g.non_row(i) | (1 << i) == g.full
        assert g.adj[i] & g.non_row(i) == 0


def test_max_clique_on_pentagon():
    rows = [0] * 5
    for i in range(5):
        for j in (i - 1, i + 1):
            rows[i] |= 1 << (j % 5)
    assert len(max_clique(rows, 0b11111)) == 2


def test_dimacs_export():
    g = build_commuting_graph(build_family("symmetric:3"))
    lines = g.to_dimacs().splitlines()
    assert lines[0] == f"p edge 6 {g.n_edges()}"
    assert len(lines) == 1 + g.n_edges()


def test_split_claims():
    g = build_commuting_graph(cyclic(4))
    assert verify_mn_split(g, SplitPartitionClaim([], [list(range(4))]))
    Q = build_family("quaternion:8")
    gq = build_commuting_graph(Q)
    blocks = [[0, 1, 2, 3], [4, 6], [5, 7]]
    assert check_partition(Q, blocks)
    assert verify_mn_split(gq, SplitPartitionClaim([], blocks))
    assert not verify_mn_split(gq, SplitPartitionClaim(blocks, []))


def test_split_claim_malformed():
    g = build_commuting_graph(cyclic(3))
    with pytest.raises(MalformedClaim):
        verify_mn_split(g, SplitPartitionClaim([[0, 1]], [[1, 2]]))
    with pytest.raises(MalformedClaim):
        verify_mn_split(g, SplitPartitionClaim([], [[0, 5]]))


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["symmetric:4", "dihedral:12", "alternating:4", "quaternion:16", "heisenberg:3"]), st.data())
def test_noncommuting_pair_extends_by_product(name, data):
    G = build_family(name)
    x = data.draw(st.integers(0, G.order - 1))
    y = data.draw(st.integers(0, G.order - 1))
    if G.commutes(x, y):
        return
    xy = int(G.mul(x, y))
    trio = [x, y, xy]
    assert len(set(trio)) == 3
    assert all(not G.commutes(a, b) for a, b in itertools.combinations(trio, 2))
