import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchext.errors import LoopRejected, VertexOutOfRange
from matchext.graph import (
    UNREACHABLE,
    Multigraph,
    build_graph,
    degree_stats,
    edge_distance,
    has_c5,
    is_bipartite,
    is_connected,
    is_matching,
    is_maximal_matching,
    min_pairwise_distance,
    palette_size,
)
from support import PETERSEN, TRIANGLE, cycle_graph, path_graph, small_graph


def test_construction_examples():
    g = build_graph(3, [(0, 1), (1, 2), (2, 0)])
    assert g.m == 3 and degree_stats(g) == (2, 1)
    assert degree_stats(build_graph(2, [(0, 1), (0, 1)])) == (2, 2)
    with pytest.raises(LoopRejected):
        build_graph(2, [(0, 0)])
    with pytest.raises(VertexOutOfRange):
        build_graph(2, [(0, 2)])


def test_edge_ids_are_stable_and_parallel_edges_kept():
    g = build_graph(3, [(2, 1), (0, 1), (1, 2)])
    assert g.edges == ((1, 2), (0, 1), (1, 2))
    assert g.edges_between(2, 1) == [0, 2]
    assert g.degree(1) == 3


def test_degree_stats_and_palette():
    assert degree_stats(PETERSEN) == (3, 1)
    assert degree_stats(Multigraph(4, [])) == (0, 0)
    assert palette_size(Multigraph(4, [])) == 1
    assert palette_size(TRIANGLE) == 3
    assert palette_size(build_graph(2, [(0, 1), (0, 1)])) == 4


def test_edge_distance_examples():
    star = build_graph(3, [(0, 1), (0, 2)])
    assert edge_distance(star, 0, 1) == 0
    p = path_graph(5)  # a-b-c-d-e-f
    assert edge_distance(p, 0, 4) == 3
    two = build_graph(4, [(0, 1), (2, 3)])
    assert edge_distance(two, 0, 1) is UNREACHABLE
    assert UNREACHABLE > 10**9 and UNREACHABLE >= 9


@pytest.mark.parametrize("length", range(2, 12))
def test_distance_on_paths_is_index_gap_minus_one(length):
    p = path_graph(length)
    for i, j in itertools.combinations(range(length), 2):
        assert edge_distance(p, i, j) == j - i - 1


def test_min_pairwise_distance_examples():
    p = path_graph(10)
    assert min_pairwise_distance(p, [0]) is UNREACHABLE
    assert min_pairwise_distance(p, [0, 1]) == 0
    assert min_pairwise_distance(p, [0, 9]) == 8


def _networkx_edge_distance(g, e, f):
    h = nx.MultiGraph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    best = None
    for a in g.edges[e]:
        lengths = nx.single_source_shortest_path_length(h, a)
        for b in g.edges[f]:
            if b in lengths and (best is None or lengths[b] < best):
                best = lengths[b]
    return UNREACHABLE if best is None else best


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_edge_distance_matches_networkx_and_is_symmetric(seed):
    g = small_graph(random.Random(seed), max_n=10)
    for e, f in itertools.combinations(range(g.m), 2):
        d = edge_distance(g, e, f)
        assert d == edge_distance(g, f, e) == _networkx_edge_distance(g, e, f)


def test_matching_predicates():
    c4 = cycle_graph(4)
    assert is_matching(c4, [0, 2])
    assert not is_matching(c4, [0, 1])
    assert is_matching(c4, [])
    assert is_maximal_matching(c4, [0, 2])
    assert is_maximal_matching(path_graph(3), [1])
    assert not is_maximal_matching(path_graph(4), [0])


def _brute_c5(g):
    adj = [set(g.neighbours(v)) for v in range(g.n)]
    for combo in itertools.combinations(range(g.n), 5):
        first = combo[0]
        for rest in itertools.permutations(combo[1:]):
            cyc = (first,) + rest
            if all(cyc[(i + 1) % 5] in adj[cyc[i]] for i in range(5)):
                return True
    return False


def test_c5_examples():
    assert has_c5(cycle_graph(5))
    assert has_c5(PETERSEN)
    k33 = build_graph(6, [(a, b) for a in range(3) for b in range(3, 6)])
    assert not has_c5(k33) and is_bipartite(k33)
    assert not is_bipartite(cycle_graph(5))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_has_c5_agrees_with_subset_enumeration(seed):
    g = small_graph(random.Random(seed), max_n=8)
    assert has_c5(g) == _brute_c5(g)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_degree_stats_matches_recount(seed):
    g = small_graph(random.Random(seed))
    degs = [sum(1 for u, v in g.edges if x in (u, v)) for x in range(g.n)]
    mult = max((g.edges.count(uv) for uv in g.edges), default=0)
    assert degree_stats(g) == (max(degs, default=0), mult)
    h = nx.MultiGraph(list(g.edges))
    h.add_nodes_from(range(g.n))
    assert is_connected(g) == nx.is_connected(h)
    assert is_bipartite(g) == nx.is_bipartite(h)
