import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchext.errors import BudgetExceeded, LimitExceeded
from matchext.graph import Multigraph, degree_stats, has_c5, palette_size
from matchext.oracle import Instance, canonical_form, enumerate_graphs, oracle_extend, oracle_instance
from matchext.state import verify_extension
from support import PETERSEN, TRIANGLE, brute_force_extendable, small_graph


def test_triangle_examples():
    found = oracle_extend(TRIANGLE, {0: 1}, 3)
    assert found is not None and verify_extension(TRIANGLE, found, {0: 1}, 3)
    assert oracle_extend(TRIANGLE, {0: 1}, 2) is None
    assert not brute_force_extendable(TRIANGLE, {0: 1}, 2)


def test_petersen_is_class_two():
    assert oracle_extend(PETERSEN, {}, 3) is None
    assert oracle_extend(PETERSEN, {}, 4) is not None


def test_budget():
    with pytest.raises(BudgetExceeded):
        oracle_extend(PETERSEN, {}, 3, budget=5)


def test_invalid_precolouring_is_infeasible():
    assert oracle_extend(TRIANGLE, {0: 1, 1: 1}, 3) is None
    assert oracle_extend(TRIANGLE, {0: 4}, 3) is None


def test_instance_metadata():
    inst = Instance(TRIANGLE, {0: 2}, seed=4)
    assert inst.meta["delta"] == 2 and inst.meta["palette"] == 3 and inst.meta["seed"] == 4
    assert oracle_instance(inst) is not None


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_agrees_with_brute_force_on_small_instances(seed):
    rng = random.Random(seed)
    g = small_graph(rng, max_n=6, max_degree=4, max_mult=2)
    while g.m > 9:
        g = small_graph(rng, max_n=6, max_degree=4, max_mult=2)
    k = max(1, palette_size(g) - rng.randrange(3))
    phi = {}
    covered = set()
    for e in rng.sample(range(g.m), g.m):
        if rng.random() < 0.4 and not covered & set(g.edges[e]):
            phi[e] = 1 + rng.randrange(k)
            covered.update(g.edges[e])
    found = oracle_extend(g, phi, k)
    assert (found is not None) == brute_force_extendable(g, phi, k)
    if found is not None:
        assert verify_extension(g, found, phi, k)


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    for (u, v), m in g.multiplicities().items():
        h.add_edge(u, v, m=m)
    return h


def _brute_classes(n, max_mult):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen = set()
    for vec in itertools.product(range(max_mult + 1), repeat=len(pairs)):
        mat = {p: m for p, m in zip(pairs, vec)}
        best = min(
            tuple(mat[tuple(sorted((perm[i], perm[j])))] for i, j in pairs) for perm in itertools.permutations(range(n))
        )
        seen.add(best)
    return len(seen)


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)])
def test_simple_graph_census(n, expected):
    assert sum(1 for _ in enumerate_graphs(n)) == expected


@pytest.mark.parametrize("n", [2, 3, 4])
def test_multigraph_census_matches_brute_force(n):
    assert sum(1 for _ in enumerate_graphs(n, max_mult=2)) == _brute_classes(n, 2)


def test_simple_census_matches_brute_force_at_five():
    assert _brute_classes(5, 1) == 34


def test_enumeration_has_no_isomorphic_duplicates():
    graphs = list(enumerate_graphs(5, max_mult=2))
    assert len(graphs) == 792
    match = nx.algorithms.isomorphism.numerical_edge_match("m", 0)
    for cls in _group_by_invariant(graphs).values():
        for a, b in itertools.combinations(cls, 2):
            assert not nx.is_isomorphic(_nx(a), _nx(b), edge_match=match)


def _group_by_invariant(graphs):
    out = {}
    for g in graphs:
        key = (g.m, tuple(sorted(g.degree(v) for v in range(g.n))), tuple(sorted(g.multiplicities().values())))
        out.setdefault(key, []).append(g)
    return out


def test_filter_and_caps():
    everything = list(enumerate_graphs(5))
    kept = list(enumerate_graphs(5, filter=lambda g: not has_c5(g)))
    assert len(kept) == sum(1 for g in everything if not has_c5(g)) < len(everything)
    assert all(not has_c5(g) for g in kept)
    capped = list(enumerate_graphs(5, max_degree=2))
    assert all(degree_stats(g)[0] <= 2 for g in capped)
    assert len(capped) == sum(1 for g in everything if degree_stats(g)[0] <= 2)


def test_limits():
    with pytest.raises(LimitExceeded):
        next(enumerate_graphs(9))
    with pytest.raises(LimitExceeded):
        next(enumerate_graphs(7, max_mult=2))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_canonical_form_is_relabelling_invariant(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    vec = tuple(rng.randrange(3) for _ in pairs)
    perm = list(range(n))
    rng.shuffle(perm)
    mat = {p: m for p, m in zip(pairs, vec)}
    moved = tuple(mat[tuple(sorted((perm.index(i), perm.index(j))))] for i, j in pairs)
    assert canonical_form(n, vec) == canonical_form(n, moved)
