import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchext.errors import Unsatisfiable
from matchext.extension import check_hypothesis
from matchext.gen import GenParams, hypothesis_instances, random_multigraph, random_precolouring, sample_distant_matching
from matchext.graph import degree_stats, edge_distance, has_c5, is_bipartite, is_matching
from support import TRIANGLE, path_graph


@settings(max_examples=60, deadline=None)
@given(
    st.integers(2, 30),
    st.integers(0, 80),
    st.integers(1, 8),
    st.integers(1, 3),
    st.sampled_from(["any", "bipartite", "c5free"]),
    st.integers(0, 2**31),
)
def test_generator_respects_caps_and_is_deterministic(n, edges, max_degree, max_mult, cls, seed):
    p = GenParams(n, edges, max_degree, max_mult, cls, seed)
    g = random_multigraph(p)
    assert g == random_multigraph(p)
    delta, mu = degree_stats(g)
    assert delta <= max_degree and mu <= max_mult and g.m <= edges
    if cls == "bipartite":
        assert is_bipartite(g)
    if cls == "c5free":
        assert not has_c5(g)


def test_simple_when_multiplicity_capped():
    g = random_multigraph(GenParams(10, 30, 9, 1, seed=2))
    assert degree_stats(g)[1] <= 1 and g.m == 30


def test_strict_mode():
    with pytest.raises(Unsatisfiable):
        random_multigraph(GenParams(3, 10, 2, 1, seed=0), strict=True)
    with pytest.raises(ValueError):
        GenParams(3, 3, graph_class="planar")


def test_distant_matching_examples():
    p = path_graph(30)
    m = sample_distant_matching(p, 9, 3, seed=1)
    assert m is not None and len(m) == 3
    assert all(edge_distance(p, a, b) >= 9 for a in m for b in m if a < b)
    assert all(abs(a - b) >= 10 for a in m for b in m if a < b)
    assert sample_distant_matching(TRIANGLE, 9, 2) is None
    one = sample_distant_matching(TRIANGLE, 9, 1)
    assert one is not None and len(one) == 1
    assert sample_distant_matching(TRIANGLE, 9, 0) == []


def test_precolouring_examples():
    assert random_precolouring([3, 5, 8], 1) == {3: 1, 5: 1, 8: 1}
    assert random_precolouring([], 4) == {}
    assert random_precolouring([1, 2], 5, seed=9) == random_precolouring([2, 1], 5, seed=9)


def test_precolouring_is_uniform_within_five_sigma():
    k, samples = 6, 10_000
    counts = [0] * (k + 1)
    for seed in range(samples):
        (c,) = random_precolouring([0], k, seed=seed).values()
        counts[c] += 1
    p = 1 / k
    sigma = math.sqrt(samples * p * (1 - p))
    assert all(abs(counts[c] - samples * p) <= 5 * sigma for c in range(1, k + 1))


def test_hypothesis_instances_are_valid_and_reproducible():
    a = [(i.graph, i.phi) for i in hypothesis_instances(40, 9, seed=3)]
    b = [(i.graph, i.phi) for i in hypothesis_instances(40, 9, seed=3)]
    assert a == b
    for g, phi in a:
        assert check_hypothesis(g, phi, "basic") and is_matching(g, phi)
        assert g.n <= 40 and degree_stats(g)[0] <= 6 and degree_stats(g)[1] <= 2 and 1 <= len(phi) <= 3
    for inst in hypothesis_instances(40, 5, seed=3, graph_class="c5free"):
        assert check_hypothesis(inst.graph, inst.phi, "c5free")


def test_seeded_stream_is_pinned():
    # regression guard on the MT19937 stream and the draw order
    g = random_multigraph(GenParams(6, 6, seed=77))
    assert g.edges == ((2, 3), (1, 2), (0, 1), (2, 4), (4, 5), (0, 3))
    assert random_precolouring([0, 1, 2], 5, seed=77) == {0: 3, 1: 3, 2: 2}
