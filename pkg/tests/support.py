"""Shared builders for the test-suite: random states and a brute-force colouring oracle."""

from __future__ import annotations

import random

import numpy as np

from matchext.extension import greedy_maximal_matching
from matchext.fan import fournier_colour, kempe_swap
from matchext.gen import GenParams, random_multigraph
from matchext.graph import Multigraph, degree_stats
from matchext.state import ColouringState

PETERSEN = Multigraph(
    10,
    [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
)
TRIANGLE = Multigraph(3, [(0, 1), (1, 2), (0, 2)])


def path_graph(edges: int) -> Multigraph:
    return Multigraph(edges + 1, [(i, i + 1) for i in range(edges)])


def cycle_graph(n: int) -> Multigraph:
    return Multigraph(n, [(i, (i + 1) % n) for i in range(n)])


def small_graph(rng: random.Random, max_n: int = 12, max_degree: int = 6, max_mult: int = 3) -> Multigraph:
    n = rng.randint(2, max_n)
    p = GenParams(n, rng.randint(1, 3 * n), rng.randint(1, max_degree), rng.randint(1, max_mult), "any", rng.randrange(1 << 30))
    return random_multigraph(p)


def random_state(seed: int, max_n: int = 12) -> ColouringState:
    """Proper colouring of G minus a random maximal matching over 1..delta+mu-1, scrambled by Kempe swaps."""
    rng = random.Random(seed)
    while True:
        g = small_graph(rng, max_n)
        if g.m:
            break
    order = list(range(g.m))
    rng.shuffle(order)
    covered: set[int] = set()
    m = []
    for e in order:
        if not covered & set(g.edges[e]):
            m.append(e)
            covered.update(g.edges[e])
    assert sorted(m) == sorted(set(m))
    s = fournier_colour(g, m)
    if s.k >= 2:
        for _ in range(rng.randint(0, 4)):
            a, b = rng.sample(range(1, s.k + 1), 2)
            kempe_swap(s, a, b, rng.randrange(g.n))
    return s


def greedy_partial_state(seed: int, max_n: int = 10) -> ColouringState:
    """Random partial colouring over 1..delta+mu-1 with a matching kept uncoloured; other gaps stay uncoloured."""
    rng = random.Random(seed)
    g = small_graph(rng, max_n)
    delta, mu = degree_stats(g)
    m = greedy_maximal_matching(g) if rng.random() < 0.5 else []
    s = ColouringState(g, max(delta + max(mu, 1) - 1, 1), m)
    for e in rng.sample(range(g.m), g.m):
        if e in s.matching:
            continue
        u, v = g.edges[e]
        free = sorted(s.free(u) & s.free(v))
        if free:
            s.assign(e, rng.choice(free))
    return s


def brute_force_extendable(g: Multigraph, phi: dict[int, int], k: int, chunk: int = 1 << 18) -> bool:
    """Scan every assignment of 1..k to the edges outside ``phi`` (vectorised)."""
    if any(not 1 <= c <= k for c in phi.values()):
        return False
    free = [e for e in range(g.m) if e not in phi]
    pos = {e: i for i, e in enumerate(free)}
    clashes_free, clashes_fixed = [], []
    for e in range(g.m):
        for f in range(e + 1, g.m):
            if not g.incident(e, f):
                continue
            if e in phi and f in phi:
                if phi[e] == phi[f]:
                    return False
            elif e in phi or f in phi:
                fixed, other = (e, f) if e in phi else (f, e)
                clashes_fixed.append((pos[other], phi[fixed]))
            else:
                clashes_free.append((pos[e], pos[f]))
    total = k ** len(free)
    if not free:
        return True
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        cols = np.empty((idx.size, len(free)), dtype=np.int8)
        for j in range(len(free)):
            cols[:, j] = idx % k + 1
            idx //= k
        ok = np.ones(cols.shape[0], dtype=bool)
        for a, c in clashes_fixed:
            ok &= cols[:, a] != c
        for a, b in clashes_free:
            ok &= cols[:, a] != cols[:, b]
        if ok.any():
            return True
    return False


def maximal_matchings(g: Multigraph):
    """Every maximal matching of ``g`` as a sorted edge list."""
    out = []

    def rec(e: int, chosen: list[int], covered: frozenset):
        if e == g.m:
            if all(covered & set(uv) for uv in g.edges):
                out.append(list(chosen))
            return
        u, v = g.edges[e]
        if u not in covered and v not in covered:
            rec(e + 1, chosen + [e], covered | {u, v})
        rec(e + 1, chosen, covered)

    rec(0, [], frozenset())
    return out
