"""Seeded random instances: capped multigraphs, distant matchings, precolourings.

All randomness comes from :class:`random.Random` (MT19937) seeded explicitly,
and only ``random()``, ``randrange`` and ``shuffle`` are used, so outputs do not
drift between Python releases.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import Unsatisfiable
from .graph import Multigraph, edge_distance, has_c5, is_matching, min_pairwise_distance

RNG_NAME = "python-random-MT19937"
CLASSES = ("any", "bipartite", "c5free")


@dataclass(frozen=True)
class GenParams:
    n: int
    edges: int
    max_degree: int = 6
    max_mult: int = 1
    graph_class: str = "any"
    seed: int = 0

    def __post_init__(self):
        if self.n < 0 or self.edges < 0:
            raise ValueError("vertex and edge counts must be non-negative")
        if self.max_degree < 1 or self.max_mult < 1:
            raise ValueError("degree and multiplicity caps must be positive")
        if self.graph_class not in CLASSES:
            raise ValueError(f"graph class must be one of {CLASSES}")


def _rng(seed) -> random.Random:
    return random.Random(seed)


def _creates_c5(nbrs: list[set[int]], u: int, v: int) -> bool:
    """Would a new edge ``u``-``v`` close a 5-cycle (a path with 4 edges from u to v)?"""
    if v in nbrs[u]:
        return False
    for a in nbrs[u]:
        if a == v:
            continue
        for b in nbrs[a]:
            if b in (u, v):
                continue
            for c in nbrs[b]:
                if c in (u, a, v):
                    continue
                if v in nbrs[c]:
                    return True
    return False


def random_multigraph(p: GenParams, strict: bool = False) -> Multigraph:
    """Random multigraph under the caps of ``p``.

    When the edge target cannot be reached after bounded retries the best
    effort is returned, or :class:`Unsatisfiable` is raised if ``strict``.
    """
    rng = _rng(p.seed)
    n = p.n
    side = [rng.randrange(2) for _ in range(n)] if p.graph_class == "bipartite" else None
    deg = [0] * n
    mult: dict[tuple[int, int], int] = {}
    nbrs: list[set[int]] = [set() for _ in range(n)]
    pairs: list[tuple[int, int]] = []
    attempts = 0
    limit = 50 * (p.edges + 1) + 100
    while len(pairs) < p.edges and attempts < limit and n >= 2:
        attempts += 1
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        if v >= u:
            v += 1
        a, b = min(u, v), max(u, v)
        if deg[a] >= p.max_degree or deg[b] >= p.max_degree:
            continue
        if mult.get((a, b), 0) >= p.max_mult:
            continue
        if side is not None and side[a] == side[b]:
            continue
        if p.graph_class == "c5free" and _creates_c5(nbrs, a, b):
            continue
        pairs.append((a, b))
        deg[a] += 1
        deg[b] += 1
        mult[(a, b)] = mult.get((a, b), 0) + 1
        nbrs[a].add(b)
        nbrs[b].add(a)
    g = Multigraph(n, pairs)
    if p.graph_class == "c5free":
        assert not has_c5(g)
    if len(pairs) < p.edges and strict:
        raise Unsatisfiable(f"reached {len(pairs)} of {p.edges} edges under the caps", g)
    return g


def sample_distant_matching(g: Multigraph, d: int, size: int, seed=0, attempts: int = 50) -> list[int] | None:
    """Random matching of ``size`` edges with pairwise distance at least ``d``, or None."""
    if size == 0:
        return []
    if g.m == 0:
        return None
    rng = _rng(seed)
    order = list(range(g.m))
    threshold = max(d, 1)
    for _ in range(attempts):
        rng.shuffle(order)
        chosen: list[int] = []
        for e in order:
            if all(edge_distance(g, e, f) >= threshold for f in chosen):
                chosen.append(e)
                if len(chosen) == size:
                    break
        if len(chosen) == size:
            chosen.sort()
            assert is_matching(g, chosen) and min_pairwise_distance(g, chosen) >= d
            return chosen
    return None


def random_precolouring(m, k: int, seed=0) -> dict[int, int]:
    """Independent uniform colours from ``1..k`` on the edges of ``m``."""
    rng = _rng(seed)
    return {e: 1 + rng.randrange(k) for e in sorted(m)}


def hypothesis_instances(
    count: int,
    distance: int,
    seed: int = 0,
    graph_class: str = "any",
    max_n: int = 40,
    max_degree: int = 6,
    max_mult: int = 2,
    max_matching: int = 3,
):
    """Yield ``count`` seeded instances whose precoloured matching is ``distance``-apart.

    With ``graph_class="c5free"`` the stream alternates between the bipartite
    generator and general graphs rejected when they contain a 5-cycle.
    """
    from .graph import palette_size
    from .oracle import Instance

    rng = _rng(seed)
    made = 0
    draw = 0
    while made < count:
        draw += 1
        sub = rng.randrange(1 << 30)
        n = 2 + rng.randrange(max_n - 1)
        edges = n // 2 + rng.randrange(2 * n)
        cls = graph_class
        if graph_class == "c5free":
            cls = "bipartite" if draw % 2 else "any"
        p = GenParams(n, edges, 1 + rng.randrange(max_degree), 1 + rng.randrange(max_mult), cls, sub)
        g = random_multigraph(p)
        if graph_class == "c5free" and has_c5(g):
            continue
        if graph_class == "bipartite" and cls != "bipartite":
            continue
        m = sample_distant_matching(g, distance, 1 + rng.randrange(max_matching), sub)
        if not m:
            continue
        made += 1
        yield Instance(g, random_precolouring(m, palette_size(g), sub), seed=sub)
