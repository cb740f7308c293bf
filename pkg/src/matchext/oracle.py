"""Exact extension oracle and exhaustive small-multigraph enumeration."""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass, field

from .errors import BudgetExceeded, LimitExceeded
from .graph import Multigraph, degree_stats, has_c5, min_pairwise_distance, palette_size

SIMPLE_LIMIT = 8
MULTI_LIMIT = 6


@dataclass
class Instance:
    graph: Multigraph
    phi: dict[int, int]
    seed: int | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        delta, mu = degree_stats(self.graph)
        self.meta = {
            "delta": delta,
            "mu": mu,
            "palette": palette_size(self.graph),
            "min_distance": min_pairwise_distance(self.graph, self.phi),
            "c5_free": not has_c5(self.graph),
            "seed": self.seed,
        }


def _popcount(x: int) -> int:
    return x.bit_count()


def oracle_extend(g: Multigraph, phi: Mapping[int, int], k: int | None = None, budget: int | None = None) -> list[int] | None:
    """A proper ``k``-colouring agreeing with ``phi``, or None if none exists.

    Depth-first search choosing the uncoloured edge with fewest available
    colours (ties by id), with forward checking on neighbouring edges and a
    per-vertex count check.  ``budget`` caps search nodes.
    """
    k = palette_size(g) if k is None else k
    full = ((1 << (k + 1)) - 1) & ~1
    ends = g.edges
    colour = [0] * g.m
    present = [0] * g.n
    for e, c in phi.items():
        if not 1 <= c <= k:
            return None
        u, v = ends[e]
        if (present[u] | present[v]) >> c & 1:
            return None
        present[u] |= 1 << c
        present[v] |= 1 << c
        colour[e] = c
    open_at = [sum(1 for e in g.adj[v] if not colour[e]) for v in range(g.n)]
    for v in range(g.n):
        if open_at[v] > (full & ~present[v]).bit_count():
            return None
    around = [tuple(f for f in g.adj[u] + g.adj[v] if f != e) for e, (u, v) in enumerate(ends)]
    todo = [e for e in range(g.m) if not colour[e]]
    nodes = 0

    def search(left: int) -> bool:
        nonlocal nodes
        if not left:
            return True
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceeded(f"oracle exceeded {budget} nodes")
        best, best_dom, best_size = -1, 0, k + 1
        for e in todo:
            if colour[e]:
                continue
            u, v = ends[e]
            d = full & ~(present[u] | present[v])
            size = d.bit_count()
            if size < best_size:
                best, best_dom, best_size = e, d, size
                if size <= 1:
                    break
        if best_size == 0:
            return False
        e = best
        u, v = ends[e]
        open_at[u] -= 1
        open_at[v] -= 1
        d = best_dom
        nbrs = [f for f in around[e] if not colour[f]]
        while d:
            bit = d & -d
            d ^= bit
            present[u] |= bit
            present[v] |= bit
            colour[e] = bit.bit_length() - 1
            ok = open_at[u] <= (full & ~present[u]).bit_count() and open_at[v] <= (full & ~present[v]).bit_count()
            if ok:
                for f in nbrs:
                    if f != e and not colour[f]:
                        a, b = ends[f]
                        if not full & ~(present[a] | present[b]):
                            ok = False
                            break
            if ok and search(left - 1):
                return True
            present[u] &= ~bit
            present[v] &= ~bit
            colour[e] = 0
        open_at[u] += 1
        open_at[v] += 1
        return False

    if search(len(todo)):
        return colour
    return None


def oracle_instance(inst: Instance, k: int | None = None, budget: int | None = None) -> list[int] | None:
    return oracle_extend(inst.graph, inst.phi, k, budget)


# --- enumeration -----------------------------------------------------------


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _refine(n: int, mult: tuple[int, ...], pairs) -> list[int]:
    """Stable colour refinement; the resulting vertex colours are isomorphism-invariant."""
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for (i, j), m in zip(pairs, mult):
        if m:
            nbrs[i].append((j, m))
            nbrs[j].append((i, m))
    col = [sum(m for _, m in nb) for nb in nbrs]
    classes = len(set(col))
    while True:
        sig = [(col[v], tuple(sorted((col[w], m) for w, m in nbrs[v]))) for v in range(n)]
        # Relabel by sorted signature so colours stay comparable across graphs.
        ranks = {s: r for r, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(ranks) == classes:
            return new
        col, classes = new, len(ranks)


def canonical_form(n: int, mult: tuple[int, ...], pairs=None) -> tuple:
    """Exact canonical multiplicity vector: lexicographic minimum over colour-respecting relabellings."""
    pairs = _pairs(n) if pairs is None else pairs
    col = _refine(n, mult, pairs)
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(col[v], []).append(v)
    ordered = [cells[c] for c in sorted(cells)]
    matrix = [[0] * n for _ in range(n)]
    for (i, j), m in zip(pairs, mult):
        matrix[i][j] = matrix[j][i] = m
    best = None
    for choice in itertools.product(*(itertools.permutations(c) for c in ordered)):
        order = [v for part in choice for v in part]
        code = tuple(matrix[order[i]][order[j]] for i, j in pairs)
        if best is None or code < best:
            best = code
    return (tuple(sorted(col)), best)


def _to_multigraph(n: int, mult, pairs) -> Multigraph:
    edges = []
    for (i, j), m in zip(pairs, mult):
        edges.extend([(i, j)] * m)
    return Multigraph(n, edges)


def enumerate_graphs(
    n: int,
    max_degree: int | None = None,
    max_mult: int = 1,
    filter: Callable[[Multigraph], bool] | None = None,
    limit: int | None = None,
) -> Iterator[Multigraph]:
    """Every multigraph on ``n`` vertices under the caps, one per isomorphism class.

    Graphs are produced by edge count, then in discovery order.  Smaller
    graphs appear padded with isolated vertices.
    """
    cap = limit if limit is not None else (SIMPLE_LIMIT if max_mult <= 1 else MULTI_LIMIT)
    if n > cap:
        raise LimitExceeded(f"exhaustive enumeration limited to n <= {cap} for multiplicity {max_mult}")
    if n < 0:
        raise LimitExceeded("negative vertex count")
    max_degree = max_degree if max_degree is not None else max_mult * max(n - 1, 0)
    pairs = _pairs(n)
    level = [tuple([0] * len(pairs))]
    while level:
        out = []
        for mult in level:
            g = _to_multigraph(n, mult, pairs)
            if filter is None or filter(g):
                yield g
        seen: set[tuple] = set()
        for mult in level:
            deg = [0] * n
            for (i, j), m in zip(pairs, mult):
                deg[i] += m
                deg[j] += m
            for p, (i, j) in enumerate(pairs):
                if mult[p] >= max_mult or deg[i] >= max_degree or deg[j] >= max_degree:
                    continue
                child = mult[:p] + (mult[p] + 1,) + mult[p + 1:]
                key = canonical_form(n, child, pairs)
                if key in seen:
                    continue
                seen.add(key)
                out.append(child)
        level = out
