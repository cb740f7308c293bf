"""Exhaustive search for precoloured matchings that do not extend.

For every small multigraph (one per isomorphism class), every matching whose
edges are pairwise at distance at least ``d`` and every precolouring of it is
handed to the exact oracle, one instance per orbit under graph automorphisms
combined with palette permutations.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .errors import BudgetExceeded
from .graph import UNREACHABLE, Multigraph, edge_distance, has_c5, is_bipartite, is_connected, palette_size
from .oracle import Instance, _refine, enumerate_graphs, oracle_extend

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class HuntParams:
    max_n: int
    distance: int
    max_degree: int | None = None
    max_mult: int = 1
    graph_class: str = "any"
    exact_distance: bool = False
    connected_only: bool = True
    min_n: int = 2
    budget: int | None = None
    keep_witnesses: int = 50
    jobs: int = 1

    def __post_init__(self):
        if self.graph_class not in ("any", "bipartite", "c5free"):
            raise ValueError(f"unknown graph class {self.graph_class!r}")
        if self.distance < 0 or self.max_n < 0 or self.max_mult < 1:
            raise ValueError("invalid hunt parameters")


@dataclass
class HuntReport:
    params: HuntParams
    graphs: int = 0
    tested: int = 0
    extendable: int = 0
    non_extendable: int = 0
    unknown: int = 0
    witnesses: list[Instance] = field(default_factory=list)

    def consistent(self) -> bool:
        return self.tested == self.extendable + self.non_extendable + self.unknown

    def reverify(self) -> bool:
        """Every stored witness is still non-extendable under the oracle."""
        return all(oracle_extend(w.graph, w.phi) is None for w in self.witnesses)


def colourings_up_to_symmetry(size: int, k: int):
    """Colour sequences where each new colour is at most one more than the largest so far."""
    if size == 0:
        yield []
        return
    seq = [0] * size

    def rec(pos: int, top: int):
        if pos == size:
            yield list(seq)
            return
        for c in range(1, min(top + 1, k) + 1):
            seq[pos] = c
            yield from rec(pos + 1, max(top, c))

    yield from rec(0, 0)


def distant_matchings(g: Multigraph, d: int, exact: bool = False, max_size: int | None = None):
    """Nonempty matchings, by increasing size, whose edges are pairwise at distance >= ``d``.

    Parallel edges are interchangeable, so only the lowest id per vertex pair is used.
    """
    reps = sorted({g.edges.index(uv) for uv in g.edges})
    dist = {(e, f): edge_distance(g, e, f) for e in reps for f in reps if e < f}
    threshold = max(d, 1)
    levels = [[(e,) for e in reps]]
    size = 1
    while levels[-1] and (max_size is None or size < max_size):
        nxt = []
        for combo in levels[-1]:
            for f in reps:
                if f > combo[-1] and all(dist[e, f] >= threshold for e in combo):
                    nxt.append(combo + (f,))
        levels.append(nxt)
        size += 1
    for level in levels:
        for combo in level:
            if exact:
                if len(combo) < 2:
                    continue
                low = min(dist[e, f] for i, e in enumerate(combo) for f in combo[i + 1:])
                if low == UNREACHABLE or low != d:
                    continue
            yield list(combo)


def automorphisms(g: Multigraph) -> list[tuple[int, ...]]:
    """All vertex permutations preserving every multiplicity (identity first)."""
    n = g.n
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mult = g.multiplicities()
    vec = tuple(mult.get(p, 0) for p in pairs)
    col = _refine(n, vec, pairs)
    cells = [[v for v in range(n) if col[v] == c] for c in sorted(set(col))]
    flat = [v for cell in cells for v in cell]
    out = []
    for choice in itertools.product(*(itertools.permutations(c) for c in cells)):
        sigma = [0] * n
        for src, dst in zip(flat, (v for part in choice for v in part)):
            sigma[src] = dst
        if all(mult.get(tuple(sorted((sigma[a], sigma[b]))), 0) == m for (a, b), m in mult.items()):
            out.append(tuple(sigma))
    out.sort(key=lambda s: s != tuple(range(n)))
    return out


def _relabel(seq) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(c, len(seen) + 1) for c in seq)


def _orbit_minimal(pairs: list[tuple[int, int]], cols: list[int], autos) -> bool:
    """True when no automorphism plus palette permutation gives a smaller instance."""
    def key(sigma):
        image = sorted((tuple(sorted((sigma[u], sigma[v]))), c) for (u, v), c in zip(pairs, cols))
        return tuple(p for p, _ in image), _relabel(c for _, c in image)

    own = key(autos[0])
    return all(key(sigma) >= own for sigma in autos[1:])


def _class_ok(g: Multigraph, graph_class: str) -> bool:
    if graph_class == "bipartite":
        return is_bipartite(g)
    if graph_class == "c5free":
        return not has_c5(g)
    return True


def _graphs(p: HuntParams):
    def keep(g: Multigraph) -> bool:
        if g.m == 0:
            return False
        if p.connected_only and not is_connected(g):
            return False
        return _class_ok(g, p.graph_class)

    sizes = range(max(p.min_n, 1), p.max_n + 1) if p.connected_only else [p.max_n]
    for n in sizes:
        yield from enumerate_graphs(n, p.max_degree, p.max_mult, keep)


def _hunt_graph(args) -> tuple[int, int, int, int, list[tuple]]:
    g, p = args
    k = palette_size(g)
    autos = automorphisms(g)
    tested = ext = non = unk = 0
    witnesses = []
    for matching in distant_matchings(g, p.distance, p.exact_distance):
        pairs = [g.edges[e] for e in matching]
        for cols in colourings_up_to_symmetry(len(matching), k):
            if len(autos) > 1 and not _orbit_minimal(pairs, cols, autos):
                continue
            phi = dict(zip(matching, cols))
            tested += 1
            try:
                found = oracle_extend(g, phi, k, p.budget)
            except BudgetExceeded:
                unk += 1
                continue
            if found is None:
                non += 1
                witnesses.append((g.n, g.edges, phi))
            else:
                ext += 1
    return tested, ext, non, unk, witnesses


def hunt(p: HuntParams) -> HuntReport:
    """Run the search; results do not depend on ``p.jobs``."""
    report = HuntReport(p)
    work = ((g, p) for g in _graphs(p))
    if p.jobs > 1:
        with ProcessPoolExecutor(max_workers=p.jobs) as pool:
            results = list(pool.map(_hunt_graph, work, chunksize=64))
    else:
        results = map(_hunt_graph, work)
    for tested, ext, non, unk, wits in results:
        report.graphs += 1
        report.tested += tested
        report.extendable += ext
        report.non_extendable += non
        report.unknown += unk
        for n, edges, phi in wits:
            if len(report.witnesses) < p.keep_witnesses:
                report.witnesses.append(Instance(Multigraph(n, edges), phi))
    log.info("hunt %s: %d graphs, %d instances, %d non-extendable", asdict(p), report.graphs, report.tested, report.non_extendable)
    return report
