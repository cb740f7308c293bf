"""Loopless multigraphs with stable edge ids and edge-to-edge distances."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from functools import total_ordering

from .errors import LoopRejected, VertexOutOfRange


@total_ordering
class _Unreachable:
    """Distance between parts of different components; larger than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __hash__(self):
        return hash("unreachable")

    def __repr__(self):
        return "UNREACHABLE"

    def __reduce__(self):
        return (_Unreachable, ())


UNREACHABLE = _Unreachable()


class Multigraph:
    """Immutable loopless multigraph on vertices ``0..n-1``.

    Edge ``i`` is ``edges[i]``, an endpoint pair stored with the smaller vertex
    first.  Parallel pairs are distinct edges.
    """

    __slots__ = ("n", "edges", "adj", "_dist", "_stats")

    def __init__(self, n: int, pairs: Iterable[tuple[int, int]]):
        if n < 0:
            raise VertexOutOfRange(f"negative vertex count {n}")
        edges = []
        adj: list[list[int]] = [[] for _ in range(n)]
        for eid, (u, v) in enumerate(pairs):
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"edge {eid} = ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise LoopRejected(f"edge {eid} is a loop at vertex {u}")
            if u > v:
                u, v = v, u
            edges.append((u, v))
            adj[u].append(eid)
            adj[v].append(eid)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(edges)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(a) for a in adj)
        self._dist: dict[int, list[int | None]] = {}
        self._stats: tuple[int, int] | None = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self):
        return f"Multigraph(n={self.n}, edges={list(self.edges)})"

    def __eq__(self, other):
        return isinstance(other, Multigraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __getstate__(self):
        return (self.n, self.edges)

    def __setstate__(self, state):
        n, edges = state
        self.__init__(n, edges)

    def other(self, eid: int, v: int) -> int:
        """Endpoint of edge ``eid`` opposite to ``v``."""
        a, b = self.edges[eid]
        return b if v == a else a

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges_between(self, u: int, v: int) -> list[int]:
        return [e for e in self.adj[u] if self.other(e, u) == v]

    def neighbours(self, v: int) -> list[int]:
        return sorted({self.other(e, v) for e in self.adj[v]})

    def multiplicities(self) -> dict[tuple[int, int], int]:
        mult: dict[tuple[int, int], int] = {}
        for pair in self.edges:
            mult[pair] = mult.get(pair, 0) + 1
        return mult

    def incident(self, e: int, f: int) -> bool:
        return bool(set(self.edges[e]) & set(self.edges[f]))

    def vertex_distances(self, source: int) -> list[int | None]:
        """BFS edge counts from ``source``; ``None`` marks unreachable vertices."""
        cached = self._dist.get(source)
        if cached is not None:
            return cached
        dist: list[int | None] = [None] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for eid in self.adj[x]:
                y = self.other(eid, x)
                if dist[y] is None:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        self._dist[source] = dist
        return dist

    def vertex_edge_distance(self, w: int, e: int):
        """Shortest-path edge count from ``w`` to the nearer endpoint of ``e``."""
        dist = self.vertex_distances(w)
        ds = [dist[x] for x in self.edges[e] if dist[x] is not None]
        return min(ds) if ds else UNREACHABLE


def build_graph(n: int, pairs: Sequence[tuple[int, int]]) -> Multigraph:
    return Multigraph(n, pairs)


def degree_stats(g: Multigraph) -> tuple[int, int]:
    """Return ``(max degree, max edge multiplicity)``; ``(0, 0)`` for an edgeless graph."""
    if g._stats is None:
        delta = max((len(a) for a in g.adj), default=0)
        mu = max(g.multiplicities().values(), default=0)
        g._stats = (delta, mu)
    return g._stats


def palette_size(g: Multigraph) -> int:
    """Size of the full palette, max degree plus multiplicity (multiplicity clamped to 1)."""
    delta, mu = degree_stats(g)
    return delta + max(mu, 1)


def edge_distance(g: Multigraph, e: int, f: int):
    """Fewest edges on a path joining an endpoint of ``e`` to an endpoint of ``f``.

    Incident edges are at distance 0.  Returns ``UNREACHABLE`` across components.
    """
    best = UNREACHABLE
    for x in g.edges[e]:
        dist = g.vertex_distances(x)
        for y in g.edges[f]:
            d = dist[y]
            if d is not None and d < best:
                best = d
    return best


def min_pairwise_distance(g: Multigraph, s: Iterable[int]):
    edges = sorted(set(s))
    best = UNREACHABLE
    for i, e in enumerate(edges):
        for f in edges[i + 1:]:
            d = edge_distance(g, e, f)
            if d < best:
                best = d
    return best


def min_cross_distance(g: Multigraph, s: Iterable[int], t: Iterable[int]):
    """Minimum distance between an edge of ``s`` and a different edge of ``t``."""
    t = sorted(set(t))
    best = UNREACHABLE
    for e in sorted(set(s)):
        for f in t:
            if e != f:
                d = edge_distance(g, e, f)
                if d < best:
                    best = d
    return best


def is_matching(g: Multigraph, s: Iterable[int]) -> bool:
    seen: set[int] = set()
    for e in s:
        u, v = g.edges[e]
        if u in seen or v in seen:
            return False
        seen.add(u)
        seen.add(v)
    return True


def is_maximal_matching(g: Multigraph, s: Iterable[int]) -> bool:
    s = list(s)
    if not is_matching(g, s):
        return False
    covered = {x for e in s for x in g.edges[e]}
    return all(u in covered or v in covered for u, v in g.edges)


def simple_adjacency(g: Multigraph) -> list[set[int]]:
    nbrs: list[set[int]] = [set() for _ in range(g.n)]
    for u, v in g.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    return nbrs


def has_c5(g: Multigraph) -> bool:
    """True iff five distinct vertices carry a 5-cycle."""
    nbrs = simple_adjacency(g)
    # Root each cycle at its smallest vertex; extend paths through larger vertices only.
    for a in range(g.n):
        for b in nbrs[a]:
            if b < a:
                continue
            for c in nbrs[b]:
                if c <= a or c == b:
                    continue
                for d in nbrs[c]:
                    if d <= a or d in (b, c):
                        continue
                    for e in nbrs[d]:
                        if e <= a or e in (b, c, d):
                            continue
                        if a in nbrs[e]:
                            return True
    return False


def is_bipartite(g: Multigraph) -> bool:
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] != -1:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for eid in g.adj[x]:
                y = g.other(eid, x)
                if side[y] == -1:
                    side[y] = 1 - side[x]
                    queue.append(y)
                elif side[y] == side[x]:
                    return False
    return True


def is_connected(g: Multigraph) -> bool:
    if g.n == 0:
        return True
    return all(d is not None for d in g.vertex_distances(0))
