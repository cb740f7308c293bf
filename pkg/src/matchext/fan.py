"""Vizing multi-fans, fan shifts, Kempe chains and the two base colourings.

Completion never searches: a maximal multi-fan that is not *elementary* (free
sets of the pivot and fan vertices pairwise disjoint) can always be completed
by a shift along a justification chain, possibly after one Kempe swap.  For
an elementary maximal fan the fan equation

    sum over fan vertices y of (deg(y) + mult_F(z, y) - k) = 2

holds, which is what guarantees the uncovered fan vertices that the pivot
shifts and the matching-avoiding colouring below rely on.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import (
    ChainUnreachable,
    InternalInvariantBreach,
    MatchingConflict,
    NotMaximalMatching,
)
from .graph import Multigraph, degree_stats, is_maximal_matching
from .state import ColouringState, lowest_colour


@dataclass(frozen=True)
class FanEntry:
    edge: int
    vertex: int
    justifier: int | None  # index of an earlier entry whose vertex misses this edge's colour
    depth: int  # length of the justification chain from the seed


@dataclass
class MultiFan:
    pivot: int
    entries: list[FanEntry] = field(default_factory=list)
    maximal: bool = False

    def __len__(self):
        return len(self.entries)

    @property
    def seed(self) -> int:
        return self.entries[0].edge

    def chain(self, target: int) -> list[int]:
        """Entry indices from the seed to ``target`` following justifier links."""
        if not 0 <= target < len(self.entries):
            raise ChainUnreachable(f"no fan entry {target}")
        out = [target]
        while self.entries[out[-1]].justifier is not None:
            out.append(self.entries[out[-1]].justifier)
        if out[-1] != 0:
            raise ChainUnreachable(f"entry {target} is not linked to the seed")
        out.reverse()
        return out


def build_multi_fan(s: ColouringState, z: int, e: int) -> MultiFan:
    """Maximal multi-fan at ``z`` seeded by the uncoloured edge ``e``.

    Edges are appended by smallest colour first; the justifier is the earliest
    fan entry whose vertex misses that colour.
    """
    g = s.host
    if s.colour[e]:
        raise ValueError(f"seed edge {e} is coloured")
    if z not in g.edges[e]:
        raise ValueError(f"seed edge {e} is not incident to pivot {z}")
    x1 = g.other(e, z)
    fan = MultiFan(z, [FanEntry(e, x1, None, 0)])
    justify: dict[int, int] = {}
    avail = 0
    seen_vertices: set[int] = set()

    def absorb(idx: int, vertex: int) -> None:
        nonlocal avail
        if vertex in seen_vertices:
            return
        seen_vertices.add(vertex)
        fresh = s.free_mask(vertex) & ~avail
        avail |= fresh
        while fresh:
            c = lowest_colour(fresh)
            justify[c] = idx
            fresh &= fresh - 1

    absorb(0, x1)
    used = 0
    while True:
        cand = avail & s.present[z] & ~used
        if not cand:
            break
        c = lowest_colour(cand)
        used |= 1 << c
        f = s.at[z][c]
        j = justify[c]
        y = g.other(f, z)
        fan.entries.append(FanEntry(f, y, j, fan.entries[j].depth + 1))
        absorb(len(fan.entries) - 1, y)
    fan.maximal = True
    return fan


def fan_problems(s: ColouringState, fan: MultiFan) -> list[str]:
    """Invariant violations of ``fan`` against ``s`` (empty when valid)."""
    g = s.host
    z = fan.pivot
    problems = []
    edges = [en.edge for en in fan.entries]
    if len(set(edges)) != len(edges):
        problems.append("fan edges are not distinct")
    for k, en in enumerate(fan.entries):
        if z not in g.edges[en.edge] or g.other(en.edge, z) != en.vertex:
            problems.append(f"entry {k}: edge {en.edge} does not join {z} and {en.vertex}")
        if k == 0:
            if s.colour[en.edge] or en.justifier is not None:
                problems.append("seed must be uncoloured and unjustified")
            continue
        c = s.colour[en.edge]
        j = en.justifier
        if not c:
            problems.append(f"entry {k}: edge {en.edge} uncoloured")
        if j is None or not 0 <= j < k:
            problems.append(f"entry {k}: bad justifier {j}")
        elif not (s.free_mask(fan.entries[j].vertex) >> c) & 1:
            problems.append(f"entry {k}: colour {c} not free at vertex {fan.entries[j].vertex}")
    if fan.maximal:
        avail = 0
        for en in fan.entries:
            avail |= s.free_mask(en.vertex)
        in_fan = set(edges)
        for c, f in s.at[z].items():
            if f not in in_fan and (avail >> c) & 1:
                problems.append(f"fan not maximal: edge {f} of colour {c} can be appended")
    return problems


def _shift(s: ColouringState, fan: MultiFan, target: int) -> int:
    """Move colours down the chain to ``target``; return the newly uncoloured edge."""
    chain = fan.chain(target)
    edges = [fan.entries[k].edge for k in chain]
    new = [s.colour[f] for f in edges[1:]] + [0]
    for f in edges[1:]:
        s.unassign(f)
    for f, c in zip(edges, new):
        if c:
            s.assign(f, c)
    return edges[-1]


def shift_uncolour(s: ColouringState, fan: MultiFan, target: int) -> int:
    """Colour the seed by shifting along the chain to ``target``; move ``f_target`` into the matching."""
    if target == 0:
        raise ChainUnreachable("target is the seed itself")
    fan.chain(target)
    x = fan.entries[target].vertex
    if s.covered(x):
        raise MatchingConflict(f"fan vertex {x} is covered by matching edge {s.mate[x]}")
    seed = fan.seed
    s.begin()
    try:
        s.remove_from_matching(seed)
        f = _shift(s, fan, target)
        s.add_to_matching(f)
    except BaseException:
        s.rollback()
        raise
    s.commit()
    return f


def kempe_chain(s: ColouringState, a: int, b: int, v: int) -> tuple[list[int], list[int]]:
    """Edges and vertices of the maximal ``a``/``b`` alternating path or cycle through ``v``."""
    seen_v = {v}
    order_v = [v]
    edges: list[int] = []
    seen_e: set[int] = set()
    queue = deque([v])
    g = s.host
    while queue:
        x = queue.popleft()
        for c in (a, b):
            f = s.at[x].get(c)
            if f is None or f in seen_e:
                continue
            seen_e.add(f)
            edges.append(f)
            y = g.other(f, x)
            if y not in seen_v:
                seen_v.add(y)
                order_v.append(y)
                queue.append(y)
    return edges, order_v


def kempe_swap(s: ColouringState, a: int, b: int, v: int) -> None:
    if a == b:
        raise ValueError("Kempe swap needs two distinct colours")
    edges, _ = kempe_chain(s, a, b, v)
    old = [s.colour[f] for f in edges]
    for f in edges:
        s.unassign(f)
    for f, c in zip(edges, old):
        s.assign(f, b if c == a else a)


def _complete_with_fan(s: ColouringState, fan: MultiFan) -> bool:
    """Colour the seed if the fan is not elementary; leaves ``s`` untouched otherwise."""
    z = fan.pivot
    fz = s.free_mask(z)
    union = fz
    owner: dict[int, int] = {}  # missing colour -> fan vertex
    first: dict[int, int] = {}
    for k, en in enumerate(fan.entries):
        y = en.vertex
        if y in first:
            continue
        first[y] = k
        fy = s.free_mask(y)
        common = fy & fz
        if common:
            f = _shift(s, fan, k)
            s.assign(f, lowest_colour(common))
            return True
        clash = fy & union
        if clash:
            alpha = lowest_colour(clash)
            beta = lowest_colour(fz)
            earlier = owner[alpha]
            _, through_pivot = kempe_chain(s, alpha, beta, z)
            # The swap side must avoid the pivot's chain so the fan prefix stays valid.
            side = earlier if earlier not in through_pivot else y
            kempe_swap(s, alpha, beta, side)
            f = _shift(s, fan, first[side])
            s.assign(f, beta)
            return True
        union |= fy
        while fy:
            c = lowest_colour(fy)
            owner[c] = y
            fy &= fy - 1
    return False


def is_elementary(s: ColouringState, fan: MultiFan) -> bool:
    masks = [s.free_mask(fan.pivot)]
    for y in dict.fromkeys(en.vertex for en in fan.entries):
        masks.append(s.free_mask(y))
    union = 0
    for mk in masks:
        if union & mk:
            return False
        union |= mk
    return True


def complete_edge(s: ColouringState, z: int, e: int) -> tuple[bool, MultiFan]:
    """Try to colour uncoloured ``e`` from pivot ``z``; returns the fan used."""
    fan = build_multi_fan(s, z, e)
    s.begin()
    try:
        ok = _complete_with_fan(s, fan)
    except BaseException:
        s.rollback()
        raise
    if ok:
        s.commit()
    else:
        s.rollback()
    return ok, fan


def try_complete(s: ColouringState, z: int, e: int) -> bool:
    """Colour ``e`` (an uncoloured matching edge at ``z``) and drop it from the matching.

    Returns False, with ``s`` unchanged, exactly when the maximal fan at ``z``
    is elementary.
    """
    in_matching = e in s.matching
    s.begin()
    s.remove_from_matching(e)
    try:
        ok, _ = complete_edge(s, z, e)
    except BaseException:
        s.rollback()
        raise
    if ok:
        s.commit()
    else:
        s.rollback()
    assert ok or (e in s.matching) == in_matching
    return ok


def uncovered_target(s: ColouringState, fan: MultiFan, allowed=None) -> int | None:
    """Entry index of the best shift target not covered by the matching.

    Preference: shortest justification chain, then smallest vertex id.
    ``allowed`` optionally restricts the admissible vertices.
    """
    best = None
    for k, en in enumerate(fan.entries):
        if k == 0 or s.covered(en.vertex):
            continue
        if allowed is not None and en.vertex not in allowed:
            continue
        key = (en.depth, en.vertex, k)
        if best is None or key < best:
            best = key
    return None if best is None else best[2]


def vizing_colour(g: Multigraph) -> list[int]:
    """Proper colouring with at most max-degree-plus-multiplicity colours."""
    delta, mu = degree_stats(g)
    s = ColouringState(g, max(delta + max(mu, 1), 1))
    for e in range(g.m):
        ok, _ = complete_edge(s, g.edges[e][0], e)
        if not ok:
            raise InternalInvariantBreach(f"fan at edge {e} is elementary with k = delta + mu")
    return list(s.colour)


def fournier_colour(g: Multigraph, m) -> ColouringState:
    """Colour every edge outside the maximal matching ``m`` from ``1..delta+mu-1``."""
    m = sorted(set(m))
    if not is_maximal_matching(g, m):
        raise NotMaximalMatching(f"edges {m} are not a maximal matching")
    delta, mu = degree_stats(g)
    s = ColouringState(g, max(delta + max(mu, 1) - 1, 1), m)
    # Full-degree vertices of G - m; they are uncovered and pairwise non-adjacent.
    heavy = {v for v in range(g.n) if not s.covered(v) and g.degree(v) == delta}
    in_m = set(m)
    for e in range(g.m):
        if e in in_m:
            continue
        u, v = g.edges[e]
        pivot = v if v in heavy else u
        ok, fan = complete_edge(s, pivot, e)
        if ok:
            continue
        if pivot in heavy:
            raise InternalInvariantBreach(f"elementary fan at heavy vertex {pivot} for edge {e}")
        target = uncovered_target(s, fan, allowed=heavy)
        if target is None:
            raise InternalInvariantBreach(f"elementary fan at {pivot} for edge {e} has no heavy vertex")
        f = _shift(s, fan, target)
        y = fan.entries[target].vertex
        ok, _ = complete_edge(s, y, f)
        if not ok:
            raise InternalInvariantBreach(f"fan at heavy vertex {y} for edge {f} is elementary")
    return s
