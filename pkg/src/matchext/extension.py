"""Extending a precoloured distance-separated matching to a full colouring.

Both drivers work on a colouring of ``G - M'`` from ``1..k-1`` (``k`` the full
palette size), where ``M'`` is a matching containing the precoloured
matching ``M``.  Trouble is measured by the alternating paths that start at
the endpoints of precoloured edges; pivots at the far ends of those paths
either colour an edge of ``M'`` outright or swap it for a fan edge further
away, and each step strictly lowers a lexicographic potential.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from dataclasses import dataclass, field
from enum import Enum

from .errors import (
    AssemblyPreconditionFailed,
    HypothesisViolated,
    InternalInvariantBreach,
    MatchingConflict,
    NotAMatching,
)
from .fan import MultiFan, build_multi_fan, fournier_colour, shift_uncolour, try_complete, uncovered_target
from .graph import (
    Multigraph,
    has_c5,
    is_matching,
    min_cross_distance,
    min_pairwise_distance,
    palette_size,
)
from .state import ColouringState, Precolouring, Report, check_precolouring, verify_extension

log = logging.getLogger(__name__)

BASIC_DISTANCE = 9
RELAXED_CROSS_DISTANCE = 4
C5FREE_DISTANCE = 5


class Mode(str, Enum):
    BASIC = "basic"
    RELAXED = "relaxed"
    C5FREE = "c5free"


@dataclass
class AlternatingPath:
    origin: int
    colour: int
    vertices: list[int]
    edges: list[int]  # even positions coloured, odd positions in M' minus M
    closed: bool = False

    def __len__(self):
        return len(self.edges)


@dataclass(frozen=True, order=True)
class Potentials:
    matching_size: int
    beta: int
    gamma: int


@dataclass(frozen=True)
class BadEdgeWitness:
    e: int
    e1: int
    e2: int


class FixKind(str, Enum):
    COMPLETED = "completed"
    SHIFTED = "shifted"


@dataclass
class FixOutcome:
    kind: FixKind
    edge: int  # the matching edge that was fixed
    new_edge: int | None = None  # fan edge moved into M' on a shift
    fan: MultiFan | None = None


@dataclass
class Step:
    rule: str
    pivot: int
    edge: int
    outcome: str
    before: tuple
    after: tuple


@dataclass
class ExtensionResult:
    colouring: list[int]
    steps: list[Step] = field(default_factory=list)
    matching: list[int] = field(default_factory=list)


def greedy_maximal_matching(g: Multigraph, seed=()) -> list[int]:
    seed = sorted(set(seed))
    if not is_matching(g, seed):
        raise NotAMatching(f"seed {seed} is not a matching")
    covered = {x for e in seed for x in g.edges[e]}
    out = list(seed)
    for e, (u, v) in enumerate(g.edges):
        if u not in covered and v not in covered:
            out.append(e)
            covered.update((u, v))
    return sorted(out)


def alternating_path(s: ColouringState, phi: Precolouring, u: int, i: int) -> AlternatingPath:
    """Maximal path from ``u`` alternating colour-``i`` edges and edges of ``M'`` outside ``M``."""
    g = s.host
    home = s.mate[u]
    partner = g.other(home, u) if home != -1 else None
    path = AlternatingPath(u, i, [u], [])
    x = u
    visited = {u}
    while True:
        if len(path.edges) % 2 == 0:
            f = s.at[x].get(i)
        else:
            f = s.mate[x]
            if f == -1 or f in phi:
                f = None
        if f is None:
            break
        y = g.other(f, x)
        path.edges.append(f)
        path.vertices.append(y)
        if y in visited:
            raise InternalInvariantBreach(f"alternating walk from {u} revisits vertex {y}")
        visited.add(y)
        x = y
    path.closed = partner is not None and x == partner and len(path.edges) > 0
    return path


def _working_edges(phi: Precolouring, k: int) -> list[int]:
    return [e for e in sorted(phi) if phi[e] <= k - 1]


def all_paths(s: ColouringState, phi: Precolouring) -> dict[int, AlternatingPath]:
    """Alternating path for every endpoint of a precoloured edge with a working colour."""
    g = s.host
    out = {}
    for e in _working_edges(phi, s.k + 1):
        for x in g.edges[e]:
            out[x] = alternating_path(s, phi, x, phi[e])
    return out


def _far_index(g: Multigraph, path: AlternatingPath, e: int, limit: int = 3) -> int | None:
    """Smallest even index whose path vertex is at distance >= ``limit`` from ``e``."""
    for t in range(0, len(path.vertices), 2):
        d = g.vertex_edge_distance(path.vertices[t], e)
        if d >= limit:
            return t
    return None


def compute_potentials(s: ColouringState, phi: Precolouring, paths=None) -> Potentials:
    g = s.host
    paths = all_paths(s, phi) if paths is None else paths
    beta = sum(1 for p in paths.values() if len(p) > 1)
    gamma = 0
    for e in _working_edges(phi, s.k + 1):
        if any(_far_index(g, paths[x], e) is not None for x in g.edges[e]):
            gamma += 1
    return Potentials(len(s.matching), beta, gamma)


def pivot_fix(s: ColouringState, z: int, e: int, phi: Precolouring = ()) -> FixOutcome:
    """Colour the matching edge ``e`` from pivot ``z``, or trade it for a fan edge at ``z``."""
    if e in phi or e not in s.matching:
        raise ValueError(f"edge {e} is not in M' minus M")
    if z not in s.host.edges[e]:
        raise ValueError(f"pivot {z} is not an endpoint of edge {e}")
    if try_complete(s, z, e):
        return FixOutcome(FixKind.COMPLETED, e)
    s.begin()
    try:
        s.remove_from_matching(e)
        fan = build_multi_fan(s, z, e)
    finally:
        s.rollback()
    target = uncovered_target(s, fan)
    if target is None:
        raise MatchingConflict(f"elementary fan at {z} for edge {e} has no uncovered vertex")
    f = shift_uncolour(s, fan, target)
    return FixOutcome(FixKind.SHIFTED, e, f, fan)


def assemble_final(s: ColouringState, phi: Precolouring) -> list[int]:
    """Total colouring from ``s``: path edges swap to the reserved colour or the path colour."""
    g = s.host
    top = palette_size(g)
    paths = all_paths(s, phi)
    colouring = list(s.colour)
    claimed: dict[int, int] = {}
    owners: dict[int, int] = {}  # vertex -> colour of the path through it
    for p in paths.values():
        if not p.edges:
            continue
        for x in p.vertices:
            if owners.setdefault(x, p.colour) != p.colour:
                raise AssemblyPreconditionFailed(f"paths of colours {owners[x]} and {p.colour} meet at vertex {x}")
        for pos, f in enumerate(p.edges):
            c = top if pos % 2 == 0 else p.colour
            if claimed.setdefault(f, c) != c:
                raise AssemblyPreconditionFailed(f"edge {f} claimed with two colours")
    for e, c in phi.items():
        if c == top:
            for x in g.edges[e]:
                if x in owners:
                    raise AssemblyPreconditionFailed(f"path of colour {owners[x]} touches reserved edge {e}")
    for e in s.matching:
        colouring[e] = top
    for f, c in claimed.items():
        colouring[f] = c
    for e, c in phi.items():
        colouring[e] = c
    report = verify_extension(g, colouring, phi, top)
    if not report:
        raise AssemblyPreconditionFailed("assembled colouring invalid: " + "; ".join(report.problems[:5]))
    return colouring


def check_hypothesis(g: Multigraph, phi: Precolouring, mode: Mode | str = Mode.BASIC, reserved: int | None = None) -> Report:
    """Whether ``phi`` satisfies the distance (and structure) requirement of ``mode``."""
    mode = Mode(mode)
    k = palette_size(g)
    problems = check_precolouring(g, phi, k)
    if problems:
        return Report(False, problems)
    edges = sorted(phi)
    if mode is Mode.BASIC:
        d = min_pairwise_distance(g, edges)
        if d < BASIC_DISTANCE:
            problems.append(f"precoloured edges at distance {d} < {BASIC_DISTANCE}")
    elif mode is Mode.RELAXED:
        reserved = k if reserved is None else reserved
        if reserved not in (k, k - 1):
            problems.append(f"reserved colour must be {k} or {k - 1}, got {reserved}")
        far = [e for e in edges if phi[e] != reserved]
        held = [e for e in edges if phi[e] == reserved]
        d = min_pairwise_distance(g, far)
        if d < BASIC_DISTANCE:
            problems.append(f"non-reserved precoloured edges at distance {d} < {BASIC_DISTANCE}")
        d = min_cross_distance(g, far, held)
        if d < RELAXED_CROSS_DISTANCE:
            problems.append(f"reserved and non-reserved precoloured edges at distance {d} < {RELAXED_CROSS_DISTANCE}")
    else:
        if has_c5(g):
            problems.append("graph contains a 5-cycle")
        d = min_pairwise_distance(g, edges)
        if d < C5FREE_DISTANCE:
            problems.append(f"precoloured edges at distance {d} < {C5FREE_DISTANCE}")
    return Report(not problems, problems)


def _dump(g: Multigraph, phi: Precolouring, s: ColouringState | None, steps, reason: str, dump_dir=None) -> str:
    from .io import serialize_graph, serialize_precolouring

    payload = {
        "reason": reason,
        "graph": serialize_graph(g),
        "precolouring": serialize_precolouring(phi),
        "colour": list(s.colour) if s is not None else None,
        "matching": sorted(s.matching) if s is not None else None,
        "steps": [vars(st) for st in steps],
    }
    fd, path = tempfile.mkstemp(prefix="matchext-breach-", suffix=".json", dir=dump_dir)
    with os.fdopen(fd, "w") as fh:
        json.dump(payload, fh, indent=1, default=str)
    return path


def _breach(g, phi, s, steps, reason, dump_dir=None):
    path = _dump(g, phi, s, steps, reason, dump_dir)
    log.error("invariant breach (%s); state dumped to %s", reason, path)
    return InternalInvariantBreach(reason, path)


def _swap_colours(phi: Precolouring, a: int, b: int) -> dict[int, int]:
    return {e: (b if c == a else a if c == b else c) for e, c in phi.items()}


def _audit(s: ColouringState, label: str, g, phi, steps, dump_dir):
    report = s.verify_proper()
    if not report:
        raise _breach(g, phi, s, steps, f"{label}: " + "; ".join(report.problems[:3]), dump_dir)


def run_extension(
    g: Multigraph,
    phi: Precolouring,
    mode: Mode | str = Mode.BASIC,
    reserved: int | None = None,
    audit: bool = False,
    dump_dir: str | None = None,
) -> ExtensionResult:
    """Run the distance-9 driver (``basic``/``relaxed``) or the C5-free driver.

    ``audit`` re-verifies properness and bookkeeping after every pivot.
    """
    mode = Mode(mode)
    phi = dict(phi)
    report = check_hypothesis(g, phi, mode, reserved)
    if not report:
        raise HypothesisViolated("; ".join(report.problems), report.problems)
    top = palette_size(g)
    if mode is Mode.RELAXED and reserved is not None and reserved != top:
        # Relabel so the reserved colour is the top one; relabel the answer back.
        inner = run_extension(g, _swap_colours(phi, reserved, top), Mode.RELAXED, None, audit, dump_dir)
        inner.colouring = [reserved if c == top else top if c == reserved else c for c in inner.colouring]
        return inner
    matching = greedy_maximal_matching(g, phi)
    s = fournier_colour(g, matching)
    steps: list[Step] = []
    if mode is Mode.C5FREE:
        _c5free_loop(g, phi, s, steps, audit, dump_dir)
    else:
        _basic_loop(g, phi, s, steps, audit, dump_dir)
    try:
        colouring = assemble_final(s, phi)
    except AssemblyPreconditionFailed as exc:
        raise _breach(g, phi, s, steps, str(exc), dump_dir) from exc
    return ExtensionResult(colouring, steps, sorted(s.matching))


def _basic_loop(g, phi, s, steps, audit, dump_dir):
    guard = (g.m + 2) ** 3
    for _ in range(guard):
        paths = all_paths(s, phi)
        before = compute_potentials(s, phi, paths)
        action = _next_basic_action(g, phi, paths)
        if action is None:
            _check_final_geometry(g, phi, paths, s, steps, dump_dir)
            return
        rule, z, e = action
        try:
            out = pivot_fix(s, z, e, phi)
        except MatchingConflict as exc:
            raise _breach(g, phi, s, steps, f"{rule} pivot at {z}: {exc}", dump_dir) from exc
        if audit:
            _audit(s, rule, g, phi, steps, dump_dir)
        after = compute_potentials(s, phi)
        steps.append(Step(rule, z, e, out.kind.value, tuple(vars(before).values()), tuple(vars(after).values())))
        if not after < before:
            raise _breach(g, phi, s, steps, f"potential did not decrease: {before} -> {after}", dump_dir)
    raise _breach(g, phi, s, steps, "iteration guard exceeded", dump_dir)


def _next_basic_action(g, phi, paths):
    """Next pivot as ``(rule, pivot, matching edge)``; None when nothing is left to fix."""
    working = [e for e in sorted(phi) if any(x in paths for x in g.edges[e])]
    for e in working:
        u, v = sorted(g.edges[e])
        if len(paths[u]) > 1 and len(paths[v]) > 1:
            p = paths[u]
            return ("both-long", p.vertices[2], p.edges[1])
    for e in working:
        for x in sorted(g.edges[e]):
            t = _far_index(g, paths[x], e)
            if t is not None:
                p = paths[x]
                return ("far-vertex", p.vertices[t], p.edges[t - 1])
    return None


def _check_final_geometry(g, phi, paths, s, steps, dump_dir):
    for e in sorted(phi):
        ends = [paths[x] for x in g.edges[e] if x in paths]
        if not ends:
            continue
        if all(len(p) > 1 for p in ends):
            raise _breach(g, phi, s, steps, f"both paths at edge {e} are long", dump_dir)
        for p in ends:
            for f in p.edges:
                d = min(g.vertex_edge_distance(x, e) for x in g.edges[f])
                if d > 3:
                    raise _breach(g, phi, s, steps, f"path edge {f} at distance {d} from edge {e}", dump_dir)


def find_bad_edge(s: ColouringState, phi: Precolouring, only: int | None = None) -> BadEdgeWitness | None:
    """Smallest witness ``(e, e1, e2)``: ``e1`` has colour ``phi[e]`` and joins ``e`` to ``e2`` in ``M'\\M``."""
    witnesses = bad_edge_witnesses(s, phi, only)
    return witnesses[0] if witnesses else None


def bad_edge_witnesses(s: ColouringState, phi: Precolouring, only: int | None = None) -> list[BadEdgeWitness]:
    g = s.host
    out = []
    edges = [only] if only is not None else sorted(phi)
    for e in edges:
        i = phi[e]
        for x in g.edges[e]:
            e1 = s.at[x].get(i)
            if e1 is None:
                continue
            w1 = g.other(e1, x)
            e2 = s.mate[w1]
            if e2 != -1 and e2 not in phi:
                out.append(BadEdgeWitness(e, e1, e2))
    return sorted(out, key=lambda w: (w.e, w.e1, w.e2))


def count_bad_edges(s: ColouringState, phi: Precolouring) -> int:
    return len({w.e for w in bad_edge_witnesses(s, phi)})


def _far_end(g: Multigraph, w: BadEdgeWitness) -> int:
    shared = set(g.edges[w.e1]) & set(g.edges[w.e2])
    (w1,) = shared
    return g.other(w.e2, w1)


def _c5free_loop(g, phi, s, steps, audit, dump_dir):
    guard = (g.m + 2) ** 2
    for _ in range(guard):
        w = find_bad_edge(s, phi)
        if w is None:
            return
        before = (len(s.matching), count_bad_edges(s, phi))
        z = _far_end(g, w)
        try:
            out = pivot_fix(s, z, w.e2, phi)
            if audit:
                _audit(s, "bad-edge", g, phi, steps, dump_dir)
            outcomes = [out.kind.value]
            if out.kind is FixKind.SHIFTED:
                again = find_bad_edge(s, phi, only=w.e)
                if again is not None:
                    z2 = _far_end(g, again)
                    out2 = pivot_fix(s, z2, again.e2, phi)
                    if audit:
                        _audit(s, "bad-edge second", g, phi, steps, dump_dir)
                    outcomes.append(out2.kind.value)
        except MatchingConflict as exc:
            raise _breach(g, phi, s, steps, f"bad-edge pivot: {exc}", dump_dir) from exc
        after = (len(s.matching), count_bad_edges(s, phi))
        steps.append(Step("bad-edge", z, w.e2, "+".join(outcomes), before, after))
        if not after < before:
            raise _breach(g, phi, s, steps, f"potential did not decrease: {before} -> {after}", dump_dir)
    raise _breach(g, phi, s, steps, "iteration guard exceeded", dump_dir)


def extend_colouring(g: Multigraph, phi: Precolouring, mode: Mode | str = Mode.BASIC, reserved: int | None = None, **kw) -> list[int]:
    """Proper colouring from ``1..delta+mu`` agreeing with ``phi`` (distance >= 9 hypothesis)."""
    return run_extension(g, phi, mode, reserved, **kw).colouring


def extend_colouring_c5free(g: Multigraph, phi: Precolouring, **kw) -> list[int]:
    """Same as ``extend_colouring`` for C5-free graphs with distance >= 5."""
    return run_extension(g, phi, Mode.C5FREE, **kw).colouring
