"""Partial proper edge-colourings with an uncoloured matching.

Colours are ``1..k``; ``0`` means uncoloured.  Per-vertex colour usage is kept
as an integer bitmask (bit ``c`` set when colour ``c`` is present), so the
free set of ``v`` is ``full & ~present[v]``.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .errors import EdgeInMatching, MatchingConflict, NotAMatching, ProperViolation
from .graph import Multigraph, is_matching, palette_size

Precolouring = Mapping[int, int]


def mask_to_set(mask: int) -> set[int]:
    out = set()
    c = 0
    while mask:
        if mask & 1:
            out.add(c)
        mask >>= 1
        c += 1
    return out


def lowest_colour(mask: int) -> int:
    """Smallest colour in a nonempty mask."""
    return (mask & -mask).bit_length() - 1


@dataclass
class Report:
    """Outcome of a verification; truthy when ``ok``."""

    ok: bool
    problems: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


class ColouringState:
    """Proper partial colouring of ``host`` over ``1..k`` plus an uncoloured matching."""

    def __init__(self, host: Multigraph, k: int, uncoloured: Iterable[int] = ()):
        if k < 1:
            raise ValueError(f"palette size must be at least 1, got {k}")
        uncoloured = sorted(set(uncoloured))
        if not is_matching(host, uncoloured):
            raise NotAMatching(f"edges {uncoloured} do not form a matching")
        self.host = host
        self.k = k
        self.full = ((1 << (k + 1)) - 1) & ~1
        self.colour = [0] * host.m
        self.present = [0] * host.n
        # at[v][c] is the edge of colour c at v
        self.at: list[dict[int, int]] = [{} for _ in range(host.n)]
        self.matching: set[int] = set()
        self.mate = [-1] * host.n
        self._journal: list[tuple] | None = None
        self._marks: list[int] = []
        for e in uncoloured:
            self._match(e)

    # --- low-level mutation with journalling -------------------------------

    def _set(self, e: int, c: int) -> None:
        old = self.colour[e]
        u, v = self.host.edges[e]
        if old:
            bit = 1 << old
            self.present[u] &= ~bit
            self.present[v] &= ~bit
            del self.at[u][old]
            del self.at[v][old]
        if c:
            bit = 1 << c
            self.present[u] |= bit
            self.present[v] |= bit
            self.at[u][c] = e
            self.at[v][c] = e
        self.colour[e] = c
        if self._journal is not None:
            self._journal.append(("c", e, old))

    def _match(self, e: int) -> None:
        self.matching.add(e)
        for x in self.host.edges[e]:
            self.mate[x] = e
        if self._journal is not None:
            self._journal.append(("m+", e))

    def _unmatch(self, e: int) -> None:
        self.matching.discard(e)
        for x in self.host.edges[e]:
            self.mate[x] = -1
        if self._journal is not None:
            self._journal.append(("m-", e))

    def begin(self) -> None:
        """Open a (nestable) transaction; undo with ``rollback``, keep with ``commit``."""
        if self._journal is None:
            self._journal = []
        self._marks.append(len(self._journal))

    def commit(self) -> None:
        self._marks.pop()
        if not self._marks:
            self._journal = None

    def rollback(self) -> None:
        mark = self._marks.pop()
        journal = self._journal
        self._journal = None
        while len(journal) > mark:
            op = journal.pop()
            if op[0] == "c":
                self._set(op[1], op[2])
            elif op[0] == "m+":
                self._unmatch(op[1])
            else:
                self._match(op[1])
        self._journal = journal if self._marks else None

    # --- public mutation ---------------------------------------------------

    def assign(self, e: int, c: int) -> None:
        if e in self.matching:
            raise EdgeInMatching(f"edge {e} belongs to the uncoloured matching")
        if self.colour[e]:
            raise ProperViolation(f"edge {e} already has colour {self.colour[e]}")
        if not 1 <= c <= self.k:
            raise ProperViolation(f"colour {c} outside palette 1..{self.k}")
        u, v = self.host.edges[e]
        bit = 1 << c
        if (self.present[u] | self.present[v]) & bit:
            raise ProperViolation(f"colour {c} not free at both ends of edge {e} = {u}-{v}")
        self._set(e, c)

    def unassign(self, e: int) -> None:
        if self.colour[e]:
            self._set(e, 0)

    def recolour(self, e: int, c: int) -> None:
        self.unassign(e)
        self.assign(e, c)

    def add_to_matching(self, e: int) -> None:
        if self.colour[e]:
            raise EdgeInMatching(f"edge {e} is coloured; uncolour it before matching it")
        for x in self.host.edges[e]:
            if self.mate[x] != -1:
                raise MatchingConflict(f"vertex {x} already covered by edge {self.mate[x]}")
        self._match(e)

    def remove_from_matching(self, e: int) -> None:
        if e in self.matching:
            self._unmatch(e)

    # --- queries ------------------------------------------------------------

    def free_mask(self, v: int) -> int:
        return self.full & ~self.present[v]

    def free(self, v: int) -> set[int]:
        return mask_to_set(self.free_mask(v))

    def edge_at(self, v: int, c: int) -> int | None:
        return self.at[v].get(c)

    def covered(self, v: int) -> bool:
        return self.mate[v] != -1

    def uncoloured_edges(self) -> list[int]:
        return [e for e, c in enumerate(self.colour) if not c]

    def recompute_present(self) -> list[int]:
        present = [0] * self.host.n
        for e, c in enumerate(self.colour):
            if c:
                for x in self.host.edges[e]:
                    present[x] |= 1 << c
        return present

    def snapshot(self) -> tuple:
        return (tuple(self.colour), frozenset(self.matching))

    def copy(self) -> ColouringState:
        other = ColouringState(self.host, self.k)
        other.colour = list(self.colour)
        other.present = list(self.present)
        other.at = [dict(d) for d in self.at]
        other.matching = set(self.matching)
        other.mate = list(self.mate)
        return other

    def verify_proper(self, require_total: bool = False) -> Report:
        problems = []
        g = self.host
        for v in range(g.n):
            seen: dict[int, int] = {}
            for e in g.adj[v]:
                c = self.colour[e]
                if not c:
                    continue
                if c in seen:
                    problems.append(f"vertex {v}: edges {seen[c]} and {e} both coloured {c}")
                else:
                    seen[c] = e
        for e, c in enumerate(self.colour):
            if c and not 1 <= c <= self.k:
                problems.append(f"edge {e}: colour {c} outside palette 1..{self.k}")
            if c and e in self.matching:
                problems.append(f"edge {e}: in uncoloured matching but coloured {c}")
            if require_total and not c and e not in self.matching:
                problems.append(f"edge {e}: uncoloured and not in matching")
        if not is_matching(g, self.matching):
            problems.append("uncoloured edge set is not a matching")
        if self.present != self.recompute_present():
            problems.append("incremental colour bookkeeping disagrees with recomputation")
        return Report(not problems, problems)


def new_state(g: Multigraph, k: int, uncoloured: Iterable[int] = ()) -> ColouringState:
    return ColouringState(g, k, uncoloured)


def check_precolouring(g: Multigraph, phi: Precolouring, k: int | None = None) -> list[str]:
    """Problems with ``phi`` as a precoloured matching; empty list when valid."""
    k = palette_size(g) if k is None else k
    problems = []
    for e, c in phi.items():
        if not 0 <= e < g.m:
            problems.append(f"edge {e} does not exist")
        elif not 1 <= c <= k:
            problems.append(f"edge {e}: colour {c} outside palette 1..{k}")
    if not problems and not is_matching(g, phi):
        problems.append("precoloured edges do not form a matching")
    return problems


def verify_colouring(g: Multigraph, colouring, k: int) -> Report:
    """Check that a total colouring (sequence or mapping over edge ids) is proper in ``1..k``."""
    if isinstance(colouring, Mapping):
        colours = [colouring.get(e, 0) for e in range(g.m)]
    else:
        colours = list(colouring)
    problems = []
    if len(colours) != g.m:
        problems.append(f"colouring has {len(colours)} entries for {g.m} edges")
        return Report(False, problems)
    for e, c in enumerate(colours):
        if not 1 <= c <= k:
            problems.append(f"edge {e}: colour {c} outside palette 1..{k}")
    for v in range(g.n):
        seen: dict[int, int] = {}
        for e in g.adj[v]:
            c = colours[e]
            if c in seen:
                problems.append(f"vertex {v}: edges {seen[c]} and {e} both coloured {c}")
            else:
                seen[c] = e
    return Report(not problems, problems)


def verify_extension(g: Multigraph, colouring, phi: Precolouring, k: int | None = None) -> Report:
    """Proper total colouring within the full palette that restricts to ``phi``."""
    k = palette_size(g) if k is None else k
    report = verify_colouring(g, colouring, k)
    if isinstance(colouring, Mapping):
        get = lambda e: colouring.get(e, 0)  # noqa: E731
    else:
        get = lambda e: colouring[e] if e < len(colouring) else 0  # noqa: E731
    for e, c in sorted(phi.items()):
        if get(e) != c:
            report.problems.append(f"edge {e}: precoloured {c} but coloured {get(e)}")
    report.ok = not report.problems
    return report
