"""Exception hierarchy shared by all matchext modules."""

from __future__ import annotations


class MatchExtError(Exception):
    """Base class for every error raised by this package."""


class LoopRejected(MatchExtError, ValueError):
    pass


class VertexOutOfRange(MatchExtError, ValueError):
    pass


class NotAMatching(MatchExtError, ValueError):
    pass


class NotMaximalMatching(MatchExtError, ValueError):
    pass


class ProperViolation(MatchExtError):
    """A colour was assigned that is not free at one of the edge's endpoints."""


class EdgeInMatching(MatchExtError):
    """Attempt to colour an edge that belongs to the uncoloured matching."""


class ChainUnreachable(MatchExtError):
    pass


class MatchingConflict(MatchExtError):
    """A shift target is already covered by the uncoloured matching."""


class InternalInvariantBreach(MatchExtError):
    """An invariant guaranteed by theory failed; ``dump_path`` locates the state dump."""

    def __init__(self, message: str, dump_path: str | None = None):
        super().__init__(message)
        self.dump_path = dump_path


class AssemblyPreconditionFailed(InternalInvariantBreach):
    pass


class HypothesisViolated(MatchExtError):
    def __init__(self, message: str, report: list[str] | None = None):
        super().__init__(message)
        self.report = report or []


class BudgetExceeded(MatchExtError):
    pass


class LimitExceeded(MatchExtError, ValueError):
    pass


class Unsatisfiable(MatchExtError):
    """Generator could not meet the requested edge count; ``graph`` holds the best effort."""

    def __init__(self, message: str, graph=None):
        super().__init__(message)
        self.graph = graph


class ParseError(MatchExtError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message
