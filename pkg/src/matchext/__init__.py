"""Extending precoloured matchings to proper edge colourings of multigraphs."""

from .errors import MatchExtError
from .extension import Mode, extend_colouring, extend_colouring_c5free, run_extension
from .fan import fournier_colour, vizing_colour
from .graph import Multigraph, build_graph, degree_stats, palette_size
from .oracle import enumerate_graphs, oracle_extend
from .state import verify_colouring, verify_extension

__all__ = [
    "MatchExtError",
    "Mode",
    "Multigraph",
    "build_graph",
    "degree_stats",
    "enumerate_graphs",
    "extend_colouring",
    "extend_colouring_c5free",
    "fournier_colour",
    "oracle_extend",
    "palette_size",
    "run_extension",
    "verify_colouring",
    "verify_extension",
    "vizing_colour",
]
