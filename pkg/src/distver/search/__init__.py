"""Minimum-distance engines.

Every engine accepts a :class:`~distver.codes.LinearCode`,
:class:`~distver.codes.StabilizerCode`, :class:`~distver.codes.CssCode` or a
raw :class:`~distver.codes.BlockCode` and returns a :class:`SearchResult`.
"""

from .brute import all_codewords, brute_force_distance
from .cluster import AIStrings, enumerate_ai_strings, ic_distance, irreducible_codewords, is_irreducible
from .common import SearchBudget, SearchResult, as_targets
from .covering import cs_distance, group_cover, random_set_count
from .windows import mb_distance, pb_distance, sw_distance

ENGINES = {
    "brute": brute_force_distance,
    "sw": sw_distance,
    "mb": mb_distance,
    "pb": pb_distance,
    "cs": cs_distance,
    "ic": ic_distance,
}

__all__ = [
    "AIStrings",
    "ENGINES",
    "SearchBudget",
    "SearchResult",
    "all_codewords",
    "as_targets",
    "brute_force_distance",
    "cs_distance",
    "enumerate_ai_strings",
    "group_cover",
    "ic_distance",
    "irreducible_codewords",
    "is_irreducible",
    "mb_distance",
    "pb_distance",
    "random_set_count",
    "sw_distance",
]
