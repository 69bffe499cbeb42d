"""Tree decompositions: heuristics, validation, leaf simplification and PACE I/O."""

from tncount.decomp.elimination import (
    STRATEGIES,
    EliminationOrder,
    anytime_td,
    decomposition_from_order,
    elimination_order,
    heuristic_td,
)
from tncount.decomp.pace import import_td, read_td, write_td
from tncount.decomp.simplify import simplify_leaves
from tncount.decomp.td import TreeDecomposition, binarize, td_width, validate_td

__all__ = [
    "STRATEGIES",
    "EliminationOrder",
    "TreeDecomposition",
    "anytime_td",
    "binarize",
    "decomposition_from_order",
    "elimination_order",
    "heuristic_td",
    "import_td",
    "read_td",
    "simplify_leaves",
    "td_width",
    "validate_td",
    "write_td",
]
