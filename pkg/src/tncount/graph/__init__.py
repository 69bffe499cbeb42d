"""Graph representations and constructions."""

from tncount.graph.multigraph import (
    EdgeCliqueCover,
    Multigraph,
    edge_incidence_cover,
    line_graph,
)
from tncount.graph.pace import read_gr, write_gr
from tncount.graph.structure import StructureGraph, structure_graph
from tncount.graph.trees import prune_leaves, suppress_degree_two, tree_centroid

__all__ = [
    "EdgeCliqueCover",
    "Multigraph",
    "StructureGraph",
    "edge_incidence_cover",
    "line_graph",
    "prune_leaves",
    "read_gr",
    "structure_graph",
    "suppress_degree_two",
    "tree_centroid",
    "write_gr",
]
