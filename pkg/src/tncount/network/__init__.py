"""Tensor networks, contraction trees and carving decompositions."""

from tncount.network.carving import (
    CarvingDecomposition,
    carving_to_tree,
    carving_width,
    tree_to_carving,
    validate_carving,
)
from tncount.network.contraction import (
    DEFAULT_MEM_CAP,
    DEFAULT_SECONDS_PER_FLOP,
    ContractionStats,
    contract,
    contraction_flops,
    estimate_cost,
    max_entries,
    max_rank,
    node_index_sets,
    working_entries,
)
from tncount.network.tn import TensorNetwork, reduce_wmc
from tncount.network.tree import ContractionTree

__all__ = [
    "DEFAULT_MEM_CAP",
    "DEFAULT_SECONDS_PER_FLOP",
    "CarvingDecomposition",
    "ContractionStats",
    "ContractionTree",
    "TensorNetwork",
    "carving_to_tree",
    "carving_width",
    "contract",
    "contraction_flops",
    "estimate_cost",
    "max_entries",
    "max_rank",
    "node_index_sets",
    "reduce_wmc",
    "tree_to_carving",
    "validate_carving",
    "working_entries",
]
