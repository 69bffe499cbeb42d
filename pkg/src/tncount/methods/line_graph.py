"""Line-Graph planning: a tree decomposition of the line graph becomes a contraction tree."""

from __future__ import annotations

from typing import Optional

from tncount.decomp.simplify import simplify_leaves
from tncount.decomp.td import TreeDecomposition
from tncount.errors import PlanningError
from tncount.graph.multigraph import Multigraph, edge_incidence_cover, line_graph
from tncount.graph.structure import StructureGraph, structure_graph
from tncount.methods.plan import PlanResult, make_plan
from tncount.network.carving import CarvingDecomposition, carving_to_tree
from tncount.network.contraction import DEFAULT_SECONDS_PER_FLOP
from tncount.network.tn import TensorNetwork
from tncount.utils.logging import get_logger

logger = get_logger("tncount.methods.line_graph")


def lg_source_graph(n: TensorNetwork, sg: Optional[StructureGraph] = None) -> Multigraph:
    """The graph whose decompositions feed ``plan_lg``: Line(structure graph)."""
    sg = sg or structure_graph(n)
    return line_graph(sg.graph)


def lg_carving(
    n: TensorNetwork, td: TreeDecomposition, sg: Optional[StructureGraph] = None
) -> CarvingDecomposition:
    """Carving decomposition of the structure graph of width at most ``td.width + 1``.

    The edge-incidence cover of the structure graph is a clique cover of its
    line graph; after leaf simplification every leaf is one structure-graph
    vertex.

    Raises:
        PlanningError: If the structure graph has no edges.
    """
    sg = sg or structure_graph(n)
    if sg.graph.num_edges() == 0:
        raise PlanningError("line-graph planning needs a structure graph with at least one edge")
    cover = edge_incidence_cover(sg.graph)
    simplified, leaf_of = simplify_leaves(td, cover)
    leaf_vertex = {leaf: vertex for vertex, leaf in leaf_of.items()}
    return CarvingDecomposition(simplified.tree, leaf_vertex).normalized()


def plan_lg(
    n: TensorNetwork,
    td: TreeDecomposition,
    sg: Optional[StructureGraph] = None,
    seconds_per_flop: float = DEFAULT_SECONDS_PER_FLOP,
) -> PlanResult:
    """Plan from a tree decomposition of Line(structure graph); max rank is at most width + 1.

    Raises:
        PlanningError: If the structure graph has no edges.
    """
    carving = lg_carving(n, td, sg)
    tree = carving_to_tree(carving, n)
    plan = make_plan(n, tree, "lg", source_width=td.width, seconds_per_flop=seconds_per_flop)
    logger.debug("lg_plan", source_width=td.width, max_rank=plan.max_rank, flops=plan.flops)
    return plan
