"""Structure graphs of tensor networks."""

from __future__ import annotations

from typing import TYPE_CHECKING, NamedTuple

from tncount.graph.multigraph import Multigraph

if TYPE_CHECKING:
    from tncount.network.tn import TensorNetwork
    from tncount.tensor.core import Index


class StructureGraph(NamedTuple):
    graph: Multigraph
    free_vertex: int
    edge_index: dict[int, "Index"]


def structure_graph(n: "TensorNetwork") -> StructureGraph:
    """One vertex per tensor, a free vertex, one edge per index.

    Tensor ``k`` is vertex ``k`` and the free vertex is ``len(n)``. Bond
    indices join their two tensors, free indices join their tensor to the
    free vertex. Edge ids follow the order in which indices first appear.
    """
    g = Multigraph()
    for k in range(len(n)):
        g.add_vertex(k)
    free_vertex = g.add_vertex(len(n))
    edge_index = {}
    for index, holders in n.holders.items():
        u, v = holders if len(holders) == 2 else (holders[0], free_vertex)
        edge_index[g.add_edge(u, v)] = index
    return StructureGraph(g, free_vertex, edge_index)
