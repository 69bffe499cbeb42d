"""Leaf simplification: a decomposition whose leaves are the sets of a clique cover."""

from __future__ import annotations

from itertools import count
from typing import Hashable, Optional

from tncount.decomp.td import TreeDecomposition
from tncount.errors import DecompositionError
from tncount.graph.multigraph import EdgeCliqueCover, Multigraph
from tncount.graph.trees import prune_leaves, rooted_order, suppress_degree_two, tree_centroid
from tncount.utils.logging import get_logger

logger = get_logger("tncount.decomp.simplify")


def simplify_leaves(
    td: TreeDecomposition,
    cover: EdgeCliqueCover,
    g: Optional[Multigraph] = None,
) -> tuple[TreeDecomposition, dict[Hashable, int]]:
    """Rebuild ``td`` so that its leaves are exactly the cover's sets.

    For every label, a node whose bag contains the label's set is located
    (the one nearest the centroid); the arc from it toward the centroid is
    subdivided and a new leaf carrying the set is hung there. Original
    leaves are then pruned and degree-2 nodes spliced out. The width does
    not grow.

    Args:
        td: Decomposition of the graph the cover lives on.
        cover: Labelled clique cover.
        g: When given, the cover is validated against it first.

    Returns:
        The new decomposition and the label -> leaf node bijection.

    Raises:
        DecompositionError: If the cover is invalid for ``g`` or some cover
            set fits in no bag.
    """
    if g is not None:
        cover.check(g)
    if not cover.labels:
        raise DecompositionError("cannot simplify against an empty cover")

    tree = td.tree.copy()
    bags = dict(td.bags)
    fresh = count(max(tree.nodes, default=-1) + 1)
    centroid = tree_centroid(tree)
    order, parent = rooted_order(tree, centroid)
    rank = {node: k for k, node in enumerate(order)}
    where = td.nodes_containing()

    # Node on the centroid side of each original node's attachment arc.
    toward: dict[int, Optional[int]] = {node: parent.get(node) for node in order}
    if toward[centroid] is None:
        toward[centroid] = next(iter(tree.neighbors(centroid)), None)

    leaf_of: dict[Hashable, int] = {}
    for label, members in cover.labels.items():
        if members:
            pivot = min(members, key=lambda v: len(where.get(v, ())))
            hosts = [n for n in where.get(pivot, ()) if members <= bags[n]]
            if not hosts:
                raise DecompositionError(f"cover set of {label!r} lies in no bag")
            host = min(hosts, key=rank.__getitem__)
        else:
            host = centroid

        leaf = next(fresh)
        bags[leaf] = frozenset(members)
        other = toward[host]
        if other is None:
            tree.add_edge(host, leaf)
            toward[host] = leaf
        else:
            joint = next(fresh)
            bags[joint] = bags[host]
            tree.remove_edge(host, other)
            tree.add_edge(host, joint)
            tree.add_edge(joint, other)
            tree.add_edge(joint, leaf)
            toward[host] = joint
            # The centroid and its chosen neighbour point at each other.
            if toward.get(other) == host:
                toward[other] = joint
        leaf_of[label] = leaf

    keep = set(leaf_of.values())
    tree = suppress_degree_two(prune_leaves(tree, keep), keep)
    result = TreeDecomposition(tree, {node: bags[node] for node in tree.nodes})
    logger.debug(
        "leaves_simplified",
        labels=len(leaf_of),
        width_before=td.width,
        width_after=result.width,
    )
    return result, leaf_of
