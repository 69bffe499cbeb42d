"""Small helpers on unrooted trees held as networkx graphs."""

from __future__ import annotations

from collections import deque
from typing import Collection, Hashable

import networkx as nx

Node = Hashable


def rooted_order(tree: nx.Graph, root: Node) -> tuple[list[Node], dict[Node, Node]]:
    """BFS order from ``root`` and the parent of every other node."""
    order = [root]
    parent: dict[Node, Node] = {}
    queue = deque([root])
    seen = {root}
    while queue:
        node = queue.popleft()
        for nbr in tree.neighbors(node):
            if nbr not in seen:
                seen.add(nbr)
                parent[nbr] = node
                order.append(nbr)
                queue.append(nbr)
    return order, parent


def tree_centroid(tree: nx.Graph) -> Node:
    """A node whose removal leaves components of at most half the nodes.

    Deterministic: the first qualifying node in BFS order from the first node.
    """
    nodes = list(tree.nodes)
    if len(nodes) <= 2:
        return nodes[0]
    order, parent = rooted_order(tree, nodes[0])
    size = {node: 1 for node in order}
    for node in reversed(order[1:]):
        size[parent[node]] += size[node]
    total = len(order)
    for node in order:
        heaviest = total - size[node]
        for nbr in tree.neighbors(node):
            if parent.get(nbr) == node:
                heaviest = max(heaviest, size[nbr])
        if 2 * heaviest <= total:
            return node
    return order[0]


def suppress_degree_two(tree: nx.Graph, keep: Collection[Node] = ()) -> nx.Graph:
    """Copy of ``tree`` with every degree-2 node (outside ``keep``) spliced out."""
    result = tree.copy()
    for node in list(result.nodes):
        if node in keep or result.degree(node) != 2:
            continue
        a, b = list(result.neighbors(node))
        result.remove_node(node)
        result.add_edge(a, b)
    return result


def prune_leaves(tree: nx.Graph, keep: Collection[Node]) -> nx.Graph:
    """Copy of ``tree`` with leaves outside ``keep`` removed until none remain."""
    result = tree.copy()
    stack = [n for n in result.nodes if result.degree(n) <= 1 and n not in keep]
    while stack and result.number_of_nodes() > 1:
        node = stack.pop()
        if node not in result or node in keep or result.degree(node) > 1:
            continue
        nbrs = list(result.neighbors(node))
        result.remove_node(node)
        for nbr in nbrs:
            if result.degree(nbr) <= 1 and nbr not in keep:
                stack.append(nbr)
    return result
