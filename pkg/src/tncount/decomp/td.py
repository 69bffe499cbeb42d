"""Tree decompositions: the data type, validation and binarization."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import Iterable

import networkx as nx

from tncount.graph.multigraph import Multigraph
from tncount.utils.logging import get_logger

logger = get_logger("tncount.decomp.td")


@dataclass(frozen=True, eq=False)
class TreeDecomposition:
    """A tree whose nodes carry bags of graph vertices."""

    tree: nx.Graph
    bags: dict[int, frozenset[int]]

    @property
    def width(self) -> int:
        return max((len(bag) for bag in self.bags.values()), default=1) - 1

    @property
    def num_nodes(self) -> int:
        return self.tree.number_of_nodes()

    def is_binary(self) -> bool:
        if self.tree.number_of_nodes() == 1:
            return True
        return all(d in (1, 3) for _, d in self.tree.degree())

    def nodes_containing(self) -> dict[int, list[int]]:
        """Vertex -> tree nodes whose bag holds it."""
        where: dict[int, list[int]] = {}
        for node, bag in self.bags.items():
            for v in bag:
                where.setdefault(v, []).append(node)
        return where

    def restricted(self, vertices: Iterable[int]) -> "TreeDecomposition":
        """Same tree with every bag intersected with ``vertices``."""
        keep = frozenset(vertices)
        return TreeDecomposition(self.tree.copy(), {n: b & keep for n, b in self.bags.items()})

    @classmethod
    def single_bag(cls, vertices: Iterable[int]) -> "TreeDecomposition":
        tree = nx.Graph()
        tree.add_node(0)
        return cls(tree, {0: frozenset(vertices)})


def td_width(td: TreeDecomposition) -> int:
    return td.width


def validate_td(td: TreeDecomposition, g: Multigraph, require_binary: bool = True) -> list[str]:
    """Check the three decomposition properties and, optionally, node degrees.

    Returns:
        One message per violation; empty when ``td`` is valid for ``g``.
    """
    problems: list[str] = []
    tree = td.tree
    if tree.number_of_nodes() == 0 or not nx.is_tree(tree):
        return ["underlying graph is not a tree"]
    if set(td.bags) != set(tree.nodes):
        problems.append("bag keys differ from tree nodes")
        return problems

    where = td.nodes_containing()
    for v in sorted(set(where) - set(g.vertices)):
        problems.append(f"bag vertex {v} is not in the graph")
    for v in g.vertices:
        if v not in where:
            problems.append(f"property 1: vertex {v} in no bag")

    checked = set()
    for e in g.edges:
        u, v = g.endpoints(e)
        key = (min(u, v), max(u, v))
        if key in checked:
            continue
        checked.add(key)
        if not set(where.get(u, ())) & set(where.get(v, ())):
            problems.append(f"property 2: edge {e} ({u}, {v}) in no bag")

    for v, nodes in where.items():
        if len(nodes) > 1 and not nx.is_connected(tree.subgraph(nodes)):
            problems.append(f"property 3: bags holding vertex {v} are disconnected")

    if require_binary and not td.is_binary():
        for node, degree in tree.degree():
            if degree not in (1, 3):
                problems.append(f"node {node} has degree {degree}")
    return problems


def binarize(td: TreeDecomposition) -> TreeDecomposition:
    """Equivalent decomposition whose nodes all have degree 1 or 3.

    Nodes of degree above 3 are split into chains of duplicated bags. A
    degree-2 node is spliced out when its bag fits inside a neighbour's bag,
    otherwise it gets a pendant leaf with a copy of its bag. Width is
    unchanged.
    """
    tree = td.tree.copy()
    bags = dict(td.bags)
    fresh = count(max(tree.nodes, default=-1) + 1)

    for node in list(tree.nodes):
        nbrs = list(tree.neighbors(node))
        if len(nbrs) <= 3:
            continue
        remaining = nbrs[2:]
        current = node
        while remaining:
            dup = next(fresh)
            bags[dup] = bags[node]
            tree.add_edge(current, dup)
            take = remaining if len(remaining) <= 2 else remaining[:1]
            for nbr in take:
                tree.remove_edge(node, nbr)
                tree.add_edge(dup, nbr)
            remaining = remaining[len(take):]
            current = dup

    for node in list(tree.nodes):
        if tree.degree(node) != 2:
            continue
        a, b = list(tree.neighbors(node))
        if bags[node] <= bags[a] or bags[node] <= bags[b]:
            tree.remove_node(node)
            tree.add_edge(a, b)
            del bags[node]
        else:
            leaf = next(fresh)
            bags[leaf] = bags[node]
            tree.add_edge(node, leaf)

    return TreeDecomposition(tree, bags)
