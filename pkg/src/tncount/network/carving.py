"""Carving decompositions and their correspondence with contraction trees."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Optional

import networkx as nx

from tncount.errors import TreeMismatchError
from tncount.graph.multigraph import Multigraph
from tncount.graph.trees import prune_leaves, rooted_order, suppress_degree_two
from tncount.network.tn import TensorNetwork
from tncount.network.tree import ContractionTree

Node = Hashable


@dataclass(frozen=True, eq=False)
class CarvingDecomposition:
    """Unrooted tree whose leaves are mapped one-to-one onto graph vertices.

    ``leaf_vertex`` maps tree nodes to graph vertices; every node it names
    must be a leaf once the decomposition is normalized.
    """

    tree: nx.Graph
    leaf_vertex: dict[Node, int]

    @property
    def vertex_leaf(self) -> dict[int, Node]:
        return {v: node for node, v in self.leaf_vertex.items()}

    def normalized(self) -> "CarvingDecomposition":
        """Drop leafless branches and splice out degree-2 nodes; width is unchanged."""
        keep = set(self.leaf_vertex)
        tree = suppress_degree_two(prune_leaves(self.tree, keep), keep)
        return CarvingDecomposition(tree, dict(self.leaf_vertex))

    def arc_cuts(self, g: Multigraph) -> dict[tuple[Node, Node], int]:
        """Cut size of every arc, keyed (parent, child) from an arbitrary root."""
        if self.tree.number_of_nodes() == 0:
            return {}
        root = next(iter(self.tree.nodes))
        order, parent = rooted_order(self.tree, root)
        # Edges with exactly one endpoint below the node; parallel edges are distinct ids.
        below: dict[Node, set[int]] = {}
        cuts: dict[tuple[Node, Node], int] = {}
        for node in reversed(order):
            edges: set[int] = set()
            vertex = self.leaf_vertex.get(node)
            if vertex is not None:
                edges ^= set(g.incident(vertex))
            for nbr in self.tree.neighbors(node):
                if parent.get(nbr) == node:
                    edges ^= below.pop(nbr)
            below[node] = edges
            if node in parent:
                cuts[(parent[node], node)] = len(edges)
        return cuts


def _check_leaves(s: CarvingDecomposition, g: Multigraph) -> None:
    mapped = sorted(s.leaf_vertex.values())
    if len(set(mapped)) != len(mapped) or set(mapped) != set(g.vertices):
        raise TreeMismatchError("carving decomposition leaves do not match the graph's vertices")
    for node in s.leaf_vertex:
        if node not in s.tree:
            raise TreeMismatchError(f"leaf node {node!r} not in the tree")


def carving_width(s: CarvingDecomposition, g: Multigraph) -> int:
    """Maximum cut over the arcs of ``s``; 0 for a decomposition without arcs.

    Raises:
        TreeMismatchError: If the leaves are not the vertices of ``g``.
    """
    _check_leaves(s, g)
    return max(s.arc_cuts(g).values(), default=0)


def validate_carving(s: CarvingDecomposition, g: Multigraph) -> list[str]:
    """Return every way ``s`` fails to be a carving decomposition of ``g``."""
    problems = []
    tree = s.tree
    if tree.number_of_nodes() == 0 or not nx.is_tree(tree):
        return ["underlying graph is not a tree"]
    vertices = list(s.leaf_vertex.values())
    if len(set(vertices)) != len(vertices):
        problems.append("two leaves map to the same vertex")
    missing = set(g.vertices) - set(vertices)
    extra = set(vertices) - set(g.vertices)
    if missing:
        problems.append(f"vertices without a leaf: {sorted(missing)}")
    if extra:
        problems.append(f"leaves for unknown vertices: {sorted(extra)}")
    single = tree.number_of_nodes() == 1
    for node in tree.nodes:
        degree = tree.degree(node)
        is_leaf = degree == 1 or (single and degree == 0)
        if node in s.leaf_vertex and not is_leaf:
            problems.append(f"mapped node {node!r} has degree {degree}")
        if node not in s.leaf_vertex and is_leaf:
            problems.append(f"leaf {node!r} carries no vertex")
        if not is_leaf and degree != 3:
            problems.append(f"internal node {node!r} has degree {degree}")
    return problems


def tree_to_carving(n: TensorNetwork, t: ContractionTree) -> CarvingDecomposition:
    """Carving decomposition of the structure graph: the tree plus the free vertex at the root.

    Tree node ids are the contraction-tree node ids; the free vertex gets
    node ``t.num_nodes``. With one tensor the result is the two-leaf tree.
    """
    t.validate(len(n))
    tree = nx.Graph()
    tree.add_nodes_from(range(t.num_nodes))
    for j, (a, b) in enumerate(t.merges):
        node = t.num_leaves + j
        tree.add_edge(node, a)
        tree.add_edge(node, b)
    free_node = t.num_nodes
    tree.add_edge(t.root, free_node)
    leaf_vertex = {leaf: leaf for leaf in range(t.num_leaves)}
    leaf_vertex[free_node] = len(n)
    return CarvingDecomposition(tree, leaf_vertex)


def carving_to_tree(s: CarvingDecomposition, n: TensorNetwork) -> ContractionTree:
    """Contraction tree from a carving decomposition of the structure graph.

    The free-vertex leaf is removed and the tree is rooted at its former
    neighbour. Leafless branches are dropped and unary nodes passed through,
    so non-normalized decompositions are accepted too.

    Raises:
        TreeMismatchError: If the leaves are not the tensors plus the free vertex.
    """
    k = len(n)
    if sorted(s.leaf_vertex.values()) != list(range(k + 1)):
        raise TreeMismatchError("carving decomposition is not over this network's structure graph")
    vertex_leaf = s.vertex_leaf
    free_node = vertex_leaf[k]
    if s.tree.degree(free_node) != 1:
        raise TreeMismatchError("free vertex is not a leaf of the carving decomposition")
    root = next(iter(s.tree.neighbors(free_node)))
    tree = s.tree.copy()
    tree.remove_node(free_node)

    order, parent = rooted_order(tree, root)
    if len(order) != tree.number_of_nodes():
        raise TreeMismatchError("carving decomposition is not connected")

    merges: list[tuple[int, int]] = []
    built: dict[Node, Optional[int]] = {}
    for node in reversed(order):
        parts = [
            built.pop(child)
            for child in tree.neighbors(node)
            if parent.get(child) == node
        ]
        parts = [p for p in parts if p is not None]
        vertex = s.leaf_vertex.get(node)
        if vertex is not None:
            parts.insert(0, vertex)
        if not parts:
            built[node] = None
            continue
        current = parts[0]
        for other in parts[1:]:
            merges.append((current, other))
            current = k + len(merges) - 1
        built[node] = current

    if built[root] is None:
        raise TreeMismatchError("carving decomposition has no tensor leaves")
    return ContractionTree(k, tuple(merges))
