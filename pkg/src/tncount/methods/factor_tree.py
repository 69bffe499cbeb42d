"""Factor-Tree planning: factor high-rank tensors along a tree decomposition.

Every tensor of rank 4 or more is split into rank-3 pieces following the
decomposition, so the planned network holds only tensors of rank <= 3 and
its best tree has max rank at most ceil(4 (w + 1) / 3) for a source
decomposition of width w.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from itertools import count
from typing import Hashable, Mapping, Optional

import networkx as nx
import numpy as np

from tncount.decomp.simplify import simplify_leaves
from tncount.decomp.td import TreeDecomposition, binarize, validate_td
from tncount.errors import DecompositionError, FactoringError, PlanningError
from tncount.graph.multigraph import EdgeCliqueCover, Multigraph
from tncount.graph.structure import StructureGraph, structure_graph
from tncount.graph.trees import rooted_order, suppress_degree_two, tree_centroid
from tncount.methods.greedy import greedy_tree
from tncount.methods.plan import PlanResult, make_plan
from tncount.network.carving import CarvingDecomposition, carving_to_tree
from tncount.network.contraction import DEFAULT_SECONDS_PER_FLOP
from tncount.network.tn import TensorNetwork
from tncount.tensor.contract import pairwise_contract
from tncount.tensor.core import ClauseOrigin, CopyOrigin, Index, Tensor, tensor_from_entries
from tncount.utils.logging import get_logger

logger = get_logger("tncount.methods.factor_tree")

Node = Hashable
MAX_FREE_INDICES = 3


def ft_bound(width: int) -> int:
    """Max-rank guarantee for a source decomposition of the given width."""
    return math.ceil(4 * (width + 1) / 3)


@dataclass
class FactoredTensor:
    """A tensor split along a dimension tree: one piece per tree node."""

    network: TensorNetwork
    node_tensor: dict[Node, Tensor]


def factor_tensor(
    a: Tensor,
    dim_tree: nx.Graph,
    leaf_index: Mapping[Node, Index],
    root: Optional[Node] = None,
) -> FactoredTensor:
    """Factor a weighted-copy or clause tensor along a dimension tree.

    Each tree arc becomes a fresh binary index and each node a piece whose
    indices are its incident arcs plus, at a leaf, the original index that
    leaf stands for. The pieces contract back to ``a``.

    Copy tensors become COPY pieces with the weights on ``root``. For clause
    tensors each arc carries a "satisfied below" flag, oriented toward
    ``root``: leaves evaluate their literal, inner nodes OR their children,
    and the root requires the OR of everything to be 1.

    Args:
        a: A tensor with a ``CopyOrigin`` or ``ClauseOrigin``.
        dim_tree: Tree whose leaves are exactly ``leaf_index``'s keys.
        leaf_index: Leaf node -> index of ``a``, a bijection.
        root: Node carrying the weights / the clause check; defaults to the
            first inner node.

    Raises:
        FactoringError: If ``a`` has no factorable origin or the tree's
            leaves do not match ``a``'s indices.
    """
    if not isinstance(a.origin, (CopyOrigin, ClauseOrigin)):
        raise FactoringError(f"tensor {a!r} is not tagged as a copy or clause tensor")
    nodes = list(dim_tree.nodes)
    if len(nodes) == 1:
        if not set(leaf_index.values()) <= set(a.indices):
            raise FactoringError("dimension tree names indices the tensor does not have")
        return FactoredTensor(TensorNetwork((a,)), {nodes[0]: a})

    leaves = [node for node in nodes if dim_tree.degree(node) == 1]
    if set(leaves) != set(leaf_index) or set(leaf_index.values()) != set(a.indices):
        raise FactoringError("dimension tree leaves do not match the tensor's indices")
    if len(set(leaf_index.values())) != len(leaf_index):
        raise FactoringError("two leaves stand for the same index")
    if not nx.is_tree(dim_tree):
        raise FactoringError("dimension tree is not a tree")

    if root is None:
        root = next((node for node in nodes if dim_tree.degree(node) > 1), nodes[0])
    order, parent = rooted_order(dim_tree, root)
    bond = {node: Index.new(2, f"{a.label}~{k}") for k, node in enumerate(order[1:])}
    position = {index: k for k, index in enumerate(a.indices)}

    pieces: dict[Node, Tensor] = {}
    for node in order:
        children = [c for c in dim_tree.neighbors(node) if parent.get(c) == node]
        own = leaf_index.get(node)
        indices = ([own] if own is not None else []) + [bond[c] for c in children]
        up = bond.get(node)
        if up is not None:
            indices.append(up)
        label = f"{a.label}@{len(pieces)}"

        if isinstance(a.origin, CopyOrigin):
            weights = a.origin.weights if node == root else (1.0, 1.0)
            pieces[node] = Tensor(indices, origin=CopyOrigin(a.origin.variable, weights), label=label)
            continue

        good = a.origin.satisfying[position[own]] if own is not None else frozenset()
        pieces[node] = _clause_piece(indices, own, good, up, label)

    network = TensorNetwork(tuple(pieces[node] for node in order))
    return FactoredTensor(network, pieces)


def _clause_piece(
    indices: list[Index],
    own: Optional[Index],
    good: frozenset[int],
    up: Optional[Index],
    label: str,
) -> Tensor:
    inputs = [i for i in indices if i != up]

    def entry(assignment: dict[Index, int]) -> float:
        flag = any(
            (assignment[i] in good) if i == own else assignment[i] == 1 for i in inputs
        )
        if up is None:
            return 1.0 if flag else 0.0
        return 1.0 if assignment[up] == int(flag) else 0.0

    return tensor_from_entries(indices, entry, label=label)


def absorb_leaf_pieces(factored: FactoredTensor, dim_tree: nx.Graph) -> dict[Node, Tensor]:
    """Contract every leaf piece into its neighbouring inner piece.

    With a dimension tree whose inner nodes all have degree 3 this leaves one
    rank-3 tensor per inner node.
    """
    pieces = dict(factored.node_tensor)
    if dim_tree.number_of_nodes() <= 2:
        return pieces
    for node in list(dim_tree.nodes):
        if dim_tree.degree(node) != 1:
            continue
        host = next(iter(dim_tree.neighbors(node)))
        pieces[host] = pairwise_contract(pieces[host], pieces.pop(node))
    return pieces


def _steiner_nodes(targets: list[Node], parent: dict[Node, Node], depth: dict[Node, int]) -> set[Node]:
    """Nodes of the smallest subtree of a rooted tree spanning ``targets``."""
    nodes = set(targets)
    frontier = set(targets)
    heap = [(-depth[t], k, t) for k, t in enumerate(targets)]
    heapq.heapify(heap)
    tick = count(len(targets))
    while len(frontier) > 1:
        _, _, node = heapq.heappop(heap)
        if node not in frontier:
            continue
        frontier.discard(node)
        up = parent[node]
        nodes.add(up)
        if up not in frontier:
            frontier.add(up)
            heapq.heappush(heap, (-depth[up], next(tick), up))
    return nodes


def _split(items: list[int], parts: int) -> list[list[int]]:
    """Split into ``parts`` consecutive groups whose sizes differ by at most 1."""
    return [chunk.tolist() for chunk in np.array_split(np.array(items, dtype=np.int64), parts)]


def _piece_carving(tree: nx.Graph, spans: dict[int, set[Node]]) -> tuple[nx.Graph, dict[tuple[int, Node], Node]]:
    """Carving tree whose leaves are the notional pieces (v, node) for node in spans[v].

    Every decomposition node gets a hub; the pieces living at a node are
    split into one near-equal group per incident arc and hung, in vertex
    order, along that arc between the hub and the arc's midpoint.
    """
    at: dict[Node, list[int]] = {}
    for v in sorted(spans):
        for node in spans[v]:
            at.setdefault(node, []).append(v)

    s = nx.Graph()
    piece_leaf: dict[tuple[int, Node], Node] = {}
    arms: dict[tuple[Node, Node], list[Node]] = {}
    for node in tree.nodes:
        hub = ("y", node)
        s.add_node(hub)
        here = at.get(node, [])
        nbrs = list(tree.neighbors(node))
        if not nbrs:
            for v in here:
                leaf = ("p", v, node)
                s.add_edge(hub, leaf)
                piece_leaf[(v, node)] = leaf
            continue
        for nbr, group in zip(nbrs, _split(here, len(nbrs))):
            arm = []
            for v in group:
                joint = ("c", v, node)
                leaf = ("p", v, node)
                s.add_edge(joint, leaf)
                piece_leaf[(v, node)] = leaf
                arm.append(joint)
            arms[(node, nbr)] = arm

    for a, b in tree.edges:
        path = [("y", a), *arms[(a, b)], ("m", a, b), *reversed(arms[(b, a)]), ("y", b)]
        nx.add_path(s, path)
    return s, piece_leaf


def _attach_near_centroid(s: nx.Graph, leaves: list[Node]) -> None:
    """Hang each leaf on a fresh node subdividing an arc at the centroid."""
    if not leaves:
        return
    centre = tree_centroid(s)
    toward = next(iter(s.neighbors(centre)), None)
    for k, leaf in enumerate(leaves):
        if toward is None:
            s.add_edge(centre, leaf)
            toward = leaf
            continue
        joint = ("j", k)
        s.remove_edge(centre, toward)
        nx.add_path(s, [centre, joint, toward])
        s.add_edge(joint, leaf)
        toward = joint


@dataclass(frozen=True)
class FactoredCarving:
    """The factored network and the carving built for it from a decomposition.

    ``carving`` maps its leaves to tensor ids of ``network`` and to its free
    vertex ``len(network)``; ``sources[k]`` is the original tensor that
    factored tensor ``k`` came from.
    """

    network: TensorNetwork
    carving: CarvingDecomposition
    sources: list[int]
    source_width: int


def _check_factorable(n: TensorNetwork) -> None:
    if len(n.free_indices) > MAX_FREE_INDICES:
        raise PlanningError(
            f"factor-tree planning allows at most {MAX_FREE_INDICES} free indices, got {len(n.free_indices)}"
        )
    for tensor in n.tensors:
        if tensor.rank > 3 and not isinstance(tensor.origin, (CopyOrigin, ClauseOrigin)):
            raise FactoringError(f"tensor {tensor!r} of rank {tensor.rank} is not factorable")


def ft_carving(
    n: TensorNetwork, td: TreeDecomposition, sg: Optional[StructureGraph] = None
) -> FactoredCarving:
    """Factor ``n`` along ``td`` and build a carving of the factored network.

    ``td`` may decompose the structure graph with or without its degree-0
    vertices; it is restricted to the non-isolated part and binarized. The
    carving has width at most ``ft_bound(td.width)`` on the factored
    network's structure graph.

    Raises:
        PlanningError: If the network has more than three free indices or
            its structure graph has no edges.
        FactoringError: If a tensor of rank >= 4 is not a copy or clause tensor.
        DecompositionError: If ``td`` is not a decomposition of the structure graph.
    """
    _check_factorable(n)
    sg = sg or structure_graph(n)
    core = sg.graph.without_isolated()
    if core.num_edges() == 0:
        raise PlanningError("factor-tree construction needs a structure graph with at least one edge")
    isolated = [v for v in sg.graph.vertices if not core.has_vertex(v)]

    restricted = td.restricted(core.vertices)
    problems = validate_td(restricted, core, require_binary=False)
    if problems:
        raise DecompositionError("not a decomposition of the structure graph: " + "; ".join(problems))
    source = binarize(restricted)
    cover = EdgeCliqueCover({e: frozenset(core.endpoints(e)) for e in core.edges})
    simplified, leaf_of = simplify_leaves(source, cover)
    tree = simplified.tree

    centre = tree_centroid(tree)
    order, parent = rooted_order(tree, centre)
    rank = {node: k for k, node in enumerate(order)}
    depth = {centre: 0}
    for node in order[1:]:
        depth[node] = depth[parent[node]] + 1

    spans: dict[int, set[Node]] = {}
    dimension: dict[int, nx.Graph] = {}
    for v in core.vertices:
        targets = [leaf_of[e] for e in core.incident(v)]
        spans[v] = _steiner_nodes(targets, parent, depth)
        dimension[v] = suppress_degree_two(tree.subgraph(spans[v]).copy(), keep=targets)

    # Factored network: originals in order, high-rank ones replaced by their pieces.
    tensors: list[Tensor] = []
    sources: list[int] = []
    anchor: dict[tuple[int, Node], int] = {}
    for k, tensor in enumerate(n.tensors):
        if tensor.rank <= 3:
            if core.has_vertex(k):
                anchor[(k, _representative(dimension[k], depth))] = len(tensors)
            tensors.append(tensor)
            sources.append(k)
            continue
        dim_tree = dimension[k]
        leaf_index = {leaf_of[e]: sg.edge_index[e] for e in core.incident(k)}
        inner = [node for node in dim_tree.nodes if dim_tree.degree(node) > 1]
        root = min(inner, key=rank.__getitem__)
        pieces = absorb_leaf_pieces(factor_tensor(tensor, dim_tree, leaf_index, root), dim_tree)
        for node in sorted(pieces, key=rank.__getitem__):
            anchor[(k, node)] = len(tensors)
            tensors.append(pieces[node])
            sources.append(k)
    factored = TensorNetwork(tuple(tensors))
    free_vertex = len(factored)
    if core.has_vertex(sg.free_vertex):
        anchor[(sg.free_vertex, _representative(dimension[sg.free_vertex], depth))] = free_vertex

    s, piece_leaf = _piece_carving(tree, spans)
    leaf_vertex: dict[Node, int] = {}
    for key, leaf in piece_leaf.items():
        if key in anchor:
            leaf_vertex[leaf] = anchor[key]
        else:
            s.remove_node(leaf)

    extra = []
    for v in isolated:
        leaf = ("iso", v)
        extra.append(leaf)
        leaf_vertex[leaf] = free_vertex if v == sg.free_vertex else sources.index(v)
    carving = CarvingDecomposition(s, leaf_vertex).normalized()
    _attach_near_centroid(carving.tree, extra)
    logger.debug(
        "ft_carving",
        source_width=source.width,
        bound=ft_bound(source.width),
        tensors=len(factored),
        max_tensor_rank=factored.max_tensor_rank,
    )
    return FactoredCarving(factored, carving, sources, source.width)


def plan_ft(
    n: TensorNetwork,
    td: TreeDecomposition,
    sg: Optional[StructureGraph] = None,
    seed: int = 0,
    seconds_per_flop: float = DEFAULT_SECONDS_PER_FLOP,
) -> PlanResult:
    """Plan by factoring along a tree decomposition of the structure graph.

    The tree read off :func:`ft_carving` is compared with the greedy tree
    over the same factored network, and the better of the two, by
    (max rank, cost), is kept.

    Raises:
        PlanningError: If the network has more than three free indices.
        FactoringError: If a tensor of rank >= 4 is not a copy or clause tensor.
        DecompositionError: If ``td`` is not a decomposition of the structure graph.
    """
    _check_factorable(n)
    sg = sg or structure_graph(n)
    if sg.graph.num_edges() == 0:
        return make_plan(
            n, greedy_tree(n, seed), "ft", source_width=td.width,
            seconds_per_flop=seconds_per_flop, tensor_sources=list(range(len(n))),
        )

    built = ft_carving(n, td, sg)
    plan = make_plan(
        built.network, carving_to_tree(built.carving, built.network), "ft",
        source_width=td.width, seconds_per_flop=seconds_per_flop, tensor_sources=built.sources,
    )
    alternative = make_plan(
        built.network, greedy_tree(built.network, seed), "ft",
        source_width=td.width, seconds_per_flop=seconds_per_flop, tensor_sources=built.sources,
    )
    logger.debug("ft_plan", constructed_rank=plan.max_rank, greedy_rank=alternative.max_rank)
    if (alternative.max_rank, alternative.estimated_cost) < (plan.max_rank, plan.estimated_cost):
        return alternative
    return plan


def _representative(dim_tree: nx.Graph, depth: Mapping[Node, int]) -> Node:
    """The piece that keeps its own leaf when a low-rank tensor is not split.

    A branch node if the span has one, otherwise the node nearest the centroid.
    """
    branch = [node for node in dim_tree.nodes if dim_tree.degree(node) >= 3]
    candidates = branch or list(dim_tree.nodes)
    return min(candidates, key=lambda node: depth[node])
