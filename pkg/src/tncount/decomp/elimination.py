"""Greedy elimination heuristics and the anytime decomposition stream."""

from __future__ import annotations

import heapq
from typing import Iterator, Optional, Sequence

import networkx as nx
import numpy as np

from tncount.decomp.td import TreeDecomposition, binarize
from tncount.errors import DecompositionError
from tncount.graph.multigraph import Multigraph
from tncount.utils.logging import get_logger
from tncount.utils.timing import Deadline

logger = get_logger("tncount.decomp.elimination")

STRATEGIES = ("min-fill", "min-degree")

# Permutation of graph vertices.
EliminationOrder = list[int]


def _fill_in(adj: dict[int, set[int]], v: int) -> int:
    nbrs = list(adj[v])
    missing = 0
    for k, a in enumerate(nbrs):
        row = adj[a]
        for b in nbrs[k + 1 :]:
            if b not in row:
                missing += 1
    return missing


def elimination_order(g: Multigraph, strategy: str, seed: int) -> tuple[EliminationOrder, dict[int, frozenset[int]]]:
    """Eliminate vertices greedily, returning the order and each vertex's bag.

    The bag of ``v`` is ``v`` plus its neighbours at elimination time. Ties
    on the score are broken by a seeded random priority.
    """
    if strategy not in STRATEGIES:
        raise DecompositionError(f"unknown elimination strategy {strategy!r}")
    adj = {v: set(nbrs) for v, nbrs in g.simple_adjacency().items()}
    vertices = list(adj)
    rng = np.random.default_rng(seed)
    tie = dict(zip(vertices, rng.permutation(len(vertices)).tolist()))

    def score(v: int) -> int:
        return _fill_in(adj, v) if strategy == "min-fill" else len(adj[v])

    current = {v: score(v) for v in vertices}
    heap = [(current[v], tie[v], v) for v in vertices]
    heapq.heapify(heap)

    order: EliminationOrder = []
    bags: dict[int, frozenset[int]] = {}
    while heap:
        s, _, v = heapq.heappop(heap)
        if v not in adj or current[v] != s:
            continue
        nbrs = adj.pop(v)
        bags[v] = frozenset(nbrs | {v})
        order.append(v)
        for a in nbrs:
            adj[a].discard(v)
            adj[a].update(nbrs - {a})
        touched = set(nbrs)
        if strategy == "min-fill":
            for a in nbrs:
                touched.update(adj[a])
        for a in touched:
            new = score(a)
            if new != current[a]:
                current[a] = new
                heapq.heappush(heap, (new, tie[a], a))
    return order, bags


def decomposition_from_order(order: Sequence[int], bags: dict[int, frozenset[int]]) -> TreeDecomposition:
    """Assemble the bag tree of an elimination order.

    Each vertex's node hangs below the node of its earliest-eliminated later
    neighbour; component roots are chained. Bags contained in a neighbouring
    bag are absorbed.
    """
    position = {v: k for k, v in enumerate(order)}
    tree = nx.Graph()
    tree.add_nodes_from(order)
    roots = []
    for v in order:
        later = [u for u in bags[v] if u != v]
        if later:
            tree.add_edge(v, min(later, key=position.__getitem__))
        else:
            roots.append(v)
    for a, b in zip(roots, roots[1:]):
        tree.add_edge(a, b)

    node_bags = dict(bags)
    changed = True
    while changed and tree.number_of_nodes() > 1:
        changed = False
        for node in list(tree.nodes):
            bag = node_bags[node]
            host = next((nbr for nbr in tree.neighbors(node) if bag <= node_bags[nbr]), None)
            if host is None:
                continue
            for nbr in list(tree.neighbors(node)):
                if nbr != host:
                    tree.add_edge(host, nbr)
            tree.remove_node(node)
            del node_bags[node]
            changed = True
    return TreeDecomposition(tree, node_bags)


def heuristic_td(g: Multigraph, strategy: str = "min-fill", seed: int = 0) -> TreeDecomposition:
    """Binary tree decomposition of ``g`` by greedy elimination.

    Deterministic for a given (strategy, seed).

    Raises:
        DecompositionError: If ``g`` has no vertices or the strategy is unknown.
    """
    if g.num_vertices() == 0:
        raise DecompositionError("cannot decompose a graph without vertices")
    order, bags = elimination_order(g, strategy, seed)
    td = binarize(decomposition_from_order(order, bags))
    logger.debug("heuristic_td", strategy=strategy, seed=seed, width=td.width, nodes=td.num_nodes)
    return td


def anytime_td(
    g: Multigraph,
    strategies: Sequence[str] = STRATEGIES,
    deadline: Optional[Deadline] = None,
    seed: int = 0,
    max_restarts: Optional[int] = None,
) -> Iterator[TreeDecomposition]:
    """Yield decompositions of strictly decreasing width.

    The first decomposition is always yielded. Restart ``k`` uses strategy
    ``strategies[k % len(strategies)]`` with seed ``seed + k``. The stream
    ends at the deadline, after ``max_restarts`` restarts, or once the width
    reaches 0 (edgeless graph) or 1.
    """
    if not strategies:
        raise DecompositionError("anytime search needs at least one strategy")
    floor = 0 if g.num_edges() == 0 else 1
    best: Optional[TreeDecomposition] = None
    attempt = 0
    while True:
        strategy = strategies[attempt % len(strategies)]
        td = heuristic_td(g, strategy, seed + attempt)
        if best is None or td.width < best.width:
            best = td
            logger.info("td_found", width=td.width, strategy=strategy, attempt=attempt)
            yield td
        if best.width <= floor:
            return
        attempt += 1
        if max_restarts is not None and attempt > max_restarts:
            return
        if deadline is not None and deadline.expired():
            return
