"""Benchmark generators: random cubic graphs and their vertex-cover formulas."""

from __future__ import annotations

import networkx as nx
import numpy as np
from tenacity import retry, retry_if_exception_type, stop_after_attempt

from tncount.errors import GraphError
from tncount.formula.cnf import CnfFormula
from tncount.graph.multigraph import Multigraph
from tncount.utils.logging import get_logger

logger = get_logger("tncount.formula.bench")

MAX_PAIRING_ATTEMPTS = 10_000


class _RejectedPairing(Exception):
    """A sampled pairing had a loop, a repeated edge, or was disconnected."""


@retry(
    retry=retry_if_exception_type(_RejectedPairing),
    stop=stop_after_attempt(MAX_PAIRING_ATTEMPTS),
    reraise=True,
)
def _sample_pairing(n: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    points = rng.permutation(np.repeat(np.arange(n), 3))
    edges = []
    seen = set()
    for u, v in points.reshape(-1, 2).tolist():
        if u == v:
            raise _RejectedPairing()
        key = (min(u, v), max(u, v))
        if key in seen:
            raise _RejectedPairing()
        seen.add(key)
        edges.append(key)
    h = nx.Graph(edges)
    if h.number_of_nodes() != n or not nx.is_connected(h):
        raise _RejectedPairing()
    return sorted(edges)


def random_cubic_graph(n: int, seed: int) -> Multigraph:
    """Sample a connected simple 3-regular graph on vertices 0..n-1.

    Uses the pairing model with rejection; the same (n, seed) always yields
    the same edge set.

    Raises:
        GraphError: If n is odd or smaller than 4.
    """
    if n < 4 or n % 2:
        raise GraphError(f"no cubic graph sampler for n={n}; n must be even and >= 4")
    rng = np.random.default_rng(seed)
    edges = _sample_pairing(n, rng)
    logger.debug("cubic_graph_sampled", n=n, seed=seed, edges=len(edges))
    return Multigraph.from_edges(edges, vertices=range(n))


def encode_vertex_cover(graph: Multigraph) -> CnfFormula:
    """Monotone 2-CNF whose models are the vertex covers of ``graph``.

    Variable ``k + 1`` stands for the ``k``-th vertex in sorted order; one
    clause per edge, in edge order.

    Raises:
        GraphError: If the graph has no vertices.
    """
    vertices = sorted(graph.vertices)
    if not vertices:
        raise GraphError("cannot encode the empty graph")
    var = {v: k + 1 for k, v in enumerate(vertices)}
    clauses = []
    for e in graph.edges:
        u, v = graph.endpoints(e)
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        clauses.append((var[u], var[v]))
    return CnfFormula(num_vars=len(vertices), clauses=clauses)
