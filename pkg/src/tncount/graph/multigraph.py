"""Multigraphs with explicit incidence maps, line graphs and edge clique covers."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Iterator, Optional

import networkx as nx

from tncount.errors import DecompositionError, GraphError

Vertex = int
Edge = int


class Multigraph:
    """Undirected multigraph; parallel edges allowed, self-loops rejected.

    Vertex and edge ids are integers. Ids handed out automatically follow
    construction order so that downstream decompositions are reproducible.
    """

    def __init__(self) -> None:
        self._edge_endpoints: dict[Edge, tuple[Vertex, Vertex]] = {}
        self._vertex_edges: dict[Vertex, list[Edge]] = {}
        self._next_vertex = 0
        self._next_edge = 0

    @classmethod
    def from_edges(
        cls, edges: Iterable[tuple[Vertex, Vertex]], vertices: Iterable[Vertex] = ()
    ) -> "Multigraph":
        g = cls()
        for v in vertices:
            g.add_vertex(v)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    def add_vertex(self, v: Optional[Vertex] = None) -> Vertex:
        """Add a vertex (no-op if present) and return its id."""
        if v is None:
            v = self._next_vertex
        if v not in self._vertex_edges:
            self._vertex_edges[v] = []
        self._next_vertex = max(self._next_vertex, v + 1)
        return v

    def add_edge(self, u: Vertex, v: Vertex, edge_id: Optional[Edge] = None) -> Edge:
        """Add an edge between two distinct vertices, creating them if needed.

        Raises:
            GraphError: On a self-loop or a reused edge id.
        """
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if edge_id is None:
            edge_id = self._next_edge
        if edge_id in self._edge_endpoints:
            raise GraphError(f"edge id {edge_id} already used")
        self.add_vertex(u)
        self.add_vertex(v)
        self._edge_endpoints[edge_id] = (u, v)
        self._vertex_edges[u].append(edge_id)
        self._vertex_edges[v].append(edge_id)
        self._next_edge = max(self._next_edge, edge_id + 1)
        return edge_id

    @property
    def vertices(self) -> list[Vertex]:
        return list(self._vertex_edges)

    @property
    def edges(self) -> list[Edge]:
        return list(self._edge_endpoints)

    def num_vertices(self) -> int:
        return len(self._vertex_edges)

    def num_edges(self) -> int:
        return len(self._edge_endpoints)

    def has_vertex(self, v: Vertex) -> bool:
        return v in self._vertex_edges

    def endpoints(self, e: Edge) -> tuple[Vertex, Vertex]:
        """ε(e)."""
        return self._edge_endpoints[e]

    def incident(self, v: Vertex) -> list[Edge]:
        """δ(v), in insertion order."""
        return list(self._vertex_edges[v])

    def degree(self, v: Vertex) -> int:
        return len(self._vertex_edges[v])

    def neighbors(self, v: Vertex) -> set[Vertex]:
        result = set()
        for e in self._vertex_edges[v]:
            a, b = self._edge_endpoints[e]
            result.add(b if a == v else a)
        return result

    def simple_adjacency(self) -> dict[Vertex, set[Vertex]]:
        """Adjacency sets with parallel edges collapsed."""
        return {v: self.neighbors(v) for v in self._vertex_edges}

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self._edge_endpoints.values():
            key = (min(u, v), max(u, v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def cut(self, side: set[Vertex]) -> int:
        """Number of edges with exactly one endpoint in ``side``."""
        return sum(1 for u, v in self._edge_endpoints.values() if (u in side) != (v in side))

    def without_isolated(self) -> "Multigraph":
        """Copy with degree-0 vertices removed; ids are preserved."""
        return self.induced(v for v, inc in self._vertex_edges.items() if inc)

    def induced(self, vertices: Iterable[Vertex]) -> "Multigraph":
        """Subgraph on ``vertices``; vertex and edge ids are preserved."""
        keep = set(vertices)
        g = Multigraph()
        for v in self._vertex_edges:
            if v in keep:
                g.add_vertex(v)
        for e, (u, v) in self._edge_endpoints.items():
            if u in keep and v in keep:
                g.add_edge(u, v, edge_id=e)
        return g

    def to_networkx(self) -> nx.MultiGraph:
        h = nx.MultiGraph()
        h.add_nodes_from(self._vertex_edges)
        for e, (u, v) in self._edge_endpoints.items():
            h.add_edge(u, v, key=e)
        return h

    def __iter__(self) -> Iterator[Vertex]:
        return iter(self._vertex_edges)

    def __repr__(self) -> str:
        return f"Multigraph(vertices={self.num_vertices()}, edges={self.num_edges()})"


def line_graph(g: Multigraph) -> Multigraph:
    """Line graph with multiplicity |ε(e) ∩ ε(f)| between edges e and f.

    Vertex ids of the result are the edge ids of ``g``. Line-graph edges are
    created per shared endpoint, walking vertices and their incident edges
    in insertion order.
    """
    result = Multigraph()
    for e in g.edges:
        result.add_vertex(e)
    for v in g.vertices:
        for e, f in combinations(g.incident(v), 2):
            result.add_edge(e, f)
    return result


@dataclass(frozen=True)
class EdgeCliqueCover:
    """Labelled family of vertex sets, each a clique, jointly covering V."""

    labels: dict[Hashable, frozenset[Vertex]]

    def __len__(self) -> int:
        return len(self.labels)

    def validate(self, g: Multigraph) -> list[str]:
        """Return every violation of the cover conditions on ``g``."""
        problems = []
        covered: set[Vertex] = set()
        adjacency = g.simple_adjacency()
        for label, members in self.labels.items():
            for v in members:
                if not g.has_vertex(v):
                    problems.append(f"label {label!r}: vertex {v} not in graph")
            covered.update(members)
            for u, v in combinations(sorted(members), 2):
                if u in adjacency and v not in adjacency[u]:
                    problems.append(f"label {label!r}: {u} and {v} not adjacent")
        for v in g.vertices:
            if v not in covered:
                problems.append(f"vertex {v} not covered")
        return problems

    def check(self, g: Multigraph) -> None:
        problems = self.validate(g)
        if problems:
            raise DecompositionError("invalid edge clique cover: " + "; ".join(problems))


def edge_incidence_cover(g: Multigraph) -> EdgeCliqueCover:
    """The cover of Line(g) labelled by the vertices of g, v -> δ(v)."""
    return EdgeCliqueCover({v: frozenset(g.incident(v)) for v in g.vertices})
