"""PACE `.gr` graph files."""

from __future__ import annotations

from typing import Iterable, TextIO, Union

from tncount.errors import ParseError
from tncount.graph.multigraph import Multigraph
from tncount.utils.logging import get_logger

logger = get_logger("tncount.graph.pace")


def write_gr(g: Multigraph) -> str:
    """Render ``g`` as a PACE graph; vertices are renumbered 1..n by sorted id.

    PACE graphs are simple, so parallel edges are written once.
    """
    number = {v: k + 1 for k, v in enumerate(sorted(g.vertices))}
    pairs = []
    seen = set()
    for e in g.edges:
        u, v = sorted((number[x] for x in g.endpoints(e)))
        if (u, v) in seen:
            continue
        seen.add((u, v))
        pairs.append((u, v))
    collapsed = g.num_edges() - len(pairs)
    if collapsed:
        logger.warning("parallel_edges_collapsed", count=collapsed)
    lines = [f"p tw {g.num_vertices()} {len(pairs)}"]
    lines.extend(f"{u} {v}" for u, v in pairs)
    return "\n".join(lines) + "\n"


def read_gr(text: Union[str, TextIO, Iterable[str]]) -> Multigraph:
    """Parse a PACE graph; vertex ``k`` of the file becomes vertex ``k - 1``.

    Raises:
        ParseError: On a missing or malformed header, bad edge lines, or an
            edge count that disagrees with the header.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    g = Multigraph()
    expected_edges = None
    n = 0
    line_no = 0
    for line_no, raw in enumerate(lines, start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "p":
            if expected_edges is not None:
                raise ParseError("duplicate problem line", line_no)
            if len(tokens) != 4 or tokens[1] != "tw":
                raise ParseError("malformed header, expected 'p tw <n> <m>'", line_no)
            try:
                n, expected_edges = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise ParseError("header counts must be integers", line_no) from None
            for v in range(n):
                g.add_vertex(v)
            continue
        if expected_edges is None:
            raise ParseError("edge before problem line", line_no)
        if len(tokens) != 2:
            raise ParseError("edge line needs two vertices", line_no)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError("vertices must be integers", line_no) from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"vertex out of range 1..{n}", line_no)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", line_no)
        g.add_edge(u - 1, v - 1)
    if expected_edges is None:
        raise ParseError("missing problem line", line_no or None)
    if g.num_edges() != expected_edges:
        raise ParseError(f"header declares {expected_edges} edges, found {g.num_edges()}")
    return g
