"""PACE `.td` tree decomposition files.

Graph vertices are numbered 1..n by sorted vertex id, matching ``write_gr``.
"""

from __future__ import annotations

from typing import Iterable, TextIO, Union

import networkx as nx

from tncount.decomp.td import TreeDecomposition, binarize, validate_td
from tncount.errors import DecompositionError, ParseError
from tncount.graph.multigraph import Multigraph
from tncount.utils.logging import get_logger

logger = get_logger("tncount.decomp.pace")


def write_td(td: TreeDecomposition, g: Multigraph) -> str:
    number = {v: k + 1 for k, v in enumerate(sorted(g.vertices))}
    bag_id = {node: k + 1 for k, node in enumerate(td.tree.nodes)}
    lines = [f"s td {len(bag_id)} {td.width + 1} {g.num_vertices()}"]
    for node, k in bag_id.items():
        members = sorted(number[v] for v in td.bags[node])
        lines.append(" ".join(["b", str(k), *map(str, members)]))
    for a, b in td.tree.edges:
        lines.append(f"{bag_id[a]} {bag_id[b]}")
    return "\n".join(lines) + "\n"


def read_td(text: Union[str, TextIO, Iterable[str]], g: Multigraph) -> TreeDecomposition:
    """Parse a `.td` file for ``g``; bag ``k`` becomes tree node ``k``.

    Raises:
        ParseError: On malformed lines or counts disagreeing with the header.
    """
    vertex = dict(enumerate(sorted(g.vertices), start=1))
    lines = text.splitlines() if isinstance(text, str) else text
    header = None
    bags: dict[int, frozenset[int]] = {}
    tree = nx.Graph()
    line_no = 0
    for line_no, raw in enumerate(lines, start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        try:
            if tokens[0] == "s":
                if header is not None or len(tokens) != 5 or tokens[1] != "td":
                    raise ParseError("malformed solution line, expected 's td <bags> <max> <n>'", line_no)
                header = (int(tokens[2]), int(tokens[3]), int(tokens[4]))
                if header[2] != g.num_vertices():
                    raise ParseError(
                        f"decomposition is for {header[2]} vertices, graph has {g.num_vertices()}",
                        line_no,
                    )
                continue
            if header is None:
                raise ParseError("content before solution line", line_no)
            if tokens[0] == "b":
                k = int(tokens[1])
                if not 1 <= k <= header[0] or k in bags:
                    raise ParseError(f"bad or repeated bag id {k}", line_no)
                members = [int(t) for t in tokens[2:]]
                if any(m not in vertex for m in members):
                    raise ParseError("bag vertex out of range", line_no)
                bags[k] = frozenset(vertex[m] for m in members)
                tree.add_node(k)
                continue
            if len(tokens) != 2:
                raise ParseError("tree edge line needs two bag ids", line_no)
            a, b = int(tokens[0]), int(tokens[1])
            if not (1 <= a <= header[0] and 1 <= b <= header[0]):
                raise ParseError("tree edge names an unknown bag", line_no)
            tree.add_edge(a, b)
        except ValueError:
            raise ParseError("expected integers", line_no) from None
    if header is None:
        raise ParseError("missing solution line", line_no or None)
    if len(bags) != header[0] or set(tree.nodes) != set(bags):
        raise ParseError(f"header declares {header[0]} bags, found {len(bags)}")
    td = TreeDecomposition(tree, bags)
    if td.width + 1 != header[1]:
        logger.warning("td_header_width_mismatch", declared=header[1] - 1, actual=td.width)
    return td


def import_td(path: str, g: Multigraph) -> TreeDecomposition:
    """Read, validate and binarize an external decomposition of ``g``.

    Raises:
        ParseError: If the file is malformed.
        DecompositionError: If it is not a tree decomposition of ``g``.
    """
    with open(path, "r", encoding="utf-8") as f:
        td = read_td(f, g)
    problems = validate_td(td, g, require_binary=False)
    if problems:
        raise DecompositionError(f"imported decomposition is invalid: {'; '.join(problems)}")
    td = binarize(td)
    logger.info("td_imported", path=path, width=td.width, nodes=td.num_nodes)
    return td
