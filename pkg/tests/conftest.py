"""Shared fixtures for the tncount test suite."""

from __future__ import annotations

from typing import Callable

import numpy as np
import pytest

from tncount.formula.cnf import CnfFormula
from tncount.formula.dimacs import parse_dimacs
from tncount.graph.multigraph import Multigraph
from tncount.network.tn import TensorNetwork, reduce_wmc
from tncount.network.tree import ContractionTree
from tncount.tensor.core import Index, Tensor, entry_count

# Tensor positions in the network of EXAMPLE_CNF: variables w, x, y, z then clauses A, B, C, D.
W, X, Y, Z, A, B, C, D = range(8)

EXAMPLE_CNF = "p cnf 4 4\n1 2 -3 0\n1 3 4 0\n-2 -3 0\n-3 -4 0\n"

# Width-3 decomposition of EXAMPLE_CNF's structure graph with y in every bag.
EXAMPLE_TD_BAGS = {
    0: frozenset({A, W, Y, X}),
    1: frozenset({C, X, Y}),
    2: frozenset({W, X, Y}),
    3: frozenset({W, Y, Z}),
    4: frozenset({B, W, Y, Z}),
    5: frozenset({D, Y, Z}),
}
EXAMPLE_TD_ARCS = [(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)]

# Contraction tree of max rank 4 for the EXAMPLE_CNF network.
EXAMPLE_TREE = ContractionTree(
    8,
    (
        (W, A),  # 8
        (X, C),  # 9
        (8, 9),  # 10
        (Z, D),  # 11
        (B, 11),  # 12
        (10, 12),  # 13
        (13, Y),  # 14
    ),
)


@pytest.fixture
def example_formula() -> CnfFormula:
    return parse_dimacs(EXAMPLE_CNF)


@pytest.fixture
def example_network(example_formula: CnfFormula) -> TensorNetwork:
    return reduce_wmc(example_formula)


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "example.cnf"
    path.write_text(EXAMPLE_CNF, encoding="utf-8")
    return path


@pytest.fixture
def random_formula() -> Callable[..., CnfFormula]:
    """Factory for seeded random weighted CNF formulas.

    ``hub_degree`` forces variable 1 into at least that many clauses.
    """

    def make(
        seed: int,
        max_vars: int = 10,
        max_clauses: int = 20,
        max_width: int = 4,
        hub_degree: int = 0,
        weighted: bool = True,
    ) -> CnfFormula:
        rng = np.random.default_rng(seed)
        num_vars = int(rng.integers(3, max_vars + 1))
        num_clauses = int(rng.integers(max(1, hub_degree), max(max_clauses, hub_degree) + 1))
        clauses = []
        for k in range(num_clauses):
            width = int(rng.integers(1, min(max_width, num_vars) + 1))
            variables = rng.choice(np.arange(1, num_vars + 1), size=width, replace=False)
            if k < hub_degree and 1 not in variables:
                variables[0] = 1
            signs = rng.choice([-1, 1], size=width)
            clauses.append(tuple(int(v * s) for v, s in zip(variables, signs)))
        weights = {}
        if weighted:
            for v in range(1, num_vars + 1):
                weights[v] = (float(rng.random()), float(rng.random()))
        return CnfFormula(num_vars=num_vars, clauses=clauses, weights=weights)

    return make


@pytest.fixture
def random_multigraph() -> Callable[..., Multigraph]:
    """Factory for seeded random multigraphs with at least one edge."""

    def make(seed: int, max_vertices: int = 40) -> Multigraph:
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, max_vertices + 1))
        m = int(rng.integers(1, 2 * n + 1))
        edges = []
        for _ in range(m):
            u, v = rng.choice(n, size=2, replace=False).tolist()
            edges.append((u, v))
        return Multigraph.from_edges(edges, vertices=range(n))

    return make


@pytest.fixture
def random_network() -> Callable[..., TensorNetwork]:
    """Factory for seeded random networks of dense tensors; about one index in five is free."""

    def make(seed: int, max_tensors: int = 7, max_indices: int = 10) -> TensorNetwork:
        rng = np.random.default_rng(seed)
        k = int(rng.integers(3, max_tensors + 1))
        held: list[list[Index]] = [[] for _ in range(k)]
        for _ in range(int(rng.integers(k - 1, max_indices + 1))):
            index = Index.new(int(rng.integers(1, 4)))
            if rng.random() < 0.2:
                held[int(rng.integers(k))].append(index)
            else:
                a, b = rng.choice(k, size=2, replace=False).tolist()
                held[a].append(index)
                held[b].append(index)
        return TensorNetwork.of([Tensor(ix, rng.random(entry_count(ix))) for ix in held])

    return make


def random_contraction_tree(num_leaves: int, seed: int) -> ContractionTree:
    """Uniformly random merge order over ``num_leaves`` leaves."""
    rng = np.random.default_rng(seed)
    alive = list(range(num_leaves))
    merges = []
    for j in range(num_leaves - 1):
        a, b = rng.choice(len(alive), size=2, replace=False).tolist()
        merges.append((alive[a], alive[b]))
        alive = [node for k, node in enumerate(alive) if k not in (a, b)] + [num_leaves + j]
    return ContractionTree(num_leaves, tuple(merges))
