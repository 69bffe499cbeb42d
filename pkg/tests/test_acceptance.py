"""Scaled end-to-end suites: oracle agreement, width guarantees and decomposition fuzzing.

Run with ``pytest -m slow``; deselect with ``-m "not slow"``.
"""

import numpy as np
import pytest

from tncount import driver
from tncount.config import RunConfig
from tncount.decomp.elimination import STRATEGIES, anytime_td, heuristic_td
from tncount.decomp.simplify import simplify_leaves
from tncount.decomp.td import binarize, validate_td
from tncount.errors import MemoryCapExceeded
from tncount.formula.bench import encode_vertex_cover, random_cubic_graph
from tncount.formula.cnf import CnfFormula, brute_force_wmc
from tncount.graph.multigraph import edge_incidence_cover, line_graph
from tncount.graph.structure import structure_graph
from tncount.methods import ft_bound, ft_carving, plan_ft, plan_greedy, plan_lg
from tncount.network.carving import CarvingDecomposition, carving_width, validate_carving
from tncount.network.contraction import contract, working_entries
from tncount.network.tn import reduce_wmc

pytestmark = pytest.mark.slow

ORACLE_MEM_CAP = 2**24


def _lg_plan(network, seed=0):
    sg = structure_graph(network)
    return plan_lg(network, heuristic_td(line_graph(sg.graph), seed=seed), sg)


def _ft_plan(network, seed=0):
    sg = structure_graph(network)
    return plan_ft(network, heuristic_td(sg.graph.without_isolated(), seed=seed), sg, seed=seed)


def _count(plan):
    return contract(plan.network, plan.tree).scalar()


def test_every_method_agrees_with_brute_force(random_formula):
    # Few variables with many clauses give greedy and LG trees far above any
    # practical cap; those must be refused, never attempted.
    for seed in range(500):
        f = random_formula(seed, max_vars=15, max_clauses=30)
        oracle = brute_force_wmc(f)
        network = reduce_wmc(f)
        for plan in (plan_greedy(network, seed), _lg_plan(network, seed)):
            if working_entries(plan.network, plan.tree) > ORACLE_MEM_CAP:
                with pytest.raises(MemoryCapExceeded):
                    contract(plan.network, plan.tree, ORACLE_MEM_CAP)
                continue
            value = contract(plan.network, plan.tree, ORACLE_MEM_CAP).scalar()
            assert np.isclose(value, oracle, rtol=1e-9, atol=1e-15), (seed, plan.method)
        plan = _ft_plan(network, seed)
        assert working_entries(plan.network, plan.tree) <= ORACLE_MEM_CAP, seed
        value = contract(plan.network, plan.tree, ORACLE_MEM_CAP).scalar()
        assert np.isclose(value, oracle, rtol=1e-9, atol=1e-15), (seed, "ft")


def test_line_graph_carvings_stay_within_width_plus_one(random_multigraph):
    for seed in range(200):
        g = random_multigraph(seed)
        cover = edge_incidence_cover(g)
        for td in anytime_td(line_graph(g), STRATEGIES, seed=seed, max_restarts=3):
            simplified, leaf_of = simplify_leaves(td, cover)
            carving = CarvingDecomposition(
                simplified.tree, {leaf: v for v, leaf in leaf_of.items()}
            ).normalized()
            assert validate_carving(carving, g) == [], seed
            assert carving_width(carving, g) <= td.width + 1, seed


def test_factor_tree_ranks_and_bound(random_formula):
    for seed in range(200):
        f = random_formula(seed, max_vars=14, max_clauses=24, hub_degree=10 if seed % 2 else 0)
        oracle = brute_force_wmc(f)
        network = reduce_wmc(f)
        sg = structure_graph(network)
        core = sg.graph.without_isolated()
        for td in anytime_td(core, STRATEGIES, seed=seed, max_restarts=3):
            built = ft_carving(network, td, sg)
            factored = structure_graph(built.network).graph
            assert carving_width(built.carving, factored) <= ft_bound(td.width), seed
            plan = plan_ft(network, td, sg, seed=seed)
            assert plan.network.max_tensor_rank <= 3, seed
            assert plan.network.bond_dimension == 2, seed
            assert plan.max_rank <= ft_bound(td.width), seed
            assert np.isclose(_count(plan), oracle, rtol=1e-9, atol=1e-15), seed


def test_high_degree_variable_needs_factoring():
    f = CnfFormula(num_vars=26, clauses=[(1, k) for k in range(2, 27)])
    network = reduce_wmc(f)
    assert plan_greedy(network).max_rank >= 25
    assert _lg_plan(network).max_rank >= 25

    sg = structure_graph(network)
    td = heuristic_td(sg.graph.without_isolated())
    assert _ft_plan(network).max_rank <= ft_bound(td.width)

    # 2^25 entries sit below the default cap, so the cap is lowered to 2^20.
    capped = {"mem_cap": 2**20}
    for method in ("greedy", "lg"):
        with pytest.raises(MemoryCapExceeded):
            driver.count_formula(f, RunConfig(method=method, **capped))
    report = driver.count_formula(f, RunConfig(method="ft", **capped))
    assert report.wmc == 2.0**25 + 1


@pytest.mark.parametrize("n", [10, 14, 18])
def test_vertex_cover_counts_match_brute_force(n):
    f = encode_vertex_cover(random_cubic_graph(n, seed=n))
    oracle = brute_force_wmc(f)
    for method in ("greedy", "lg", "ft"):
        report = driver.count_formula(f, RunConfig(method=method, td_restarts=4))
        assert report.wmc == oracle, method


def test_vertex_cover_methods_agree_at_fifty():
    f = encode_vertex_cover(random_cubic_graph(50, seed=1))
    counts = [
        driver.count_formula(f, RunConfig(method=method, td_restarts=4)).wmc
        for method in ("greedy", "lg", "ft")
    ]
    assert np.allclose(counts, counts[0], rtol=1e-6)


def test_line_graph_completes_eighty_vertices():
    f = encode_vertex_cover(random_cubic_graph(80, seed=1))
    report = driver.count_formula(f, RunConfig(method="lg", timeout=120.0, td_restarts=4))
    assert report.wmc > 0
    assert report.times["total"] < 120.0


def test_decompositions_pass_their_validators(random_multigraph):
    for seed in range(1000):
        g = random_multigraph(seed, max_vertices=25)
        strategy = STRATEGIES[seed % len(STRATEGIES)]

        td = heuristic_td(g, strategy, seed)
        assert validate_td(td, g, require_binary=False) == [], seed
        binary = binarize(td)
        assert validate_td(binary, g) == [], seed
        assert binary.width == td.width, seed

        lg = line_graph(g)
        cover = edge_incidence_cover(g)
        simplified, leaf_of = simplify_leaves(binarize(heuristic_td(lg, strategy, seed)), cover, lg)
        assert validate_td(simplified, lg, require_binary=False) == [], seed
        assert set(leaf_of) == set(g.vertices), seed


def test_plans_pass_their_validator(random_formula):
    for seed in range(200):
        network = reduce_wmc(random_formula(seed, hub_degree=5 if seed % 4 == 0 else 0))
        for plan in (plan_greedy(network, seed), _lg_plan(network, seed), _ft_plan(network, seed)):
            assert plan.validate() == [], (seed, plan.method)
