"""Contraction planners: greedy, Line-Graph and Factor-Tree."""

from tncount.methods.factor_tree import (
    FactoredCarving,
    FactoredTensor,
    absorb_leaf_pieces,
    factor_tensor,
    ft_bound,
    ft_carving,
    plan_ft,
)
from tncount.methods.greedy import greedy_tree, plan_greedy
from tncount.methods.line_graph import lg_carving, lg_source_graph, plan_lg
from tncount.methods.plan import PlanResult, make_plan

__all__ = [
    "FactoredCarving",
    "FactoredTensor",
    "PlanResult",
    "absorb_leaf_pieces",
    "factor_tensor",
    "ft_bound",
    "ft_carving",
    "greedy_tree",
    "lg_carving",
    "lg_source_graph",
    "make_plan",
    "plan_ft",
    "plan_greedy",
    "plan_lg",
]
