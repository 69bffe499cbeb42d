"""Greedy contraction ordering by smallest result rank."""

from __future__ import annotations

import heapq

import numpy as np

from tncount.methods.plan import PlanResult, make_plan
from tncount.network.contraction import DEFAULT_SECONDS_PER_FLOP
from tncount.network.tn import TensorNetwork
from tncount.network.tree import ContractionTree
from tncount.tensor.core import Index, entry_count
from tncount.utils.logging import get_logger

logger = get_logger("tncount.methods.greedy")


def greedy_tree(n: TensorNetwork, seed: int = 0) -> ContractionTree:
    """Contraction tree from repeatedly merging the pair with the smallest result rank.

    Only pairs sharing an index are candidates; ties are broken by a seeded
    random key. Components left over once no pair shares an index are
    joined by outer products, smallest first.
    """
    k = len(n)
    if k == 1:
        return ContractionTree(1)
    rng = np.random.default_rng(seed)

    active: dict[int, frozenset[Index]] = {pos: t.index_set for pos, t in enumerate(n.tensors)}
    holders: dict[Index, set[int]] = {i: set(pos) for i, pos in n.holders.items()}
    heap: list[tuple[int, float, int, int]] = []

    def push(a: int, b: int) -> None:
        heapq.heappush(heap, (len(active[a] ^ active[b]), float(rng.random()), a, b))

    for index in n.bond_indices:
        a, b = sorted(holders[index])
        push(a, b)

    merges: list[tuple[int, int]] = []

    def merge(a: int, b: int) -> int:
        node = k + len(merges)
        merges.append((a, b))
        left, right = active.pop(a), active.pop(b)
        merged = left ^ right
        for index in left | right:
            holders[index].discard(a)
            holders[index].discard(b)
        for index in merged:
            holders[index].add(node)
        active[node] = merged
        return node

    while heap:
        _, _, a, b = heapq.heappop(heap)
        if a not in active or b not in active:
            continue
        node = merge(a, b)
        partners = set()
        for index in active[node]:
            partners.update(holders[index] - {node})
        for other in sorted(partners):
            push(node, other)

    rest = [(entry_count(s), pos) for pos, s in active.items()]
    heapq.heapify(rest)
    while len(rest) > 1:
        _, a = heapq.heappop(rest)
        _, b = heapq.heappop(rest)
        node = merge(a, b)
        heapq.heappush(rest, (entry_count(active[node]), node))

    return ContractionTree(k, tuple(merges))


def plan_greedy(
    n: TensorNetwork,
    seed: int = 0,
    seconds_per_flop: float = DEFAULT_SECONDS_PER_FLOP,
) -> PlanResult:
    """Plan with the greedy baseline."""
    tree = greedy_tree(n, seed)
    plan = make_plan(n, tree, "greedy", seconds_per_flop=seconds_per_flop)
    logger.debug("greedy_plan", tensors=len(n), max_rank=plan.max_rank, flops=plan.flops)
    return plan
