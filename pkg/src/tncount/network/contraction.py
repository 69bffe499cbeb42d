"""Executing contraction trees and their symbolic cost metrics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from tncount.errors import MemoryCapExceeded
from tncount.network.tn import TensorNetwork
from tncount.network.tree import ContractionTree
from tncount.tensor.contract import pairwise_contract
from tncount.tensor.core import Index, Tensor, entry_count
from tncount.utils.logging import get_logger
from tncount.utils.timing import Deadline

logger = get_logger("tncount.network.contraction")

DEFAULT_MEM_CAP = 2**30
DEFAULT_SECONDS_PER_FLOP = 1e-10


@dataclass
class ContractionStats:
    """Sink for what a contraction actually materialized."""

    peak_rank: int = 0
    peak_entries: int = 0
    contractions: int = 0

    def record(self, tensor: Tensor) -> None:
        self.peak_rank = max(self.peak_rank, tensor.rank)
        self.peak_entries = max(self.peak_entries, tensor.entries)


def node_index_sets(n: TensorNetwork, t: ContractionTree) -> list[frozenset[Index]]:
    """Index set of the tensor produced at every tree node, by node id.

    The index set of a merge is the symmetric difference of its children's,
    so no values are touched.
    """
    t.validate(len(n))
    sets = [tensor.index_set for tensor in n.tensors]
    for a, b in t.merges:
        sets.append(sets[a] ^ sets[b])
    return sets


def max_rank(n: TensorNetwork, t: ContractionTree) -> int:
    """Largest rank over all tensors the tree produces, leaves included."""
    return max(len(s) for s in node_index_sets(n, t))


def max_entries(n: TensorNetwork, t: ContractionTree) -> int:
    """Largest entry count over all tensors the tree produces, leaves included."""
    return max(entry_count(s) for s in node_index_sets(n, t))


def working_entries(n: TensorNetwork, t: ContractionTree) -> int:
    """Peak entries held at once: every leaf, and per merge both operands plus the product.

    Operands are permuted into fresh buffers before the product is taken,
    so a merge needs room for all three.
    """
    sets = node_index_sets(n, t)
    peak = max(entry_count(s) for s in sets[: t.num_leaves])
    for k, (a, b) in enumerate(t.merges):
        needed = entry_count(sets[a]) + entry_count(sets[b]) + entry_count(sets[t.num_leaves + k])
        peak = max(peak, needed)
    return peak


def contraction_flops(n: TensorNetwork, t: ContractionTree) -> int:
    """Multiply-add count: per merge, the product of sizes over the union of both index sets."""
    sets = node_index_sets(n, t)
    return sum(entry_count(sets[a] | sets[b]) for a, b in t.merges)


def estimate_cost(
    n: TensorNetwork, t: ContractionTree, seconds_per_flop: float = DEFAULT_SECONDS_PER_FLOP
) -> float:
    """Estimated contraction time in seconds; 0 for a single-tensor network."""
    return contraction_flops(n, t) * seconds_per_flop


def contract(
    n: TensorNetwork,
    t: ContractionTree,
    mem_cap: int = DEFAULT_MEM_CAP,
    deadline: Optional[Deadline] = None,
    stats: Optional[ContractionStats] = None,
) -> Tensor:
    """Contract a network along a tree.

    Merges run in SSA order; intermediate results are dropped as soon as
    their parent is built. Before any value is touched, the working set of
    every merge (see :func:`working_entries`) is checked against ``mem_cap``.

    Args:
        n: The network.
        t: A contraction tree with ``len(n)`` leaves.
        mem_cap: Largest allowed working set, in entries.
        deadline: Checked between pairwise contractions.
        stats: Optional sink for peak rank and entry count.

    Returns:
        The contraction of the network.

    Raises:
        TreeMismatchError: If the tree does not fit the network.
        MemoryCapExceeded: If some merge would exceed ``mem_cap`` entries, or
            numpy cannot allocate a buffer below the cap.
        DeadlineExceeded: If the deadline passes mid-contraction.
    """
    needed = working_entries(n, t)
    if needed > mem_cap:
        logger.warning("memory_cap_refusal", entries=needed, cap=mem_cap)
        raise MemoryCapExceeded(needed, mem_cap)
    try:
        return _run_merges(n, t, deadline, stats)
    except MemoryError as exc:
        logger.error("allocation_failed", entries=needed, cap=mem_cap)
        raise MemoryCapExceeded(needed, mem_cap) from exc


def _run_merges(
    n: TensorNetwork,
    t: ContractionTree,
    deadline: Optional[Deadline],
    stats: Optional[ContractionStats],
) -> Tensor:

    if t.num_leaves == 1:
        only = n.tensors[0]
        result = Tensor(only.indices, only.values, label=only.label)
        if stats is not None:
            stats.record(result)
        return result

    results: list[Optional[Tensor]] = list(n.tensors)
    for a, b in t.merges:
        if deadline is not None:
            deadline.check("contraction")
        left, right = results[a], results[b]
        results[a] = results[b] = None
        merged = pairwise_contract(left, right)
        results.append(merged)
        if stats is not None:
            stats.record(merged)
            stats.contractions += 1

    logger.debug("contraction_done", merges=len(t.merges), rank=results[-1].rank)
    return results[-1]
