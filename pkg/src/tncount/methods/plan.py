"""Contraction plans produced by the planners."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from tncount.network.contraction import (
    DEFAULT_SECONDS_PER_FLOP,
    contraction_flops,
    max_rank,
)
from tncount.network.tn import TensorNetwork
from tncount.network.tree import ContractionTree


@dataclass
class PlanResult:
    """A network together with a contraction tree for it.

    For FT plans ``network`` is the factored network and
    ``tensor_sources[k]`` is the position of the original tensor that
    tensor ``k`` came from.
    """

    network: TensorNetwork
    tree: ContractionTree
    max_rank: int
    method: str
    source_width: Optional[int] = None
    flops: int = 0
    estimated_cost: float = 0.0
    timings: dict[str, float] = field(default_factory=dict)
    tensor_sources: Optional[list[int]] = None

    @property
    def sort_key(self) -> tuple[float, int]:
        return (self.estimated_cost, self.max_rank)

    def validate(self) -> list[str]:
        """Return every inconsistency between the plan and its network."""
        problems = []
        if self.tree.num_leaves != len(self.network):
            problems.append(
                f"tree has {self.tree.num_leaves} leaves, network has {len(self.network)} tensors"
            )
            return problems
        actual = max_rank(self.network, self.tree)
        if actual != self.max_rank:
            problems.append(f"recorded max_rank {self.max_rank} but tree gives {actual}")
        if self.tensor_sources is not None and len(self.tensor_sources) != len(self.network):
            problems.append("tensor_sources does not cover the network")
        return problems

    def to_text(self) -> str:
        """Line-oriented dump used by ``--emit-plan``."""
        lines = [
            f"method {self.method}",
            f"source_width {'-' if self.source_width is None else self.source_width}",
            f"max_rank {self.max_rank}",
            f"flops {self.flops}",
            f"estimated_cost {self.estimated_cost:.6g}",
            f"tensors {len(self.network)}",
        ]
        for name, seconds in self.timings.items():
            lines.append(f"time_{name} {seconds:.6f}")
        if self.tensor_sources is not None:
            lines.append("sources " + " ".join(map(str, self.tensor_sources)))
        lines.append(f"tree {self.tree.to_text()}")
        return "\n".join(lines) + "\n"


def make_plan(
    network: TensorNetwork,
    tree: ContractionTree,
    method: str,
    source_width: Optional[int] = None,
    seconds_per_flop: float = DEFAULT_SECONDS_PER_FLOP,
    tensor_sources: Optional[list[int]] = None,
) -> PlanResult:
    """Wrap a tree into a plan, computing its symbolic metrics."""
    flops = contraction_flops(network, tree)
    return PlanResult(
        network=network,
        tree=tree,
        max_rank=max_rank(network, tree),
        method=method,
        source_width=source_width,
        flops=flops,
        estimated_cost=flops * seconds_per_flop,
        tensor_sources=tensor_sources,
    )
