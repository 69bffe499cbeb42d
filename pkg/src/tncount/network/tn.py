"""Tensor networks and the reduction from weighted CNF."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from tncount.errors import NetworkError
from tncount.formula.cnf import CnfFormula
from tncount.tensor.core import ClauseOrigin, CopyOrigin, Index, Tensor
from tncount.utils.logging import get_logger

logger = get_logger("tncount.network.tn")


@dataclass(frozen=True, eq=False)
class TensorNetwork:
    """A non-empty collection of tensors in which no index appears more than twice.

    Tensor ``k`` of the network is vertex ``k`` of its structure graph and
    leaf ``k`` of any contraction tree over it.
    """

    tensors: tuple[Tensor, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "tensors", tuple(self.tensors))
        if not self.tensors:
            raise NetworkError("a tensor network needs at least one tensor")
        if len({id(t) for t in self.tensors}) != len(self.tensors):
            raise NetworkError("the same tensor object appears twice")
        for index, count in self.index_counts.items():
            if count > 2:
                raise NetworkError(f"index {index} appears {count} times")

    @classmethod
    def of(cls, tensors: Sequence[Tensor]) -> "TensorNetwork":
        return cls(tuple(tensors))

    def __len__(self) -> int:
        return len(self.tensors)

    def __iter__(self) -> Iterator[Tensor]:
        return iter(self.tensors)

    def __getitem__(self, k: int) -> Tensor:
        return self.tensors[k]

    @cached_property
    def index_counts(self) -> dict[Index, int]:
        counts: Counter[Index] = Counter()
        for tensor in self.tensors:
            counts.update(tensor.indices)
        return dict(counts)

    @cached_property
    def holders(self) -> dict[Index, tuple[int, ...]]:
        """Positions of the tensors carrying each index, keyed in first-appearance order."""
        result: dict[Index, list[int]] = {}
        for k, tensor in enumerate(self.tensors):
            for index in tensor.indices:
                result.setdefault(index, []).append(k)
        return {index: tuple(ks) for index, ks in result.items()}

    @property
    def indices(self) -> list[Index]:
        return list(self.holders)

    @property
    def free_indices(self) -> list[Index]:
        return [i for i, ks in self.holders.items() if len(ks) == 1]

    @property
    def bond_indices(self) -> list[Index]:
        return [i for i, ks in self.holders.items() if len(ks) == 2]

    @property
    def bond_dimension(self) -> int:
        """Largest domain size of a bond index (0 when there are none)."""
        return max((i.size for i in self.bond_indices), default=0)

    @property
    def max_tensor_rank(self) -> int:
        return max(t.rank for t in self.tensors)


def reduce_wmc(formula: CnfFormula, unit_weights: bool = False) -> TensorNetwork:
    """Build the network whose contraction is the weighted model count.

    Tensor ``v - 1`` is the weighted COPY tensor of variable ``v``; the
    clause tensors follow in clause order. Every (variable, clause)
    occurrence gets its own binary index, so the network has no free indices
    and its structure graph minus the free vertex is the incidence graph.

    Args:
        formula: The weighted CNF formula.
        unit_weights: Ignore the formula's weights and count models.

    Returns:
        The tensor network.
    """
    if unit_weights:
        formula = formula.with_unit_weights()
    occurrence: dict[tuple[int, int], Index] = {}
    for ci, clause in enumerate(formula.clauses):
        for var in formula.clause_variables(clause):
            occurrence[(var, ci)] = Index.new(2, f"x{var}c{ci}")

    tensors: list[Tensor] = []
    for var, clause_ids in formula.occurrences().items():
        tensors.append(
            Tensor(
                [occurrence[(var, ci)] for ci in clause_ids],
                origin=CopyOrigin(var, formula.weight(var)),
                label=f"x{var}",
            )
        )
    for ci, clause in enumerate(formula.clauses):
        variables = formula.clause_variables(clause)
        satisfying = tuple(
            frozenset(1 if lit > 0 else 0 for lit in clause if abs(lit) == var)
            for var in variables
        )
        tensors.append(
            Tensor(
                [occurrence[(var, ci)] for var in variables],
                origin=ClauseOrigin(ci, satisfying),
                label=f"C{ci}",
            )
        )

    network = TensorNetwork(tuple(tensors))
    logger.debug(
        "network_built",
        tensors=len(network),
        indices=len(occurrence),
        max_rank=network.max_tensor_rank,
    )
    return network
