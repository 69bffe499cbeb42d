"""Indices, dense tensors and tensor constructors."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from tncount.errors import TensorError

_index_ids = itertools.count()


@dataclass(frozen=True)
class Index:
    """A tensor index. Identity is the token ``id``; ``size`` is |[i]|."""

    id: int
    size: int = field(default=2, compare=False)
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.size < 1:
            raise TensorError(f"index domain size must be >= 1, got {self.size}")

    @classmethod
    def new(cls, size: int = 2, label: str = "") -> "Index":
        """Mint an index with a fresh id."""
        return cls(next(_index_ids), size, label)

    def __repr__(self) -> str:
        name = self.label or f"i{self.id}"
        return f"{name}[{self.size}]"


@dataclass(frozen=True)
class CopyOrigin:
    """Weighted COPY tensor of a variable: W0 on all-zeros, W1 on all-ones."""

    variable: int
    weights: tuple[float, float] = (1.0, 1.0)


@dataclass(frozen=True)
class ClauseOrigin:
    """Clause tensor: 1 unless every index takes a value outside its satisfying set.

    ``satisfying[k]`` holds the values of index ``k`` that satisfy the
    clause's literal(s) on that variable; a tautological pair gives ``{0, 1}``.
    """

    clause: int
    satisfying: tuple[frozenset[int], ...]


Origin = Union[CopyOrigin, ClauseOrigin]


def entry_count(indices: Iterable[Index]) -> int:
    """Number of entries of a dense tensor over ``indices``."""
    return math.prod(i.size for i in indices)


class Tensor:
    """Dense real tensor over an ordered tuple of distinct indices.

    Values are row-major with respect to ``indices``. Tensors built by the
    WMC reduction carry an ``origin`` and are materialized on demand, so a
    network can hold tensors of rank far beyond memory while it is planned.
    """

    __slots__ = ("indices", "origin", "label", "_values")

    def __init__(
        self,
        indices: Sequence[Index],
        values: Optional[np.ndarray] = None,
        origin: Optional[Origin] = None,
        label: str = "",
    ):
        self.indices: tuple[Index, ...] = tuple(indices)
        if len(set(self.indices)) != len(self.indices):
            raise TensorError(f"repeated index in {self.indices}")
        self.origin = origin
        self.label = label
        if values is None:
            if origin is None:
                raise TensorError("tensor needs values or an origin")
            if isinstance(origin, ClauseOrigin) and len(origin.satisfying) != len(self.indices):
                raise TensorError("clause origin does not match the index count")
            self._values = None
        else:
            array = np.asarray(values, dtype=np.float64)
            if array.size != entry_count(self.indices):
                raise TensorError(
                    f"{array.size} values for {entry_count(self.indices)} entries"
                )
            self._values = array.reshape(self.shape)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(i.size for i in self.indices)

    @property
    def rank(self) -> int:
        return len(self.indices)

    @property
    def entries(self) -> int:
        return entry_count(self.indices)

    @property
    def index_set(self) -> frozenset[Index]:
        return frozenset(self.indices)

    @property
    def values(self) -> np.ndarray:
        """Dense values; origin tensors are materialized on every access."""
        if self._values is not None:
            return self._values
        if isinstance(self.origin, CopyOrigin):
            return _materialize_copy(self.indices, self.origin.weights)
        return _materialize_clause(self.indices, self.origin.satisfying)

    def entry(self, assignment: Mapping[Index, int]) -> float:
        """Value at an assignment to (at least) this tensor's indices."""
        return float(self.values[tuple(assignment[i] for i in self.indices)])

    def aligned(self, order: Sequence[Index]) -> np.ndarray:
        """Values with axes permuted to ``order`` (a permutation of the indices)."""
        if set(order) != set(self.indices) or len(order) != self.rank:
            raise TensorError(f"{order} is not a permutation of {self.indices}")
        position = {i: k for k, i in enumerate(self.indices)}
        return np.transpose(self.values, [position[i] for i in order])

    def scalar(self) -> float:
        if self.rank:
            raise TensorError(f"tensor of rank {self.rank} is not a scalar")
        return float(self.values)

    def __repr__(self) -> str:
        name = self.label or "Tensor"
        return f"{name}{list(self.indices)}"


def _materialize_copy(indices: tuple[Index, ...], weights: tuple[float, float]) -> np.ndarray:
    w0, w1 = weights
    if not indices:
        return np.array(w0 + w1, dtype=np.float64)
    for i in indices:
        if i.size != 2:
            raise TensorError(f"weighted copy tensor needs binary indices, got {i}")
    values = np.zeros((2,) * len(indices), dtype=np.float64)
    values[(0,) * len(indices)] = w0
    values[(1,) * len(indices)] = w1
    return values


def _materialize_clause(
    indices: tuple[Index, ...], satisfying: tuple[frozenset[int], ...]
) -> np.ndarray:
    unsatisfied = np.ones((), dtype=np.float64)
    for index, good in zip(indices, satisfying):
        misses = np.array(
            [0.0 if value in good else 1.0 for value in range(index.size)], dtype=np.float64
        )
        unsatisfied = np.multiply.outer(unsatisfied, misses)
    return 1.0 - unsatisfied


def copy_tensor(indices: Sequence[Index], label: str = "") -> Tensor:
    """COPY tensor: 1 where all indices agree, else 0.

    Raises:
        TensorError: If the indices have different domain sizes.
    """
    indices = tuple(indices)
    sizes = {i.size for i in indices}
    if len(sizes) > 1:
        raise TensorError(f"copy tensor over mixed domain sizes {sorted(sizes)}")
    if not indices:
        return Tensor((), np.array(1.0), label=label)
    size = sizes.pop()
    values = np.zeros((size,) * len(indices), dtype=np.float64)
    for value in range(size):
        values[(value,) * len(indices)] = 1.0
    return Tensor(indices, values, label=label)


def tensor_from_entries(
    indices: Sequence[Index],
    entry: Callable[[dict[Index, int]], float],
    label: str = "",
) -> Tensor:
    """Materialize a tensor by evaluating ``entry`` on every assignment."""
    indices = tuple(indices)
    shape = tuple(i.size for i in indices)
    values = np.empty(shape, dtype=np.float64)
    for position in np.ndindex(*shape):
        values[position] = entry(dict(zip(indices, position)))
    return Tensor(indices, values, label=label)


def address(indices: Sequence[Index], assignment: Mapping[Index, int]) -> int:
    """Row-major offset of an assignment."""
    shape = tuple(i.size for i in indices)
    if not shape:
        return 0
    return int(np.ravel_multi_index(tuple(assignment[i] for i in indices), shape))


def assignment_at(indices: Sequence[Index], offset: int) -> dict[Index, int]:
    """Inverse of ``address``."""
    shape = tuple(i.size for i in indices)
    if not shape:
        return {}
    return dict(zip(indices, (int(x) for x in np.unravel_index(offset, shape))))
