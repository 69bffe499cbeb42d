"""Pairwise tensor contraction as a single matrix product."""

from __future__ import annotations

import math

import numpy as np

from tncount.errors import TensorError
from tncount.tensor.core import Index, Tensor


def shared_indices(a: Tensor, b: Tensor) -> list[Index]:
    """Indices of ``a`` also on ``b``, in ``a``'s order."""
    b_set = b.index_set
    return [i for i in a.indices if i in b_set]


def pairwise_contract(a: Tensor, b: Tensor) -> Tensor:
    """Contract two tensors, summing all shared indices at once.

    Both operands are permuted so the shared indices are contiguous, then a
    single (m x k) @ (k x n) product is taken. The result's indices are
    ``a``'s unshared indices followed by ``b``'s.

    Raises:
        TensorError: If a shared index has different domain sizes on a and b.
    """
    b_position = {i: k for k, i in enumerate(b.indices)}
    a_position = {i: k for k, i in enumerate(a.indices)}
    shared = [i for i in a.indices if i in b_position]
    for i in shared:
        other = b.indices[b_position[i]]
        if other.size != i.size:
            raise TensorError(f"index {i} has size {i.size} on one side and {other.size} on the other")

    shared_set = set(shared)
    a_only = [i for i in a.indices if i not in shared_set]
    b_only = [i for i in b.indices if i not in shared_set]

    m = math.prod(i.size for i in a_only)
    k = math.prod(i.size for i in shared)
    n = math.prod(i.size for i in b_only)

    left = np.transpose(a.values, [a_position[i] for i in a_only + shared]).reshape(m, k)
    right = np.transpose(b.values, [b_position[i] for i in shared + b_only]).reshape(k, n)
    product = left @ right
    return Tensor(a_only + b_only, product.reshape([i.size for i in a_only + b_only]))
