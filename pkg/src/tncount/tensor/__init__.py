"""Dense tensors over named indices."""

from tncount.tensor.contract import pairwise_contract, shared_indices
from tncount.tensor.core import (
    ClauseOrigin,
    CopyOrigin,
    Index,
    Tensor,
    address,
    assignment_at,
    copy_tensor,
    entry_count,
    tensor_from_entries,
)

__all__ = [
    "ClauseOrigin",
    "CopyOrigin",
    "Index",
    "Tensor",
    "address",
    "assignment_at",
    "copy_tensor",
    "entry_count",
    "pairwise_contract",
    "shared_indices",
    "tensor_from_entries",
]
