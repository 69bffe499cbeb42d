"""Exception hierarchy shared by all tncount modules."""

from __future__ import annotations

from typing import Any, Optional


class TncountError(Exception):
    """Base class for all errors raised by tncount."""


class ParseError(TncountError):
    """Malformed DIMACS, PACE or tree text."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class RefusalError(TncountError):
    """An operation refused to run because its input is too large."""


class GraphError(TncountError):
    """Invalid graph construction or graph-generator arguments."""


class TensorError(TncountError):
    """Invalid tensor construction or contraction."""


class NetworkError(TncountError):
    """A set of tensors that does not form a tensor network."""


class TreeMismatchError(TncountError):
    """A contraction tree or carving decomposition does not fit its network or graph."""


class DecompositionError(TncountError):
    """An invalid tree decomposition or edge clique cover."""


class FactoringError(TncountError):
    """A tensor or network that cannot be factored along a dimension tree."""


class PlanningError(TncountError):
    """A planner precondition does not hold."""


class MemoryCapExceeded(TncountError):
    """Contraction would hold more entries at once than the configured cap."""

    def __init__(self, entries: int, cap: int, plan: Any = None):
        self.entries = entries
        self.cap = cap
        self.plan = plan
        super().__init__(f"contraction needs {entries} entries at once, above the cap of {cap}")


class DeadlineExceeded(TncountError):
    """The wall-clock budget ran out."""

    def __init__(self, stage: str, plan: Any = None):
        self.stage = stage
        self.plan = plan
        super().__init__(f"deadline exceeded during {stage}")


class Cancelled(TncountError):
    """Work abandoned because a competing portfolio member finished first."""
