"""CNF data model and the brute-force weighted model count."""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from tncount.errors import RefusalError
from tncount.utils.logging import get_logger

logger = get_logger("tncount.formula.cnf")

Clause = tuple[int, ...]
WeightPair = tuple[float, float]

# Variable -> 0/1. Total over the variables it is used for.
Assignment = Mapping[int, int]

BRUTE_FORCE_MAX_VARS = 30
_CHUNK_BITS = 16


class CnfFormula(BaseModel):
    """A CNF formula over variables 1..num_vars with a literal weight function.

    ``weights[v]`` is the pair ``(W(v, 0), W(v, 1))``. Every variable has an
    entry after validation; unspecified variables get ``(1.0, 1.0)``.
    """

    model_config = ConfigDict(frozen=True)

    num_vars: int = Field(ge=1)
    clauses: tuple[Clause, ...] = ()
    weights: dict[int, WeightPair] = Field(default_factory=dict)

    @field_validator("clauses", mode="before")
    @classmethod
    def dedupe_literals(cls, v: Any) -> Any:
        """Drop repeated literals inside a clause, keeping first occurrences."""
        if v is None:
            return ()
        return tuple(tuple(dict.fromkeys(int(lit) for lit in clause)) for clause in v)

    @model_validator(mode="after")
    def check_ranges(self) -> "CnfFormula":
        for ci, clause in enumerate(self.clauses):
            if not clause:
                raise ValueError(f"clause {ci} is empty")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} in clause {ci} out of range 1..{self.num_vars}")
        for var in self.weights:
            if not 1 <= var <= self.num_vars:
                raise ValueError(f"weight given for unknown variable {var}")
        for var in range(1, self.num_vars + 1):
            self.weights.setdefault(var, (1.0, 1.0))
        return self

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def weight(self, var: int) -> WeightPair:
        return self.weights[var]

    def is_unweighted(self) -> bool:
        return all(w == (1.0, 1.0) for w in self.weights.values())

    def with_unit_weights(self) -> "CnfFormula":
        return CnfFormula(num_vars=self.num_vars, clauses=self.clauses)

    @staticmethod
    def clause_variables(clause: Clause) -> list[int]:
        """Variables of a clause in literal order (sup(C))."""
        return list(dict.fromkeys(abs(lit) for lit in clause))

    def occurrences(self) -> dict[int, list[int]]:
        """Clause indices in which each variable appears (dep(x)), in clause order."""
        occ: dict[int, list[int]] = {v: [] for v in range(1, self.num_vars + 1)}
        for ci, clause in enumerate(self.clauses):
            for var in self.clause_variables(clause):
                occ[var].append(ci)
        return occ

    def is_tautology(self, clause: Clause) -> bool:
        lits = set(clause)
        return any(-lit in lits for lit in lits)

    def is_satisfied_by(self, assignment: Assignment) -> bool:
        """Evaluate the formula under a total assignment."""
        for clause in self.clauses:
            if not any((assignment[abs(lit)] == 1) == (lit > 0) for lit in clause):
                return False
        return True

    def assignment_weight(self, assignment: Assignment) -> float:
        """Product of literal weights of an assignment."""
        result = 1.0
        for var in range(1, self.num_vars + 1):
            result *= self.weights[var][assignment[var]]
        return result


def brute_force_wmc(formula: CnfFormula) -> float:
    """Sum the weights of all satisfying assignments by enumeration.

    Assignments are enumerated in vectorised chunks; bit ``k`` of the
    assignment number is the value of variable ``k + 1``.

    Args:
        formula: Formula with at most 30 variables.

    Returns:
        The weighted model count.

    Raises:
        RefusalError: If the formula has more than 30 variables.
    """
    n = formula.num_vars
    if n > BRUTE_FORCE_MAX_VARS:
        raise RefusalError(
            f"brute force refused for {n} variables (limit {BRUTE_FORCE_MAX_VARS})"
        )

    w0 = np.array([formula.weights[v][0] for v in range(1, n + 1)], dtype=np.float64)
    w1 = np.array([formula.weights[v][1] for v in range(1, n + 1)], dtype=np.float64)
    shifts = np.arange(n, dtype=np.int64)
    total_assignments = 1 << n
    chunk = 1 << min(n, _CHUNK_BITS)

    total = 0.0
    for start in range(0, total_assignments, chunk):
        numbers = np.arange(start, start + chunk, dtype=np.int64)
        bits = ((numbers[:, None] >> shifts) & 1).astype(bool)
        satisfied = np.ones(chunk, dtype=bool)
        for clause in formula.clauses:
            clause_sat = np.zeros(chunk, dtype=bool)
            for lit in clause:
                column = bits[:, abs(lit) - 1]
                clause_sat |= column if lit > 0 else ~column
            satisfied &= clause_sat
        if not satisfied.any():
            continue
        weights = np.where(bits[satisfied], w1, w0).prod(axis=1)
        total += float(weights.sum())

    logger.debug("brute_force_done", num_vars=n, clauses=formula.num_clauses, wmc=total)
    return total
