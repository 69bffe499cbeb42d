"""Weighted DIMACS CNF reading and writing.

Accepted weight lines:

    c w <var> <p>                 W(var, 1) = p, W(var, 0) = 1 - p
    w <var> <p0> <p1> 0           explicit pair
    c p weight <lit> <w> 0        per literal; the other polarity keeps its value
"""

from __future__ import annotations

import math
from typing import Iterable, Optional, TextIO, Union

from pydantic import ValidationError

from tncount.errors import ParseError
from tncount.formula.cnf import CnfFormula
from tncount.utils.logging import get_logger

logger = get_logger("tncount.formula.dimacs")


def _parse_int(token: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected integer, got {token!r}", line_no) from None


def _parse_float(token: str, line_no: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"expected number, got {token!r}", line_no) from None
    if not math.isfinite(value):
        raise ParseError(f"weight must be finite, got {token!r}", line_no)
    return value


def _lines(text: Union[str, TextIO, Iterable[str]]) -> Iterable[str]:
    if isinstance(text, str):
        return text.splitlines()
    return text


def parse_dimacs(text: Union[str, TextIO, Iterable[str]]) -> CnfFormula:
    """Parse weighted DIMACS CNF.

    Args:
        text: The whole file as a string, an open text stream, or lines.

    Returns:
        The parsed formula; variables without weight lines get (1, 1).

    Raises:
        ParseError: On a malformed header, out-of-range literal, clause count
            mismatch, weight for an unknown variable, or an empty clause.
    """
    header: Optional[tuple[int, int, int]] = None
    clauses: list[tuple[list[int], int]] = []
    current: list[int] = []
    current_start = 0
    # var -> [w0, w1, line]
    weights: dict[int, list] = {}

    def set_weight(var: int, w0: Optional[float], w1: Optional[float], line_no: int) -> None:
        if header is not None and not 1 <= var <= header[0]:
            raise ParseError(f"weight for unknown variable {var}", line_no)
        entry = weights.setdefault(var, [1.0, 1.0, line_no])
        if w0 is not None:
            entry[0] = w0
        if w1 is not None:
            entry[1] = w1
        entry[2] = line_no

    line_no = 0
    for line_no, raw in enumerate(_lines(text), start=1):
        line = raw.strip()
        if not line:
            continue
        tokens = line.split()

        if tokens[0] == "c":
            if len(tokens) >= 3 and tokens[1] == "w":
                var = _parse_int(tokens[2], line_no)
                if len(tokens) < 4:
                    raise ParseError("weight line needs a probability", line_no)
                p = _parse_float(tokens[3], line_no)
                set_weight(var, 1.0 - p, p, line_no)
            elif len(tokens) >= 5 and tokens[1] == "p" and tokens[2] == "weight":
                lit = _parse_int(tokens[3], line_no)
                if lit == 0:
                    raise ParseError("weight line names literal 0", line_no)
                w = _parse_float(tokens[4], line_no)
                if lit > 0:
                    set_weight(lit, None, w, line_no)
                else:
                    set_weight(-lit, w, None, line_no)
            continue

        if tokens[0] == "%":
            break

        if tokens[0] == "p":
            if header is not None:
                raise ParseError("duplicate problem line", line_no)
            if len(tokens) != 4 or tokens[1] != "cnf":
                raise ParseError("malformed header, expected 'p cnf <vars> <clauses>'", line_no)
            num_vars = _parse_int(tokens[2], line_no)
            num_clauses = _parse_int(tokens[3], line_no)
            if num_vars < 1 or num_clauses < 0:
                raise ParseError("header counts out of range", line_no)
            header = (num_vars, num_clauses, line_no)
            for var, (_, _, w_line) in weights.items():
                if not 1 <= var <= num_vars:
                    raise ParseError(f"weight for unknown variable {var}", w_line)
            continue

        if tokens[0] == "w":
            if len(tokens) != 5 or tokens[4] != "0":
                raise ParseError("malformed weight line, expected 'w <var> <p0> <p1> 0'", line_no)
            var = _parse_int(tokens[1], line_no)
            set_weight(
                var, _parse_float(tokens[2], line_no), _parse_float(tokens[3], line_no), line_no
            )
            continue

        if header is None:
            raise ParseError("clause before problem line", line_no)
        for token in tokens:
            lit = _parse_int(token, line_no)
            if lit == 0:
                if not current:
                    raise ParseError("empty clause", line_no)
                clauses.append((current, current_start))
                current = []
                continue
            if abs(lit) > header[0]:
                raise ParseError(f"literal {lit} out of range 1..{header[0]}", line_no)
            if not current:
                current_start = line_no
            current.append(lit)

    if header is None:
        raise ParseError("missing problem line", line_no or None)
    if current:
        raise ParseError("clause not terminated by 0", current_start)
    num_vars, num_clauses, header_line = header
    if len(clauses) != num_clauses:
        raise ParseError(
            f"header declares {num_clauses} clauses, found {len(clauses)}", header_line
        )

    try:
        formula = CnfFormula(
            num_vars=num_vars,
            clauses=[c for c, _ in clauses],
            weights={v: (w0, w1) for v, (w0, w1, _) in weights.items()},
        )
    except ValidationError as exc:
        raise ParseError(str(exc), header_line) from exc

    logger.debug(
        "dimacs_parsed",
        num_vars=num_vars,
        num_clauses=num_clauses,
        weighted_vars=len(weights),
    )
    return formula


def read_dimacs(path: str) -> CnfFormula:
    with open(path, "r", encoding="utf-8") as f:
        return parse_dimacs(f)


def _format_weight(value: float) -> str:
    return repr(float(value))


def serialize_dimacs(formula: CnfFormula, comments: Iterable[str] = ()) -> str:
    """Render a formula as DIMACS with explicit-pair weight lines.

    Only variables whose weights differ from (1, 1) get a ``w`` line.
    """
    lines = [f"c {comment}" for comment in comments]
    lines.append(f"p cnf {formula.num_vars} {formula.num_clauses}")
    for clause in formula.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    for var in range(1, formula.num_vars + 1):
        w0, w1 = formula.weights[var]
        if (w0, w1) != (1.0, 1.0):
            lines.append(f"w {var} {_format_weight(w0)} {_format_weight(w1)} 0")
    return "\n".join(lines) + "\n"
