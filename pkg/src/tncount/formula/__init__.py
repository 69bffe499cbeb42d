"""CNF formulas, DIMACS I/O and benchmark generators."""

from tncount.formula.bench import encode_vertex_cover, random_cubic_graph
from tncount.formula.cnf import Assignment, CnfFormula, brute_force_wmc
from tncount.formula.dimacs import parse_dimacs, read_dimacs, serialize_dimacs

__all__ = [
    "Assignment",
    "CnfFormula",
    "brute_force_wmc",
    "encode_vertex_cover",
    "parse_dimacs",
    "random_cubic_graph",
    "read_dimacs",
    "serialize_dimacs",
]
