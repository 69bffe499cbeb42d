"""Tests for weighted DIMACS reading and writing."""

import io

import pytest

from tncount.errors import ParseError
from tncount.formula.cnf import brute_force_wmc
from tncount.formula.dimacs import parse_dimacs, read_dimacs, serialize_dimacs


def test_example_formula_header_and_clauses(example_formula):
    assert example_formula.num_vars == 4
    assert example_formula.num_clauses == 4
    assert example_formula.clauses[0] == (1, 2, -3)


def test_probability_weight_line():
    f = parse_dimacs("c w 1 0.25\np cnf 1 1\n1 0\n")
    assert f.weight(1) == (0.75, 0.25)


def test_explicit_pair_weight_line():
    f = parse_dimacs("p cnf 2 1\n1 2 0\nw 2 0.4 1.5 0\n")
    assert f.weight(2) == (0.4, 1.5)
    assert f.weight(1) == (1.0, 1.0)


def test_literal_weight_lines_keep_other_polarity():
    f = parse_dimacs("p cnf 1 0\nc p weight 1 0.7 0\nc p weight -1 0.2 0\n")
    assert f.weight(1) == (0.2, 0.7)
    g = parse_dimacs("p cnf 1 0\nc p weight -1 3 0\n")
    assert g.weight(1) == (3.0, 1.0)


def test_formula_without_clauses():
    f = parse_dimacs("p cnf 2 0\n")
    assert f.num_clauses == 0
    assert brute_force_wmc(f) == 4.0


def test_clauses_may_span_lines():
    f = parse_dimacs("p cnf 3 2\n1 2\n3 0 -1\n0\n")
    assert f.clauses == ((1, 2, 3), (-1,))


def test_percent_ends_input():
    f = parse_dimacs("p cnf 2 1\n1 -2 0\n%\n0\n")
    assert f.num_clauses == 1


def test_reads_streams():
    f = parse_dimacs(io.StringIO("c comment\np cnf 1 1\n-1 0\n"))
    assert f.clauses == ((-1,),)


@pytest.mark.parametrize(
    "text,line",
    [
        ("p cnf 2\n1 0\n", 1),
        ("p dnf 2 1\n1 0\n", 1),
        ("1 2 0\np cnf 2 1\n", 1),
        ("p cnf 2 1\n1 3 0\n", 2),
        ("p cnf 2 1\n1 x 0\n", 2),
        ("p cnf 2 2\n1 0\n0\n", 3),
        ("p cnf 2 1\n1 0\np cnf 2 1\n", 3),
        ("p cnf 2 1\n1 2\n", 2),
        ("p cnf 2 2\n1 0\n", 1),
        ("p cnf 2 1\n1 0\nc w 3 0.5\n", 3),
        ("c w 3 0.5\np cnf 2 1\n1 0\n", 1),
        ("p cnf 2 1\n1 0\nw 1 0.5 0\n", 3),
        ("p cnf 1 1\n1 0\nc w 1 nan\n", 3),
    ],
)
def test_malformed_input_names_the_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_dimacs(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_missing_header():
    with pytest.raises(ParseError):
        parse_dimacs("c only comments\n")


def test_serialize_then_parse_preserves_weights(tmp_path):
    f = parse_dimacs("p cnf 3 2\n1 -2 0\n2 3 0\nw 1 0.125 0.875 0\n")
    text = serialize_dimacs(f, comments=["generated"])
    assert text.startswith("c generated\np cnf 3 2\n")
    assert "w 1 0.125 0.875 0" in text
    assert "w 2" not in text
    path = tmp_path / "out.cnf"
    path.write_text(text, encoding="utf-8")
    assert read_dimacs(str(path)) == f
