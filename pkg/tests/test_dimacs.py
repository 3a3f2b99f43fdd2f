import io

import pytest

from detsssp import DimacsError, Graph, load_dimacs, loads_dimacs, save_dimacs
from detsssp.generators import uniform_random


def test_single_arc():
    g = loads_dimacs("p sp 2 1\na 1 2 -5\n")
    assert (g.n, g.m, g.W) == (2, 1, 5)
    assert list(g.edges()) == [(0, 1, -5)]


def test_empty_graph():
    g = loads_dimacs("c nothing here\np sp 1 0\n")
    assert (g.n, g.m, g.W) == (1, 0, 1)


def test_save_exact_text():
    assert save_dimacs(Graph.from_edges(2, [(0, 1, -5)])) == "p sp 2 1\na 1 2 -5\n"
    assert save_dimacs(Graph.from_edges(3, [])) == "p sp 3 0\n"


def test_save_sorts_arcs():
    g = Graph.from_edges(3, [(2, 0, 1), (0, 1, 4), (0, 1, -2)])
    assert save_dimacs(g).splitlines()[1:] == ["a 1 2 -2", "a 1 2 4", "a 3 1 1"]


def test_round_trip_and_determinism():
    g = uniform_random(30, 120, loops=True, seed=9)
    text = save_dimacs(g)
    assert save_dimacs(g) == text
    assert loads_dimacs(text) == g
    assert save_dimacs(loads_dimacs(text)) == text


def test_stream_output():
    buf = io.StringIO()
    save_dimacs(Graph.from_edges(2, [(1, 0, 3)]), buf)
    assert load_dimacs(io.StringIO(buf.getvalue())) == Graph.from_edges(2, [(1, 0, 3)])


@pytest.mark.parametrize("text, line", [
    ("a 1 2 3\n", 1),
    ("p sp 2 1\na 1 3 1\n", 2),
    ("p sp 2 2\na 1 2 1\n", 1),
    ("p sp 2 1\na 1 2 1\na 2 1 1\n", 3),
    ("p sp x 1\n", 1),
    ("p sp 2 1\nz 1 2\n", 2),
    ("p sp 2 1\na 1 2 99999999999999999999\n", 2),
    ("p sp 2 1\np sp 2 1\n", 2),
    ("", 1),
])
def test_errors_name_the_line(text, line):
    with pytest.raises(DimacsError) as info:
        loads_dimacs(text)
    assert info.value.lineno == line
    assert f"line {line}" in str(info.value)


def test_safety_bound_violation_is_a_parse_error():
    w = -(1 << 61)
    with pytest.raises(DimacsError) as info:
        loads_dimacs(f"p sp 2 3\na 1 2 1\na 2 1 {w}\na 1 1 0\n")
    assert info.value.lineno == 3
