import json

import pytest
from hypothesis import given, settings

from gallai_ramsey.core import (
    EdgeColoredCompleteGraph,
    format_gcol,
    from_json,
    parse_gcol,
    read_gcol,
    to_dot,
    to_json,
    write_gcol,
)

from strategies import colorings


def test_gcol_layout():
    g = EdgeColoredCompleteGraph(4, 3, [1, 2, 3, 1, 2, 3])
    assert format_gcol(g) == "4 3\n1 2 3\n1 2\n3\n"
    assert format_gcol(EdgeColoredCompleteGraph.single_vertex(1)) == "1 1\n"


@settings(max_examples=200, deadline=None)
@given(colorings(max_n=12, max_k=6))
def test_gcol_round_trip(g):
    text = format_gcol(g)
    h = parse_gcol(text)
    assert h == g
    assert format_gcol(h) == text


@settings(max_examples=200, deadline=None)
@given(colorings(max_n=12, max_k=6))
def test_json_round_trip(g):
    text = to_json(g)
    data = json.loads(text)
    assert data == {"n": g.n, "k": g.k, "colors": list(g.colors)}
    assert from_json(text) == g
    assert from_json(data) == g


def test_file_round_trip(tmp_path):
    g = EdgeColoredCompleteGraph(5, 2, [1, 2] * 5)
    path = tmp_path / "g.gcol"
    write_gcol(g, path)
    assert path.read_bytes() == format_gcol(g).encode()
    assert read_gcol(path) == g


@pytest.mark.parametrize("text", [
    "",
    "3\n1 1\n1\n",
    "x 2\n1 1\n1\n",
    "3 2\n1 1\n",
    "3 2\n1\n1\n",
    "3 2\n1 3\n1\n",
    "3 2\n1 0\n1\n",
])
def test_parse_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_gcol(text)


def test_dot_has_one_pen_per_color():
    g = EdgeColoredCompleteGraph(4, 3, [1, 2, 3, 1, 2, 3])
    dot = to_dot(g)
    assert dot.startswith("graph G {") and dot.rstrip().endswith("}")
    pens = {line.split('color="')[1].split('"')[0] for line in dot.splitlines() if "--" in line}
    assert len(pens) == 3
    assert dot.count("--") == 6


def test_dot_with_large_palette_uses_distinct_hues():
    k = 12
    g = EdgeColoredCompleteGraph(6, k, list(range(1, 13)) + [1, 2, 3])
    pens = {line.split('color="')[1].split('"')[0] for line in to_dot(g).splitlines() if "--" in line}
    assert len(pens) == 12
