import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gallai_ramsey.core import (
    EdgeColoredCompleteGraph,
    Embedding,
    copy_through_edge,
    find_mono_copy,
    forbidden_copy,
    pattern,
    pattern_catalog,
    rainbow_triangle,
)
from gallai_ramsey.formula import Parameters

from oracles import brute_copy_through, brute_has_mono, brute_rainbow
from strategies import colorings

PATTERNS = [p.name for p in pattern_catalog()]


def test_constructor_rejects_bad_input():
    with pytest.raises(ValueError):
        EdgeColoredCompleteGraph(0, 1, [])
    with pytest.raises(ValueError):
        EdgeColoredCompleteGraph(3, 2, [1, 2])
    with pytest.raises(ValueError):
        EdgeColoredCompleteGraph(3, 2, [1, 2, 3])
    with pytest.raises(ValueError):
        EdgeColoredCompleteGraph(2, 2, [0])
    with pytest.raises(ValueError):
        EdgeColoredCompleteGraph.from_matrix([[0, 1], [2, 0]])


def test_matrix_is_read_only_and_symmetric():
    g = EdgeColoredCompleteGraph(4, 3, [1, 2, 3, 1, 2, 3])
    m = g.matrix
    assert np.array_equal(m, m.T)
    assert not m.diagonal().any()
    with pytest.raises(ValueError):
        m[0, 1] = 2
    assert g.color(0, 1) == 1 and g.color(3, 2) == 3
    with pytest.raises(ValueError):
        g.color(1, 1)


def test_colors_are_row_major_upper_triangle():
    g = EdgeColoredCompleteGraph(4, 3, [1, 2, 3, 1, 2, 3])
    assert g.colors == (1, 2, 3, 1, 2, 3)
    assert g.color(1, 2) == 1 and g.color(2, 3) == 3


def test_constructors_and_helpers():
    g = EdgeColoredCompleteGraph.monochromatic(5, 2, k=3)
    assert g.used_colors == {2} and g.k == 3
    assert EdgeColoredCompleteGraph.single_vertex(2).used_colors == frozenset()
    sub = g.induced([4, 0, 2])
    assert sub.n == 3 and sub.used_colors == {2}
    with pytest.raises(ValueError):
        g.induced([1, 1])
    swapped = g.relabel_colors({2: 1}, k=3)
    assert swapped.used_colors == {1}
    with pytest.raises(ValueError):
        g.relabel_colors({1: 1})
    assert g.with_palette(4).k == 4
    with pytest.raises(ValueError):
        g.with_palette(1)


def test_equality_and_hash():
    a = EdgeColoredCompleteGraph(3, 2, [1, 2, 1])
    b = EdgeColoredCompleteGraph.from_matrix(a.matrix, 2)
    assert a == b and hash(a) == hash(b)
    assert a != a.with_palette(3)


def test_pattern_lookup():
    assert pattern("B3+").name == "B3plus"
    assert pattern("s3plus").name == "S3plus"
    assert pattern("k3").name == "K3"
    for p in pattern_catalog():
        assert len(set(v for e in p.edges for v in e)) == p.order
    assert len(pattern("B3plus").edges) == 8 and len(pattern("S3plus").edges) == 4
    with pytest.raises(KeyError):
        pattern("C5")


def test_b3plus_is_vertex_joined_to_s3plus():
    # removing a spine vertex of B3+ leaves S3+ centred on the other spine vertex
    b = pattern("B3plus")
    rest = sorted((x - 1, y - 1) for x, y in b.edges if 0 not in (x, y))
    assert rest == sorted(pattern("S3plus").edges)


def test_monochromatic_kn_thresholds():
    # K_n in one color holds a pattern iff n >= its order
    for p in pattern_catalog():
        for n in range(1, 7):
            g = EdgeColoredCompleteGraph.monochromatic(n, 1)
            assert (find_mono_copy(g, p, 1) is not None) == (n >= p.order)


def test_find_mono_copy_checks_color_range():
    g = EdgeColoredCompleteGraph.monochromatic(4, 1, k=2)
    with pytest.raises(ValueError):
        find_mono_copy(g, "K3", 3)
    with pytest.raises(ValueError):
        find_mono_copy(g, "K3", 0)
    assert find_mono_copy(g, "K3", 2) is None


def test_embedding_validate_rejects_bad_maps():
    g = EdgeColoredCompleteGraph.monochromatic(4, 1)
    k3 = pattern("K3")
    assert Embedding((0, 1, 2)).validate(g, k3, 1)
    assert not Embedding((0, 1, 1)).validate(g, k3, 1)
    assert not Embedding((0, 1)).validate(g, k3, 1)
    assert not Embedding((0, 1, 9)).validate(g, k3, 1)
    assert not Embedding((0, 1, 2)).validate(g, k3, 2)


@settings(max_examples=300, deadline=None)
@given(colorings(max_n=9, max_k=4))
def test_detectors_match_brute_force(g):
    for name in PATTERNS:
        for c in range(1, g.k + 1):
            emb = find_mono_copy(g, name, c)
            assert (emb is not None) == brute_has_mono(g.matrix, name, c)
            if emb is not None:
                assert emb.validate(g, pattern(name), c)


@settings(max_examples=300, deadline=None)
@given(colorings(max_n=8, max_k=4))
def test_rainbow_matches_brute_force(g):
    tri = rainbow_triangle(g)
    assert (tri is not None) == brute_rainbow(g.matrix)
    if tri is not None:
        a, b, c = tri
        assert len({g.color(a, b), g.color(a, c), g.color(b, c)}) == 3


@settings(max_examples=200, deadline=None)
@given(colorings(min_n=3, max_n=8, max_k=2), st.data())
def test_copy_through_edge_matches_brute_force(g, data):
    u, v = sorted(data.draw(st.lists(st.integers(0, g.n - 1), min_size=2, max_size=2, unique=True)))
    c = g.color(u, v)
    adj = g.adjacency(c)
    for name in PATTERNS:
        assert copy_through_edge(adj, name, u, v) == brute_copy_through(g.matrix, name, c, u, v)


@settings(max_examples=100, deadline=None)
@given(colorings(max_n=8, max_k=3), st.permutations(range(8)))
def test_detection_is_invariant_under_vertex_relabeling(g, perm):
    perm = [p for p in perm if p < g.n]
    h = EdgeColoredCompleteGraph.from_matrix(g.matrix[np.ix_(perm, perm)], g.k)
    for name in PATTERNS:
        for c in range(1, g.k + 1):
            assert (find_mono_copy(g, name, c) is None) == (find_mono_copy(h, name, c) is None)


def test_twin_classes_do_not_hide_copies():
    # blow up a red K4 into independent pairs: many identical neighbourhoods
    outer = EdgeColoredCompleteGraph.monochromatic(4, 1, k=2).matrix.astype(int)
    big = np.kron(outer, np.ones((2, 2), dtype=int))
    big[big == 0] = 2
    np.fill_diagonal(big, 0)
    g = EdgeColoredCompleteGraph.from_matrix(big, 2)
    for name in PATTERNS:
        for c in (1, 2):
            assert (find_mono_copy(g, name, c) is not None) == brute_has_mono(g.matrix, name, c)


def test_forbidden_copy_uses_positional_roles():
    # color 1 is a triangle, color 2 is K5 minus it: a 3-page book with no page edge
    m = np.full((5, 5), 2)
    m[:3, :3] = 1
    np.fill_diagonal(m, 0)
    g = EdgeColoredCompleteGraph.from_matrix(m, 2)
    hit = forbidden_copy(g, Parameters(1, 0, 1))
    assert hit is not None and hit[0] == 2 and hit[1].name == "K3"
    assert hit[2].validate(g, hit[1], 2)
    assert forbidden_copy(g, Parameters(2, 0, 0)) is None
    assert forbidden_copy(g, Parameters(0, 0, 2))[0] == 1
    with pytest.raises(ValueError):
        forbidden_copy(g, Parameters(1, 1, 1))
