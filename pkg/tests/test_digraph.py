import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from pathmorse import (Digraph, DigraphError, ParseError, UnknownVertexError, degree, is_transitive,
                       on_directed_cycle, parse_digraph, reachable, shortest_path, transitive_closure)

from conftest import HEXAGON, SQUARE, random_digraph


def edges_by_label(g):
    return {(g.labels[u], g.labels[v]) for u, v in g.edges}


def test_parse_square():
    g = parse_digraph("v0 v1\nv0 v2\nv1 v3\nv2 v3")
    assert g.labels == ("v0", "v1", "v2", "v3")
    assert len(g.edges) == 4


def test_parse_empty_and_duplicates():
    g = parse_digraph("")
    assert g.n == 0 and not g.edges
    g = parse_digraph("a b\na b")
    assert g.n == 2 and len(g.edges) == 1


def test_parse_arrows_comments_and_isolated():
    g = parse_digraph("# header\na -> b   # trailing\n\nvertex z\nb c\n")
    assert g.labels == ("a", "b", "z", "c")
    assert edges_by_label(g) == {("a", "b"), ("b", "c")}
    assert degree(g, "z") == 0


@pytest.mark.parametrize("text", ["a", "a b c", "a -> b -> c", "a -> ", "vertex", "a a", "x -> x"])
def test_parse_rejects_malformed(text):
    with pytest.raises(ParseError):
        parse_digraph(text)


def test_parse_error_line_number():
    with pytest.raises(ParseError) as exc:
        parse_digraph("a b\n\nc d e\n")
    assert exc.value.lineno == 3


def test_roundtrip_text():
    g = parse_digraph("a b\nvertex q\nb c\n")
    h = parse_digraph(g.to_text())
    assert set(h.labels) == set(g.labels)
    assert edges_by_label(h) == edges_by_label(g)


def test_constructor_rejects_bad_input():
    with pytest.raises(DigraphError):
        Digraph(("a", "a"), frozenset())
    with pytest.raises(DigraphError):
        Digraph(("a",), frozenset({(0, 0)}))
    with pytest.raises(DigraphError):
        Digraph(("a",), frozenset({(0, 1)}))


def test_closure_hexagon():
    g = parse_digraph(HEXAGON)
    added = edges_by_label(transitive_closure(g)) - edges_by_label(g)
    assert added == {("v0", "v2"), ("v0", "v3"), ("v0", "v4"), ("v1", "v3"), ("v1", "v4"), ("v2", "v4")}


def test_closure_square():
    g = parse_digraph(SQUARE)
    assert edges_by_label(transitive_closure(g)) - edges_by_label(g) == {("v0", "v3")}


def test_closure_edgeless_and_cycle_has_no_loops():
    g = parse_digraph("vertex a\nvertex b")
    assert transitive_closure(g) == g
    c = transitive_closure(parse_digraph("a b\nb c\nc a"))
    assert len(c.edges) == 6
    assert all(u != v for u, v in c.edges)


def test_reachable_examples():
    g = parse_digraph(SQUARE)
    assert reachable(g, "v0", "v3")
    assert not reachable(g, "v3", "v0")
    assert not reachable(g, "v0", "v0")
    c = parse_digraph("a b\nb c\nc a")
    assert reachable(c, "a", "a")
    with pytest.raises(UnknownVertexError):
        reachable(g, "v0", "nope")


def test_on_directed_cycle_examples():
    assert not on_directed_cycle(parse_digraph(SQUARE), "v0")
    assert on_directed_cycle(parse_digraph("a b\nb c\nc a"), "b")
    assert not on_directed_cycle(parse_digraph("vertex v"), "v")


def test_degree_examples():
    g = parse_digraph(SQUARE)
    assert degree(g, "v0") == 2
    assert degree(transitive_closure(g), "v0") == 3
    assert degree(parse_digraph("vertex x\na b"), "x") == 0


def test_shortest_path_cycle_and_missing():
    c = parse_digraph("a b\nb c\nc a\nc d")
    assert c.label_path(shortest_path(c, "a", "a")) == "abca"
    assert shortest_path(c, "d", "a") is None
    assert c.label_path(shortest_path(c, "a", "d")) == "abcd"


# -- oracles -----------------------------------------------------------------

def reach_oracle(g):
    """Reachability by repeated relaxation of the adjacency relation."""
    r = set(g.edges)
    while True:
        new = {(a, d) for (a, b) in r for (c, d) in r if b == c} - r
        if not new:
            return r
        r |= new


def simple_cycle_vertices(g):
    """Vertices on some simple directed cycle, by enumerating vertex sequences."""
    out = set()
    for k in range(2, g.n + 1):
        for seq in itertools.permutations(range(g.n), k):
            if all((seq[i], seq[(i + 1) % k]) in g.edges for i in range(k)):
                out.update(seq)
    return out


digraphs = st.integers(0, 2**32).flatmap(
    lambda s: st.just(random_digraph(random.Random(s), random.Random(s + 1).randint(1, 7), 0.3)))


@settings(max_examples=150, deadline=None)
@given(digraphs)
def test_reachable_matches_oracle(g):
    r = reach_oracle(g)
    for u in range(g.n):
        for v in range(g.n):
            assert reachable(g, u, v) == ((u, v) in r)


@settings(max_examples=150, deadline=None)
@given(digraphs)
def test_closure_properties(g):
    c = transitive_closure(g)
    assert g.edges <= c.edges
    assert transitive_closure(c) == c
    assert is_transitive(c)
    assert c.edges == {(u, v) for u, v in reach_oracle(g) if u != v}


@settings(max_examples=100, deadline=None)
@given(digraphs)
def test_cycle_membership_matches_enumeration(g):
    if g.n > 6:
        return
    cyc = simple_cycle_vertices(g)
    for v in range(g.n):
        assert on_directed_cycle(g, v) == (v in cyc)


@settings(max_examples=100, deadline=None)
@given(digraphs)
def test_shortest_path_is_allowed(g):
    for u in range(g.n):
        for v in range(g.n):
            p = shortest_path(g, u, v)
            assert (p is not None) == reachable(g, u, v)
            if p:
                assert p[0] == u and p[-1] == v
                assert all((p[i], p[i + 1]) in g.edges for i in range(len(p) - 1))
