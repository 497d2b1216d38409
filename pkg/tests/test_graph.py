from __future__ import annotations

import random

import networkx as nx
import pytest
from arrangements import ceva, random_conic_line, random_line_arrangement, three_lines_circle, two_triples_and_circle
from hypothesis import given, settings
from hypothesis import strategies as st

from arrangeo.errors import NotOneCycle
from arrangeo.geometry import shear_to_generic
from arrangeo.graph import (
    IncidenceGraph,
    betti,
    betti_whole_segments,
    build_graph,
    cfg_check_cl,
    cfg_check_line,
    cycle_edges,
    emit_dot,
    prscf_condition,
    replay_trace,
)


def test_ceva_graph_is_k4():
    g = build_graph(ceva())
    assert len(g.vertices) == 4 and len(g.edges) == 6 and betti(g) == 3
    assert all(g.degree(v) == 3 for v in g.vertices)
    v = cfg_check_line(g)
    assert not v.is_cfg and v.trace == () and v.rule == "no vertex of degree <= 2"


def test_conic_triangle():
    g = build_graph(three_lines_circle())
    assert betti(g) == 1 and all(g.is_on_conic(v) for v in g.vertices)
    assert len(cycle_edges(g)) == 3
    assert prscf_condition(g) == (False, None)
    assert not cfg_check_cl(g).is_cfg


def test_off_conic_witness():
    g = build_graph(two_triples_and_circle())
    assert betti(g) == 1
    ok, w = prscf_condition(g)
    assert ok and not g.is_on_conic(w)
    v = cfg_check_cl(g)
    assert v.is_cfg and v.witness == w


def test_witness_condition_needs_one_cycle():
    with pytest.raises(NotOneCycle):
        prscf_condition(IncidenceGraph.make("ab", [("a", "b", "L1")]))


def test_peeling_a_theta_graph():
    # two degree-3 hubs joined by three paths of length two: the middle vertices peel off
    g = IncidenceGraph.make("abxyz", [("a", "x", "L1"), ("x", "b", "L2"), ("a", "y", "L3"),
                                      ("y", "b", "L4"), ("a", "z", "L5"), ("z", "b", "L6")])
    v = cfg_check_line(g)
    assert v.is_cfg and v.trace == (("x", "y", "z"),)
    assert replay_trace(g, v.trace) == v.terminal


def test_dot():
    g = build_graph(two_triples_and_circle())
    dot = emit_dot(g)
    assert dot.startswith("graph G {") and dot.count("--") == len(g.edges)
    assert dot.count("peripheries=2") == sum(g.is_on_conic(v) for v in g.vertices)
    assert emit_dot(IncidenceGraph.make([], [])) == "graph G {}\n"


def _random_graph(rng, n, extra):
    t = nx.random_labeled_tree(n, seed=rng.randint(0, 10**6)) if n > 1 else nx.empty_graph(1)
    edges = [(f"v{u}", f"v{w}", f"L{i}") for i, (u, w) in enumerate(t.edges())]
    names = [f"v{i}" for i in range(n)]
    for j in range(extra):
        u, w = rng.sample(names, 2) if n > 1 else (names[0], names[0])
        edges.append((u, w, f"M{j}"))
    return IncidenceGraph.make(names, edges)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 9), st.integers(0, 1))
def test_beta_at_most_one_is_cfg(seed, n, extra):
    g = _random_graph(random.Random(seed), n, extra if n > 1 else 0)
    assert betti(g) <= 1
    assert cfg_check_line(g).is_cfg


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 10), st.integers(0, 5))
def test_peeling_is_monotone_and_replays(seed, n, extra):
    g = _random_graph(random.Random(seed), n, extra)
    v = cfg_check_line(g)
    sizes = [len(g.vertices)]
    h = g
    for xs in v.trace:
        assert xs and all(h.degree(x) <= 2 for x in xs)
        h = h.remove(xs)
        sizes.append(len(h.vertices))
    assert all(a > b for a, b in zip(sizes, sizes[1:]))
    assert h == v.terminal == replay_trace(g, v.trace)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_beta_two_ways_and_shear_invariance(seed):
    rng = random.Random(seed)
    arr = random_line_arrangement(rng, rng.randint(4, 6)) if seed % 2 else random_conic_line(rng)
    b = betti(build_graph(arr))
    assert betti_whole_segments(arr) == b
    assert betti(build_graph(shear_to_generic(arr))) == b
