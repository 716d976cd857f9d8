import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcreduce.dst import build_dst_terminals, labeling_to_subgraph
from lcreduce.errors import UnknownVertex
from lcreduce.graphs import (
    ROOT,
    Multigraph,
    Role,
    brute_max_edge_disjoint_paths,
    check_witness,
    group_witness,
    max_edge_disjoint_paths,
    max_group_connectivity,
    max_vertex_disjoint_paths,
    parse_vid,
    to_dot,
    unit_split,
    vid_str,
)
from lcreduce.labelcover import Multilabeling
from lcreduce.undirected import build_kgst, build_kst

R, T = ("r",), ("t",)


def star(directed=True):
    g = Multigraph(directed)
    g.add_vertex(R, Role.ROOT)
    for x in "abc":
        g.add_vertex((x,))
        g.add_edge(R, (x,))
    return g


@st.composite
def small_graphs(draw, max_vertices=6, max_edges=9):
    directed = draw(st.booleans())
    n = draw(st.integers(2, max_vertices))
    names = [R, T] + [("x", i) for i in range(1, n - 1)]
    g = Multigraph(directed)
    for v in names:
        g.add_vertex(v)
    m = draw(st.integers(0, max_edges))
    for _ in range(m):
        a, b = draw(st.sampled_from(names)), draw(st.sampled_from(names))
        if a != b:
            g.add_edge(a, b, draw(st.sampled_from([0, 1])), draw(st.integers(1, 3)))
    return g


# -- construction ---------------------------------------------------------


def test_parallel_records_merge():
    g = Multigraph()
    g.add_vertex(R)
    g.add_vertex(T)
    g.add_edge(R, T, 0, 2)
    g.add_edge(R, T, 0, 1)
    g.add_edge(R, T, 1)
    assert g.multiplicity(R, T, 0) == 3
    assert g.multiplicity(R, T, 1) == 1
    assert len(g.edges) == 2


def test_undirected_edges_sorted():
    g = Multigraph(directed=False)
    g.add_vertex(("b",))
    g.add_vertex(("a",))
    g.add_edge(("b",), ("a",))
    assert g.edges[0].tail == ("a",)
    assert g.multiplicity(("a",), ("b",), 0) == 1


@pytest.mark.parametrize("bad", [dict(mult=0), dict(cost=-1)])
def test_rejects_bad_records(bad):
    g = Multigraph()
    g.add_vertex(R)
    g.add_vertex(T)
    with pytest.raises(ValueError):
        g.add_edge(R, T, **bad)


def test_rejects_self_loop():
    g = Multigraph()
    g.add_vertex(R)
    with pytest.raises(ValueError):
        g.add_edge(R, R)


def test_costs_are_exact_rationals():
    g = Multigraph()
    g.add_vertex(R)
    g.add_vertex(T)
    g.add_edge(R, T, Fraction(1, 3), 3)
    assert g.cost == 1


@pytest.mark.parametrize("vid", [("r",), ("u", 1, 2), ("w", 1, 2, 1, 2), ("qw", 0, 1, 2)])
def test_vertex_ids_round_trip(vid):
    assert parse_vid(vid_str(vid)) == vid


# -- edge-disjoint paths ----------------------------------------------------


def test_multiplicity_is_capacity():
    g = Multigraph()
    g.add_vertex(R)
    g.add_vertex(T)
    g.add_edge(R, T, mult=3)
    w = max_edge_disjoint_paths(g, R, T)
    assert w.value == 3
    assert w.paths == ((R, T),) * 3


def test_disconnected_pair():
    g = Multigraph()
    g.add_vertex(R)
    g.add_vertex(T)
    w = max_edge_disjoint_paths(g, R, T)
    assert w.value == 0 and w.paths == ()


def test_unknown_endpoint():
    with pytest.raises(UnknownVertex):
        max_edge_disjoint_paths(star(), R, ("zz",))


def test_lc2_terminal_subgraph_has_five_paths(LC2):
    # Five in-arcs of t(1): the cover path through V(1), two u->t padding
    # arcs of class 1's edge, two w->t padding arcs of the other edge.
    net = build_dst_terminals(LC2)
    sigma = Multilabeling.of(u={1: {1}, 2: {2}}, v={1: {1}})
    sub = labeling_to_subgraph(net, sigma)
    for t in net.terminals:
        w = max_edge_disjoint_paths(sub, ROOT, t)
        assert w.value == 5
        assert check_witness(sub, ROOT, t, w)
    heads = sorted(p[-2][0] for p in max_edge_disjoint_paths(sub, ROOT, ("t", 1)).paths)
    assert heads == ["V", "u", "u", "w", "w"]


def test_undirected_edge_used_once():
    # r - a - t with a single undirected edge each: one path, both directions blocked
    g = Multigraph(directed=False)
    for v in (R, ("a",), T):
        g.add_vertex(v)
    g.add_edge(R, ("a",))
    g.add_edge(("a",), T)
    assert max_edge_disjoint_paths(g, R, T).value == 1
    assert max_edge_disjoint_paths(g, T, R).value == 1


# -- vertex-disjoint paths ----------------------------------------------------


def test_two_internally_disjoint_paths():
    g = Multigraph()
    for v in (R, ("a",), ("b",), T):
        g.add_vertex(v)
    for x in ("a", "b"):
        g.add_edge(R, (x,))
        g.add_edge((x,), T)
    assert max_vertex_disjoint_paths(g, R, T).value == 2


def test_shared_internal_vertex_is_a_cut():
    g = Multigraph()
    for v in (R, ("a",), T):
        g.add_vertex(v)
    g.add_edge(R, ("a",), mult=2)
    g.add_edge(("a",), T, mult=2)
    assert max_edge_disjoint_paths(g, R, T).value == 2
    assert max_vertex_disjoint_paths(g, R, T).value == 1


def test_parallel_root_terminal_edges_count_separately():
    g = Multigraph(directed=False)
    g.add_vertex(R)
    g.add_vertex(T)
    g.add_edge(R, T, mult=4)
    assert max_vertex_disjoint_paths(g, R, T).value == 4


def test_kst_completeness_subgraph_lc1(LC1):
    net = build_kst(LC1)
    t = net.terminals[0]
    assert net.graph.degree(t) == 3
    sub = labeling_to_subgraph(net, Multilabeling.of(u={1: {1}}, v={1: {1}}))
    w = max_vertex_disjoint_paths(sub, ROOT, t)
    assert w.value == 3
    assert check_witness(sub, ROOT, t, w, vertex_disjoint=True)


# -- group connectivity -------------------------------------------------------


def test_star_group():
    assert max_group_connectivity(star(), R, [("a",), ("b",), ("c",)], 1) == 3


def test_degree_one_group_bounded_by_size():
    g = star(directed=False)
    assert max_group_connectivity(g, R, [("a",), ("b",)], 5) <= 2


def test_group_rejects_source_member():
    with pytest.raises(ValueError):
        max_group_connectivity(star(), R, [R], 1)


def test_kgst_completeness_lc2_group_one(LC2):
    net = build_kgst(LC2)
    sub = labeling_to_subgraph(net, Multilabeling.of(u={1: {1}, 2: {2}}, v={1: {1}}))
    group = net.groups.groups[0]
    assert len(group) == 9
    w = group_witness(sub, ROOT, group, 9)
    assert w.value == 9
    assert check_witness(sub, ROOT, set(group), w)


# -- properties -----------------------------------------------------------------


@given(small_graphs())
def test_unit_split_preserves_flow(g):
    assert max_edge_disjoint_paths(unit_split(g), R, T).value == max_edge_disjoint_paths(g, R, T).value


@given(small_graphs(max_vertices=6, max_edges=8))
def test_flow_matches_exhaustive_packing(g):
    assert max_edge_disjoint_paths(g, R, T).value == brute_max_edge_disjoint_paths(g, R, T)


@given(small_graphs())
def test_vertex_flow_at_most_edge_flow(g):
    assert max_vertex_disjoint_paths(g, R, T).value <= max_edge_disjoint_paths(g, R, T).value


@given(small_graphs())
def test_witnesses_reverify(g):
    w = max_edge_disjoint_paths(g, R, T)
    assert w.value == len(w.paths)
    assert check_witness(g, R, T, w)
    v = max_vertex_disjoint_paths(g, R, T)
    assert check_witness(g, R, T, v, vertex_disjoint=True)


def test_checker_rejects_overused_edge():
    g = Multigraph()
    g.add_vertex(R)
    g.add_vertex(T)
    g.add_edge(R, T)
    w = max_edge_disjoint_paths(g, R, T)
    forged = type(w)(value=2, paths=w.paths * 2, edge_paths=w.edge_paths * 2)
    assert not check_witness(g, R, T, forged)


def test_flow_is_deterministic():
    rng = random.Random(5)
    g = Multigraph()
    names = [R, T] + [("x", i) for i in range(6)]
    for v in names:
        g.add_vertex(v)
    for _ in range(14):
        a, b = rng.sample(names, 2)
        g.add_edge(a, b)
    assert max_edge_disjoint_paths(g, R, T) == max_edge_disjoint_paths(g, R, T)


def test_dot_styles():
    g = star()
    g.add_vertex(T, Role.TERMINAL)
    g.add_edge(("a",), T, cost=1, mult=2)
    dot = to_dot(g)
    assert dot.startswith("digraph G {")
    assert '"r" [shape=circle style=filled fillcolor=black' in dot
    assert '"a" -> "t" [style=solid penwidth=2 label="x2"];' in dot
    assert '"r" -> "a" [style=dashed];' in dot
