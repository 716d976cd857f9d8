import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcreduce.dst import (
    build_dst_connectivity,
    build_dst_terminals,
    height,
    labeling_to_subgraph,
    layered_height,
    padding_arcs,
    subgraph_to_labeling,
    tree_height,
    verify,
)
from lcreduce.errors import InfeasibleLabeling, InvalidArity, MissingZeroCostArcs, RelationConstraint
from lcreduce.graphs import ROOT, longest_path_layers, max_edge_disjoint_paths
from lcreduce.harness import brute_min_network, minimal_feasible_subgraph
from lcreduce.labelcover import (
    LabelCoverInstance,
    Multilabeling,
    Relation,
    all_min_multilabelings,
    brute_min_multilabeling,
    is_feasible,
)
from lcreduce.partition import partition_induced_matchings, partition_matchings

from strategies import tiny_planted

LC2_OPT = Multilabeling.of({1: {1}, 2: {2}}, {1: {1}})


def one_cost_count(net):
    return sum(e.mult for e in net.graph.edges if e.cost == 1)


def all_labels(inst):
    sigma = set(range(1, inst.alphabet + 1))
    return Multilabeling.of({i: sigma for i in inst.left}, {j: sigma for j in inst.right})


# -- terminal-count construction ---------------------------------------------------


def test_lc2_terminal_census(LC2):
    net = build_dst_terminals(LC2)
    assert len(net.terminals) == 2
    assert net.k == 5
    for t in net.terminals:
        assert net.graph.indegree(t) == 5
        assert net.graph.multiplicity(ROOT, t, 0) == 0


def test_lc1_terminal_census(LC1):
    net = build_dst_terminals(LC1)
    assert len(net.terminals) == 1
    assert net.k == 3 == net.graph.indegree(net.terminals[0])


def test_root_slot_copies(LC2):
    g = build_dst_terminals(LC2).graph
    # deg(u_1) = 1 zero-cost copy plus the one-cost arc
    assert g.multiplicity(ROOT, ("u", 1, 1), 0) == 1
    assert g.multiplicity(ROOT, ("u", 1, 1), 1) == 1


def test_rejects_relations():
    inst = LabelCoverInstance((1,), (1,), 2, {(1, 1): Relation(frozenset({(1, 1)}))})
    with pytest.raises(RelationConstraint):
        build_dst_terminals(inst)
    with pytest.raises(RelationConstraint):
        build_dst_connectivity(inst)


def test_lc2_forward_cost_and_flow(LC2):
    net = build_dst_terminals(LC2)
    sub = labeling_to_subgraph(net, LC2_OPT)
    assert sub.cost == 3
    assert all(max_edge_disjoint_paths(sub, ROOT, t).value == 5 for t in net.terminals)


def test_lc1_forward_cost_and_flow(LC1):
    net = build_dst_terminals(LC1)
    sub = labeling_to_subgraph(net, Multilabeling.of({1: {1}}, {1: {1}}))
    assert sub.cost == 2
    assert max_edge_disjoint_paths(sub, ROOT, net.terminals[0]).value == 3


def test_all_labels_forward(LC2):
    net = build_dst_terminals(LC2)
    sub = labeling_to_subgraph(net, all_labels(LC2))
    assert sub.cost == LC2.alphabet * (len(LC2.left) + len(LC2.right))
    assert verify(net, sub).feasible


def test_forward_rejects_infeasible(LC2):
    with pytest.raises(InfeasibleLabeling):
        labeling_to_subgraph(build_dst_terminals(LC2), Multilabeling.of({1: {1}}, {1: {1}}))


def test_backward_round_trip(LC2):
    net = build_dst_terminals(LC2)
    assert subgraph_to_labeling(net, labeling_to_subgraph(net, LC2_OPT)) == LC2_OPT


def test_backward_of_brute_optimum_lc1(LC1):
    net = build_dst_terminals(LC1)
    sub, cost = brute_min_network(net)
    sigma = subgraph_to_labeling(net, sub)
    assert cost == sigma.cost == 2
    assert is_feasible(LC1, sigma)


def test_backward_extra_arc(LC2):
    net = build_dst_terminals(LC2)
    sub = labeling_to_subgraph(net, LC2_OPT)
    keep = {key: sub.multiplicity(*key) for key in net.one_cost_keys}
    keep[(ROOT, ("u", 1, 2), 1)] = 1
    extra = net.graph.with_multiplicities(keep)
    assert verify(net, extra).feasible
    sigma = subgraph_to_labeling(net, extra)
    assert is_feasible(LC2, sigma) and sigma.cost == 4


def test_backward_requires_zero_cost_arcs(LC2):
    net = build_dst_terminals(LC2)
    sub = labeling_to_subgraph(net, LC2_OPT)
    with pytest.raises(MissingZeroCostArcs):
        subgraph_to_labeling(net, sub.without_edge(("V", 1), ("t", 1), 0))


def _path_uses_cover(net, path, m):
    cls = set(net.certificate.partition.classes[m - 1])
    for a, b, c in zip(path, path[1:], path[2:]):
        if a[0] == "u" and b[0] == "w" and c[0] == "v":
            i, j, la, lb = b[1:]
            if (i, j) in cls and a == ("u", i, la) and c == ("v", j, lb):
                return True
    return False


@given(tiny_planted())
def test_illegal_paths_excluded(inst):
    net = build_dst_terminals(inst)
    subs = [minimal_feasible_subgraph(net, net.graph)]
    sigma, _ = brute_min_multilabeling(inst)
    subs.append(minimal_feasible_subgraph(net, labeling_to_subgraph(net, sigma)))
    for sub in subs:
        for t in net.terminals:
            for p in max_edge_disjoint_paths(sub, ROOT, t).paths:
                if p[-2][0] == "V":
                    assert _path_uses_cover(net, p, t[1])


# -- connectivity-count construction -------------------------------------------


def test_tree_height():
    assert [tree_height(n, 2) for n in (1, 2, 3, 4, 5)] == [0, 1, 2, 2, 3]
    assert tree_height(9, 3) == 2


def test_path_graph_parameters(PATH):
    net = build_dst_connectivity(PATH, d=2)
    p = net.certificate.params
    assert (p["delta"], p["h"], net.k) == (3, 2, 3)
    assert all(net.graph.has_vertex(("q", 2, m)) for m in range(1, 5))
    # the fourth leaf exists but serves no class
    assert not [e for e in net.graph.edges if e.tail == ("q", 2, 4)]
    assert all(net.graph.indegree(t) == 3 for t in net.terminals)


def test_path_graph_forward_flow(PATH):
    net = build_dst_connectivity(PATH, d=2)
    sigma = Multilabeling.of({i: {1} for i in PATH.left}, {j: {1} for j in PATH.right})
    res = verify(net, labeling_to_subgraph(net, sigma))
    assert res.feasible
    assert set(res.flows.values()) == {3}


def test_lc1_degenerate_tree(LC1):
    net = build_dst_connectivity(LC1, d=2)
    assert net.certificate.params["h"] == 0
    assert net.k == 1
    assert net.graph.indegree(net.terminals[0]) == 1
    assert net.graph.multiplicity(ROOT, ("U", 1), 0) == 1


def test_invalid_arity(LC2):
    with pytest.raises(InvalidArity):
        build_dst_connectivity(LC2, d=1)


@pytest.mark.parametrize("d", [2, 3])
def test_lc2_connectivity(LC2, d):
    net = build_dst_connectivity(LC2, d=d)
    assert net.k == d
    sub = labeling_to_subgraph(net, LC2_OPT)
    assert sub.cost == 3 and verify(net, sub).feasible
    assert subgraph_to_labeling(net, sub) == LC2_OPT


def test_pad_layers_height(LC2, PATH):
    for inst in (LC2, PATH):
        for d in (2, 3):
            net = build_dst_connectivity(inst, d=d, pad_layers=True)
            assert height(net) == layered_height(inst.max_degree, d)


def test_unpadded_height_is_2h_plus_5(PATH):
    net = build_dst_connectivity(PATH, d=2)
    assert height(net) == 2 * net.certificate.params["h"] + 5


def test_boost_raises_k(LC2):
    net = build_dst_connectivity(LC2, d=2, dummy_k_boost=3)
    assert net.k == 5
    assert all(net.graph.indegree(t) == 5 for t in net.terminals)
    assert verify(net, labeling_to_subgraph(net, LC2_OPT)).feasible


@pytest.mark.parametrize("fixture", ["LC2", "PATH"])
def test_padding_arc_removal_breaks_a_terminal(fixture, request):
    inst = request.getfixturevalue(fixture)
    net = build_dst_connectivity(inst, d=2)
    arcs = padding_arcs(net)
    assert arcs
    for key in arcs:
        res = verify(net, net.graph.without_edge(*key))
        assert not res.feasible, key


# -- shared properties ---------------------------------------------------------------


@given(tiny_planted(), st.sampled_from([2, 3]))
def test_parameter_identities(inst, d):
    t_net = build_dst_terminals(inst)
    assert len(t_net.terminals) == len(partition_matchings(inst)) <= inst.max_degree
    assert all(t_net.graph.indegree(t) == t_net.k for t in t_net.terminals)
    k_net = build_dst_connectivity(inst, d=d)
    delta = len(partition_induced_matchings(inst))
    assert k_net.k == tree_height(delta, d) * (d - 1) + 1
    assert all(k_net.graph.indegree(t) == k_net.k for t in k_net.terminals)
    for net in (t_net, k_net):
        assert one_cost_count(net) == inst.alphabet * (len(inst.left) + len(inst.right))
        slots = set(net.certificate.slot_edges)
        assert len(slots) == len(set(net.certificate.slot_edges.values())) == one_cost_count(net)


@given(tiny_planted())
def test_forward_backward_identity(inst):
    for net in (build_dst_terminals(inst), build_dst_connectivity(inst)):
        for sigma in all_min_multilabelings(inst):
            sub = labeling_to_subgraph(net, sigma)
            assert sub.cost == sigma.cost
            assert verify(net, sub).feasible
            assert subgraph_to_labeling(net, sub) == sigma
            assert labeling_to_subgraph(net, subgraph_to_labeling(net, sub)) == sub


@given(tiny_planted())
def test_layered_when_padded(inst):
    for d in (2, 3):
        net = build_dst_connectivity(inst, d=d, pad_layers=True)
        layers = longest_path_layers(net.graph, ROOT)
        assert layers is not None
        assert max(layers.values()) == layered_height(inst.max_degree, d)
