import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcreduce.errors import Infeasible, SearchSpaceTooLarge, UnknownEdge
from lcreduce.labelcover import (
    LabelCoverInstance,
    Multilabeling,
    Projection,
    Relation,
    all_min_multilabelings,
    brute_min_multilabeling,
    covers,
    enumerate_labelings,
    identity,
    is_feasible,
    random_instance,
    random_instance_with_planted,
)

from strategies import bipartite_instances


def one_edge(constraint, g=2):
    return LabelCoverInstance((1,), (1,), g, {(1, 1): constraint})


def naive_minimum(inst):
    """Independent oracle: scan every multilabeling."""
    return min((s.cost for s in enumerate_labelings(inst) if is_feasible(inst, s)), default=None)


# -- covers / feasibility -------------------------------------------------------


def test_identity_same_label_covers():
    assert covers(one_edge(identity(2)), Multilabeling.of({1: {1}}, {1: {1}}), (1, 1))


def test_identity_different_label_misses():
    assert not covers(one_edge(identity(2)), Multilabeling.of({1: {1}}, {1: {2}}), (1, 1))


def test_lc2_swap_edge(LC2):
    assert covers(LC2, Multilabeling.of({2: {1}}, {1: {2}}), (2, 1))


def test_unknown_edge(LC1):
    with pytest.raises(UnknownEdge):
        covers(LC1, Multilabeling(), (1, 2))


def test_relation_cover():
    inst = one_edge(Relation(frozenset({(1, 2)})))
    assert covers(inst, Multilabeling.of({1: {1}}, {1: {2}}), (1, 1))
    assert not covers(inst, Multilabeling.of({1: {2}}, {1: {1}}), (1, 1))


def test_no_edges_always_feasible():
    inst = LabelCoverInstance((1,), (1,), 2, {})
    assert is_feasible(inst, Multilabeling())


def test_lc1_feasible(LC1):
    assert is_feasible(LC1, Multilabeling.of({1: {2}}, {1: {2}}))


def test_lc2_feasible_cost_three(LC2):
    sigma = Multilabeling.of({1: {1}, 2: {2}}, {1: {1}})
    assert is_feasible(LC2, sigma)
    assert sigma.cost == 3


def test_projection_must_be_total():
    with pytest.raises(ValueError):
        LabelCoverInstance((1,), (1,), 2, {(1, 1): Projection((1,))})


def test_edge_endpoints_checked():
    with pytest.raises(ValueError):
        LabelCoverInstance((1,), (1,), 2, {(2, 1): identity(2)})


# -- exact solver ---------------------------------------------------------------


def test_lc1_optimum(LC1):
    sigma, cost = brute_min_multilabeling(LC1)
    assert cost == 2 and is_feasible(LC1, sigma)
    assert naive_minimum(LC1) == 2


def test_lc2_optimum(LC2):
    sigma, cost = brute_min_multilabeling(LC2)
    assert cost == 3 and is_feasible(LC2, sigma)
    assert naive_minimum(LC2) == 3


def test_lc2_all_optima(LC2):
    # v_1 takes label b; u_1 needs b, u_2 needs the swap of b
    assert all_min_multilabelings(LC2) == [
        Multilabeling.of({1: {1}, 2: {2}}, {1: {1}}),
        Multilabeling.of({1: {2}, 2: {1}}, {1: {2}}),
    ]


def test_empty_relation_is_infeasible():
    with pytest.raises(Infeasible):
        brute_min_multilabeling(one_edge(Relation(frozenset())))


def test_search_guard():
    big = random_instance(0, 4, 4, 2, 4)
    with pytest.raises(SearchSpaceTooLarge):
        brute_min_multilabeling(big)


def test_budget_too_small(LC2):
    with pytest.raises(Infeasible):
        brute_min_multilabeling(LC2, budget=2)


def test_seed_seven_bound():
    inst, planted = random_instance_with_planted(7, 3, 3, 2, 2)
    _, cost = brute_min_multilabeling(inst)
    assert cost <= planted.cost == 6


def test_tie_break_is_lexicographic_first(LC2):
    sigma, _ = brute_min_multilabeling(LC2)
    assert sigma == all_min_multilabelings(LC2)[0]


# -- generator ------------------------------------------------------------------


@given(st.integers(0, 10_000))
def test_planted_labeling_feasible(seed):
    inst, planted = random_instance_with_planted(seed, 3, 3, 2, 3)
    assert is_feasible(inst, planted)
    assert planted.cost == len(inst.left) + len(inst.right)


def test_generator_deterministic():
    assert random_instance(11, 3, 4, 2, 3) == random_instance(11, 3, 4, 2, 3)
    assert random_instance(11, 3, 4, 2, 3) != random_instance(12, 3, 4, 2, 3)


def test_generator_degree_cap():
    inst = random_instance(3, 4, 4, 3, 2)
    assert inst.max_degree <= 3
    assert all(inst.degree("u", i) == 3 for i in inst.left)


# -- properties -----------------------------------------------------------------


@st.composite
def instance_and_two_labelings(draw):
    inst = draw(bipartite_instances(max_side=3, max_alphabet=3))
    keys = [("u", i) for i in inst.left] + [("v", j) for j in inst.right]
    labels = st.sets(st.integers(1, inst.alphabet))

    def labeling():
        return Multilabeling({k: draw(labels) for k in keys})

    return inst, labeling(), labeling()


@given(instance_and_two_labelings())
def test_adding_labels_never_uncovers(args):
    inst, a, b = args
    both = a.union(b)
    for e in inst.edges:
        if covers(inst, a, e):
            assert covers(inst, both, e)


@given(instance_and_two_labelings())
def test_cost_subadditive(args):
    _, a, b = args
    assert a.union(b).cost <= a.cost + b.cost
    disjoint = all(not (a[k] & b[k]) for k, _ in itertools.chain(a.items(), b.items()))
    if disjoint:
        assert a.union(b).cost == a.cost + b.cost


@given(bipartite_instances(max_side=2, max_alphabet=2))
def test_oracle_matches_naive_enumeration(inst):
    _, cost = brute_min_multilabeling(inst)
    assert cost == naive_minimum(inst)
