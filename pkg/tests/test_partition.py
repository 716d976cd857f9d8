import itertools

from hypothesis import given

from lcreduce.labelcover import LabelCoverInstance, identity
from lcreduce.partition import (
    EdgePartition,
    PartitionKind,
    check_partition,
    partition_induced_matchings,
    partition_matchings,
)

from strategies import bipartite_instances


def with_edges(edges, n=4):
    side = tuple(range(1, n + 1))
    return LabelCoverInstance(side, side, 2, {e: identity(2) for e in edges})


def test_lc2_matchings(LC2):
    part = partition_matchings(LC2)
    assert part.classes == (((1, 1),), ((2, 1),))
    assert check_partition(LC2, part) == []


def test_perfect_matching_single_class():
    inst = with_edges([(1, 1), (2, 2), (3, 3)])
    assert len(partition_matchings(inst)) == 1


def test_path_matchings_two_classes(PATH):
    part = partition_matchings(PATH)
    assert len(part) == 2 == PATH.max_degree
    assert check_partition(PATH, part) == []


def test_path_induced_three_classes(PATH):
    part = partition_induced_matchings(PATH)
    assert part.classes == (((1, 1), (3, 2)), ((2, 1), (3, 3)), ((2, 2),))
    assert len(part) <= 2 * PATH.max_degree**2
    assert check_partition(PATH, part) == []


def test_single_edge_induced(LC1):
    assert len(partition_induced_matchings(LC1)) == 1


def test_lc2_needs_two_induced_classes(LC2):
    bad = EdgePartition((((1, 1), (2, 1)),), PartitionKind.INDUCED)
    assert check_partition(LC2, bad)
    part = partition_induced_matchings(LC2)
    assert len(part) == 2 and check_partition(LC2, part) == []


def test_checker_flags_joined_edges():
    inst = with_edges([(1, 1), (2, 2), (1, 2)])
    bad = EdgePartition((((1, 1), (2, 2)), ((1, 2),)), PartitionKind.INDUCED)
    assert any("joined" in p for p in check_partition(inst, bad))
    ok_as_matching = EdgePartition(bad.classes, PartitionKind.MATCHING)
    assert check_partition(inst, ok_as_matching) == []


def test_class_of(PATH):
    part = partition_induced_matchings(PATH)
    assert part.class_of((3, 3)) == 2


def test_complete_bipartite_uses_exactly_delta_colours():
    inst = with_edges(list(itertools.product(range(1, 5), repeat=2)))
    part = partition_matchings(inst)
    assert len(part) == 4
    assert check_partition(inst, part) == []


@given(bipartite_instances())
def test_matching_partition_valid(inst):
    part = partition_matchings(inst)
    assert check_partition(inst, part) == []
    assert len(part) == inst.max_degree
    assert part == partition_matchings(inst)


@given(bipartite_instances())
def test_induced_partition_valid(inst):
    part = partition_induced_matchings(inst)
    assert check_partition(inst, part) == []
    assert part == partition_induced_matchings(inst)


@given(bipartite_instances())
def test_classes_ordered_by_smallest_edge(inst):
    for part in (partition_matchings(inst), partition_induced_matchings(inst)):
        firsts = [cls[0] for cls in part.classes]
        assert firsts == sorted(firsts)
