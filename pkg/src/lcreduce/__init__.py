"""Label cover reductions to connectivity network design, with solution maps and flow verifiers."""

from lcreduce.dks import (
    DksInstance,
    brute_densest_k_subgraph,
    clique_labeling,
    dks_to_labelcover,
    planted_clique_graph,
    soundness_sampler,
)
from lcreduce.dst import (
    GroupSpec,
    NetworkInstance,
    ReductionCertificate,
    build_dst_connectivity,
    build_dst_terminals,
    labeling_to_subgraph,
    subgraph_to_labeling,
    verify,
)
from lcreduce.errors import (
    FormatError,
    Infeasible,
    InfeasibleLabeling,
    InfeasibleParameters,
    InvalidArity,
    MissingZeroCostArcs,
    ReductionError,
    RelationConstraint,
    SearchSpaceTooLarge,
    UnknownEdge,
    UnknownVertex,
)
from lcreduce.graphs import (
    FlowWitness,
    Multigraph,
    Role,
    max_edge_disjoint_paths,
    max_group_connectivity,
    max_vertex_disjoint_paths,
)
from lcreduce.harness import ExperimentReport, brute_min_network, roundtrip_experiment
from lcreduce.labelcover import (
    LabelCoverInstance,
    Multilabeling,
    Projection,
    Relation,
    brute_min_multilabeling,
    covers,
    is_feasible,
    lc1,
    lc2,
    random_instance,
)
from lcreduce.partition import EdgePartition, partition_induced_matchings, partition_matchings
from lcreduce.undirected import build_kgst, build_kst, uniformize_groups

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
