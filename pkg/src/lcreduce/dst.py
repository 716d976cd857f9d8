"""Label cover to k-DST: the terminal-count and connectivity-count constructions.

Vertex ids are tuples:

=====================  ==========================================
``("r",)``             root
``("u", i, a)``        label slot of left vertex ``i`` with label ``a``
``("v", j, b)``        label slot of right vertex ``j`` with label ``b``
``("U", i)``           copy of left vertex ``i`` (connectivity version)
``("V", j)``           copy of right vertex ``j``
``("w", i, j, a, b)``  mid vertex of a satisfying pair on edge ``(i, j)``
``("t", m)``           terminal of matching class ``m``
``("t", i, j)``        terminal of constraint edge ``(i, j)``
``("q", l, p)``        arborescence node ``p`` on level ``l``
``("qw", l, p, c)``    split node on the tree arc from ``q(l, p)`` to ``q(l+1, c)``
``("c", n)``           padding chain node above the arborescence
=====================  ==========================================
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from lcreduce.errors import (
    InfeasibleLabeling,
    InvalidArity,
    MissingZeroCostArcs,
    RelationConstraint,
)
from lcreduce.graphs import (
    ROOT,
    FlowNetwork,
    Multigraph,
    Role,
    longest_path_layers,
    max_edge_disjoint_paths,
    max_group_connectivity,
    max_vertex_disjoint_paths,
)
from lcreduce.labelcover import LabelCoverInstance, Multilabeling, is_feasible
from lcreduce.partition import EdgePartition, partition_induced_matchings, partition_matchings

ONE = Fraction(1)
ZERO = Fraction(0)

DST_TERMINALS = "dst-t"
DST_CONNECTIVITY = "dst-k"
KST = "kst"
KGST = "kgst"
KINDS = (DST_TERMINALS, DST_CONNECTIVITY, KST, KGST)


@dataclass(frozen=True)
class GroupSpec:
    """Terminal groups with per-group requirements.

    ``uniform`` is the common requirement once every group has been padded up
    to it, or ``None`` while requirements are still per group.
    """

    groups: tuple  # tuple of sorted vertex tuples
    requirements: tuple
    uniform: int | None = None

    def requirement(self, m: int) -> int:
        """Requirement of group ``m`` (1-based)."""
        return self.uniform if self.uniform is not None else self.requirements[m - 1]


@dataclass(frozen=True)
class ReductionCertificate:
    """Ties a reduced network back to the label cover instance it came from.

    ``slot_edges`` maps each ``(side, index, label)`` to the key of its single
    one-cost edge; ``terminal_class`` maps each terminal to the 1-based index
    of its partition class (or of its constraint edge's class).
    """

    instance: LabelCoverInstance
    partition: EdgePartition
    slot_edges: Mapping
    terminal_class: Mapping
    params: Mapping = field(default_factory=dict)

    @property
    def edge_slots(self) -> dict:
        return {key: slot for slot, key in self.slot_edges.items()}


@dataclass(frozen=True)
class NetworkInstance:
    """A k-DST, k-ST or k-GST instance produced by one of the reductions."""

    kind: str
    graph: Multigraph
    root: tuple
    k: int
    terminals: tuple = ()
    groups: GroupSpec | None = None
    certificate: ReductionCertificate | None = None

    @property
    def one_cost_keys(self) -> list:
        return [e.key for e in self.graph.edges if e.cost != 0]

    @property
    def zero_cost_keys(self) -> list:
        return [e.key for e in self.graph.edges if e.cost == 0]


# ---------------------------------------------------------------------------
# shared helpers


def _require_projection(inst: LabelCoverInstance):
    if not inst.is_projection:
        raise RelationConstraint("the reduction needs projection constraints")


def _slot_vertices(g: Multigraph, inst: LabelCoverInstance):
    sigma = range(1, inst.alphabet + 1)
    for i in inst.left:
        for a in sigma:
            g.add_vertex(("u", i, a), Role.LABEL)
    for j in inst.right:
        g.add_vertex(("V", j))
        for b in sigma:
            g.add_vertex(("v", j, b), Role.LABEL)


def _slot_edge(g: Multigraph, slots: dict, slot, u, v):
    """Add the one-cost edge of ``slot`` and record its (canonical) key."""
    g.add_edge(u, v, ONE)
    if not g.directed and v < u:
        u, v = v, u
    slots[slot] = (u, v, ONE)


def _right_slot_edges(g: Multigraph, inst: LabelCoverInstance, slots: dict):
    for j in inst.right:
        for b in range(1, inst.alphabet + 1):
            _slot_edge(g, slots, ("v", j, b), ("v", j, b), ("V", j))


# ---------------------------------------------------------------------------
# terminal-count construction


def build_dst_terminals(inst: LabelCoverInstance) -> NetworkInstance:
    """One terminal per matching class; ``k`` is the largest terminal in-degree.

    Each left slot ``u(i,a)`` gets its one-cost arc from the root plus
    ``deg(u_i)`` zero-cost parallel copies.
    """
    _require_projection(inst)
    part = partition_matchings(inst)
    g = Multigraph(directed=True)
    g.add_vertex(ROOT, Role.ROOT)
    _slot_vertices(g, inst)
    slots: dict = {}
    sigma = range(1, inst.alphabet + 1)
    for i in inst.left:
        deg = inst.degree("u", i)
        for a in sigma:
            _slot_edge(g, slots, ("u", i, a), ROOT, ("u", i, a))
            if deg:
                g.add_edge(ROOT, ("u", i, a), ZERO, mult=deg)
    _right_slot_edges(g, inst, slots)
    for (i, j) in inst.edges:
        for a, b in inst.satisfying_pairs((i, j)):
            w = g.add_vertex(("w", i, j, a, b), Role.MID)
            g.add_edge(("u", i, a), w)
            g.add_edge(w, ("v", j, b))
    terminals = []
    for m, cls in enumerate(part.classes, start=1):
        t = g.add_vertex(("t", m), Role.TERMINAL)
        terminals.append(t)
        members = set(cls)
        for (i, j) in cls:
            g.add_edge(("V", j), t)
        for (i, j) in inst.edges:
            for a, b in inst.satisfying_pairs((i, j)):
                if (i, j) in members:
                    g.add_edge(("u", i, a), t)
                else:
                    g.add_edge(("w", i, j, a, b), t)
    k = max((g.indegree(t) for t in terminals), default=1)
    for t in terminals:
        gap = k - g.indegree(t)
        if gap:
            g.add_edge(ROOT, t, mult=gap)
    cert = ReductionCertificate(
        instance=inst,
        partition=part,
        slot_edges=slots,
        terminal_class={t: t[1] for t in terminals},
        params={"Delta": inst.max_degree, "classes": len(part), "k": k},
    )
    return NetworkInstance(DST_TERMINALS, g, ROOT, k, tuple(terminals), None, cert)


# ---------------------------------------------------------------------------
# connectivity-count construction


def tree_height(num_classes: int, d: int) -> int:
    """Smallest ``h >= 0`` with ``d**h >= num_classes``."""
    h = 0
    while d ** h < num_classes:
        h += 1
    return h


def layered_height(max_degree: int, d: int) -> int:
    """Target longest-path length ``2*ceil(log_d(2*Delta**2)) + 5`` (exact integer arithmetic)."""
    return 2 * tree_height(2 * max_degree * max_degree, d) + 5


def _leaf_path(m: int, h: int, d: int) -> list[int]:
    """Node indices ``[j_0=1, j_1, ..., j_h=m]`` on the tree path to leaf ``m``."""
    path = [m]
    for _ in range(h):
        path.append((path[-1] - 1) // d + 1)
    return path[::-1]


def build_dst_connectivity(
    inst: LabelCoverInstance,
    d: int = 2,
    pad_layers: bool = False,
    dummy_k_boost: int = 0,
) -> NetworkInstance:
    """One terminal per constraint edge, routed through a d-ary arborescence.

    ``k = h*(d-1) + 1`` where ``h`` is the arborescence height over the
    induced-matching classes. ``pad_layers`` prepends a chain above the
    arborescence so that the longest root path has exactly
    :func:`layered_height` arcs. ``dummy_k_boost`` adds that many zero-cost
    root-to-terminal arcs per terminal and raises ``k`` to match.
    """
    _require_projection(inst)
    if not isinstance(d, int) or d < 2:
        raise InvalidArity(f"arity must be an integer >= 2, got {d!r}")
    if dummy_k_boost < 0:
        raise ValueError("dummy_k_boost must be non-negative")
    part = partition_induced_matchings(inst)
    delta = len(part)
    h = tree_height(delta, d)
    k = h * (d - 1) + 1
    g = Multigraph(directed=True)
    g.add_vertex(ROOT, Role.ROOT)
    _slot_vertices(g, inst)
    slots: dict = {}
    sigma = range(1, inst.alphabet + 1)
    for i in inst.left:
        g.add_vertex(("U", i))
        for a in sigma:
            _slot_edge(g, slots, ("u", i, a), ("U", i), ("u", i, a))
    _right_slot_edges(g, inst, slots)
    for (i, j) in inst.edges:
        for a, b in inst.satisfying_pairs((i, j)):
            g.add_edge(("u", i, a), ("v", j, b))

    chain = 0
    if pad_layers:
        chain = layered_height(inst.max_degree, d) - (2 * h + 5)
    top = ROOT if chain == 0 else ("q", 0, 1)

    def q(level, p):
        return top if level == 0 else ("q", level, p)

    if chain:
        prev = ROOT
        for n in range(1, chain):
            g.add_vertex(("c", n))
            g.add_edge(prev, ("c", n), mult=k + dummy_k_boost)
            prev = ("c", n)
        g.add_vertex(top)
        g.add_edge(prev, top, mult=k + dummy_k_boost)
    for level in range(1, h + 1):
        for p in range(1, d ** level + 1):
            g.add_vertex(("q", level, p))
    for level in range(h):
        for p in range(1, d ** level + 1):
            for c in range((p - 1) * d + 1, p * d + 1):
                mid = g.add_vertex(("qw", level, p, c))
                g.add_edge(q(level, p), mid)
                g.add_edge(mid, q(level + 1, c))
    for level in range(1, h):
        for p in range(1, d ** level + 1):
            g.add_edge(top, q(level, p), mult=d - 1)
    for m, cls in enumerate(part.classes, start=1):
        for (i, j) in cls:
            g.add_edge(q(h, m), ("U", i))

    terminals, terminal_class = [], {}
    for m, cls in enumerate(part.classes, start=1):
        path = _leaf_path(m, h, d)
        for (i, j) in cls:
            t = g.add_vertex(("t", i, j), Role.TERMINAL)
            terminals.append(t)
            terminal_class[t] = m
            g.add_edge(("V", j), t)
            for level in range(1, h + 1):
                parent, here = path[level - 1], path[level]
                for sib in range((parent - 1) * d + 1, parent * d + 1):
                    if sib != here:
                        g.add_edge(("qw", level - 1, parent, sib), t)
            if dummy_k_boost:
                g.add_edge(ROOT, t, mult=dummy_k_boost)
    terminals.sort()
    cert = ReductionCertificate(
        instance=inst,
        partition=part,
        slot_edges=slots,
        terminal_class=terminal_class,
        params={
            "Delta": inst.max_degree,
            "delta": delta,
            "d": d,
            "h": h,
            "k": k + dummy_k_boost,
            "pad_layers": pad_layers,
            "chain": chain,
            "boost": dummy_k_boost,
        },
    )
    return NetworkInstance(DST_CONNECTIVITY, g, ROOT, k + dummy_k_boost, tuple(terminals), None, cert)


def padding_arcs(net: NetworkInstance) -> list:
    """Tree arcs ``q(l, p) -> qw(l, p, c)`` that feed some terminal's padding arc."""
    g = net.graph
    feeding = {e.tail for e in g.edges if e.tail[0] == "qw" and e.head[0] == "t"}
    return [e.key for e in g.edges if e.head in feeding and e.tail[0] in ("q", "r")]


# ---------------------------------------------------------------------------
# solution maps (shared by every reduction)


def labeling_to_subgraph(net: NetworkInstance, sigma: Multilabeling) -> Multigraph:
    """All zero-cost edges plus the one-cost edge of every selected label slot."""
    cert = net.certificate
    if not is_feasible(cert.instance, sigma):
        raise InfeasibleLabeling("the multilabeling does not cover every constraint edge")
    keep = {}
    for key in net.one_cost_keys:
        keep[key] = 0
    for side, idx, label in sigma.slots():
        try:
            keep[cert.slot_edges[(side, idx, label)]] = 1
        except KeyError:
            raise InfeasibleLabeling(f"no slot for {side}{idx} label {label}") from None
    return net.graph.with_multiplicities(keep)


def subgraph_to_labeling(net: NetworkInstance, sub: Multigraph) -> Multilabeling:
    """Read the label slots off the one-cost edges present in ``sub``."""
    g = net.graph
    missing = [key for key in net.zero_cost_keys if sub.multiplicity(*key) < g.multiplicity(*key)]
    if missing:
        u, v, _ = missing[0]
        raise MissingZeroCostArcs(f"{len(missing)} zero-cost edge records missing, e.g. {u} -> {v}")
    edge_slots = net.certificate.edge_slots
    chosen = []
    for e in sub.edges:
        if e.cost == 0:
            continue
        if e.key not in edge_slots:
            raise ValueError(f"edge {e.key} is not a one-cost edge of the network")
        chosen.append(edge_slots[e.key])
    return Multilabeling.from_slots(chosen)


labeling_to_subgraph_T = labeling_to_subgraph
subgraph_to_labeling_T = subgraph_to_labeling
labeling_to_subgraph_k = labeling_to_subgraph
subgraph_to_labeling_k = subgraph_to_labeling


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class Verification:
    feasible: bool
    flows: Mapping  # terminal or group index -> flow value
    required: Mapping

    def failures(self) -> list:
        return [x for x, f in self.flows.items() if f < self.required[x]]


def requirements(net: NetworkInstance) -> dict:
    if net.groups is not None:
        return {m: net.groups.requirement(m) for m in range(1, len(net.groups.groups) + 1)}
    return {t: net.k for t in net.terminals}


def verify(net: NetworkInstance, sub: Multigraph | None = None) -> Verification:
    """Check the connectivity requirement of ``net`` on ``sub`` (default: the full graph)."""
    sub = net.graph if sub is None else sub
    req = requirements(net)
    flows = {}
    if net.groups is not None:
        for m, members in enumerate(net.groups.groups, start=1):
            flows[m] = max_group_connectivity(sub, net.root, members, req[m])
    else:
        paths = max_vertex_disjoint_paths if net.kind == KST else max_edge_disjoint_paths
        for t in net.terminals:
            flows[t] = paths(sub, net.root, t).value
    return Verification(all(flows[x] >= req[x] for x in flows), flows, req)


def flow_network(net: NetworkInstance) -> FlowNetwork:
    """Reusable residual network over the full graph for repeated checks."""
    mode = "vertex" if net.kind == KST else "edge"
    groups = None
    cap = 1
    if net.groups is not None:
        groups = {m: members for m, members in enumerate(net.groups.groups, start=1)}
        cap = max(requirements(net).values(), default=1)
    return FlowNetwork(net.graph, mode=mode, groups=groups, group_cap=cap)


def targets(net: NetworkInstance, fn: FlowNetwork) -> list[tuple[int, int]]:
    """(sink node, requirement) for every terminal or group of ``net``."""
    req = requirements(net)
    if net.groups is not None:
        return [(fn.sink_of_group[m], req[m]) for m in req]
    return [(fn.sink_node(t), req[t]) for t in net.terminals]


def height(net: NetworkInstance) -> int | None:
    """Longest root path length in arcs, or ``None`` if a cycle is reachable."""
    layers = longest_path_layers(net.graph, net.root)
    return None if layers is None else max(layers.values())


__all__ = [
    "DST_CONNECTIVITY",
    "DST_TERMINALS",
    "GroupSpec",
    "KGST",
    "KINDS",
    "KST",
    "NetworkInstance",
    "ReductionCertificate",
    "Verification",
    "build_dst_connectivity",
    "build_dst_terminals",
    "flow_network",
    "height",
    "labeling_to_subgraph",
    "labeling_to_subgraph_T",
    "labeling_to_subgraph_k",
    "layered_height",
    "padding_arcs",
    "requirements",
    "subgraph_to_labeling",
    "subgraph_to_labeling_T",
    "subgraph_to_labeling_k",
    "targets",
    "tree_height",
    "verify",
]
