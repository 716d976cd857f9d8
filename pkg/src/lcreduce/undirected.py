"""Label cover to undirected k-ST (vertex connectivity) and k-GST (group edge connectivity).

Extra vertex ids beyond those of :mod:`lcreduce.dst`:

* ``("x", i, j, a, b)`` -- padding vertex beside ``w(i,j,a,b)`` (k-ST)
* ``("gx", i, j, a, b, f)`` / ``("gy", i, j, a, b, f)`` -- gadget vertices, ``f`` in 1..5 (k-GST)
* ``("Vt", j)`` -- pendant copy of right vertex ``j`` (k-GST)
"""

from __future__ import annotations

from dataclasses import replace

from lcreduce.dst import (
    KGST,
    KST,
    GroupSpec,
    NetworkInstance,
    ReductionCertificate,
    _require_projection,
    _right_slot_edges,
    _slot_edge,
    _slot_vertices,
    labeling_to_subgraph,
    subgraph_to_labeling,
)
from lcreduce.graphs import ROOT, Multigraph, Role
from lcreduce.labelcover import LabelCoverInstance
from lcreduce.partition import partition_matchings

GADGET_S = ((1, 2), (2, 3), (3, 4), (1, 5))


def _left_slot_edges(g: Multigraph, inst: LabelCoverInstance, slots: dict):
    for i in inst.left:
        for a in range(1, inst.alphabet + 1):
            _slot_edge(g, slots, ("u", i, a), ROOT, ("u", i, a))


def build_kst(inst: LabelCoverInstance) -> NetworkInstance:
    """Undirected k-ST instance; requirement is ``k`` openly vertex-disjoint paths per terminal."""
    _require_projection(inst)
    part = partition_matchings(inst)
    g = Multigraph(directed=False)
    g.add_vertex(ROOT, Role.ROOT)
    _slot_vertices(g, inst)
    slots: dict = {}
    _left_slot_edges(g, inst, slots)
    _right_slot_edges(g, inst, slots)
    for (i, j) in inst.edges:
        for a, b in inst.satisfying_pairs((i, j)):
            w = g.add_vertex(("w", i, j, a, b), Role.MID)
            x = g.add_vertex(("x", i, j, a, b), Role.MID)
            g.add_edge(("u", i, a), w)
            g.add_edge(w, ("v", j, b))
            g.add_edge(ROOT, x)
            g.add_edge(x, w)
    terminals = []
    for m, cls in enumerate(part.classes, start=1):
        t = g.add_vertex(("t", m), Role.TERMINAL)
        terminals.append(t)
        members = set(cls)
        for (i, j) in cls:
            g.add_edge(("V", j), t)
        for (i, j) in inst.edges:
            via = "x" if (i, j) in members else "w"
            for a, b in inst.satisfying_pairs((i, j)):
                g.add_edge((via, i, j, a, b), t)
    k = max((g.degree(t) for t in terminals), default=1)
    for t in terminals:
        gap = k - g.degree(t)
        if gap:
            g.add_edge(ROOT, t, mult=gap)
    cert = ReductionCertificate(
        instance=inst,
        partition=part,
        slot_edges=slots,
        terminal_class={t: t[1] for t in terminals},
        params={"Delta": inst.max_degree, "classes": len(part), "k": k},
    )
    return NetworkInstance(KST, g, ROOT, k, tuple(terminals), None, cert)


def gadget_vertices(i, j, a, b) -> list:
    return [(side, i, j, a, b, f) for side in ("gx", "gy") for f in range(1, 6)]


def build_kgst(inst: LabelCoverInstance, uniform: bool = False) -> NetworkInstance:
    """Undirected k-GST instance with one group per matching class.

    Every satisfying label pair of every constraint edge gets a ten-vertex
    gadget. Group ``m`` needs ``k_m = |T_m|`` edge-disjoint paths; with
    ``uniform`` the groups are padded up to a common requirement by
    :func:`uniformize_groups`.
    """
    _require_projection(inst)
    part = partition_matchings(inst)
    g = Multigraph(directed=False)
    g.add_vertex(ROOT, Role.ROOT)
    _slot_vertices(g, inst)
    slots: dict = {}
    _left_slot_edges(g, inst, slots)
    _right_slot_edges(g, inst, slots)
    for j in inst.right:
        g.add_vertex(("Vt", j), Role.GROUP if inst.degree("v", j) else Role.PLAIN)
        g.add_edge(("V", j), ("Vt", j))

    pairs = [((i, j), a, b) for (i, j) in inst.edges for a, b in inst.satisfying_pairs((i, j))]
    groups = []
    for m, cls in enumerate(part.classes, start=1):
        members = set(cls)
        group = {("Vt", j) for (_, j) in cls}
        for (i, j), a, b in pairs:
            f = 4 if (i, j) in members else 5
            group.add(("gx", i, j, a, b, f))
            group.add(("gy", i, j, a, b, f))
        groups.append(tuple(sorted(group)))
    in_group = {v for grp in groups for v in grp}

    for (i, j), a, b in pairs:
        for v in gadget_vertices(i, j, a, b):
            g.add_vertex(v, Role.GROUP if v in in_group else Role.MID)
        for side in ("gx", "gy"):
            for f1, f2 in GADGET_S:
                g.add_edge((side, i, j, a, b, f1), (side, i, j, a, b, f2))
            g.add_edge(ROOT, (side, i, j, a, b, 3))
        g.add_edge(("u", i, a), ("gx", i, j, a, b, 1))
        g.add_edge(("gx", i, j, a, b, 2), ("gy", i, j, a, b, 2))
        g.add_edge(("gy", i, j, a, b, 1), ("v", j, b))

    reqs = tuple(len(grp) for grp in groups)
    spec = GroupSpec(tuple(groups), reqs)
    cert = ReductionCertificate(
        instance=inst,
        partition=part,
        slot_edges=slots,
        terminal_class={},
        params={"Delta": inst.max_degree, "classes": len(part), "gadgets": len(pairs)},
    )
    net = NetworkInstance(KGST, g, ROOT, max(reqs, default=1), (), spec, cert)
    return uniformize_groups(net) if uniform else net


def uniformize_groups(net: NetworkInstance) -> NetworkInstance:
    """Raise every group requirement to ``k = max k_m``.

    Group ``m`` gains ``k - k_m`` zero-cost root edges to its smallest member.
    """
    spec = net.groups
    if spec is None:
        raise ValueError("network has no groups")
    if spec.uniform is not None:
        return net
    k = max(spec.requirements, default=1)
    g = net.graph.copy()
    for grp, km in zip(spec.groups, spec.requirements):
        if k > km:
            g.add_edge(net.root, grp[0], mult=k - km)
    return replace(net, graph=g, k=k, groups=replace(spec, uniform=k))


def gadget_census(net: NetworkInstance) -> list[dict]:
    """Per-gadget structural counts, in gadget order."""
    g = net.graph
    inst = net.certificate.instance
    rows = []
    for (i, j) in inst.edges:
        for a, b in inst.satisfying_pairs((i, j)):
            verts = set(gadget_vertices(i, j, a, b))
            present = [v for v in verts if g.has_vertex(v)]
            inner = connectors = taps = 0
            for e in g.edges:
                ends = (e.tail in verts) + (e.head in verts)
                if ends == 2:
                    inner += e.mult
                elif ends == 1:
                    if ROOT in (e.tail, e.head):
                        taps += e.mult
                    else:
                        connectors += e.mult
            # the x2-y2 connector lies inside the vertex set
            s_edges = inner - g.multiplicity(("gx", i, j, a, b, 2), ("gy", i, j, a, b, 2), 0)
            connectors += inner - s_edges
            rows.append(
                {
                    "gadget": (i, j, a, b),
                    "vertices": len(present),
                    "s_edges": s_edges,
                    "connectors": connectors,
                    "root_taps": taps,
                    "deg_x1": g.degree(("gx", i, j, a, b, 1)),
                    "deg_y1": g.degree(("gy", i, j, a, b, 1)),
                }
            )
    return rows


labeling_to_subgraph_kst = labeling_to_subgraph
subgraph_to_labeling_kst = subgraph_to_labeling
labeling_to_subgraph_kgst = labeling_to_subgraph
subgraph_to_labeling_kgst = subgraph_to_labeling
