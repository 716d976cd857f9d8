"""Multigraphs, unit-capacity max-flow and disjoint-path verifiers.

Vertices are structured ids: tuples whose first entry is a short tag and whose
remaining entries are integers, e.g. ``("u", 1, 2)`` for the label slot of
left vertex 1 with label 2, or ``("r",)`` for the root. Their text form is
``u(1,2)`` / ``r``.
"""

from __future__ import annotations

import enum
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from lcreduce import _kernel
from lcreduce.errors import FormatError, UnknownVertex

ROOT = ("r",)


class Role(enum.Enum):
    ROOT = "root"
    TERMINAL = "terminal"
    GROUP = "group"
    LABEL = "label"
    MID = "mid"
    PLAIN = "plain"


_VID_RE = re.compile(r"^([A-Za-z_]+)(?:\(([-0-9,]*)\))?$")


def vid_str(v) -> str:
    if len(v) == 1:
        return v[0]
    return f"{v[0]}({','.join(str(x) for x in v[1:])})"


def parse_vid(text: str):
    m = _VID_RE.match(text)
    if m is None:
        raise FormatError(f"bad vertex id {text!r}")
    tag, args = m.groups()
    if not args:
        return (tag,)
    return (tag, *(int(x) for x in args.split(",")))


@dataclass(frozen=True, order=True)
class Edge:
    tail: tuple
    head: tuple
    cost: Fraction
    mult: int = 1

    @property
    def key(self):
        return (self.tail, self.head, self.cost)


class Multigraph:
    """Directed or undirected multigraph with integer edge multiplicities.

    Parallel records with equal endpoints and cost are merged by summing their
    multiplicity; records of different cost between the same endpoints stay
    separate. Undirected edges are stored with endpoints in sorted order.
    Graphs are built once with :meth:`add_vertex`/:meth:`add_edge` and treated
    as immutable afterwards.
    """

    def __init__(self, directed: bool = True):
        self.directed = directed
        self._roles: dict = {}
        self._mult: dict = {}

    # -- construction -------------------------------------------------
    def add_vertex(self, v, role: Role = Role.PLAIN):
        if v in self._roles and self._roles[v] is not role and role is not Role.PLAIN:
            if self._roles[v] is not Role.PLAIN:
                raise ValueError(f"vertex {vid_str(v)} already has role {self._roles[v].value}")
        if v not in self._roles or role is not Role.PLAIN:
            self._roles[v] = role
        return v

    def add_edge(self, u, v, cost=0, mult: int = 1):
        if u == v:
            raise ValueError(f"self-loop at {vid_str(u)}")
        if mult < 1:
            raise ValueError("multiplicity must be positive")
        cost = Fraction(cost)
        if cost < 0:
            raise ValueError("negative cost")
        for x in (u, v):
            if x not in self._roles:
                raise UnknownVertex(x)
        if not self.directed and v < u:
            u, v = v, u
        key = (u, v, cost)
        self._mult[key] = self._mult.get(key, 0) + mult

    # -- queries --------------------------------------------------------
    @property
    def vertices(self) -> list:
        return sorted(self._roles)

    def has_vertex(self, v) -> bool:
        return v in self._roles

    def role(self, v) -> Role:
        try:
            return self._roles[v]
        except KeyError:
            raise UnknownVertex(v) from None

    @property
    def roles(self) -> Mapping:
        return dict(self._roles)

    @property
    def edges(self) -> list[Edge]:
        return [Edge(u, v, c, m) for (u, v, c), m in sorted(self._mult.items())]

    def multiplicity(self, u, v, cost) -> int:
        if not self.directed and v < u:
            u, v = v, u
        return self._mult.get((u, v, Fraction(cost)), 0)

    @property
    def cost(self) -> Fraction:
        return sum((c * m for (_, _, c), m in self._mult.items()), Fraction(0))

    def num_edges(self) -> int:
        return sum(self._mult.values())

    def indegree(self, v) -> int:
        self.role(v)
        if not self.directed:
            return self.degree(v)
        return sum(m for (_, b, _), m in self._mult.items() if b == v)

    def outdegree(self, v) -> int:
        self.role(v)
        if not self.directed:
            return self.degree(v)
        return sum(m for (a, _, _), m in self._mult.items() if a == v)

    def degree(self, v) -> int:
        self.role(v)
        return sum(m for (a, b, _), m in self._mult.items() if v in (a, b))

    def neighbors(self, v) -> list:
        out = set()
        for a, b, _ in self._mult:
            if a == v:
                out.add(b)
            elif b == v and not self.directed:
                out.add(a)
        return sorted(out)

    # -- derived graphs ---------------------------------------------------
    def copy(self) -> "Multigraph":
        g = Multigraph(self.directed)
        g._roles = dict(self._roles)
        g._mult = dict(self._mult)
        return g

    def with_multiplicities(self, mult: Mapping) -> "Multigraph":
        """Same vertices; edge multiplicities replaced by ``mult[key]`` (0 drops)."""
        g = Multigraph(self.directed)
        g._roles = dict(self._roles)
        for key, m in self._mult.items():
            new = mult.get(key, m)
            if new > m:
                raise ValueError("multiplicity exceeds the original")
            if new > 0:
                g._mult[key] = new
        return g

    def without_edge(self, u, v, cost, count: int = 1) -> "Multigraph":
        if not self.directed and v < u:
            u, v = v, u
        key = (u, v, Fraction(cost))
        if self._mult.get(key, 0) < count:
            raise KeyError(key)
        return self.with_multiplicities({key: self._mult[key] - count})

    def is_subgraph_of(self, other: "Multigraph") -> bool:
        if self.directed != other.directed or set(self._roles) - set(other._roles):
            return False
        return all(other._mult.get(k, 0) >= m for k, m in self._mult.items())

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return (self.directed, self._roles, self._mult) == (other.directed, other._roles, other._mult)

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"<Multigraph {kind} |V|={len(self._roles)} |E|={self.num_edges()}>"


# ---------------------------------------------------------------------------
# flow networks


class FlowNetwork:
    """CSR residual network derived from a :class:`Multigraph`.

    ``mode`` selects the transformation:

    * ``"edge"`` -- one arc per directed edge, two opposite arcs per
      undirected edge, capacity = multiplicity.
    * ``"vertex"`` -- as ``"edge"`` but every vertex is split into an in-node
      and an out-node joined by a capacity-1 arc; sources are taken at the
      out-node and sinks at the in-node, so they are effectively unsplit.

    ``groups`` attaches one super-sink per named group, fed by arcs of
    capacity ``group_cap`` from each member.
    """

    def __init__(self, g: Multigraph, mode: str = "edge", groups: Mapping | None = None, group_cap: int = 1):
        if mode not in ("edge", "vertex"):
            raise ValueError(mode)
        self.graph = g
        self.mode = mode
        verts = g.vertices
        self.edges = g.edges
        self.edge_index = {e.key: i for i, e in enumerate(self.edges)}
        split = mode == "vertex"
        node_of_in, node_of_out = {}, {}
        n = 0
        for v in verts:
            node_of_in[v] = n
            node_of_out[v] = n + 1 if split else n
            n += 2 if split else 1
        self.node_in, self.node_out = node_of_in, node_of_out
        self.sink_of_group = {}
        # arcs: (tail, head, edge_index or -1, fixed cap, original tail vertex, original head vertex)
        arcs = []
        if split:
            for v in verts:
                arcs.append((node_of_in[v], node_of_out[v], -1, 1, None, None))
        for i, e in enumerate(self.edges):
            arcs.append((node_of_out[e.tail], node_of_in[e.head], i, 0, e.tail, e.head))
            if not g.directed:
                arcs.append((node_of_out[e.head], node_of_in[e.tail], i, 0, e.head, e.tail))
        for name, members in (groups or {}).items():
            sink = n
            n += 1
            self.sink_of_group[name] = sink
            for v in sorted(members):
                if not g.has_vertex(v):
                    raise UnknownVertex(v)
                arcs.append((node_of_in[v], sink, -1, group_cap, v, None))
        self.n = n
        self.arcs = arcs
        m = len(arcs)
        head = np.empty(2 * m, dtype=np.int64)
        for i, (a, b, *_rest) in enumerate(arcs):
            head[2 * i] = b
            head[2 * i + 1] = a
        tails = np.empty(2 * m, dtype=np.int64)
        tails[0::2] = head[1::2]
        tails[1::2] = head[0::2]
        order = np.lexsort((np.arange(2 * m), head, tails))
        self.adj = order.astype(np.int64)
        counts = np.bincount(tails, minlength=n)
        self.start = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=self.start[1:])
        self.head = head
        self.arc_edge = np.array([a[2] for a in arcs], dtype=np.int64)
        self.arc_fixed = np.array([a[3] for a in arcs], dtype=np.int64)
        self.base_mult = np.array([e.mult for e in self.edges], dtype=np.int64)
        self.cap = None
        self.initial = None

    def capacities(self, mult: np.ndarray | None = None) -> np.ndarray:
        mult = self.base_mult if mult is None else mult
        if len(mult):
            fwd = np.where(self.arc_edge >= 0, mult[np.maximum(self.arc_edge, 0)], self.arc_fixed)
        else:
            fwd = self.arc_fixed
        cap = np.zeros(2 * len(self.arcs), dtype=np.int64)
        cap[0::2] = fwd
        return cap

    def source_node(self, v) -> int:
        if v not in self.node_out:
            raise UnknownVertex(v)
        return self.node_out[v]

    def sink_node(self, v) -> int:
        if v not in self.node_in:
            raise UnknownVertex(v)
        return self.node_in[v]

    def run(self, s: int, t: int, limit: int = -1, mult: np.ndarray | None = None) -> int:
        """Max flow from node ``s`` to node ``t`` (stopping at ``limit`` if >= 0)."""
        self.initial = self.capacities(mult)
        self.cap = self.initial.copy()
        return _kernel.augment(self.n, self.start, self.adj, self.head, self.cap, s, t, limit)

    def arc_flows(self) -> np.ndarray:
        return self.initial[0::2] - self.cap[0::2]

    def source_side(self, s: int) -> np.ndarray:
        """Boolean mask of nodes reachable from ``s`` in the last residual graph."""
        seen = np.zeros(self.n, dtype=bool)
        seen[s] = True
        stack = [s]
        start, adj, head, cap = self.start, self.adj, self.head, self.cap
        while stack:
            x = stack.pop()
            for i in range(start[x], start[x + 1]):
                e = adj[i]
                if cap[e] > 0 and not seen[head[e]]:
                    seen[head[e]] = True
                    stack.append(int(head[e]))
        return seen

    def cut_weights(self, side: np.ndarray):
        """Per-edge capacity weight and fixed capacity crossing the cut ``side``.

        Returns ``(weights, fixed)`` where ``weights[i]`` counts the arcs of edge
        ``i`` leaving the source side (to be multiplied by its multiplicity).
        """
        weights = np.zeros(len(self.edges), dtype=np.int64)
        fixed = 0
        for (a, b, ei, fc, *_rest) in self.arcs:
            if side[a] and not side[b]:
                if ei >= 0:
                    weights[ei] += 1
                else:
                    fixed += fc
        return weights, fixed

    def decompose(self, s: int, t: int) -> list[list[int]]:
        """Split the last flow into ``s``-``t`` paths, each a list of arc indices."""
        flow = self.arc_flows().astype(np.int64)
        if not self.graph.directed:
            # cancel opposite flows on the two arcs of one undirected edge
            by_edge: dict = {}
            for i, (_, _, ei, *_rest) in enumerate(self.arcs):
                if ei >= 0:
                    by_edge.setdefault(ei, []).append(i)
            for pair in by_edge.values():
                if len(pair) == 2:
                    x, y = pair
                    c = min(flow[x], flow[y])
                    flow[x] -= c
                    flow[y] -= c
        out_arcs: dict = {}
        for i, (a, *_rest) in enumerate(self.arcs):
            out_arcs.setdefault(a, []).append(i)
        for lst in out_arcs.values():
            lst.sort(key=lambda i: (self.arcs[i][1], i))
        paths = []
        while True:
            walk: list[int] = []
            pos = {s: 0}
            x = s
            while x != t:
                nxt = next((i for i in out_arcs.get(x, ()) if flow[i] > 0), None)
                if nxt is None:
                    break
                y = self.arcs[nxt][1]
                walk.append(nxt)
                if y in pos:
                    # strip the cycle and continue from y
                    cyc = walk[pos[y]:]
                    for i in cyc:
                        flow[i] -= 1
                    del walk[pos[y]:]
                    pos = {self.arcs[i][1]: k + 1 for k, i in enumerate(walk)}
                    pos[s] = 0
                    x = y
                    continue
                pos[y] = len(walk)
                x = y
            if x != t or not walk:
                break
            for i in walk:
                flow[i] -= 1
            paths.append(walk)
        return paths


@dataclass(frozen=True)
class FlowWitness:
    """Maximum set of disjoint paths with an explicit decomposition.

    ``paths`` are vertex sequences; ``edge_paths`` give the edge key used at
    each step (needed when parallel records of different cost exist).
    """

    value: int
    paths: tuple = ()
    edge_paths: tuple = ()
    usage: Mapping = field(default_factory=dict)
    capacity: Mapping = field(default_factory=dict, repr=False)

    @property
    def saturated(self) -> list:
        """Edge keys whose whole multiplicity is used by the paths."""
        return sorted(k for k, used in self.usage.items() if used == self.capacity.get(k))


def _witness(net: FlowNetwork, value: int, s: int, t: int) -> FlowWitness:
    arc_paths = net.decompose(s, t)
    paths, edge_paths = [], []
    usage: Counter = Counter()
    for walk in arc_paths:
        verts, keys = [], []
        for i in walk:
            a_node, b_node, ei, _fc, tv, hv = net.arcs[i]
            if ei < 0:
                continue
            if not verts:
                verts.append(tv)
            verts.append(hv)
            key = net.edges[ei].key
            keys.append(key)
            usage[key] += 1
        paths.append(tuple(verts))
        edge_paths.append(tuple(keys))
    return FlowWitness(
        value=value,
        paths=tuple(paths),
        edge_paths=tuple(edge_paths),
        usage=dict(usage),
        capacity={e.key: e.mult for e in net.edges},
    )


def _check_endpoints(g: Multigraph, source, sink):
    for v in (source, sink):
        if not g.has_vertex(v):
            raise UnknownVertex(v)
    if source == sink:
        raise ValueError("source and sink must differ")


def max_edge_disjoint_paths(g: Multigraph, source, sink) -> FlowWitness:
    """Maximum number of edge-disjoint source-sink paths, counting multiplicity."""
    _check_endpoints(g, source, sink)
    net = FlowNetwork(g, "edge")
    s, t = net.source_node(source), net.sink_node(sink)
    value = net.run(s, t)
    return _witness(net, value, s, t)


def max_vertex_disjoint_paths(g: Multigraph, source, sink) -> FlowWitness:
    """Maximum number of openly vertex-disjoint source-sink paths.

    Parallel source-sink edges each count as a separate path.
    """
    _check_endpoints(g, source, sink)
    net = FlowNetwork(g, "vertex")
    s, t = net.source_node(source), net.sink_node(sink)
    value = net.run(s, t)
    return _witness(net, value, s, t)


def max_group_connectivity(g: Multigraph, source, group: Iterable, cap: int) -> int:
    """Max number of edge-disjoint paths from ``source`` into ``group``.

    Each member feeds a fresh super-sink through an arc of capacity ``cap``.
    """
    return group_witness(g, source, group, cap).value


def group_witness(g: Multigraph, source, group: Iterable, cap: int) -> FlowWitness:
    members = sorted(set(group))
    if not members:
        raise ValueError("empty group")
    if source in members:
        raise ValueError("source lies in the group")
    if not g.has_vertex(source):
        raise UnknownVertex(source)
    net = FlowNetwork(g, "edge", groups={0: members}, group_cap=cap)
    s, t = net.source_node(source), net.sink_of_group[0]
    value = net.run(s, t)
    return _witness(net, value, s, t)


def check_witness(g: Multigraph, source, targets, witness: FlowWitness, vertex_disjoint: bool = False) -> bool:
    """Independently re-verify a witness against ``g``.

    ``targets`` is the sink vertex or a collection of admissible end vertices.
    """
    if isinstance(targets, tuple) and targets and isinstance(targets[0], str):
        targets = {targets}
    targets = set(targets)
    if witness.value != len(witness.paths) or len(witness.paths) != len(witness.edge_paths):
        return False
    used: Counter = Counter()
    inner_seen: set = set()
    for verts, keys in zip(witness.paths, witness.edge_paths):
        if not verts or verts[0] != source or verts[-1] not in targets:
            return False
        if len(keys) != len(verts) - 1:
            return False
        for a, b, key in zip(verts, verts[1:], keys):
            ka, kb, _cost = key
            ok = (ka, kb) == (a, b) or (not g.directed and (ka, kb) == (b, a))
            if not ok or g.multiplicity(ka, kb, key[2]) == 0:
                return False
            used[key] += 1
        if vertex_disjoint:
            inner = verts[1:-1]
            if len(set(inner)) != len(inner) or inner_seen & set(inner):
                return False
            inner_seen |= set(inner)
    return all(used[k] <= g.multiplicity(*k) for k in used)


def brute_max_edge_disjoint_paths(g: Multigraph, source, sink) -> int:
    """Exhaustive maximum edge-disjoint path packing (small graphs only).

    Enumerates every simple source-sink path, then searches all packings under
    the multiplicity budget. Independent of the flow code.
    """
    _check_endpoints(g, source, sink)
    incident: dict = {}
    for e in g.edges:
        incident.setdefault(e.tail, []).append((e.head, e.key))
        if not g.directed:
            incident.setdefault(e.head, []).append((e.tail, e.key))
    paths: list[tuple] = []

    def extend(x, visited, keys):
        if x == sink:
            paths.append(tuple(keys))
            return
        for y, key in incident.get(x, ()):
            if y not in visited:
                visited.add(y)
                keys.append(key)
                extend(y, visited, keys)
                keys.pop()
                visited.discard(y)

    extend(source, {source}, [])
    budget = {e.key: e.mult for e in g.edges}
    best = 0

    def pack(i, count):
        nonlocal best
        best = max(best, count)
        # every simple path spends one unit on a source-incident edge
        if count + sum(budget[k] for _, k in incident.get(source, ())) <= best:
            return
        for j in range(i, len(paths)):
            p = paths[j]
            need = Counter(p)
            if all(budget[k] >= c for k, c in need.items()):
                for k, c in need.items():
                    budget[k] -= c
                pack(j, count + 1)
                for k, c in need.items():
                    budget[k] += c

    pack(0, 0)
    return best


# ---------------------------------------------------------------------------
# DOT export

_ROLE_STYLE = {
    Role.ROOT: 'shape=circle style=filled fillcolor=black fontcolor=white',
    Role.TERMINAL: 'shape=doublecircle style=filled fillcolor=gray40 fontcolor=white',
    Role.GROUP: 'shape=circle style=filled fillcolor=gray70',
    Role.LABEL: 'shape=circle style=filled fillcolor=gray85',
    Role.MID: 'shape=circle',
    Role.PLAIN: 'shape=point',
}


def to_dot(g: Multigraph, name: str = "G", highlight: Iterable = ()) -> str:
    """Render ``g`` as Graphviz text.

    Root black, terminals filled, one-cost (positive) edges solid, zero-cost
    edges dashed; multiplicities above one are written on the edge.
    """
    highlight = set(highlight)
    kw, arrow = ("digraph", "->") if g.directed else ("graph", "--")
    lines = [f"{kw} {name} {{"]
    for v in g.vertices:
        style = _ROLE_STYLE[g.role(v)]
        if v in highlight:
            style += " color=red penwidth=2"
        lines.append(f'  "{vid_str(v)}" [{style}];')
    for e in g.edges:
        attrs = ["style=solid penwidth=2" if e.cost > 0 else "style=dashed"]
        if e.mult > 1:
            attrs.append(f'label="x{e.mult}"')
        lines.append(f'  "{vid_str(e.tail)}" {arrow} "{vid_str(e.head)}" [{" ".join(attrs)}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def longest_path_layers(g: Multigraph, source) -> dict | None:
    """Longest-path distance from ``source`` for every reachable vertex.

    Returns ``None`` if a directed cycle is reachable (the graph is not layered).
    """
    if not g.directed:
        raise ValueError("layering needs a directed graph")
    succ: dict = {}
    for e in g.edges:
        succ.setdefault(e.tail, set()).add(e.head)
    reach = {source}
    stack = [source]
    while stack:
        x = stack.pop()
        for y in succ.get(x, ()):
            if y not in reach:
                reach.add(y)
                stack.append(y)
    indeg = Counter()
    for x in reach:
        for y in succ.get(x, ()):
            indeg[y] += 1
    dist = {source: 0}
    ready = [v for v in sorted(reach) if indeg[v] == 0]
    done = 0
    while ready:
        x = ready.pop()
        done += 1
        for y in sorted(succ.get(x, ())):
            dist[y] = max(dist.get(y, 0), dist[x] + 1)
            indeg[y] -= 1
            if indeg[y] == 0:
                ready.append(y)
    if done != len(reach):
        return None
    return dist


def bfs_levels(g: Multigraph, source) -> dict:
    """Shortest-path (BFS) level of each vertex reachable from ``source``."""
    succ: dict = {}
    for e in g.edges:
        succ.setdefault(e.tail, set()).add(e.head)
        if not g.directed:
            succ.setdefault(e.head, set()).add(e.tail)
    level = {source: 0}
    frontier = [source]
    while frontier:
        nxt = []
        for x in frontier:
            for y in sorted(succ.get(x, ())):
                if y not in level:
                    level[y] = level[x] + 1
                    nxt.append(y)
        frontier = nxt
    return level


def unit_split(g: Multigraph) -> Multigraph:
    """Replace each edge of multiplicity m by m distinct unit records.

    Distinct records are obtained by routing copy c>0 through a fresh vertex
    ``("split", n)``; used to check multiplicity-invariance of flow values.
    """
    h = Multigraph(g.directed)
    for v in g.vertices:
        h.add_vertex(v, g.role(v))
    n = 0
    for e in g.edges:
        h.add_edge(e.tail, e.head, e.cost, 1)
        for _ in range(e.mult - 1):
            n += 1
            mid = h.add_vertex(("split", n))
            h.add_edge(e.tail, mid, e.cost, 1)
            h.add_edge(mid, e.head, 0, 1)
    return h


def subgraph_of_edges(g: Multigraph, keys: Iterable) -> Multigraph:
    """Subgraph keeping only the listed edge keys (full multiplicity)."""
    keep = set(keys)
    return g.with_multiplicities({e.key: (e.mult if e.key in keep else 0) for e in g.edges})
