"""Edge partitions of a bipartite constraint graph into (induced) matchings."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from lcreduce.labelcover import LabelCoverInstance


class PartitionKind(enum.Enum):
    MATCHING = "matching"
    INDUCED = "induced"


@dataclass(frozen=True)
class EdgePartition:
    classes: tuple  # tuple of sorted tuples of (i, j) edges
    kind: PartitionKind

    def __len__(self):
        return len(self.classes)

    def class_of(self, edge) -> int:
        """1-based index of the class containing ``edge``."""
        for m, cls in enumerate(self.classes, start=1):
            if edge in cls:
                return m
        raise KeyError(edge)


def _ordered(groups) -> tuple:
    classes = [tuple(sorted(g)) for g in groups if g]
    classes.sort(key=lambda c: c[0])
    return tuple(classes)


def partition_matchings(inst: LabelCoverInstance) -> EdgePartition:
    """König edge colouring with exactly ``max_degree`` colours.

    Edges are coloured in lexicographic order. When the smallest colour free at
    ``u_i`` is taken at ``v_j``, the alternating path of that colour and the
    smallest colour free at ``v_j`` is flipped first; in a bipartite graph the
    path cannot return to ``u_i``.
    """
    delta = inst.max_degree
    at: dict = {}  # (vertex, colour) -> edge
    colour: dict = {}

    def free(x):
        return next(c for c in range(1, delta + 1) if (x, c) not in at)

    for i, j in sorted(inst.edges):
        u, v = ("u", i), ("v", j)
        a, b = free(u), free(v)
        if (v, a) in at:
            path = []
            x, c, other = v, a, b
            while (x, c) in at:
                e = at[(x, c)]
                path.append(e)
                x = ("v", e[1]) if x[0] == "u" else ("u", e[0])
                c, other = other, c
            for e in path:
                del at[(("u", e[0]), colour[e])]
                del at[(("v", e[1]), colour[e])]
            for e in path:
                colour[e] = b if colour[e] == a else a
                at[(("u", e[0]), colour[e])] = e
                at[(("v", e[1]), colour[e])] = e
        colour[(i, j)] = a
        at[(u, a)] = (i, j)
        at[(v, a)] = (i, j)
    groups: dict = {}
    for e, c in colour.items():
        groups.setdefault(c, []).append(e)
    return EdgePartition(_ordered(groups.values()), PartitionKind.MATCHING)


def partition_induced_matchings(inst: LabelCoverInstance) -> EdgePartition:
    """Greedy split into induced matchings (first-fit in lexicographic edge order).

    An edge conflicts with a class member when they share an endpoint or when
    a constraint edge joins an endpoint of one to an endpoint of the other.
    Each edge has fewer than ``2 * max_degree**2`` conflicts, which bounds the
    number of classes.
    """
    edge_set = set(inst.edges)
    classes: list[list] = []
    for e in sorted(edge_set):
        for cls in classes:
            if not any(_conflict(e, f, edge_set) for f in cls):
                cls.append(e)
                break
        else:
            classes.append([e])
    return EdgePartition(_ordered(classes), PartitionKind.INDUCED)


def _conflict(e, f, edge_set) -> bool:
    (i, j), (k, l) = e, f
    return i == k or j == l or (i, l) in edge_set or (k, j) in edge_set


def check_partition(inst: LabelCoverInstance, part: EdgePartition) -> list[str]:
    """Violations of the partition's contract; empty when valid."""
    problems = []
    seen = [e for cls in part.classes for e in cls]
    if sorted(seen) != sorted(inst.edges):
        problems.append("classes do not partition the edge set")
    edge_set = set(inst.edges)
    for m, cls in enumerate(part.classes, start=1):
        if not cls:
            problems.append(f"class {m} is empty")
        for x, e in enumerate(cls):
            for f in cls[x + 1:]:
                if e[0] == f[0] or e[1] == f[1]:
                    problems.append(f"class {m}: {e} and {f} share an endpoint")
                elif part.kind is PartitionKind.INDUCED and _conflict(e, f, edge_set):
                    problems.append(f"class {m}: {e} and {f} are joined by an edge")
    delta = inst.max_degree
    bound = delta if part.kind is PartitionKind.MATCHING else 2 * delta * delta
    if len(part.classes) > bound:
        problems.append(f"{len(part.classes)} classes exceed the bound {bound}")
    return problems
