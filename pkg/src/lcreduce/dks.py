"""Densest k-subgraph to relation label cover, with exact and sampling oracles."""

from __future__ import annotations

import itertools
import math
import random
import statistics
from dataclasses import dataclass
from fractions import Fraction

from lcreduce.errors import SearchSpaceTooLarge
from lcreduce.labelcover import LabelCoverInstance, Multilabeling, Relation

DKS_SEARCH_LIMIT = 10**6


@dataclass(frozen=True)
class DksInstance:
    """Simple undirected graph on vertices ``1..n`` and a target subgraph size ``k``."""

    n: int
    edges: frozenset  # of (a, b) with a < b
    k: int

    def __post_init__(self):
        norm = set()
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop at {a}")
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise ValueError(f"edge ({a},{b}) leaves the vertex range")
            norm.add((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", frozenset(norm))
        if not 1 <= self.k <= self.n:
            raise ValueError("need 1 <= k <= n")

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def has_edge(self, a, b) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def spanned(self, subset) -> int:
        s = sorted(set(subset))
        return sum(1 for a, b in itertools.combinations(s, 2) if (a, b) in self.edges)


def planted_clique_graph(n: int, k: int, p: float, seed) -> tuple[DksInstance, tuple]:
    """G(n, p) plus a clique on ``k`` random vertices; returns the graph and the clique."""
    rng = random.Random(f"planted-{seed}")
    clique = tuple(sorted(rng.sample(range(1, n + 1), k)))
    edges = {(a, b) for a, b in itertools.combinations(range(1, n + 1), 2) if rng.random() < p}
    edges |= set(itertools.combinations(clique, 2))
    return DksInstance(n, frozenset(edges), k), clique


def balanced_partition(vertices, k: int, seed, separate=None) -> tuple:
    """Random split into ``k`` parts whose sizes differ by at most one.

    With ``separate`` (``k`` vertices) each part receives exactly one of them.
    """
    rng = random.Random(f"partition-{seed}")
    vertices = sorted(vertices)
    parts: list[list[int]] = [[] for _ in range(k)]
    rest = vertices
    if separate is not None:
        separate = sorted(separate)
        if len(set(separate)) != k or not set(separate) <= set(vertices):
            raise ValueError("separate must list k distinct vertices of the graph")
        order = separate[:]
        rng.shuffle(order)
        for part, v in zip(parts, order):
            part.append(v)
        rest = [v for v in vertices if v not in set(separate)]
    rest = rest[:]
    rng.shuffle(rest)
    for v in rest:
        min(parts, key=len).append(v)
    return tuple(tuple(sorted(p)) for p in parts)


def dks_to_labelcover(inst: DksInstance, seed=0, force_separating=None):
    """Relation label cover on the complete ``(k, k)`` bipartite graph.

    Labels are graph vertices; left and right vertex ``i`` may use the labels
    of part ``i``. Off-diagonal constraints allow the graph's cross-part edges
    and diagonal constraints demand equal labels. Returns ``(instance, parts)``.
    """
    parts = balanced_partition(inst.vertices, inst.k, seed, force_separating)
    constraints = {}
    for i, pi in enumerate(parts, start=1):
        for j, pj in enumerate(parts, start=1):
            if i == j:
                allowed = {(a, a) for a in pi}
            else:
                allowed = {(a, b) for a in pi for b in pj if inst.has_edge(a, b)}
            constraints[(i, j)] = Relation(frozenset(allowed))
    ks = tuple(range(1, inst.k + 1))
    return LabelCoverInstance(ks, ks, inst.n, constraints), parts


def clique_labeling(parts, clique) -> Multilabeling:
    """One clique vertex per part on both sides (cost ``2k`` when the partition separates)."""
    labels = {}
    for i, part in enumerate(parts, start=1):
        hit = sorted(set(part) & set(clique))
        labels[("u", i)] = hit
        labels[("v", i)] = hit
    return Multilabeling(labels)


def brute_densest_k_subgraph(inst: DksInstance, override: bool = False) -> tuple[tuple, int]:
    """Exact densest k-subset; the lexicographically first maximizer wins ties."""
    if math.comb(inst.n, inst.k) > DKS_SEARCH_LIMIT and not override:
        raise SearchSpaceTooLarge(f"C({inst.n},{inst.k}) exceeds {DKS_SEARCH_LIMIT}")
    best, best_count = None, -1
    for subset in itertools.combinations(inst.vertices, inst.k):
        count = inst.spanned(subset)
        if count > best_count:
            best, best_count = subset, count
    return best, best_count


# ---------------------------------------------------------------------------
# soundness sampling


@dataclass(frozen=True)
class SamplerResult:
    mean: float
    stderr: float
    expected: Fraction
    trials: int

    @property
    def z(self) -> float:
        """Standardized deviation of the estimate from the analytic value."""
        if self.stderr == 0:
            return 0.0 if self.mean == self.expected else math.inf
        return (self.mean - float(self.expected)) / self.stderr


def expected_spanned(inst: DksInstance, subset, k: int) -> Fraction:
    """``k(k-1) / (|S|(|S|-1)) * |E(S)|`` for a uniform random k-subset of ``S``."""
    s = len(set(subset))
    if s < 2:
        return Fraction(0)
    return Fraction(k * (k - 1), s * (s - 1)) * inst.spanned(subset)


def soundness_sampler(inst: DksInstance, subset, k: int, trials: int, seed) -> SamplerResult:
    """Monte Carlo mean of the edges spanned by uniform random ``k``-subsets of ``subset``."""
    pool = sorted(set(subset))
    if len(pool) < k:
        raise ValueError("subset smaller than k")
    rng = random.Random(f"sampler-{seed}")
    counts = [inst.spanned(rng.sample(pool, k)) for _ in range(trials)]
    mean = statistics.fmean(counts)
    stderr = statistics.stdev(counts) / math.sqrt(trials) if trials > 1 else 0.0
    return SamplerResult(mean, stderr, expected_spanned(inst, pool, k), trials)


def exhaustive_average(inst: DksInstance, subset, k: int) -> Fraction:
    """Exact mean of spanned edges over all ``k``-subsets of ``subset``."""
    pool = sorted(set(subset))
    total = count = 0
    for t in itertools.combinations(pool, k):
        total += inst.spanned(t)
        count += 1
    return Fraction(total, count)
