"""Exact network-design oracle and end-to-end optimum-transport experiments."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from lcreduce.dst import (
    DST_CONNECTIVITY,
    DST_TERMINALS,
    KGST,
    KST,
    NetworkInstance,
    build_dst_connectivity,
    build_dst_terminals,
    flow_network,
    height,
    labeling_to_subgraph,
    subgraph_to_labeling,
    targets,
    verify,
)
from lcreduce.errors import Infeasible, SearchSpaceTooLarge
from lcreduce.labelcover import LabelCoverInstance, brute_min_multilabeling, is_feasible
from lcreduce.undirected import build_kgst, build_kst

NETWORK_SEARCH_LIMIT = 24


class _Oracle:
    """Feasibility of "all zero-cost edges plus a chosen set of unit edges".

    A failed check returns the violated min-cut as a linear condition
    ``sum(coef[e] for chosen e) >= need``, which every feasible choice must
    satisfy (adding edges only raises cut capacities).
    """

    def __init__(self, net: NetworkInstance):
        self.net = net
        self.fn = flow_network(net)
        self.targets = targets(net, self.fn)
        self.source = self.fn.source_node(net.root)
        self.keys = net.one_cost_keys
        for key in self.keys:
            if key[2] != 1 or net.graph.multiplicity(*key) != 1:
                raise ValueError("the exact search expects unit-cost, unit-multiplicity records")
        self.idx = np.array([self.fn.edge_index[k] for k in self.keys], dtype=np.int64)
        self.zero_mask = np.ones(len(self.fn.edges), dtype=bool)
        self.zero_mask[self.idx] = False
        self.checks = 0

    def multiplicities(self, chosen) -> np.ndarray:
        mult = self.fn.base_mult.copy()
        mult[self.idx] = 0
        for c in chosen:
            mult[self.idx[c]] = self.fn.base_mult[self.idx[c]]
        return mult

    def check(self, chosen):
        """``None`` if feasible, else ``(coef, need)`` over one-cost positions."""
        self.checks += 1
        mult = self.multiplicities(chosen)
        for sink, req in self.targets:
            value = self.fn.run(self.source, sink, limit=req, mult=mult)
            if value < req:
                side = self.fn.source_side(self.source)
                weights, fixed = self.fn.cut_weights(side)
                zero_part = int((weights * mult)[self.zero_mask].sum())
                coef = (weights * self.fn.base_mult)[self.idx]
                return coef, req - fixed - zero_part
        return None

    def strongest_cut(self, chosen, res):
        """Grow an infeasible set greedily while it stays infeasible; cut at the end.

        The cut of a maximal infeasible superset is still violated by ``chosen``
        and leaves few edges that can repair it.
        """
        grown = list(chosen)
        for c in range(len(self.keys)):
            if c in grown:
                continue
            trial = self.check(grown + [c])
            if trial is not None:
                grown.append(c)
                res = trial
        return res


def brute_min_network(net: NetworkInstance, override: bool = False):
    """Cheapest feasible subgraph that keeps every zero-cost edge.

    Candidate sets of one-cost edges are visited by size, and within a size
    in lexicographic order of their sorted edge keys; the first feasible one
    is returned as ``(subgraph, cost)``. Min cuts learned from failed checks
    prune candidates without changing which set is found first.
    """
    oracle = _Oracle(net)
    n = len(oracle.keys)
    if n > NETWORK_SEARCH_LIMIT and not override:
        raise SearchSpaceTooLarge(f"{n} one-cost edges exceed the limit of {NETWORK_SEARCH_LIMIT}")
    full = list(range(n))
    if oracle.check(full) is not None:
        raise Infeasible("the full network does not meet the requirement")
    cuts = _Cuts(n)
    for size in range(n + 1):
        found = _search_size(oracle, n, size, cuts)
        if found is not None:
            keep = {k: 0 for k in oracle.keys}
            for c in found:
                keep[oracle.keys[c]] = 1
            sub = net.graph.with_multiplicities(keep)
            return sub, size
    raise AssertionError("unreachable: the full edge set is feasible")


class _Cuts:
    """Learned covering conditions ``coef @ x >= need`` with suffix bounds.

    ``suffix_sum[c, p]`` and ``suffix_max[c, p]`` summarize ``coef[c, p:]`` so
    that the best completion of a partial choice is bounded in one vector op.
    Rows live in over-allocated buffers; only the first ``size`` are valid.
    """

    def __init__(self, n: int):
        self.n = n
        self.size = 0
        self.seen: set = set()
        self._alloc(64)

    def _alloc(self, rows: int):
        old = getattr(self, "coef", None)
        coef = np.zeros((rows, self.n), dtype=np.int64)
        need = np.zeros(rows, dtype=np.int64)
        ssum = np.zeros((rows, self.n + 1), dtype=np.int64)
        smax = np.zeros((rows, self.n + 1), dtype=np.int64)
        if old is not None:
            coef[: self.size] = self.coef[: self.size]
            need[: self.size] = self.need[: self.size]
            ssum[: self.size] = self.suffix_sum[: self.size]
            smax[: self.size] = self.suffix_max[: self.size]
        self.coef, self.need, self.suffix_sum, self.suffix_max = coef, need, ssum, smax

    def add(self, coef: np.ndarray, need: int):
        coef = np.asarray(coef, dtype=np.int64)
        tag = (coef.tobytes(), int(need))
        if tag in self.seen:
            return
        self.seen.add(tag)
        if self.size == len(self.need):
            self._alloc(2 * self.size)
        rev = coef[::-1]
        c = self.size
        self.coef[c] = coef
        self.need[c] = need
        self.suffix_sum[c, : self.n] = np.cumsum(rev)[::-1]
        self.suffix_max[c, : self.n] = np.maximum.accumulate(rev)[::-1]
        self.size += 1

    def completable(self, chosen: list[int], pos: int, left: int) -> bool:
        """False only if no choice of ``left`` more positions from ``pos`` on satisfies every cut."""
        if not self.size:
            return True
        m = self.size
        have = self.coef[:m, chosen].sum(axis=1) if chosen else 0
        if left == 0:
            return bool(np.all(have >= self.need[:m]))
        best = np.minimum(left * self.suffix_max[:m, pos], self.suffix_sum[:m, pos])
        return bool(np.all(have + best >= self.need[:m]))


def _search_size(oracle: _Oracle, n: int, size: int, cuts: _Cuts):
    chosen: list[int] = []

    def dfs(pos):
        left = size - len(chosen)
        if n - pos < left or not cuts.completable(chosen, pos, left):
            return None
        if left == 0:
            res = oracle.check(chosen)
            if res is None:
                return list(chosen)
            cuts.add(*oracle.strongest_cut(chosen, res))
            return None
        chosen.append(pos)
        got = dfs(pos + 1)
        chosen.pop()
        if got is not None:
            return got
        return dfs(pos + 1)

    return dfs(0)


def minimal_feasible_subgraph(net: NetworkInstance, sub):
    """Greedily drop one-cost edges (lexicographic order) while the requirement stays met."""
    oracle = _Oracle(net)
    present = [c for c, key in enumerate(oracle.keys) if sub.multiplicity(*key)]
    if oracle.check(present) is not None:
        raise Infeasible("the starting subgraph is not feasible")
    for c in list(present):
        trial = [x for x in present if x != c]
        if oracle.check(trial) is None:
            present = trial
    keep = {k: 0 for k in oracle.keys}
    for c in present:
        keep[oracle.keys[c]] = 1
    return net.graph.with_multiplicities(keep)


# ---------------------------------------------------------------------------
# experiments

BUILDERS = {
    DST_TERMINALS: lambda inst, d, pad, boost: build_dst_terminals(inst),
    DST_CONNECTIVITY: lambda inst, d, pad, boost: build_dst_connectivity(inst, d, pad, boost),
    KST: lambda inst, d, pad, boost: build_kst(inst),
    KGST: lambda inst, d, pad, boost: build_kgst(inst),
}


def build(inst: LabelCoverInstance, reduction: str, d: int = 2, pad_layers: bool = False, boost: int = 0):
    try:
        builder = BUILDERS[reduction]
    except KeyError:
        raise ValueError(f"unknown reduction {reduction!r}") from None
    return builder(inst, d, pad_layers, boost)


@dataclass
class ExperimentReport:
    instance: str
    reduction: str
    stats: dict
    opt_labelcover: int | None = None
    opt_network: int | None = None
    checks: dict = field(default_factory=dict)
    wall_clock: float | None = None

    @property
    def ok(self) -> bool:
        return self.opt_labelcover == self.opt_network and all(self.checks.values())

    def failed_legs(self) -> list[str]:
        legs = [name for name, good in self.checks.items() if not good]
        if self.opt_labelcover != self.opt_network:
            legs.insert(0, "opt_equal")
        return legs

    def text(self, include_time: bool = False) -> str:
        lines = [f"instance={self.instance}", f"reduction={self.reduction}"]
        lines += [f"{key}={_fmt(val)}" for key, val in self.stats.items()]
        lines.append(f"opt_labelcover={_fmt(self.opt_labelcover)}")
        lines.append(f"opt_network={_fmt(self.opt_network)}")
        lines += [f"check.{key}={_fmt(val)}" for key, val in self.checks.items()]
        lines.append(f"ok={_fmt(self.ok)}")
        if include_time and self.wall_clock is not None:
            lines.append(f"wall_clock={self.wall_clock:.3f}")
        return "\n".join(lines) + "\n"


def _fmt(val) -> str:
    if val is None:
        return "-"
    if isinstance(val, bool):
        return "true" if val else "false"
    return str(val)


def network_stats(net: NetworkInstance) -> dict:
    inst = net.certificate.instance
    g = net.graph
    stats = {
        "V": len(g.vertices),
        "E": g.num_edges(),
        "k": net.k,
        "Delta": inst.max_degree,
    }
    if net.groups is not None:
        stats["q"] = len(net.groups.groups)
    else:
        stats["T"] = len(net.terminals)
    stats["L"] = height(net) if g.directed else None
    if net.kind == DST_CONNECTIVITY:
        p = net.certificate.params
        stats.update({"delta": p["delta"], "d": p["d"], "h": p["h"]})
    else:
        stats["classes"] = len(net.certificate.partition)
    return stats


def roundtrip_experiment(
    inst: LabelCoverInstance,
    reduction: str,
    d: int = 2,
    pad_layers: bool = False,
    boost: int = 0,
    name: str = "instance",
    check: bool = True,
) -> ExperimentReport:
    """Compare optima across a reduction and run both solution maps on them.

    With ``check`` a failed leg raises ``AssertionError`` naming it; otherwise
    the outcome is only recorded in the report.
    """
    start = time.perf_counter()
    net = build(inst, reduction, d, pad_layers, boost)
    report = ExperimentReport(name, reduction, network_stats(net))
    sigma, lc_cost = brute_min_multilabeling(inst)
    sub, net_cost = brute_min_network(net)
    report.opt_labelcover, report.opt_network = lc_cost, net_cost
    fwd = labeling_to_subgraph(net, sigma)
    report.checks["forward_feasible"] = verify(net, fwd).feasible
    report.checks["forward_cost"] = fwd.cost == lc_cost
    back = subgraph_to_labeling(net, sub)
    report.checks["backward_feasible"] = is_feasible(inst, back)
    report.checks["backward_cost"] = back.cost == net_cost
    report.checks["network_opt_verified"] = verify(net, sub).feasible
    report.wall_clock = time.perf_counter() - start
    if check and not report.ok:
        raise AssertionError(f"{name}/{reduction}: failed legs {', '.join(report.failed_legs())}")
    return report


__all__ = [
    "BUILDERS",
    "ExperimentReport",
    "NETWORK_SEARCH_LIMIT",
    "brute_min_network",
    "build",
    "minimal_feasible_subgraph",
    "network_stats",
    "roundtrip_experiment",
]
