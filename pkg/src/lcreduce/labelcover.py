"""Minimum label cover: instances, multilabelings and an exact solver."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from lcreduce.errors import Infeasible, InfeasibleParameters, SearchSpaceTooLarge, UnknownEdge

SEARCH_LIMIT = 24


@dataclass(frozen=True)
class Projection:
    """Total map on the alphabet; ``image[a - 1]`` is the image of label ``a``."""

    image: tuple

    def __call__(self, a: int) -> int:
        return self.image[a - 1]

    def pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a, b in enumerate(self.image, start=1)]

    def preimage(self, b: int) -> list[int]:
        return [a for a, x in enumerate(self.image, start=1) if x == b]


@dataclass(frozen=True)
class Relation:
    allowed: frozenset

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.allowed)


def identity(g: int) -> Projection:
    return Projection(tuple(range(1, g + 1)))


@dataclass(frozen=True, eq=True)
class LabelCoverInstance:
    """Bipartite constraint graph with alphabet ``[alphabet]``.

    ``constraints`` maps each edge ``(i, j)`` (left vertex ``u_i``, right
    vertex ``v_j``) to a :class:`Projection` or :class:`Relation`.
    """

    left: tuple
    right: tuple
    alphabet: int
    constraints: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(sorted(self.left)))
        object.__setattr__(self, "right", tuple(sorted(self.right)))
        object.__setattr__(self, "constraints", dict(sorted(self.constraints.items())))
        if self.alphabet < 1:
            raise ValueError("alphabet must be non-empty")
        sigma = range(1, self.alphabet + 1)
        for (i, j), c in self.constraints.items():
            if i not in self.left or j not in self.right:
                raise ValueError(f"edge ({i},{j}) has an unknown endpoint")
            if isinstance(c, Projection):
                if len(c.image) != self.alphabet or any(b not in sigma for b in c.image):
                    raise ValueError(f"projection on ({i},{j}) is not a total map on the alphabet")
            elif isinstance(c, Relation):
                if any(a not in sigma or b not in sigma for a, b in c.allowed):
                    raise ValueError(f"relation on ({i},{j}) leaves the alphabet")
            else:
                raise TypeError(f"unsupported constraint {c!r}")

    def __hash__(self):
        return hash((self.left, self.right, self.alphabet, tuple(self.constraints.items())))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return list(self.constraints)

    @property
    def is_projection(self) -> bool:
        return all(isinstance(c, Projection) for c in self.constraints.values())

    def degree(self, side: str, x: int) -> int:
        pos = 0 if side == "u" else 1
        return sum(1 for e in self.constraints if e[pos] == x)

    @property
    def max_degree(self) -> int:
        degs = [self.degree("u", i) for i in self.left] + [self.degree("v", j) for j in self.right]
        return max(degs, default=0)

    def satisfying_pairs(self, edge) -> list[tuple[int, int]]:
        try:
            return self.constraints[edge].pairs()
        except KeyError:
            raise UnknownEdge(edge) from None


class Multilabeling:
    """Label sets per constraint vertex; keys are ``("u", i)`` or ``("v", j)``.

    Empty label sets are dropped, so two labelings compare equal iff they
    assign the same non-empty sets.
    """

    __slots__ = ("_labels",)

    def __init__(self, labels: Mapping | None = None):
        norm = {}
        for key, labs in (labels or {}).items():
            if key[0] not in ("u", "v"):
                raise ValueError(f"bad vertex key {key!r}")
            labs = frozenset(labs)
            if labs:
                norm[(key[0], int(key[1]))] = labs
        self._labels = dict(sorted(norm.items()))

    @classmethod
    def of(cls, u: Mapping | None = None, v: Mapping | None = None) -> "Multilabeling":
        labels = {("u", i): s for i, s in (u or {}).items()}
        labels.update({("v", j): s for j, s in (v or {}).items()})
        return cls(labels)

    def __getitem__(self, key) -> frozenset:
        return self._labels.get(key, frozenset())

    def items(self):
        return self._labels.items()

    @property
    def cost(self) -> int:
        return sum(len(s) for s in self._labels.values())

    def union(self, other: "Multilabeling") -> "Multilabeling":
        keys = set(self._labels) | set(other._labels)
        return Multilabeling({k: self[k] | other[k] for k in keys})

    def slots(self) -> list[tuple[str, int, int]]:
        return [(side, x, a) for (side, x), labs in self._labels.items() for a in sorted(labs)]

    @classmethod
    def from_slots(cls, slots: Iterable) -> "Multilabeling":
        labels: dict = {}
        for side, x, a in slots:
            labels.setdefault((side, x), set()).add(a)
        return cls(labels)

    def __eq__(self, other):
        return isinstance(other, Multilabeling) and self._labels == other._labels

    def __hash__(self):
        return hash(tuple(self._labels.items()))

    def __repr__(self):
        body = ", ".join(f"{s}{x}:{sorted(labs)}" for (s, x), labs in self._labels.items())
        return f"Multilabeling({body})"


def covers(inst: LabelCoverInstance, sigma: Multilabeling, edge) -> bool:
    i, j = edge
    if edge not in inst.constraints:
        raise UnknownEdge(edge)
    su, sv = sigma[("u", i)], sigma[("v", j)]
    c = inst.constraints[edge]
    if isinstance(c, Projection):
        return any(c(a) in sv for a in su)
    return any((a, b) in c.allowed for a in su for b in sv)


def is_feasible(inst: LabelCoverInstance, sigma: Multilabeling) -> bool:
    return all(covers(inst, sigma, e) for e in inst.constraints)


def lc1() -> LabelCoverInstance:
    """One edge ``(u_1, v_1)`` with the identity projection over ``{1, 2}``."""
    return LabelCoverInstance((1,), (1,), 2, {(1, 1): identity(2)})


def lc2() -> LabelCoverInstance:
    """Edges ``(u_1, v_1)`` (identity) and ``(u_2, v_1)`` (swap) over ``{1, 2}``."""
    return LabelCoverInstance((1, 2), (1,), 2, {(1, 1): identity(2), (2, 1): Projection((2, 1))})


# ---------------------------------------------------------------------------
# exact search


def _useful_slots(inst: LabelCoverInstance) -> list[tuple[str, int, int]]:
    """Slots that occur in some satisfying pair; others never appear in an optimum."""
    useful = set()
    for (i, j), c in inst.constraints.items():
        for a, b in c.pairs():
            useful.add(("u", i, a))
            useful.add(("v", j, b))
    order = [("u", i, a) for i in inst.left for a in range(1, inst.alphabet + 1)]
    order += [("v", j, b) for j in inst.right for b in range(1, inst.alphabet + 1)]
    return [s for s in order if s in useful]


def _search(inst: LabelCoverInstance, cost: int, collect_all: bool) -> list[Multilabeling]:
    """All (or the first) feasible labelings of exactly ``cost`` labels.

    Slots are ordered left vertices first, then right, labels ascending; the
    include-first DFS visits candidates in lexicographic order of their slot
    index tuples (``itertools.combinations`` order).
    """
    slots = _useful_slots(inst)
    n = len(slots)
    keys = [(s[0], s[1]) for s in slots]
    last_slot = {}
    for p, key in enumerate(keys):
        last_slot[key] = p
    # an edge can be judged once both endpoints are final
    check_at: dict = {}
    for i, j in inst.constraints:
        p = max(last_slot[("u", i)], last_slot[("v", j)])
        check_at.setdefault(p, []).append((i, j))
    chosen: dict = {key: set() for key in last_slot}
    found: list = []

    def closes_ok(p):
        key = keys[p]
        if last_slot[key] == p and not chosen[key]:
            return False
        return all(_covered(inst, chosen, i, j) for i, j in check_at.get(p, ()))

    def dfs(p, remaining):
        if p == n:
            if remaining:
                return False
            found.append(Multilabeling({k: set(v) for k, v in chosen.items()}))
            return not collect_all
        if remaining > n - p:
            return False
        # each still-open vertex with no label needs at least one more pick
        if sum(1 for k, q in last_slot.items() if q >= p and not chosen[k]) > remaining:
            return False
        key, label = keys[p], slots[p][2]
        if remaining:
            chosen[key].add(label)
            done = closes_ok(p) and dfs(p + 1, remaining - 1)
            chosen[key].discard(label)
            if done:
                return True
        return closes_ok(p) and dfs(p + 1, remaining)

    dfs(0, cost)
    return found


def _covered(inst, chosen, i, j) -> bool:
    su = chosen.get(("u", i), ())
    sv = chosen.get(("v", j), ())
    c = inst.constraints[(i, j)]
    if isinstance(c, Projection):
        return any(c(a) in sv for a in su)
    return any((a, b) in c.allowed for a in su for b in sv)


def _guard(inst: LabelCoverInstance, override: bool):
    size = (len(inst.left) + len(inst.right)) * inst.alphabet
    if size > SEARCH_LIMIT and not override:
        raise SearchSpaceTooLarge(f"|U+V|*|Sigma| = {size} > {SEARCH_LIMIT}; pass override=True")
    for e, c in inst.constraints.items():
        if isinstance(c, Relation) and not c.allowed:
            raise Infeasible(f"edge {e} has an empty relation")


def brute_min_multilabeling(
    inst: LabelCoverInstance, budget: int | None = None, override: bool = False
) -> tuple[Multilabeling, int]:
    """Exact minimum-cost feasible multilabeling.

    Costs are tried in increasing order up to ``budget`` (default: all useful
    labels). Within one cost level the first labeling in lexicographic order
    of selected (vertex, label) slots wins.
    """
    _guard(inst, override)
    top = len(_useful_slots(inst)) if budget is None else budget
    for cost in range(0, top + 1):
        hit = _search(inst, cost, collect_all=False)
        if hit:
            return hit[0], cost
    raise Infeasible(f"no feasible multilabeling of cost <= {top}")


def all_min_multilabelings(inst: LabelCoverInstance, override: bool = False) -> list[Multilabeling]:
    """Every feasible multilabeling of minimum cost, in search order."""
    _guard(inst, override)
    for cost in range(0, len(_useful_slots(inst)) + 1):
        hits = _search(inst, cost, collect_all=True)
        if hits:
            return hits
    raise Infeasible("no feasible multilabeling")


def enumerate_labelings(inst: LabelCoverInstance) -> Iterator[Multilabeling]:
    """Every multilabeling over all vertices and labels (exponential)."""
    keys = [("u", i) for i in inst.left] + [("v", j) for j in inst.right]
    sigma = list(range(1, inst.alphabet + 1))

    def rec(k, acc):
        if k == len(keys):
            yield Multilabeling(acc)
            return
        for mask in range(1 << len(sigma)):
            acc[keys[k]] = {a for a in sigma if mask >> (a - 1) & 1}
            yield from rec(k + 1, acc)
        del acc[keys[k]]

    yield from rec(0, {})


# ---------------------------------------------------------------------------
# generators


def random_instance_with_planted(
    seed, n_left: int, n_right: int, degree: int, alphabet: int, planted: bool = True
) -> tuple[LabelCoverInstance, Multilabeling | None]:
    """Seeded random projection instance on a near-regular bipartite graph.

    Each left vertex receives ``degree`` distinct right neighbours of least
    current degree (ties broken by the RNG); right degrees never exceed
    ``degree``. In planted mode a hidden one-label-per-vertex labeling is drawn
    first and every projection is forced to agree with it.
    """
    if min(n_left, n_right, degree, alphabet) < 1:
        raise InfeasibleParameters("all parameters must be positive")
    if degree > n_right:
        raise InfeasibleParameters(f"degree {degree} exceeds the {n_right} right vertices")
    rng = random.Random(seed)
    rdeg = {j: 0 for j in range(1, n_right + 1)}
    edges = []
    for i in range(1, n_left + 1):
        free = [j for j in rdeg if rdeg[j] < degree]
        keyed = sorted(free, key=lambda j: (rdeg[j], rng.random()))
        for j in sorted(keyed[:degree]):
            edges.append((i, j))
            rdeg[j] += 1
    alpha = {i: rng.randint(1, alphabet) for i in range(1, n_left + 1)}
    beta = {j: rng.randint(1, alphabet) for j in range(1, n_right + 1)}
    constraints = {}
    for i, j in edges:
        image = [rng.randint(1, alphabet) for _ in range(alphabet)]
        if planted:
            image[alpha[i] - 1] = beta[j]
        constraints[(i, j)] = Projection(tuple(image))
    inst = LabelCoverInstance(tuple(range(1, n_left + 1)), tuple(range(1, n_right + 1)), alphabet, constraints)
    sigma = Multilabeling.of(u={i: {a} for i, a in alpha.items()}, v={j: {b} for j, b in beta.items()}) if planted else None
    return inst, sigma


def random_instance(seed, n_left: int, n_right: int, degree: int, alphabet: int, planted: bool = True) -> LabelCoverInstance:
    return random_instance_with_planted(seed, n_left, n_right, degree, alphabet, planted)[0]


def tiny_instance_params(seed: int) -> tuple[int, int, int, int]:
    """Deterministic ``(|U|, |V|, degree, |Sigma|)`` for seeded desk-scale sweeps.

    Sizes stay within |U|,|V| <= 4, degree <= 3, |Sigma| <= 3, and
    (|U|+|V|)*|Sigma| <= 24 so both exact oracles apply.
    """
    rng = random.Random(f"params-{seed}")
    n_left = rng.randint(1, 4)
    n_right = rng.randint(1, 4)
    degree = rng.randint(1, min(3, n_right))
    alphabet = rng.randint(2, 3)
    return n_left, n_right, degree, alphabet
