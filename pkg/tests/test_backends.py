import random

import pytest

from lcreduce import _kernel
from lcreduce.graphs import Multigraph, max_edge_disjoint_paths, max_group_connectivity, max_vertex_disjoint_paths
from lcreduce.harness import brute_min_network, build
from lcreduce.labelcover import lc2, random_instance, tiny_instance_params

needs_compiled = pytest.mark.skipif("cython" not in _kernel.available_backends(), reason="extension not built")


@pytest.fixture
def backend():
    previous = _kernel.get_backend()

    def use(name):
        _kernel.set_backend(name)

    yield use
    _kernel.set_backend(previous)


def random_graph(seed):
    rng = random.Random(seed)
    g = Multigraph(directed=rng.random() < 0.5)
    names = [("r",), ("t",)] + [("x", i) for i in range(rng.randint(1, 7))]
    for v in names:
        g.add_vertex(v)
    for _ in range(rng.randint(0, 16)):
        a, b = rng.sample(names, 2)
        g.add_edge(a, b, rng.randint(0, 1), rng.randint(1, 3))
    return g


def test_unknown_backend():
    with pytest.raises(ValueError):
        _kernel.set_backend("fortran")


def test_python_always_available():
    assert "python" in _kernel.available_backends()


@needs_compiled
def test_flows_identical(backend):
    for seed in range(60):
        g = random_graph(seed)
        results = {}
        for name in ("cython", "python"):
            backend(name)
            results[name] = (
                max_edge_disjoint_paths(g, ("r",), ("t",)),
                max_vertex_disjoint_paths(g, ("r",), ("t",)),
                max_group_connectivity(g, ("r",), [v for v in g.vertices if v[0] == "x"] or [("t",)], 2),
            )
        assert results["cython"] == results["python"], seed


@needs_compiled
def test_exact_search_identical(backend):
    nets = [build(lc2(), r) for r in ("dst-t", "dst-k", "kst", "kgst")]
    nets.append(build(random_instance(5, *tiny_instance_params(5)), "dst-t"))
    for net in nets:
        backend("cython")
        fast = brute_min_network(net)
        backend("python")
        assert brute_min_network(net) == fast
