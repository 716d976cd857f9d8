"""Compare the compiled and pure-Python flow kernels.

    python3 benchmarks/bench_flow.py [--repeat N]

Each workload runs under both backends; results must agree before timings
are reported.
"""

from __future__ import annotations

import argparse
import statistics
import time

from lcreduce import _kernel
from lcreduce.dst import build_dst_connectivity, build_dst_terminals, verify
from lcreduce.harness import brute_min_network
from lcreduce.labelcover import lc2, random_instance
from lcreduce.undirected import build_kgst, build_kst


def _workloads():
    big = random_instance(7, 6, 6, 3, 4, True)
    yield "verify dst-t (6x6, g=4)", lambda: verify(build_dst_terminals(big)).flows
    yield "verify dst-k (6x6, g=4)", lambda: verify(build_dst_connectivity(big, d=2)).flows
    yield "verify kst (6x6, g=4)", lambda: verify(build_kst(big)).flows
    yield "verify kgst (6x6, g=4)", lambda: verify(build_kgst(big)).flows
    yield "exact search kst (LC2)", lambda: brute_min_network(build_kst(lc2()))[1]


def _time(fn, repeat):
    samples, result = [], None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        samples.append(time.perf_counter() - start)
    return result, statistics.median(samples)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    backends = _kernel.available_backends()
    if "cython" not in backends:
        print("compiled kernel not built; only the python backend is available")
    previous = _kernel.get_backend()
    print(f"{'workload':32} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    try:
        for name, fn in _workloads():
            results, times = {}, {}
            for b in backends:
                _kernel.set_backend(b)
                results[b], times[b] = _time(fn, args.repeat)
            if len({repr(r) for r in results.values()}) != 1:
                raise SystemExit(f"{name}: backends disagree")
            cells = " ".join(f"{times[b] * 1e3:9.1f}ms" for b in backends)
            speedup = f"{times['python'] / times['cython']:8.1f}x" if "cython" in times else ""
            print(f"{name:32} {cells} {speedup}")
    finally:
        _kernel.set_backend(previous)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
