"""Command-line interface: ``lcreduce <verb> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from lcreduce import formats
from lcreduce.dks import brute_densest_k_subgraph, dks_to_labelcover
from lcreduce.dst import (
    DST_CONNECTIVITY,
    DST_TERMINALS,
    KINDS,
    KST,
    build_dst_connectivity,
    build_dst_terminals,
    labeling_to_subgraph,
    subgraph_to_labeling,
    verify,
)
from lcreduce.errors import Infeasible, InfeasibleLabeling, ReductionError
from lcreduce.graphs import to_dot, vid_str
from lcreduce.harness import brute_min_network, roundtrip_experiment
from lcreduce.labelcover import brute_min_multilabeling, is_feasible, lc1, lc2, random_instance
from lcreduce.partition import partition_induced_matchings, partition_matchings
from lcreduce.undirected import build_kgst, build_kst

FIXTURES = {"lc1": lc1, "lc2": lc2}


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load_lc(path: str):
    if path in FIXTURES:
        return FIXTURES[path]()
    return formats.load_labelcover(_read(path))


def _build(inst, args):
    if args.to == DST_TERMINALS:
        return build_dst_terminals(inst)
    if args.to == DST_CONNECTIVITY:
        return build_dst_connectivity(inst, args.d, args.pad_layers, args.boost_k)
    if args.to == KST:
        return build_kst(inst)
    return build_kgst(inst, uniform=args.uniform)


# ---------------------------------------------------------------------------
# verbs


def cmd_gen_lc(args) -> int:
    if args.fixture:
        inst = FIXTURES[args.fixture]()
    else:
        inst = random_instance(args.seed, args.left, args.right, args.degree, args.alphabet, not args.no_planted)
    _write(formats.dump_labelcover(inst), args.output)
    return 0


def cmd_partition(args) -> int:
    inst = _load_lc(args.instance)
    part = partition_matchings(inst) if args.kind == "matching" else partition_induced_matchings(inst)
    lines = [f"partition {part.kind.value} classes={len(part)}"]
    for m, cls in enumerate(part.classes, start=1):
        lines.append(f"class {m} " + " ".join(f"{i},{j}" for i, j in cls))
    _write("\n".join(lines) + "\n", args.output)
    return 0


def cmd_reduce(args) -> int:
    net = _build(_load_lc(args.instance), args)
    _write(formats.dump_network(net), args.output)
    return 0


def cmd_map(args) -> int:
    net = formats.load_network(_read(args.network))
    if net.certificate is None:
        raise UsageError("the network file carries no certificate")
    if args.dir == "fwd":
        sigma = formats.load_labeling(_read(args.solution))
        _write(formats.dump_subgraph(net, labeling_to_subgraph(net, sigma)), args.output)
        return 0
    sigma = subgraph_to_labeling(net, formats.load_subgraph(_read(args.solution)))
    _write(formats.dump_labeling(sigma), args.output)
    return 0 if is_feasible(net.certificate.instance, sigma) else 1


def cmd_verify(args) -> int:
    net = formats.load_network(_read(args.network))
    sub = formats.load_subgraph(_read(args.subgraph)) if args.subgraph else None
    res = verify(net, sub)
    lines = []
    for x, flow in res.flows.items():
        name = vid_str(x) if isinstance(x, tuple) else f"group({x})"
        lines.append(f"{name} flow={flow} required={res.required[x]}")
    lines.append(f"feasible={'true' if res.feasible else 'false'}")
    _write("\n".join(lines) + "\n", args.output)
    return 0 if res.feasible else 1


def cmd_solve(args) -> int:
    if not args.brute:
        raise UsageError("only the exact solver is available; pass --brute")
    text = _read(args.instance) if args.instance not in FIXTURES else None
    if text is not None and text.lstrip().startswith("network"):
        net = formats.load_network(text)
        sub, cost = brute_min_network(net, override=args.override)
        _write(f"# cost={cost}\n" + formats.dump_subgraph(net, sub), args.output)
        return 0
    inst = FIXTURES[args.instance]() if text is None else formats.load_labelcover(text)
    sigma, cost = brute_min_multilabeling(inst, override=args.override)
    _write(f"# cost={cost}\n" + formats.dump_labeling(sigma), args.output)
    return 0


def cmd_roundtrip(args) -> int:
    inst = _load_lc(args.instance)
    reductions = KINDS if args.to == "all" else (args.to,)
    out, ok = [], True
    for red in reductions:
        report = roundtrip_experiment(
            inst, red, args.d, args.pad_layers, args.boost_k, name=args.instance, check=False
        )
        out.append(report.text(include_time=args.time))
        ok &= report.ok
    _write("\n".join(out), args.output)
    return 0 if ok else 1


def cmd_dks_reduce(args) -> int:
    inst = formats.load_dks(_read(args.graph))
    separate = None
    if args.force_separating:
        clique, spanned = brute_densest_k_subgraph(inst)
        if spanned != inst.k * (inst.k - 1) // 2:
            print(f"error: graph has no {inst.k}-clique to separate", file=sys.stderr)
            return 1
        separate = clique
    lc, parts = dks_to_labelcover(inst, args.seed, separate)
    header = "".join(f"# part {i} {','.join(map(str, p))}\n" for i, p in enumerate(parts, start=1))
    _write(header + formats.dump_labelcover(lc), args.output)
    return 0


def cmd_export_dot(args) -> int:
    net = formats.load_network(_read(args.network))
    g = net.graph
    highlight = list(net.terminals)
    if net.groups is not None:
        highlight += [v for grp in net.groups.groups for v in grp]
    if args.subgraph:
        g = formats.load_subgraph(_read(args.subgraph))
    _write(to_dot(g, name=args.name, highlight=highlight), args.output)
    return 0


# ---------------------------------------------------------------------------
# parser


def _reduction_flags(p: argparse.ArgumentParser):
    p.add_argument("--d", type=int, default=2, help="tree arity for dst-k (default 2)")
    p.add_argument("--pad-layers", action="store_true", help="pad dst-k to its exact layered height")
    p.add_argument("--boost-k", type=int, default=0, metavar="N", help="extra root-terminal arcs for dst-k")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lcreduce", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("-o", "--output", help="output file (default stdout)")
        return p

    p = verb("gen-lc", cmd_gen_lc, "generate a label cover instance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--left", type=int, default=3)
    p.add_argument("--right", type=int, default=3)
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--no-planted", action="store_true")
    p.add_argument("--fixture", choices=sorted(FIXTURES))

    p = verb("partition", cmd_partition, "partition constraint edges into (induced) matchings")
    p.add_argument("instance", help="label cover file, '-' or a fixture name")
    p.add_argument("--kind", choices=("matching", "induced"), default="matching")

    p = verb("reduce", cmd_reduce, "reduce label cover to a network design instance")
    p.add_argument("instance")
    p.add_argument("--to", choices=KINDS, required=True)
    p.add_argument("--uniform", action="store_true", help="uniform group requirement for kgst")
    _reduction_flags(p)

    p = verb("map", cmd_map, "map solutions across a reduction")
    p.add_argument("network")
    p.add_argument("solution", help="multilabeling (fwd) or subgraph (bwd)")
    p.add_argument("--dir", choices=("fwd", "bwd"), required=True)

    p = verb("verify", cmd_verify, "check the connectivity requirement")
    p.add_argument("network")
    p.add_argument("subgraph", nargs="?")

    p = verb("solve", cmd_solve, "exact solver for label cover or network files")
    p.add_argument("instance")
    p.add_argument("--brute", action="store_true")
    p.add_argument("--override", action="store_true", help="skip the search-space guard")

    p = verb("roundtrip", cmd_roundtrip, "compare optima across reductions")
    p.add_argument("instance")
    p.add_argument("--to", choices=(*KINDS, "all"), default="all")
    p.add_argument("--time", action="store_true", help="include wall-clock time")
    _reduction_flags(p)

    p = verb("dks-reduce", cmd_dks_reduce, "densest k-subgraph to relation label cover")
    p.add_argument("graph")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force-separating", action="store_true", help="place one clique vertex in each part")

    p = verb("export-dot", cmd_export_dot, "render a network as Graphviz")
    p.add_argument("network")
    p.add_argument("subgraph", nargs="?")
    p.add_argument("--name", default="G")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (Infeasible, InfeasibleLabeling) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ReductionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
