"""Line-oriented text formats for label cover, networks, labelings and DkS graphs.

Blank lines and lines starting with ``#`` are ignored by every reader.
"""

from __future__ import annotations

from fractions import Fraction

from lcreduce.dks import DksInstance
from lcreduce.dst import GroupSpec, NetworkInstance, ReductionCertificate
from lcreduce.errors import FormatError
from lcreduce.graphs import Multigraph, Role, parse_vid, vid_str
from lcreduce.labelcover import LabelCoverInstance, Multilabeling, Projection, Relation
from lcreduce.partition import EdgePartition, PartitionKind


def _lines(text: str):
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            yield line


def _kv(token: str, key: str) -> str:
    name, sep, value = token.partition("=")
    if not sep or name != key:
        raise FormatError(f"expected {key}=..., got {token!r}")
    return value


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise FormatError(f"not an integer: {text!r}") from None


# ---------------------------------------------------------------------------
# label cover


def dump_labelcover(inst: LabelCoverInstance) -> str:
    out = [f"labelcover g={inst.alphabet}"]
    out += [f"U {i}" for i in inst.left]
    out += [f"V {j}" for j in inst.right]
    for (i, j), c in inst.constraints.items():
        if isinstance(c, Projection):
            body = ",".join(f"{a}->{b}" for a, b in c.pairs())
            out.append(f"E {i} {j} proj {body}")
        else:
            body = ",".join(f"({a},{b})" for a, b in c.pairs())
            out.append(f"E {i} {j} rel {body}".rstrip())
    return "\n".join(out) + "\n"


def load_labelcover(text: str) -> LabelCoverInstance:
    lines = list(_lines(text))
    if not lines or not lines[0].startswith("labelcover "):
        raise FormatError("missing 'labelcover g=<n>' header")
    g = _int(_kv(lines[0].split()[1], "g"))
    left, right, constraints = [], [], {}
    for line in lines[1:]:
        parts = line.split()
        tag = parts[0]
        if tag == "U" and len(parts) == 2:
            left.append(_int(parts[1]))
        elif tag == "V" and len(parts) == 2:
            right.append(_int(parts[1]))
        elif tag == "E" and len(parts) in (4, 5):
            i, j, form = _int(parts[1]), _int(parts[2]), parts[3]
            body = parts[4] if len(parts) == 5 else ""
            constraints[(i, j)] = _constraint(form, body, g)
        else:
            raise FormatError(f"bad label cover line {line!r}")
    try:
        return LabelCoverInstance(tuple(left), tuple(right), g, constraints)
    except (ValueError, TypeError) as exc:
        raise FormatError(str(exc)) from None


def _constraint(form: str, body: str, g: int):
    if form == "proj":
        image = dict.fromkeys(range(1, g + 1))
        for item in filter(None, body.split(",")):
            a, sep, b = item.partition("->")
            if not sep:
                raise FormatError(f"bad projection entry {item!r}")
            image[_int(a)] = _int(b)
        if any(v is None for v in image.values()) or len(image) != g:
            raise FormatError("projection must list every label exactly once")
        return Projection(tuple(image[a] for a in range(1, g + 1)))
    if form == "rel":
        pairs = set()
        for item in filter(None, body.replace("),(", ");(").split(";")):
            inner = item.strip("()")
            a, sep, b = inner.partition(",")
            if not sep:
                raise FormatError(f"bad relation entry {item!r}")
            pairs.add((_int(a), _int(b)))
        return Relation(frozenset(pairs))
    raise FormatError(f"unknown constraint form {form!r}")


# ---------------------------------------------------------------------------
# multilabelings


def dump_labeling(sigma: Multilabeling) -> str:
    out = ["multilabeling"]
    for (side, idx), labels in sigma.items():
        out.append(f"{side} {idx} {','.join(str(a) for a in sorted(labels))}")
    return "\n".join(out) + "\n"


def load_labeling(text: str) -> Multilabeling:
    lines = list(_lines(text))
    if not lines or lines[0] != "multilabeling":
        raise FormatError("missing 'multilabeling' header")
    labels = {}
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 3 or parts[0] not in ("u", "v"):
            raise FormatError(f"bad labeling line {line!r}")
        labels[(parts[0], _int(parts[1]))] = {_int(a) for a in parts[2].split(",")}
    return Multilabeling(labels)


# ---------------------------------------------------------------------------
# networks


def dump_network(net: NetworkInstance) -> str:
    g = net.graph
    kind = "directed" if g.directed else "undirected"
    out = [f"network {kind} k={net.k}"]
    out += [f"V {vid_str(v)} {g.role(v).value}" for v in g.vertices]
    out += [f"A {vid_str(e.tail)} {vid_str(e.head)} cost={e.cost} mult={e.mult}" for e in g.edges]
    out += [f"T {vid_str(t)}" for t in net.terminals]
    if net.groups is not None:
        for m, (grp, km) in enumerate(zip(net.groups.groups, net.groups.requirements), start=1):
            out.append(f"G {m} k={km} " + " ".join(vid_str(v) for v in grp))
    out.append(f"cert kind {net.kind}")
    if net.groups is not None and net.groups.uniform is not None:
        out.append(f"cert uniform {net.groups.uniform}")
    cert = net.certificate
    if cert is not None:
        out += [f"cert lc {line}" for line in dump_labelcover(cert.instance).splitlines()]
        out.append(f"cert partition {cert.partition.kind.value}")
        for cls in cert.partition.classes:
            out.append("cert class " + " ".join(f"{i},{j}" for i, j in cls))
        for (side, idx, label), (u, v, _c) in sorted(cert.slot_edges.items()):
            out.append(f"cert slot {side} {idx} {label} {vid_str(u)} {vid_str(v)}")
        for t, m in sorted(cert.terminal_class.items()):
            out.append(f"cert terminal {vid_str(t)} {m}")
        for key, val in cert.params.items():
            text = {True: "true", False: "false"}.get(val, val) if isinstance(val, bool) else val
            out.append(f"cert param {key}={text}")
    return "\n".join(out) + "\n"


def _param(text: str):
    if text in ("true", "false"):
        return text == "true"
    return _int(text)


def load_network(text: str) -> NetworkInstance:
    lines = list(_lines(text))
    if not lines:
        raise FormatError("empty network text")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "network" or head[1] not in ("directed", "undirected"):
        raise FormatError("missing 'network directed|undirected k=<k>' header")
    g = Multigraph(directed=head[1] == "directed")
    k = _int(_kv(head[2], "k"))
    terminals, groups, reqs = [], [], []
    kind, uniform = None, None
    lc_lines, classes, pkind = [], [], None
    slots, term_class, params = {}, {}, {}
    for line in lines[1:]:
        parts = line.split()
        tag = parts[0]
        try:
            if tag == "V" and len(parts) == 3:
                g.add_vertex(parse_vid(parts[1]), Role(parts[2]))
            elif tag == "A" and len(parts) == 5:
                u, v = parse_vid(parts[1]), parse_vid(parts[2])
                g.add_edge(u, v, Fraction(_kv(parts[3], "cost")), _int(_kv(parts[4], "mult")))
            elif tag == "T" and len(parts) == 2:
                terminals.append(parse_vid(parts[1]))
            elif tag == "G" and len(parts) >= 3:
                if _int(parts[1]) != len(groups) + 1:
                    raise FormatError("groups must be numbered 1, 2, ... in order")
                reqs.append(_int(_kv(parts[2], "k")))
                groups.append(tuple(sorted(parse_vid(p) for p in parts[3:])))
            elif tag == "cert":
                what = parts[1]
                if what == "kind":
                    kind = parts[2]
                elif what == "uniform":
                    uniform = _int(parts[2])
                elif what == "lc":
                    lc_lines.append(line.split(None, 2)[2])
                elif what == "partition":
                    pkind = PartitionKind(parts[2])
                elif what == "class":
                    classes.append(tuple(tuple(_int(x) for x in p.split(",")) for p in parts[2:]))
                elif what == "slot":
                    slot = (parts[2], _int(parts[3]), _int(parts[4]))
                    slots[slot] = (parse_vid(parts[5]), parse_vid(parts[6]), Fraction(1))
                elif what == "terminal":
                    term_class[parse_vid(parts[2])] = _int(parts[3])
                elif what == "param":
                    key, _, val = parts[2].partition("=")
                    params[key] = _param(val)
                else:
                    raise FormatError(f"unknown cert line {line!r}")
            else:
                raise FormatError(f"bad network line {line!r}")
        except (ValueError, KeyError) as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"{line!r}: {exc}") from None
    cert = None
    if lc_lines:
        cert = ReductionCertificate(
            instance=load_labelcover("\n".join(lc_lines)),
            partition=EdgePartition(tuple(classes), pkind or PartitionKind.MATCHING),
            slot_edges=slots,
            terminal_class=term_class,
            params=params,
        )
    spec = GroupSpec(tuple(groups), tuple(reqs), uniform) if groups else None
    return NetworkInstance(kind or "", g, parse_vid("r"), k, tuple(terminals), spec, cert)


def dump_subgraph(net: NetworkInstance, sub: Multigraph) -> str:
    """A subgraph is written as a bare network (graph lines only)."""
    bare = NetworkInstance(net.kind, sub, net.root, net.k, net.terminals, net.groups, None)
    return dump_network(bare)


def load_subgraph(text: str) -> Multigraph:
    return load_network(text).graph


# ---------------------------------------------------------------------------
# DkS graphs


def dump_dks(inst: DksInstance) -> str:
    out = [f"dks n={inst.n} k={inst.k}"]
    out += [f"E {a} {b}" for a, b in sorted(inst.edges)]
    return "\n".join(out) + "\n"


def load_dks(text: str) -> DksInstance:
    lines = list(_lines(text))
    if not lines or not lines[0].startswith("dks "):
        raise FormatError("missing 'dks n=<n> k=<k>' header")
    head = lines[0].split()
    if len(head) != 3:
        raise FormatError("bad dks header")
    n, k = _int(_kv(head[1], "n")), _int(_kv(head[2], "k"))
    edges = set()
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 3 or parts[0] != "E":
            raise FormatError(f"bad dks line {line!r}")
        edges.add((_int(parts[1]), _int(parts[2])))
    try:
        return DksInstance(n, frozenset(edges), k)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
