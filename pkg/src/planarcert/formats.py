"""Shared text formats: graph files and per-node certificate files.

Graph files: first significant line is ``n m``, followed by ``m`` lines
``u v``.  Isolated nodes get ``node u`` lines (the edge list cannot mention
them), counterclockwise orders ride along as ``rot u: v1 v2 ... vd`` lines,
and ``#`` starts a comment.

Certificate files hold one record per node — ``<id> <json> #bits=<n>`` —
with canonical key order and compact separators so identical certificates
always serialize to identical bytes.  The bit annotation states the
canonical packed size, not the text length; parsers treat it as advisory.
"""

from __future__ import annotations

import json

from .errors import FormatError
from .graphs import Graph, build_graph
from .pls import EdgeCertificate, NodeCertificate, TreeSub, certificate_size_bits
from .pop import PopCertificate


def write_graph(g: Graph, rot: dict[int, tuple[int, ...]] | None = None) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"node {v}" for v in g.nodes() if not g.neighbors(v))
    lines.extend(f"{u} {v}" for u, v in g.edges())
    if rot is not None:
        for v in sorted(rot):
            lines.append(f"rot {v}: " + " ".join(str(u) for u in rot[v]))
    return "\n".join(lines) + "\n"


def _significant_lines(text: str):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def _int_or_fail(token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"{what}: expected an integer, got {token!r}") from None


def parse_graph(text: str) -> tuple[Graph, dict[int, tuple[int, ...]] | None]:
    """Parse the shared graph format; returns (graph, rotation or None)."""
    lines = list(_significant_lines(text))
    if not lines:
        raise FormatError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise FormatError(f"header must be 'n m', got {lines[0]!r}")
    n, m = (_int_or_fail(t, "header") for t in head)
    edges: list[tuple[int, int]] = []
    isolated: list[int] = []
    rot: dict[int, tuple[int, ...]] = {}
    for line in lines[1:]:
        parts = line.split()
        if parts[0] == "node":
            if len(parts) != 2:
                raise FormatError(f"malformed node line {line!r}")
            isolated.append(_int_or_fail(parts[1], "node line"))
        elif parts[0] == "rot":
            if len(parts) < 2 or not parts[1].endswith(":"):
                raise FormatError(f"malformed rotation line {line!r}")
            v = _int_or_fail(parts[1][:-1], "rotation line")
            if v in rot:
                raise FormatError(f"duplicate rotation line for node {v}")
            rot[v] = tuple(_int_or_fail(t, "rotation line") for t in parts[2:])
        elif len(parts) == 2:
            edges.append(
                (_int_or_fail(parts[0], "edge line"), _int_or_fail(parts[1], "edge line"))
            )
        else:
            raise FormatError(f"unrecognized line {line!r}")
    if len(edges) != m:
        raise FormatError(f"header promises {m} edges, file has {len(edges)}")
    try:
        g = build_graph(edges, nodes=isolated)
    except Exception as exc:
        raise FormatError(f"invalid graph data: {exc}") from None
    if g.n != n:
        raise FormatError(f"header promises {n} nodes, edges mention {g.n}")
    if rot:
        extra = set(rot) - set(g.nodes())
        if extra:
            raise FormatError(f"rotation lines for unknown nodes {sorted(extra)}")
    return g, (rot or None)


# --- certificate files ----------------------------------------------------------


def _edge_cert_record(ec: EdgeCertificate) -> dict:
    return {
        "id_x": ec.id_x,
        "id_y": ec.id_y,
        "i": ec.i,
        "j": ec.j,
        "i2": ec.i2,
        "j2": ec.j2,
        "pop_i": vars(ec.pop_i),
        "pop_j": vars(ec.pop_j),
        "pop_i2": vars(ec.pop_i2),
        "pop_j2": vars(ec.pop_j2),
    }


def write_certificates(certs: dict[int, NodeCertificate]) -> str:
    lines = []
    for x in sorted(certs):
        cert = certs[x]
        record = {
            "n": cert.n,
            "tree_sub": vars(cert.tree_sub),
            "edge_certs": [_edge_cert_record(ec) for ec in cert.edge_certs],
        }
        body = json.dumps(record, sort_keys=True, separators=(",", ":"))
        lines.append(f"{x} {body} #bits={certificate_size_bits(cert, cert.n)}")
    return "\n".join(lines) + "\n"


_POP_KEYS = {"n", "rank", "lo", "hi"}
_EDGE_KEYS = {"id_x", "id_y", "i", "j", "i2", "j2", "pop_i", "pop_j", "pop_i2", "pop_j2"}


def _pop_from(record: object) -> PopCertificate:
    if not isinstance(record, dict) or set(record) != _POP_KEYS:
        raise FormatError(f"malformed interval certificate record {record!r}")
    return PopCertificate(**record)


def _edge_cert_from(record: object) -> EdgeCertificate:
    if not isinstance(record, dict) or set(record) != _EDGE_KEYS:
        raise FormatError(f"malformed edge certificate record {record!r}")
    fields = {k: record[k] for k in ("id_x", "id_y", "i", "j", "i2", "j2")}
    for k in ("pop_i", "pop_j", "pop_i2", "pop_j2"):
        fields[k] = _pop_from(record[k])
    return EdgeCertificate(**fields)


def parse_certificates(text: str) -> dict[int, NodeCertificate]:
    """Parse a certificate file; structural problems raise FormatError.

    Field values are passed through untouched — judging them is the
    verifier's job, and it must see exactly what the file says.
    """
    out: dict[int, NodeCertificate] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, _ = line.partition(" #bits=")
        node_token, _, body = head.partition(" ")
        x = _int_or_fail(node_token, "certificate line")
        if x in out:
            raise FormatError(f"duplicate certificate for node {x}")
        try:
            record = json.loads(body)
        except json.JSONDecodeError as exc:
            raise FormatError(f"node {x}: bad record: {exc}") from None
        if not isinstance(record, dict) or set(record) != {"n", "tree_sub", "edge_certs"}:
            raise FormatError(f"node {x}: record must have n, tree_sub, edge_certs")
        ts = record["tree_sub"]
        if not isinstance(ts, dict) or set(ts) != {"root_id", "parent_id", "dist"}:
            raise FormatError(f"node {x}: malformed tree_sub")
        if not isinstance(record["edge_certs"], list):
            raise FormatError(f"node {x}: edge_certs must be a list")
        out[x] = NodeCertificate(
            edge_certs=tuple(_edge_cert_from(ec) for ec in record["edge_certs"]),
            tree_sub=TreeSub(**ts),
            n=record["n"],
        )
    if not out:
        raise FormatError("certificate file has no records")
    return out
