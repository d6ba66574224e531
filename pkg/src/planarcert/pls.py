"""One-round planarity certification: honest prover and per-node verifier.

The prover embeds the graph, cuts it along a depth-first spanning tree, and
certifies path-outerplanarity of the resulting virtual path graph.  Every
graph edge gets one edge certificate carrying the tour positions of its
virtual endpoints together with their interval certificates; the certificate
is stored at the endpoint that comes first in a degeneracy order, so no node
holds more than five of them.  The verifier reassembles its local slice of
the virtual graph from its own and its neighbors' certificates, replays the
interval checks for every tour copy it owns, and runs standard spanning-tree
consistency checks on the side.

The verifier is total: malformed or adversarial certificates produce a
reject verdict, never an exception.
"""

from __future__ import annotations

from dataclasses import dataclass

from .embedding import NonPlanarWitness, RotationSystem, planar_embed
from .errors import FormatError, NonPlanarError, ParameterError
from .graphs import Edge, Graph, degeneracy_order, norm_edge
from .pop import (
    REJECT_REASONS,
    PopCertificate,
    PopWitness,
    pop_prove,
    pop_verify_node,
)
from .transform import dfs_mapping, induce_graph, spanning_tree_dfs

PHASE_COLLECT = 1  # recover tree / tour / virtual-graph structure
PHASE_TREE = 2  # spanning-tree and tour-consistency checks
PHASE_POP = 3  # interval checks per owned copy

#: Degeneracy of a planar graph, hence the most edge certificates per node.
MAX_EDGE_CERTS = 5


@dataclass(frozen=True)
class TreeSub:
    """Classic spanning-tree sub-certificate: root identity, parent, depth."""

    root_id: int
    parent_id: int | None
    dist: int


@dataclass(frozen=True)
class EdgeCertificate:
    """Everything one graph edge contributes to the virtual path graph.

    A tree edge is traversed twice by the tour and owns two distinct virtual
    path edges; a non-tree edge owns a single chord, repeated in both slots.
    Indices ``i``/``i2`` are copies of ``id_x`` and ``j``/``j2`` copies of
    ``id_y``; each index comes with the interval certificate of that copy.
    """

    id_x: int
    id_y: int
    i: int
    j: int
    i2: int
    j2: int
    pop_i: PopCertificate
    pop_j: PopCertificate
    pop_i2: PopCertificate
    pop_j2: PopCertificate

    def is_tree(self) -> bool:
        return {self.i, self.j} != {self.i2, self.j2}

    def side_indices(self, node: int) -> tuple[int, int]:
        if node == self.id_x:
            return (self.i, self.i2)
        if node == self.id_y:
            return (self.j, self.j2)
        raise ParameterError(f"{node} is not an endpoint of this certificate")

    def bindings(self) -> tuple[tuple[int, PopCertificate], ...]:
        return (
            (self.i, self.pop_i),
            (self.j, self.pop_j),
            (self.i2, self.pop_i2),
            (self.j2, self.pop_j2),
        )


@dataclass(frozen=True)
class NodeCertificate:
    """What one node receives: its assigned edge certificates plus tree data."""

    edge_certs: tuple[EdgeCertificate, ...]
    tree_sub: TreeSub
    n: int


@dataclass(frozen=True)
class Verdict:
    decision: str  # "accept" | "reject"
    reason: str
    phase: int

    @property
    def accepted(self) -> bool:
        return self.decision == "accept"


def _accept() -> Verdict:
    return Verdict(decision="accept", reason="", phase=PHASE_POP)


def _reject(phase: int, reason: str) -> Verdict:
    return Verdict(decision="reject", reason=reason, phase=phase)


# --- honest prover ----------------------------------------------------------


def prove_planar(
    g: Graph, rot: RotationSystem | None = None
) -> dict[int, NodeCertificate]:
    """Certificates that make every node of a planar graph accept.

    With no rotation supplied the graph is embedded first; a non-planar
    input is refused with the embedder's subdivision witness attached.
    """
    if not g.connected:
        raise ParameterError("certification requires a connected graph")
    if rot is None:
        found = planar_embed(g)
        if isinstance(found, NonPlanarWitness):
            raise NonPlanarError("input graph is not planar", witness=found)
        rot = found
    root = min(g.nodes())
    t = spanning_tree_dfs(g, rot, root)
    fm = dfs_mapping(t)
    induced = induce_graph(g, rot, t, fm)
    nv = induced.n_virtual
    pop_certs = pop_prove(
        induced.virtual_graph(), PopWitness(order=tuple(range(1, nv + 1)))
    )

    f = fm.f
    traversals: dict[Edge, list[tuple[int, int]]] = {}
    for k in range(1, nv):
        e = norm_edge(f[k], f[k + 1])  # type: ignore[arg-type]
        traversals.setdefault(e, []).append((k, k + 1))

    def oriented(pair: tuple[int, int], u: int) -> tuple[int, int]:
        a, b = pair
        return (a, b) if f[a] == u else (b, a)

    edge_certs: dict[Edge, EdgeCertificate] = {}
    for u, v in g.edges():
        if (u, v) in traversals:
            first, second = traversals[(u, v)]
            i, j = oriented(first, u)
            i2, j2 = oriented(second, u)
        else:
            ci, cj = induced.cotree_map[(u, v)]
            i, j = (ci, cj) if f[ci] == u else (cj, ci)
            i2, j2 = i, j
        edge_certs[(u, v)] = EdgeCertificate(
            id_x=u,
            id_y=v,
            i=i,
            j=j,
            i2=i2,
            j2=j2,
            pop_i=pop_certs[i],
            pop_j=pop_certs[j],
            pop_i2=pop_certs[i2],
            pop_j2=pop_certs[j2],
        )

    position = degeneracy_order(g).position()
    depth: dict[int, int] = {root: 0}
    queue = [root]
    while queue:
        v = queue.pop()
        for c in t.children_order[v]:
            depth[c] = depth[v] + 1
            queue.append(c)

    out: dict[int, NodeCertificate] = {}
    for x in g.nodes():
        mine = tuple(
            edge_certs[e]
            for e in sorted(edge_certs)
            if x == (e[0] if position[e[0]] < position[e[1]] else e[1])
        )
        out[x] = NodeCertificate(
            edge_certs=mine,
            tree_sub=TreeSub(root_id=root, parent_id=t.parent[x], dist=depth[x]),
            n=g.n,
        )
    return out


# --- verifier: validation helpers -------------------------------------------


def _is_id(v: object) -> bool:
    return type(v) is int and v >= 1


def _is_int(v: object) -> bool:
    return type(v) is int


def _pop_ok(pc: object, nv: int, rank: int) -> bool:
    return (
        isinstance(pc, PopCertificate)
        and all(_is_int(v) for v in (pc.n, pc.rank, pc.lo, pc.hi))
        and pc.n == nv
        and pc.rank == rank
    )


def _edge_cert_ok(ec: object, nv: int) -> bool:
    if not isinstance(ec, EdgeCertificate):
        return False
    if not (_is_id(ec.id_x) and _is_id(ec.id_y) and ec.id_x != ec.id_y):
        return False
    idx = (ec.i, ec.j, ec.i2, ec.j2)
    if not all(_is_int(v) and 1 <= v <= nv for v in idx):
        return False
    if ec.i == ec.j or ec.i2 == ec.j2:
        return False
    return all(
        _pop_ok(pc, nv, k) for k, pc in ec.bindings()
    )


def _node_cert_ok(cert: object) -> bool:
    if not isinstance(cert, NodeCertificate):
        return False
    if not (_is_int(cert.n) and cert.n >= 1):
        return False
    ts = cert.tree_sub
    if not isinstance(ts, TreeSub) or not _is_id(ts.root_id):
        return False
    if ts.parent_id is not None and not _is_id(ts.parent_id):
        return False
    if not (_is_int(ts.dist) and 0 <= ts.dist < cert.n):
        return False
    if not isinstance(cert.edge_certs, tuple):
        return False
    if len(cert.edge_certs) > MAX_EDGE_CERTS:
        return False
    nv = 2 * cert.n - 1
    return all(_edge_cert_ok(ec, nv) for ec in cert.edge_certs)


# --- verifier: spanning-tree sub-check ---------------------------------------


def verify_spanning_tree_sub(
    x: int,
    own: TreeSub,
    neighbor_subs: dict[int, TreeSub],
    parent_id: int | None,
) -> str | None:
    """Classic root/parent/distance consistency; None means accept.

    ``parent_id`` is the parent derived from the edge certificates (None for
    a node claiming to be the root).
    """
    for sub in neighbor_subs.values():
        if sub.root_id != own.root_id:
            return "root identity disagrees with a neighbor"
    if parent_id is None:
        if own.root_id != x:
            return "node without a parent is not the claimed root"
        if own.dist != 0:
            return "claimed root has nonzero distance"
    else:
        if own.parent_id != parent_id:
            return "parent pointer disagrees with the edge certificates"
        if own.dist != neighbor_subs[parent_id].dist + 1:
            return "distance is not one more than the parent's"
    for y, sub in neighbor_subs.items():
        if sub.dist == 0 and sub.root_id != y:
            return "a neighbor claims distance zero without being the root"
    return None


# --- verifier ----------------------------------------------------------------


def verify_node_planarity(
    x: int,
    own: NodeCertificate,
    neighbor_certs: dict[int, NodeCertificate],
) -> Verdict:
    """One node's verdict after a single exchange of certificates.

    ``neighbor_certs`` must hold the certificate of every graph neighbor of
    ``x`` and nothing else; that is the one-round view.
    """
    # Phase 1: validate shapes and recover the local virtual-graph slice.
    if not _is_id(x) or not _node_cert_ok(own):
        return _reject(PHASE_COLLECT, "own certificate is malformed")
    for y, cert in neighbor_certs.items():
        if not _is_id(y) or y == x or not _node_cert_ok(cert):
            return _reject(PHASE_COLLECT, f"certificate of neighbor {y} is malformed")
        if cert.n != own.n:
            return _reject(PHASE_COLLECT, "node-count claims disagree")
    n = own.n
    nv = 2 * n - 1

    holders: dict[Edge, list[int]] = {}
    found: dict[Edge, EdgeCertificate] = {}
    for holder, cert in [(x, own)] + sorted(neighbor_certs.items()):
        for ec in cert.edge_certs:
            e = norm_edge(ec.id_x, ec.id_y)
            if x not in e:
                continue  # someone else's edge; not locally checkable
            other = e[0] if e[1] == x else e[1]
            if other not in neighbor_certs:
                return _reject(PHASE_COLLECT, f"certified edge {e} is not in the graph")
            if holder not in e:
                return _reject(PHASE_COLLECT, f"edge {e} certified away from its endpoints")
            holders.setdefault(e, []).append(holder)
            found[e] = ec
    for e, who in holders.items():
        if len(who) > 1:
            return _reject(PHASE_COLLECT, f"edge {e} certified more than once")
    for y in neighbor_certs:
        if norm_edge(x, y) not in found:
            return _reject(PHASE_COLLECT, f"edge {norm_edge(x, y)} has no certificate")

    pop_table: dict[int, PopCertificate] = {}
    for ec in found.values():
        for k, pc in ec.bindings():
            held = pop_table.get(k)
            if held is not None and held != pc:
                return _reject(PHASE_COLLECT, f"conflicting certificates for copy {k}")
            pop_table[k] = pc

    parent_nbr: int | None = None
    parent_sides: tuple[int, int] | None = None
    child_spans: list[tuple[int, int]] = []
    chord_certs: list[EdgeCertificate] = []
    side_count: dict[int, int] = {}
    for e, ec in sorted(found.items()):
        other = e[0] if e[1] == x else e[1]
        if not ec.is_tree():
            chord_certs.append(ec)
            continue
        pairs = ((ec.i, ec.j), (ec.i2, ec.j2))
        if any(abs(a - b) != 1 for a, b in pairs):
            return _reject(
                PHASE_COLLECT, f"tree edge {e} does not map to two tour steps"
            )
        xs = ec.side_indices(x)
        ys = ec.side_indices(other)
        for k in xs:
            side_count[k] = side_count.get(k, 0) + 1
        if min(ys) < min(xs):
            if parent_nbr is not None:
                return _reject(PHASE_COLLECT, "more than one neighbor claims parenthood")
            parent_nbr = other
            parent_sides = xs
        else:
            child_spans.append((min(ys), max(ys)))

    is_root_claim = parent_nbr is None
    copies = sorted(side_count)
    if n == 1:
        # A single node has no incident edges to carry its certificate, so
        # its lone tour copy gets the canonical full interval.
        copies = [1]
        pop_table[1] = PopCertificate(n=1, rank=1, lo=0, hi=2)
    else:
        for k in copies:
            expected = 1 if (is_root_claim and k in (1, nv)) else 2
            if side_count[k] != expected:
                return _reject(
                    PHASE_COLLECT, f"copy {k} lacks a certified tour step"
                )

    copy_set = set(copies)
    chord_at: dict[int, list[int]] = {}
    for ec in chord_certs:
        mine = ec.i if ec.id_x == x else ec.j
        partner = ec.j if ec.id_x == x else ec.i
        if mine not in copy_set:
            return _reject(
                PHASE_COLLECT, f"chord attached to foreign copy {mine}"
            )
        chord_at.setdefault(mine, []).append(partner)

    # Phase 2: spanning tree and tour consistency.
    reason = verify_spanning_tree_sub(
        x,
        own.tree_sub,
        {y: c.tree_sub for y, c in neighbor_certs.items()},
        parent_nbr,
    )
    if reason is not None:
        return _reject(PHASE_TREE, reason)
    if is_root_claim and not {1, nv} <= copy_set:
        return _reject(PHASE_TREE, "root does not own the tour endpoints")
    if parent_sides is not None and set(parent_sides) != {copies[0], copies[-1]}:
        return _reject(
            PHASE_TREE, "parent edge does not bracket the first and last visits"
        )
    child_spans.sort()
    if not child_spans:
        if len(copies) != 1:
            return _reject(PHASE_TREE, "childless node visited more than once")
    else:
        for (_, a_max), (b_min, _) in zip(child_spans, child_spans[1:]):
            if b_min != a_max + 2:
                return _reject(PHASE_TREE, "children subtours are not contiguous")
        expected_copies = {child_spans[0][0] - 1}
        expected_copies.update(cmax + 1 for _, cmax in child_spans)
        if copy_set != expected_copies:
            return _reject(
                PHASE_TREE, "visits do not interleave the children subtours"
            )

    # Phase 3: interval checks for every owned copy.
    for k in copies:
        own_pc = pop_table[k]
        nbr: dict[int, PopCertificate] = {}
        for r in (k - 1, k + 1):
            if 1 <= r <= nv:
                pc = pop_table.get(r)
                if pc is None:
                    return _reject(
                        PHASE_POP, f"no certificate for tour neighbor {r}"
                    )
                nbr[r] = pc
        for partner in chord_at.get(k, ()):
            nbr[partner] = pop_table[partner]
        code = pop_verify_node(k, own_pc, nbr)
        if code is not None:
            return _reject(PHASE_POP, f"copy {k}: {REJECT_REASONS[code]}")
    return _accept()


# --- canonical packing -------------------------------------------------------


def _width_for_codes(codes: int) -> int:
    return max(1, (codes - 1).bit_length())


def _widths(cert: NodeCertificate) -> tuple[int, int]:
    ids = [cert.tree_sub.root_id]
    if cert.tree_sub.parent_id is not None:
        ids.append(cert.tree_sub.parent_id)
    for ec in cert.edge_certs:
        ids.extend((ec.id_x, ec.id_y))
    id_bits = _width_for_codes(max(ids) + 1)
    idx_bits = _width_for_codes(2 * cert.n + 3)
    return id_bits, idx_bits


def certificate_size_bits(cert: NodeCertificate, n: int) -> int:
    """Canonical packed length in bits.

    Node identifiers use just enough bits for the largest id mentioned;
    every tour index, rank, or interval endpoint (sentinels included) uses
    enough bits for the ``2n + 3`` possible codes; a 3-bit header counts the
    edge certificates and one flag marks a present parent.
    """
    id_bits, idx_bits = _widths(cert)
    bits = 3 + idx_bits  # header + node count
    bits += 1 + id_bits + idx_bits  # parent flag + root id + distance
    if cert.tree_sub.parent_id is not None:
        bits += id_bits
    bits += len(cert.edge_certs) * (2 * id_bits + 20 * idx_bits)
    return bits


class _BitWriter:
    """Big-endian bit accumulator; whole stream kept in one int."""

    def __init__(self) -> None:
        self._acc = 0
        self._nbits = 0

    def put(self, value: int, width: int) -> None:
        if not 0 <= value < (1 << width):
            raise ParameterError(f"value {value} does not fit in {width} bits")
        self._acc = (self._acc << width) | value
        self._nbits += width

    def getvalue(self) -> bytes:
        pad = -self._nbits % 8
        return ((self._acc << pad)).to_bytes((self._nbits + pad) // 8, "big")


class _BitReader:
    def __init__(self, data: bytes) -> None:
        self._value = int.from_bytes(data, "big")
        self._total = len(data) * 8
        self._pos = 0

    def take(self, width: int) -> int:
        end = self._pos + width
        if end > self._total:
            raise FormatError("certificate bitstream is truncated")
        self._pos = end
        return (self._value >> (self._total - end)) & ((1 << width) - 1)

    def finish(self) -> None:
        tail = self._total - self._pos
        if tail >= 8 or self._value & ((1 << tail) - 1):
            raise FormatError("certificate bitstream has trailing data")


def certificate_bit_fields(cert: NodeCertificate) -> tuple[tuple[int, int], ...]:
    """The canonical bitstream as (value, width) pairs, header excluded.

    This is the layout contract: pack_certificate writes exactly these
    fields in order, and the attack harness uses the same windows to corrupt
    individual fields of an encoded certificate.
    """
    id_bits, idx_bits = _widths(cert)
    ts = cert.tree_sub
    fields: list[tuple[int, int]] = [
        (len(cert.edge_certs), 3),
        (cert.n, idx_bits),
        (0 if ts.parent_id is None else 1, 1),
        (ts.root_id, id_bits),
    ]
    if ts.parent_id is not None:
        fields.append((ts.parent_id, id_bits))
    fields.append((ts.dist, idx_bits))
    for ec in cert.edge_certs:
        fields.append((ec.id_x, id_bits))
        fields.append((ec.id_y, id_bits))
        for k, pc in ec.bindings():
            fields.extend(
                [
                    (k, idx_bits),
                    (pc.n, idx_bits),
                    (pc.rank, idx_bits),
                    (pc.lo + 1, idx_bits),
                    (pc.hi + 1, idx_bits),
                ]
            )
    return tuple(fields)


def pack_certificate(cert: NodeCertificate) -> bytes:
    """Serialize to the canonical bit layout, two width bytes up front."""
    if not _node_cert_ok(cert):
        raise ParameterError("cannot pack a malformed certificate")
    id_bits, idx_bits = _widths(cert)
    if id_bits > 255 or idx_bits > 255:
        raise ParameterError("identifiers too large to pack")
    w = _BitWriter()
    for value, width in certificate_bit_fields(cert):
        w.put(value, width)
    return bytes((id_bits, idx_bits)) + w.getvalue()


def unpack_certificate(data: bytes) -> NodeCertificate:
    """Inverse of pack_certificate; malformed bytes raise FormatError."""
    if len(data) < 3:
        raise FormatError("certificate bytes too short")
    id_bits, idx_bits = data[0], data[1]
    if id_bits < 1 or idx_bits < 1:
        raise FormatError("implausible field widths")
    r = _BitReader(data[2:])
    count = r.take(3)
    n = r.take(idx_bits)
    has_parent = r.take(1)
    root_id = r.take(id_bits)
    parent_id = r.take(id_bits) if has_parent else None
    dist = r.take(idx_bits)
    edge_certs = []
    for _ in range(count):
        id_x = r.take(id_bits)
        id_y = r.take(id_bits)
        slots = []
        for _ in range(4):
            k = r.take(idx_bits)
            pc = PopCertificate(
                n=r.take(idx_bits),
                rank=r.take(idx_bits),
                lo=r.take(idx_bits) - 1,
                hi=r.take(idx_bits) - 1,
            )
            slots.append((k, pc))
        edge_certs.append(
            EdgeCertificate(
                id_x=id_x,
                id_y=id_y,
                i=slots[0][0],
                j=slots[1][0],
                i2=slots[2][0],
                j2=slots[3][0],
                pop_i=slots[0][1],
                pop_j=slots[1][1],
                pop_i2=slots[2][1],
                pop_j2=slots[3][1],
            )
        )
    r.finish()
    return NodeCertificate(
        edge_certs=tuple(edge_certs),
        tree_sub=TreeSub(root_id=root_id, parent_id=parent_id, dist=dist),
        n=n,
    )
