"""Vertex Cover reduction gadgets and the oracles that verify them.

The construction turns a Vertex Cover instance (H, k) into a graph made of
cliques: one selector pair of cliques per vertex of H, one shared clique C
(with one vertex per edge of H plus per-vertex cover blocks plus a tail
vertex a) and one shared clique C' (with a tail vertex b).  H has a vertex
cover of size k exactly when the gadget has a matching cut whose size falls
in a k-indexed window; the windows for consecutive k tile an interval
without overlap, so the minimum matching cut pins down the cover number.

Every labelled block is monochromatic under every valid colouring: the two
core cliques are large enough to force it outright, and every member of a
selector clique has a private contact into a core clique, so a bichromatic
pair inside a selector clique would hand its blue member two red neighbours.
That is what makes the exhaustive part-colouring oracle exact and cheap, and
it is also why the selector cliques carry no filler vertices: a vertex with
no contact into the core would sit at distance three from the core tail and
push the radius past two.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .graph import Graph, GraphFormatError, iter_bits, parse_graph
from .colouring import SolverResult, bichromatic_count, no_cut, result_from_masks, total_valid


@dataclass(frozen=True)
class VertexCoverInstance:
    graph: Graph
    k: int

    def __post_init__(self):
        if not 0 <= self.k <= self.graph.n:
            raise ValueError(f"budget {self.k} out of range for {self.graph.n} vertices")


@dataclass
class GadgetOutput:
    """A constructed hardness instance plus its bookkeeping."""

    graph: Graph
    lo: int
    hi: int
    parts: dict[str, tuple[int, ...]]
    part_of: dict[int, str]
    roles: dict[int, str]
    bipartite: bool
    k: int
    source_vertices: int
    source_edges: int
    # edge groups of the plain gadget, for value accounting
    connector_edges: dict[int, tuple[tuple[int, int], ...]] = field(default_factory=dict)
    cover_edges: dict[int, tuple[tuple[int, int], ...]] = field(default_factory=dict)
    edge_gadget_edges: dict[tuple[int, int], tuple[tuple[int, int], ...]] = field(default_factory=dict)
    ab_edge: tuple[int, int] | None = None


def value_interval(n: int, m: int, k: int) -> tuple[int, int]:
    """Matching-cut size window equivalent to a size-k cover: the vertex
    gadgets cost 2 each, the tail edge 1, each chosen cover block 1+m, and
    the edge vertices add up to m more."""
    lo = 2 * n + (1 + m) * k + 1
    return lo, lo + m


def reduce_vc_to_3p3free(inst: VertexCoverInstance) -> GadgetOutput:
    """Build the clique gadget; it has no three disjoint induced three-vertex
    paths, radius 2 and diameter 3."""
    h = inst.graph
    nh, mh = h.n, h.m
    if mh < 1:
        raise ValueError("the source graph needs at least one edge")

    edges: list[tuple[int, int]] = []
    parts: dict[str, list[int]] = {"C": [], "C'": []}
    roles: dict[int, str] = {}
    next_id = 0

    def new_vertex(part: str, role: str) -> int:
        nonlocal next_id
        v = next_id
        next_id += 1
        parts.setdefault(part, []).append(v)
        roles[v] = role
        return v

    cv: dict[int, list[int]] = {}
    cvp: dict[int, list[int]] = {}
    u_of: dict[int, int] = {}
    up_of: dict[int, int] = {}
    attach: dict[tuple[int, tuple[int, int]], int] = {}
    connector_edges: dict[int, list[tuple[int, int]]] = {}

    for v in range(nh):
        cv[v] = [new_vertex(f"Cv{v}", f"w:{v}" if i == 0 else f"cover-attach:{v}:{i - 1}")
                 for i in range(mh + 2)]
        # One selector-prime vertex for the connector plus one private
        # attachment point per incident edge; no fillers, so every member
        # keeps a contact into the core and the radius stays two.
        incident = sorted(e for e in h.edges if v in e)
        cvp[v] = []
        for i in range(h.degree(v) + 1):
            if i == 0:
                role = f"w':{v}"
            else:
                e = incident[i - 1]
                role = f"edge-attach:{v}:{e[0]}-{e[1]}"
            vert = new_vertex(f"Cv'{v}", role)
            cvp[v].append(vert)
            if i >= 1:
                attach[(v, incident[i - 1])] = vert
        u_of[v] = new_vertex("C", f"u:{v}")
        up_of[v] = new_vertex("C'", f"u':{v}")
        w, wp = cv[v][0], cvp[v][0]
        conn = [(u_of[v], w), (w, up_of[v]), (u_of[v], wp), (wp, up_of[v])]
        edges.extend(conn)
        connector_edges[v] = conn

    edge_vertex: dict[tuple[int, int], int] = {}
    edge_gadget_edges: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for e in h.edges:
        x, y = e
        ev = new_vertex("C", f"edge:{x}-{y}")
        edge_vertex[e] = ev
        ge = [(ev, attach[(x, e)]), (ev, attach[(y, e)])]
        edges.extend(ge)
        edge_gadget_edges[e] = ge

    cover_edges: dict[int, list[tuple[int, int]]] = {}
    for v in range(nh):
        cover_edges[v] = []
        for i in range(mh + 1):
            cvx = new_vertex("C", f"cover:{v}:{i}")
            cover_edges[v].append((cvx, cv[v][i + 1]))
        edges.extend(cover_edges[v])

    a = new_vertex("C", "a")
    b = new_vertex("C'", "b")
    edges.append((a, b))

    for members in parts.values():
        edges.extend(itertools.combinations(sorted(members), 2))

    graph = Graph(next_id, [(min(u, v), max(u, v)) for u, v in edges])
    lo, hi = value_interval(nh, mh, inst.k)
    part_of = {v: p for p, ms in parts.items() for v in ms}
    return GadgetOutput(
        graph=graph, lo=lo, hi=hi,
        parts={p: tuple(sorted(ms)) for p, ms in parts.items()},
        part_of=part_of, roles=roles, bipartite=False, k=inst.k,
        source_vertices=nh, source_edges=mh,
        connector_edges={v: tuple(es) for v, es in connector_edges.items()},
        cover_edges={v: tuple(es) for v, es in cover_edges.items()},
        edge_gadget_edges={e: tuple(es) for e, es in edge_gadget_edges.items()},
        ab_edge=(a, b),
    )


def reduce_vc_to_bipartite(inst: VertexCoverInstance) -> GadgetOutput:
    """Double the clique gadget into a bipartite one.

    Every clique becomes a complete bipartite block on two copies of its
    vertex set, every cross edge is doubled, the minimum matching cut
    doubles, and radius and diameter grow by one (to 3 and 4).
    """
    plain = reduce_vc_to_3p3free(inst)
    g = plain.graph
    edges: set[tuple[int, int]] = set()

    def a_side(v: int) -> int:
        return 2 * v

    def b_side(v: int) -> int:
        return 2 * v + 1

    for members in plain.parts.values():
        for u in members:
            for v in members:
                x, y = a_side(u), b_side(v)
                edges.add((min(x, y), max(x, y)))
    for u, v in g.edges:
        if plain.part_of[u] != plain.part_of[v]:
            for x, y in ((a_side(u), b_side(v)), (b_side(u), a_side(v))):
                edges.add((min(x, y), max(x, y)))

    graph = Graph(2 * g.n, sorted(edges))
    parts = {
        p: tuple(sorted(itertools.chain.from_iterable((a_side(v), b_side(v)) for v in ms)))
        for p, ms in plain.parts.items()
    }
    part_of = {v: p for p, ms in parts.items() for v in ms}
    roles = {}
    for v, role in plain.roles.items():
        roles[a_side(v)] = role + ":a"
        roles[b_side(v)] = role + ":b"
    return GadgetOutput(
        graph=graph, lo=2 * plain.lo, hi=2 * plain.hi,
        parts=parts, part_of=part_of, roles=roles, bipartite=True, k=inst.k,
        source_vertices=plain.source_vertices, source_edges=plain.source_edges,
    )


def clique_oracle_min_cut(gout: GadgetOutput) -> SolverResult:
    """Exact minimum matching cut of a gadget by part-colouring enumeration.

    Every part is monochromatic in every valid colouring, so trying the
    2^(number of parts) part assignments and filtering for validity is
    exhaustive even where vertex-level brute force is not.
    """
    if not gout.parts:
        raise ValueError("gadget carries no part labels")
    g = gout.graph
    adj = g.adjacency
    names = sorted(gout.parts)
    masks = []
    for name in names:
        m = 0
        for v in gout.parts[name]:
            m |= 1 << v
        masks.append(m)
    best = None
    branches = 0
    for bits in range(1 << len(masks)):
        branches += 1
        red = 0
        for i, m in enumerate(masks):
            if bits >> i & 1:
                red |= m
        blue = g.full_mask & ~red
        if not total_valid(adj, g.n, red, blue):
            continue
        val = bichromatic_count(adj, red, blue)
        if best is None or val < best[0]:
            best = (val, red, blue)
    if best is None:
        return no_cut("clique-oracle", branches=branches)
    return result_from_masks(g, best[1], best[2], "clique-oracle", branches=branches)


def clique_oracle_values(gout: GadgetOutput) -> tuple[int, ...]:
    """All matching-cut sizes the gadget can realise, ascending.

    The interval windows for consecutive budgets tile without overlap, so a
    budget is feasible exactly when some achievable value lands in its
    window, and the minimum achievable value lands in the window of the
    cover number itself.
    """
    if not gout.parts:
        raise ValueError("gadget carries no part labels")
    g = gout.graph
    adj = g.adjacency
    masks = []
    for name in sorted(gout.parts):
        m = 0
        for v in gout.parts[name]:
            m |= 1 << v
        masks.append(m)
    values = set()
    for bits in range(1 << len(masks)):
        red = 0
        for i, m in enumerate(masks):
            if bits >> i & 1:
                red |= m
        blue = g.full_mask & ~red
        if total_valid(adj, g.n, red, blue):
            values.add(bichromatic_count(adj, red, blue))
    return tuple(sorted(values))


def brute_force_vertex_cover(h: Graph, cap: int = 20) -> int:
    """Exact minimum vertex cover size by subset enumeration."""
    if h.n > cap:
        raise ValueError(f"{h.n} vertices exceed the cap of {cap}")
    if not h.edges:
        return 0
    for size in range(1, h.n + 1):
        for combo in itertools.combinations(range(h.n), size):
            mask = 0
            for v in combo:
                mask |= 1 << v
            if all(mask >> u & 1 or mask >> v & 1 for u, v in h.edges):
                return size
    return h.n


# -- gadget files --------------------------------------------------------------
#
# A gadget file is a normal edge-list document with trailing comment lines
# "# part <vertex> <part>/<role>", "# interval <lo> <hi>", "# bipartite 0|1"
# and "# k <k>", so the oracle can run without re-deriving the construction.


def gadget_to_text(gout: GadgetOutput) -> str:
    g = gout.graph
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    for v in range(g.n):
        lines.append(f"# part {v} {gout.part_of[v]}/{gout.roles[v]}")
    lines.append(f"# interval {gout.lo} {gout.hi}")
    lines.append(f"# bipartite {int(gout.bipartite)}")
    lines.append(f"# k {gout.k}")
    lines.append(f"# source {gout.source_vertices} {gout.source_edges}")
    return "\n".join(lines) + "\n"


def parse_gadget(text: str) -> GadgetOutput:
    graph = parse_graph(text)
    parts: dict[str, list[int]] = {}
    part_of: dict[int, str] = {}
    roles: dict[int, str] = {}
    lo = hi = k = None
    bipartite = False
    source = (0, 0)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line.startswith("#"):
            continue
        fields = line[1:].split()
        if not fields:
            continue
        if fields[0] == "part" and len(fields) == 3:
            v = int(fields[1])
            if "/" not in fields[2]:
                raise GraphFormatError(lineno, "part label must be part/role")
            part, role = fields[2].split("/", 1)
            parts.setdefault(part, []).append(v)
            part_of[v] = part
            roles[v] = role
        elif fields[0] == "interval" and len(fields) == 3:
            lo, hi = int(fields[1]), int(fields[2])
        elif fields[0] == "bipartite" and len(fields) == 2:
            bipartite = bool(int(fields[1]))
        elif fields[0] == "k" and len(fields) == 2:
            k = int(fields[1])
        elif fields[0] == "source" and len(fields) == 3:
            source = (int(fields[1]), int(fields[2]))
    if lo is None or hi is None or k is None or len(part_of) != graph.n:
        raise GraphFormatError(1, "gadget comments incomplete")
    return GadgetOutput(
        graph=graph, lo=lo, hi=hi,
        parts={p: tuple(sorted(ms)) for p, ms in parts.items()},
        part_of=part_of, roles=roles, bipartite=bipartite, k=k,
        source_vertices=source[0], source_edges=source[1],
    )
