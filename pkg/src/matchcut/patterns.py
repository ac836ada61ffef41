"""Induced-subgraph detection for a fixed pattern catalogue, graph class
recognition, and dominating-structure discovery.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .graph import Graph, iter_bits, metrics


@dataclass(frozen=True)
class Pattern:
    """A named small graph to search for as an induced subgraph."""

    name: str
    n: int
    edges: tuple[tuple[int, int], ...]

    def graph(self) -> Graph:
        return Graph(self.n, self.edges)


def _path_edges(k: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, i + 1) for i in range(k - 1))


@lru_cache(maxsize=None)
def pattern(name: str) -> Pattern:
    """Look up a pattern by its catalogue name.

    Supported names: P2..P14, C3..C12, K1_3 (the claw), K1_4, S_1_1_2,
    K2_3, P6_plus_P4, threeP3 and H_star_i for i >= 1.
    """
    if name.startswith("P") and name[1:].isdigit():
        k = int(name[1:])
        if 2 <= k <= 14:
            return Pattern(name, k, _path_edges(k))
    if name.startswith("C") and name[1:].isdigit():
        k = int(name[1:])
        if 3 <= k <= 12:
            return Pattern(name, k, tuple((i, (i + 1) % k) for i in range(k)))
    if name == "K1_3":
        return Pattern(name, 4, ((0, 1), (0, 2), (0, 3)))
    if name == "K1_4":
        return Pattern(name, 5, ((0, 1), (0, 2), (0, 3), (0, 4)))
    if name == "S_1_1_2":
        # Claw with one edge subdivided once: centre 0, legs 1, 2 and 3-4.
        return Pattern(name, 5, ((0, 1), (0, 2), (0, 3), (3, 4)))
    if name == "K2_3":
        return Pattern(name, 5, ((0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)))
    if name == "P6_plus_P4":
        return Pattern(name, 10, _path_edges(6) + tuple((u + 6, v + 6) for u, v in _path_edges(4)))
    if name == "threeP3":
        edges = []
        for c in range(3):
            edges.extend((3 * c + i, 3 * c + i + 1) for i in range(2))
        return Pattern(name, 9, tuple(edges))
    if name.startswith("H_star_") and name[7:].isdigit():
        i = int(name[7:])
        if i >= 1:
            # The "H" shape: two degree-3 ends joined by a chain of i edges
            # (the middle edge subdivided i-1 times), two pendants per end.
            chain_verts = i + 1  # 0 .. i
            chain = [(j, j + 1) for j in range(i)]
            x1, x2, y1, y2 = chain_verts, chain_verts + 1, chain_verts + 2, chain_verts + 3
            edges = chain + [(0, x1), (0, x2), (i, y1), (i, y2)]
            return Pattern(name, chain_verts + 4, tuple(edges))
    raise ValueError(f"unknown pattern name {name!r}")


PATTERN_NAMES = (
    [f"P{k}" for k in range(2, 15)]
    + [f"C{k}" for k in range(3, 13)]
    + ["K1_3", "K1_4", "S_1_1_2", "K2_3", "P6_plus_P4", "threeP3", "H_star_1", "H_star_2"]
)


def find_induced(g: Graph, p: Pattern) -> dict[int, int] | None:
    """An injective, edge and non-edge preserving map pattern -> g, or None.

    Backtracking with forward checking: every unmapped pattern vertex keeps
    a bitmask domain of still-compatible graph vertices, filtered on degree
    up front and on adjacency versus every placed vertex as the search
    deepens.  Exhaustive, so None really means no embedding exists.
    """
    pn = p.n
    if pn > g.n:
        return None
    pg = p.graph()
    padj = pg.adjacency
    pdeg = [padj[v].bit_count() for v in range(pn)]
    gadj = g.adjacency
    full = g.full_mask

    domains = [0] * pn
    for pv in range(pn):
        d = 0
        for gv in range(g.n):
            if gadj[gv].bit_count() >= pdeg[pv]:
                d |= 1 << gv
        domains[pv] = d
        if d == 0:
            return None

    # Order pattern vertices component by component, each component by BFS
    # from its highest-degree vertex, so constraints bind early.
    order: list[int] = []
    seen = set()
    for comp in pg.components():
        verts = list(iter_bits(comp))
        start = max(verts, key=lambda v: pdeg[v])
        queue = [start]
        seen.add(start)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in iter_bits(padj[v]):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)

    mapping = [-1] * pn

    def rec(i: int) -> bool:
        if i == pn:
            return True
        pv = order[i]
        for gv in iter_bits(domains[pv]):
            bit = 1 << gv
            saved = domains[:]
            ok = True
            for pu in range(pn):
                if mapping[pu] >= 0 or pu == pv:
                    continue
                if padj[pv] >> pu & 1:
                    domains[pu] &= gadj[gv]
                else:
                    domains[pu] &= ~gadj[gv] & ~bit
                if domains[pu] == 0:
                    ok = False
                    break
            if ok:
                mapping[pv] = gv
                if rec(i + 1):
                    return True
                mapping[pv] = -1
            domains[:] = saved
        return False

    if rec(0):
        return {pv: mapping[pv] for pv in range(pn)}
    return None


def has_induced(g: Graph, name: str) -> bool:
    return find_induced(g, pattern(name)) is not None


def is_bipartite(g: Graph) -> bool:
    colour = [0] * g.n
    for start in range(g.n):
        if colour[start]:
            continue
        colour[start] = 1
        queue = [start]
        while queue:
            v = queue.pop()
            for u in iter_bits(g.adj(v)):
                if colour[u] == 0:
                    colour[u] = -colour[v]
                    queue.append(u)
                elif colour[u] == colour[v]:
                    return False
    return True


RECOGNIZED_LABELS = (
    "P4-free", "P6-free", "P7-free", "S112-free", "P6+P4-free", "3P3-free",
    "claw-free", "bipartite", "diameter<=2", "radius<=2",
)

_LABEL_PATTERNS = {
    "P4-free": "P4",
    "P6-free": "P6",
    "P7-free": "P7",
    "S112-free": "S_1_1_2",
    "P6+P4-free": "P6_plus_P4",
    "3P3-free": "threeP3",
    "claw-free": "K1_3",
}


def recognize(g: Graph) -> set[str]:
    """Exact class labels, each decided by induced search, 2-colouring or BFS."""
    labels = set()
    for label, pname in _LABEL_PATTERNS.items():
        if not has_induced(g, pattern(pname).name):
            labels.add(label)
    if is_bipartite(g):
        labels.add("bipartite")
    if g.n > 0 and g.is_connected():
        met = metrics(g)
        if met.diameter <= 2:
            labels.add("diameter<=2")
        if met.radius <= 2:
            labels.add("radius<=2")
    return labels


# -- dominating structures ---------------------------------------------------


@dataclass(frozen=True)
class DominatingStructure:
    """A dominating induced path, or a connected dominating set whose induced
    subgraph avoids a stated path pattern."""

    kind: str  # "induced-path" or "connected-subgraph"
    vertices: tuple[int, ...]
    freeness: str | None = None

    def mask(self) -> int:
        m = 0
        for v in self.vertices:
            m |= 1 << v
        return m


def _dominates(g: Graph, mask: int) -> bool:
    cover = mask
    m = mask
    while m:
        low = m & -m
        cover |= g.adj(low.bit_length() - 1)
        m ^= low
    return cover == g.full_mask


def _induced_dominating_path(g: Graph, max_len: int) -> tuple[int, ...] | None:
    """Shortest dominating induced path with at most max_len vertices."""
    for target in range(1, max_len + 1):
        for start in range(g.n):
            got = _probe_path(g, start, target)
            if got:
                return got
    return None


def _probe_path(g: Graph, start: int, target: int) -> tuple[int, ...] | None:
    """Dominating induced path with exactly ``target`` vertices from start."""
    adj = g.adjacency

    def rec(path: list[int], used: int):
        if len(path) == target:
            return tuple(path) if _dominates(g, used) else None
        last = path[-1]
        forbidden = 0
        for v in path[:-1]:
            forbidden |= adj[v]
        for v in iter_bits(adj[last] & ~used & ~forbidden):
            path.append(v)
            got = rec(path, used | 1 << v)
            if got:
                return got
            path.pop()
        return None

    return rec([start], 1 << start)


def dominating_structure(g: Graph, k: int) -> DominatingStructure:
    """For a connected graph with no induced path on k vertices, return a
    dominating induced path on at most k-2 vertices or a connected dominating
    set whose induced subgraph has no path on k-2 vertices.

    The structure is found by direct search: induced paths in increasing
    length, then connected dominating sets in nondecreasing size.
    """
    if k < 4:
        raise ValueError("k must be at least 4")
    if g.n == 0 or not g.is_connected():
        raise ValueError("graph must be connected and nonempty")
    if find_induced(g, pattern(f"P{k}")) is not None:
        raise ValueError(f"precondition violated: graph contains an induced P{k}")
    limit = k - 2
    path = _induced_dominating_path(g, limit)
    if path is not None:
        return DominatingStructure("induced-path", path)
    free_name = f"P{limit}"
    free_pat = pattern(free_name)
    for size in range(1, g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            mask = 0
            for v in combo:
                mask |= 1 << v
            if not _dominates(g, mask):
                continue
            sub, _ = g.induced(combo)
            if not sub.is_connected():
                continue
            if find_induced(sub, free_pat) is None:
                return DominatingStructure("connected-subgraph", combo, free_name)
    raise RuntimeError("no dominating structure found; input was not as promised")
