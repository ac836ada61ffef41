"""Immutable simple undirected graphs with bitmask adjacency.

Vertices are dense 0-based indices.  Adjacency is stored as one Python int
per vertex (bit u of ``adj[v]`` set iff uv is an edge), which keeps the
exhaustive small-graph harness fast and allocation free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class GraphFormatError(ValueError):
    """Raised for malformed edge-list documents (carries line and reason)."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class Graph:
    """A finite simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "_adj", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        adj = [0] * n
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) has a vertex outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({key[0]},{key[1]})")
            seen.add(key)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self._adj = tuple(adj)
        self._edges = tuple(sorted(seen))

    # -- basic accessors -------------------------------------------------

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def adjacency(self) -> tuple[int, ...]:
        """Per-vertex neighbour bitmasks."""
        return self._adj

    def adj(self, v: int) -> int:
        return self._adj[v]

    def neighbours(self, v: int) -> Iterator[int]:
        return iter_bits(self._adj[v])

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- structure helpers ------------------------------------------------

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return reachable_mask(self._adj, 1) == self.full_mask

    def components(self) -> list[int]:
        """Connected components as bitmasks, ordered by lowest vertex."""
        out = []
        rest = self.full_mask
        while rest:
            start = rest & -rest
            comp = reachable_mask(self._adj, start)
            out.append(comp)
            rest &= ~comp
        return out

    def relabelled(self, perm: list[int]) -> "Graph":
        """Graph with vertex v renamed to perm[v]."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self._edges])

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph plus the list mapping new indices to old ones."""
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        edges = [
            (pos[u], pos[v]) for u, v in self._edges if u in pos and v in pos
        ]
        return Graph(len(keep), edges), keep

    def complement(self) -> "Graph":
        edges = [
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if not self.has_edge(u, v)
        ]
        return Graph(self.n, edges)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask &= mask - 1


def reachable_mask(adj, start_mask: int) -> int:
    """Vertices reachable from the vertices in ``start_mask``."""
    reach = start_mask
    frontier = start_mask
    while frontier:
        nxt = 0
        m = frontier
        while m:
            v = (m & -m).bit_length() - 1
            nxt |= adj[v]
            m &= m - 1
        frontier = nxt & ~reach
        reach |= frontier
    return reach


# -- text format ----------------------------------------------------------
#
# Line 1 is "n m", followed by m lines "u v" with 0 <= u < v < n.
# Lines starting with '#' are comments, blank lines are ignored.


def parse_graph(text: str) -> Graph:
    """Parse an edge-list document into a Graph."""
    n = m = None
    edges: list[tuple[int, int]] = []
    header_done = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if not header_done:
            if len(fields) != 2:
                raise GraphFormatError(lineno, "header must be 'n m'")
            try:
                n, m = int(fields[0]), int(fields[1])
            except ValueError:
                raise GraphFormatError(lineno, "header must hold two integers") from None
            if n < 0 or m < 0:
                raise GraphFormatError(lineno, "negative count in header")
            header_done = True
            continue
        if len(fields) != 2:
            raise GraphFormatError(lineno, "edge line must be 'u v'")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphFormatError(lineno, "edge line must hold two integers") from None
        if u == v:
            raise GraphFormatError(lineno, f"self-loop at vertex {u}")
        if not (0 <= u < v):
            raise GraphFormatError(lineno, f"edge must satisfy 0 <= u < v, got {u} {v}")
        if v >= n:
            raise GraphFormatError(lineno, f"vertex index {v} out of range for n={n}")
        if (u, v) in edges:
            raise GraphFormatError(lineno, f"duplicate edge ({u},{v})")
        edges.append((u, v))
    if not header_done:
        raise GraphFormatError(1, "empty document")
    if len(edges) != m:
        raise GraphFormatError(1, f"header promises {m} edges, document has {len(edges)}")
    return Graph(n, edges)


def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def graph_to_text(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    lines.extend(f"# {c}" for c in comments)
    return "\n".join(lines) + "\n"


# -- metric computations ---------------------------------------------------


@dataclass(frozen=True)
class Metrics:
    """Eccentricity profile of a connected graph."""

    radius: int
    diameter: int
    eccentricity: tuple[int, ...]


def bfs_distances(adj, n: int, source: int, allowed: int) -> list[int | None]:
    """Hop counts from ``source`` through vertices inside ``allowed``."""
    dist: list[int | None] = [None] * n
    dist[source] = 0
    frontier = 1 << source
    seen = frontier
    d = 0
    while frontier:
        nxt = 0
        m = frontier
        while m:
            v = (m & -m).bit_length() - 1
            nxt |= adj[v]
            m &= m - 1
        frontier = nxt & allowed & ~seen
        seen |= frontier
        d += 1
        m = frontier
        while m:
            v = (m & -m).bit_length() - 1
            dist[v] = d
            m &= m - 1
    return dist


def metrics(g: Graph) -> Metrics:
    """Exact radius, diameter and per-vertex eccentricities (BFS based).

    Raises ValueError on disconnected input; eccentricities are not defined
    as infinities here on purpose.
    """
    if g.n == 0:
        raise ValueError("metrics undefined for the empty graph")
    if not g.is_connected():
        raise ValueError("metrics undefined for disconnected graphs")
    ecc = []
    for v in range(g.n):
        dist = bfs_distances(g.adjacency, g.n, v, g.full_mask)
        ecc.append(max(d for d in dist if d is not None))
    return Metrics(radius=min(ecc), diameter=max(ecc), eccentricity=tuple(ecc))


def distance_within(g: Graph, allowed: Iterable[int], u: int, v: int) -> int | None:
    """Shortest-path length from u to v using only vertices in ``allowed``.

    Returns None when v is unreachable that way.  Both endpoints must belong
    to the allowed set.
    """
    mask = 0
    for w in allowed:
        if not 0 <= w < g.n:
            raise ValueError(f"allowed vertex {w} out of range")
        mask |= 1 << w
    if not mask >> u & 1:
        raise ValueError(f"vertex {u} not in the allowed set")
    if not mask >> v & 1:
        raise ValueError(f"vertex {v} not in the allowed set")
    dist = bfs_distances(g.adjacency, g.n, u, mask)
    return dist[v]
