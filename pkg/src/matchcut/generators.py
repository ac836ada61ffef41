"""Graph families for the harness: fixed families, seeded random models,
exhaustive labelled enumeration and enumeration up to isomorphism.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Iterator

from .graph import Graph, iter_bits, reachable_mask


def path_graph(k: int) -> Graph:
    if k < 1:
        raise ValueError("path needs at least one vertex")
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise ValueError("cycle needs at least three vertices")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def star_graph(leaves: int) -> Graph:
    """Star K_{1,leaves}: vertex 0 is the centre."""
    if leaves < 1:
        raise ValueError("star needs at least one leaf")
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(k: int) -> Graph:
    if k < 1:
        raise ValueError("complete graph needs at least one vertex")
    return Graph(k, list(itertools.combinations(range(k), 2)))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("both sides must be nonempty")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n,p), deterministic for a given seed."""
    if n < 1:
        raise ValueError("need at least one vertex")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0,1]")
    rng = random.Random(seed)
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < p
    ]
    return Graph(n, edges)


def random_connected_graph(n: int, p: float, rng: random.Random) -> Graph:
    """G(n,p) plus a random spanning tree, so the sample is always connected."""
    if n < 1:
        raise ValueError("need at least one vertex")
    edges = {
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < p
    }
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u = order[i]
        v = order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    return Graph(n, sorted(edges))


def random_pendant_graph(n: int, p: float, rng: random.Random) -> Graph:
    """Connected graph on n vertices whose last vertex has degree one."""
    if n < 2:
        raise ValueError("need at least two vertices")
    core = random_connected_graph(n - 1, p, rng)
    attach = rng.randrange(n - 1)
    return Graph(n, list(core.edges) + [(attach, n - 1)])


def random_cograph(n: int, seed: int) -> Graph:
    """Random cograph on n vertices built from a random cotree.

    Internal nodes alternate freely between disjoint union and join, except
    that the root is a join whenever n >= 2, which makes the result
    connected.  The output never contains an induced path on four vertices.
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    rng = random.Random(seed)

    def build(k: int, force_join: bool) -> list[tuple[int, int]]:
        # Returns edges over vertices 0..k-1 of the subtree.
        if k == 1:
            return []
        a = rng.randint(1, k - 1)
        left = build(a, False)
        right = [(u + a, v + a) for u, v in build(k - a, False)]
        edges = left + right
        if force_join or rng.random() < 0.5:
            edges += [(i, j) for i in range(a) for j in range(a, k)]
        return edges

    return Graph(n, build(n, force_join=True))


ALL_CONNECTED_LIMIT = 9


def all_connected_graphs(n: int) -> Iterator[Graph]:
    """Every connected graph on n labelled vertices, exactly once, lazily."""
    if not 1 <= n <= ALL_CONNECTED_LIMIT:
        raise ValueError(f"labelled enumeration supports 1 <= n <= {ALL_CONNECTED_LIMIT}")
    pairs = list(itertools.combinations(range(n), 2))
    full = (1 << n) - 1
    for mask in range(1 << len(pairs)):
        adj = [0] * n
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            u, v = pairs[i]
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            m &= m - 1
        if reachable_mask(adj, 1) == full:
            yield Graph(n, [pairs[i] for i in iter_bits(mask)])


def generate(family: str, *args) -> Graph | Iterator[Graph]:
    """Dispatch a family spec as used by the CLI ``gen`` command."""
    ints = [int(a) for a in args if not isinstance(a, float)]
    if family == "path":
        return path_graph(*ints)
    if family == "cycle":
        return cycle_graph(*ints)
    if family == "star":
        return star_graph(*ints)
    if family == "complete":
        return complete_graph(*ints)
    if family == "complete-bipartite":
        return complete_bipartite(*ints)
    if family == "gnp":
        n, p, seed = args
        return gnp(int(n), float(p), int(seed))
    if family == "cograph":
        n, seed = args
        return random_cograph(int(n), int(seed))
    if family == "all-connected":
        return all_connected_graphs(*ints)
    raise ValueError(f"unknown family {family!r}")


# -- enumeration up to isomorphism -----------------------------------------
#
# Graphs on up to 8 vertices are generated by vertex augmentation with
# canonical-form deduplication.  The canonical form is the lexicographically
# smallest per-position adjacency-row sequence over all vertex orderings that
# respect an iterated neighbourhood-refinement partition; the refinement plus
# prefix pruning keeps the search tiny even for regular graphs.


def _refine_cells(adjmasks: tuple[int, ...], n: int) -> list[list[int]]:
    colour = [adjmasks[v].bit_count() for v in range(n)]
    for _ in range(n):
        sigs = []
        for v in range(n):
            packed = 0
            m = adjmasks[v]
            while m:
                u = (m & -m).bit_length() - 1
                packed += 1 << (colour[u] * 4)
                m &= m - 1
            sigs.append((colour[v] << 40) | packed)
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if new == colour:
            break
        colour = new
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(colour[v], []).append(v)
    return [cells[c] for c in sorted(cells)]


def canonical_form(g: Graph) -> tuple[int, ...]:
    """Canonical code, equal for two graphs iff they are isomorphic."""
    n = g.n
    if n == 0:
        return (0,)
    adj = g.adjacency
    cells = _refine_cells(adj, n)
    group_of_pos: list[int] = []
    for ci, cell in enumerate(cells):
        group_of_pos.extend([ci] * len(cell))
    cur = [0] * n
    placed = [0] * n
    best: list[int] | None = None

    def rec(p: int, used: int, tight: bool) -> None:
        nonlocal best
        if p == n:
            if best is None or cur < best:
                best = cur[:]
            return
        for v in cells[group_of_pos[p]]:
            bit = 1 << v
            if used & bit:
                continue
            av = adj[v]
            row = 0
            for j in range(p):
                if av >> placed[j] & 1:
                    row |= 1 << j
            if best is None or not tight:
                sub_tight = False
            elif row > best[p]:
                continue
            else:
                sub_tight = row == best[p]
            cur[p] = row
            placed[p] = v
            rec(p + 1, used | bit, sub_tight)
        return

    rec(0, 0, False)
    assert best is not None
    return (n, *best)


@lru_cache(maxsize=None)
def nonisomorphic_graphs(n: int) -> tuple[Graph, ...]:
    """All graphs on n vertices up to isomorphism (n <= 8)."""
    if not 0 <= n <= 8:
        raise ValueError("isomorph-free enumeration supports n <= 8")
    if n == 0:
        return (Graph(0),)
    out = []
    seen = set()
    for base in nonisomorphic_graphs(n - 1):
        for nbrs in range(1 << (n - 1)):
            g = Graph(
                n,
                list(base.edges) + [(u, n - 1) for u in iter_bits(nbrs)],
            )
            key = canonical_form(g)
            if key not in seen:
                seen.add(key)
                out.append(g)
    return tuple(out)


def nonisomorphic_connected_graphs(n: int) -> tuple[Graph, ...]:
    return tuple(g for g in nonisomorphic_graphs(n) if g.is_connected())
