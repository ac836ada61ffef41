"""Procedures that finish a partial red-blue colouring optimally under
structural hypotheses, plus the matching and flow subroutines they rely on.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .graph import Graph, iter_bits
from .colouring import (
    PartialColouring,
    SolverResult,
    _component_mask,
    bichromatic_count,
    no_cut,
    partially_valid,
    propagate_masks,
    result_from_masks,
    total_valid,
)
from .patterns import find_induced, pattern


class Stats:
    """Mutable branch counters threaded through the solvers."""

    __slots__ = ("branches", "propagations", "fallbacks")

    def __init__(self):
        self.branches = 0
        self.propagations = 0
        self.fallbacks = 0


class PreconditionError(ValueError):
    """A structural hypothesis of a completion procedure does not hold."""


# -- bipartite matching -------------------------------------------------------


@dataclass(frozen=True)
class BipartiteGraph:
    """Explicit bipartition with edges across the sides only."""

    left: tuple[int, ...]
    right: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        ls, rs = set(self.left), set(self.right)
        if ls & rs:
            raise ValueError("sides are not disjoint")
        for u, w in self.edges:
            if u not in ls or w not in rs:
                raise ValueError(f"edge ({u},{w}) does not go left to right")


def max_bipartite_matching(b: BipartiteGraph) -> list[tuple[int, int]]:
    """Maximum matching via Hopcroft-Karp; deterministic for a fixed input."""
    nbr: dict[int, list[int]] = {u: [] for u in b.left}
    for u, w in b.edges:
        nbr[u].append(w)
    for u in nbr:
        nbr[u].sort()
    match_l: dict[int, int] = {}
    match_r: dict[int, int] = {}
    dist: dict[int, float] = {}
    INF = float("inf")

    def bfs() -> bool:
        dist.clear()
        queue = deque()
        for u in b.left:
            if u not in match_l:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for w in nbr[u]:
                nxt = match_r.get(w)
                if nxt is None:
                    found = True
                elif nxt not in dist:
                    dist[nxt] = dist[u] + 1
                    queue.append(nxt)
        return found

    def dfs(u: int) -> bool:
        for w in nbr[u]:
            nxt = match_r.get(w)
            if nxt is None or (
                dist.get(nxt) == dist.get(u, INF) + 1 and dfs(nxt)
            ):
                match_l[u] = w
                match_r[w] = u
                return True
        dist[u] = INF
        return False

    while bfs():
        for u in b.left:
            if u not in match_l:
                dfs(u)
    return sorted(match_l.items())


# -- max flow / min cut -------------------------------------------------------


@dataclass(frozen=True)
class FlowNetwork:
    """Directed arcs with integer capacities; parallel arcs are kept."""

    nodes: int
    arcs: tuple[tuple[int, int, int], ...]
    source: int
    sink: int

    def __post_init__(self):
        if self.source == self.sink:
            raise ValueError("source equals sink")
        for u, v, c in self.arcs:
            if c < 1:
                raise ValueError(f"arc ({u},{v}) has capacity {c} < 1")
            if not (0 <= u < self.nodes and 0 <= v < self.nodes):
                raise ValueError(f"arc ({u},{v}) out of range")


def min_st_cut(f: FlowNetwork) -> tuple[int, tuple[int, ...]]:
    """Minimum s-t cut value and the source side, via Dinic max flow.

    The cut value counts crossing arcs with multiplicity, matching the
    capacities of the arcs leaving the returned side.
    """
    head: list[int] = []
    cap: list[int] = []
    out: list[list[int]] = [[] for _ in range(f.nodes)]
    for u, v, c in f.arcs:
        out[u].append(len(head))
        head.append(v)
        cap.append(c)
        out[v].append(len(head))
        head.append(u)
        cap.append(0)

    def bfs_levels() -> list[int] | None:
        level = [-1] * f.nodes
        level[f.source] = 0
        queue = deque([f.source])
        while queue:
            u = queue.popleft()
            for i in out[u]:
                if cap[i] > 0 and level[head[i]] < 0:
                    level[head[i]] = level[u] + 1
                    queue.append(head[i])
        return level if level[f.sink] >= 0 else None

    def dfs(u: int, limit: int, level, ptr) -> int:
        if u == f.sink:
            return limit
        while ptr[u] < len(out[u]):
            i = out[u][ptr[u]]
            v = head[i]
            if cap[i] > 0 and level[v] == level[u] + 1:
                pushed = dfs(v, min(limit, cap[i]), level, ptr)
                if pushed:
                    cap[i] -= pushed
                    cap[i ^ 1] += pushed
                    return pushed
            ptr[u] += 1
        return 0

    flow = 0
    while True:
        level = bfs_levels()
        if level is None:
            break
        ptr = [0] * f.nodes
        while True:
            pushed = dfs(f.source, 1 << 60, level, ptr)
            if not pushed:
                break
            flow += pushed

    side = {f.source}
    queue = deque([f.source])
    while queue:
        u = queue.popleft()
        for i in out[u]:
            if cap[i] > 0 and head[i] not in side:
                side.add(head[i])
                queue.append(head[i])
    return flow, tuple(sorted(side))


# -- shared branching helper --------------------------------------------------


def neighbourhood_branches(adj, n, red, blue, anchors, exclude=0):
    """Yield colourings of the anchors' uncoloured neighbourhoods.

    Each coloured anchor may end up with at most one opposite-coloured
    neighbour in any valid extension, so its uncoloured neighbours (outside
    ``exclude``) take the anchor's colour except for at most one chosen
    exception.  The produced assignments cover the restriction of every
    valid total extension; conflicting choice vectors are dropped.
    """
    z = ((1 << n) - 1) & ~(red | blue)
    anchors = [a for i, a in enumerate(anchors) if a not in anchors[:i]]
    option_lists = []
    for a in anchors:
        bit = 1 << a
        if bit & red:
            opposite_now = adj[a] & blue
        elif bit & blue:
            opposite_now = adj[a] & red
        else:
            raise ValueError(f"anchor {a} is not coloured")
        if opposite_now:
            option_lists.append([None])
        else:
            option_lists.append([None] + list(iter_bits(adj[a] & z & ~exclude)))
    for vector in itertools.product(*option_lists):
        new_red, new_blue = red, blue
        ok = True
        for a, choice in zip(anchors, vector):
            a_red = bool(red >> a & 1)
            for w in iter_bits(adj[a] & z & ~exclude):
                wbit = 1 << w
                make_red = (not a_red) if w == choice else a_red
                if make_red:
                    if new_blue & wbit:
                        ok = False
                        break
                    new_red |= wbit
                else:
                    if new_red & wbit:
                        ok = False
                        break
                    new_blue |= wbit
            if not ok:
                break
        if ok:
            yield new_red, new_blue


# -- completion under an independent uncoloured set ---------------------------


def complete_independent(c: PartialColouring) -> SolverResult:
    """Optimal completion when the uncoloured vertices form an independent set.

    Vertices seeing one colour join it for free.  Each remaining vertex has
    exactly one red and one blue neighbour (a propagation fixed point), so
    the bichromatic edges it can add form a bipartite pairing; a valid
    extension exists iff that bipartite graph has a matching covering all
    such vertices, and then every completion costs exactly one edge per
    vertex, which is why any perfect matching is optimal.
    """
    g = c.graph
    adj = g.adjacency
    z = c.uncoloured_mask
    m = z
    while m:
        low = m & -m
        if adj[low.bit_length() - 1] & z:
            raise ValueError("uncoloured set is not independent")
        m ^= low
    if not c.red or not c.blue:
        raise ValueError("completion needs at least one red and one blue vertex")
    got = independent_completion_masks(adj, g.n, c.red, c.blue)
    if got is None:
        return no_cut("independent-completion")
    val, red, blue = got
    res = result_from_masks(g, red, blue, "independent-completion")
    assert res.value == val
    return res


def independent_completion_masks(adj, n, red, blue):
    """Mask-level core of complete_independent; returns (value, red, blue).

    Assumes the uncoloured set is independent and the colouring is a
    propagation fixed point; raises ValueError when the fixed-point shape is
    visibly broken, returns None when no valid extension exists.
    """
    if not partially_valid(adj, red, blue):
        return None
    z = ((1 << n) - 1) & ~(red | blue)
    both_sided = []
    for v in iter_bits(z):
        ar = adj[v] & red
        ab = adj[v] & blue
        if ar and ab:
            if ar & (ar - 1) or ab & (ab - 1):
                raise ValueError("not a propagation fixed point: "
                                 f"vertex {v} sees two equal-coloured vertices")
            rn = ar.bit_length() - 1
            bn = ab.bit_length() - 1
            if adj[rn] & blue or adj[bn] & red:
                raise ValueError("not a propagation fixed point: "
                                 f"a coloured neighbour of {v} is already saturated")
            both_sided.append((v, rn, bn))
        elif ar:
            red |= 1 << v
        elif ab:
            blue |= 1 << v
        else:
            red |= 1 << v

    if both_sided:
        left = tuple(v for v, _, _ in both_sided)
        right = tuple(sorted({w for _, rn, bn in both_sided for w in (rn, bn)}))
        edges = tuple((v, w) for v, rn, bn in both_sided for w in (rn, bn))
        matching = max_bipartite_matching(BipartiteGraph(left, right, edges))
        if len(matching) < len(left):
            return None
        for v, w in matching:
            if blue >> w & 1:
                red |= 1 << v
            else:
                blue |= 1 << v
    if not total_valid(adj, n, red, blue):
        return None
    # One-sided vertices join their side for free, each matched vertex adds
    # exactly one bichromatic edge.
    return bichromatic_count(adj, red, blue), red, blue


# -- completion from a small dominating set -----------------------------------


def complete_small_domset(g: Graph, d, cap: int = 6) -> SolverResult:
    """Exact minimum by branching over the colourings of a dominating set.

    Every vertex of the dominating set is either already next to its one
    allowed opposite-coloured neighbour or chooses at most one uncoloured
    neighbour to receive the opposite colour; the rest of its neighbourhood
    follows its own colour.  All total candidates are validity checked.
    """
    dset = sorted(set(d))
    if len(dset) > cap:
        raise PreconditionError(f"dominating set of size {len(dset)} exceeds cap {cap}")
    dmask = 0
    for v in dset:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
        dmask |= 1 << v
    adj = g.adjacency
    cover = dmask
    for v in dset:
        cover |= adj[v]
    if cover != g.full_mask:
        raise PreconditionError("the given set does not dominate the graph")

    full = g.full_mask
    stats = Stats()
    best: tuple[int, int, int] | None = None

    def process(i: int, red: int, blue: int) -> None:
        nonlocal best
        if i == len(dset):
            stats.branches += 1
            if total_valid(adj, g.n, red, blue):
                val = bichromatic_count(adj, red, blue)
                if best is None or val < best[0]:
                    best = (val, red, blue)
            return
        v = dset[i]
        v_red = bool(red >> v & 1)
        opposite = adj[v] & (blue if v_red else red)
        free = adj[v] & ~(red | blue)
        if opposite:
            choices = [None]
        else:
            choices = [None] + list(iter_bits(free))
        for choice in choices:
            r2, b2 = red, blue
            for w in iter_bits(free):
                wbit = 1 << w
                if (w == choice) != v_red:
                    r2 |= wbit
                else:
                    b2 |= wbit
            process(i + 1, r2, b2)

    for assignment in range(1 << len(dset)):
        red = blue = 0
        for i, v in enumerate(dset):
            if assignment >> i & 1:
                red |= 1 << v
            else:
                blue |= 1 << v
        process(0, red, blue)

    if best is None:
        return no_cut("small-domset", branches=stats.branches)
    return result_from_masks(g, best[1], best[2], "small-domset", branches=stats.branches)


# -- completion when one colour dominates the uncoloured set ------------------


def complete_monodominated(c: PartialColouring, validate: bool = True) -> SolverResult:
    """Optimal completion when the uncoloured set is dominated by one colour.

    The driving facts: uncoloured components are monochromatic in every
    valid extension, components without a neighbour of the missing colour
    hang off a single vertex of that colour, and once every uncoloured
    vertex sees both colours all extensions share one value, so existence
    reduces to a 2-SAT over component colours.  The hypotheses below are
    checked when ``validate`` is set; the procedure stays exact regardless,
    they only bound the branching.
    """
    g = c.graph
    adj = g.adjacency
    z = c.uncoloured_mask
    if validate:
        if find_induced(g, pattern("P7")) is not None:
            raise PreconditionError("graph contains an induced P7")
        for mask, name in ((c.red, "red"), (c.blue, "blue")):
            if mask and _component_mask(adj, mask & -mask, mask) != mask:
                raise PreconditionError(f"{name} set does not induce a connected subgraph")
        dom_r = _dominated_by(adj, z, c.red)
        dom_b = _dominated_by(adj, z, c.blue)
        if not (dom_r or dom_b):
            raise PreconditionError("uncoloured set dominated by neither colour")
    stats = Stats()
    got = _monodom(adj, g.n, c.red, c.blue, stats)
    if got is None:
        return no_cut("monodominated", branches=stats.branches,
                      propagations=stats.propagations, fallbacks=stats.fallbacks)
    val, red, blue = got
    res = result_from_masks(g, red, blue, "monodominated", branches=stats.branches,
                            propagations=stats.propagations, fallbacks=stats.fallbacks)
    assert res.value == val
    return res


def _dominated_by(adj, z: int, colours: int) -> bool:
    m = z
    while m:
        low = m & -m
        if not adj[low.bit_length() - 1] & colours:
            return False
        m ^= low
    return True


def _monodom(adj, n, red, blue, stats):
    """Mask-level core of complete_monodominated; returns (value, red, blue)."""
    full = (1 << n) - 1
    if red == 0 and blue == 0:
        raise PreconditionError("nothing is coloured")
    if red == 0:
        got = _monodom(adj, n, blue, red, stats)
        if got is None:
            return None
        val, r2, b2 = got
        return val, b2, r2
    if blue == 0:
        got = _single_colour_finish(adj, n, red, stats)
        return got

    ok, red, blue, nf = propagate_masks(adj, n, red, blue)
    stats.propagations += nf
    if not ok or not partially_valid(adj, red, blue):
        return None
    z = full & ~(red | blue)
    if z == 0:
        if not total_valid(adj, n, red, blue):
            return None
        return bichromatic_count(adj, red, blue), red, blue

    dom_r = _dominated_by(adj, z, red)
    dom_b = _dominated_by(adj, z, blue)
    if not dom_r and not dom_b:
        raise PreconditionError("uncoloured set dominated by neither colour")
    if not dom_r:
        got = _monodom(adj, n, blue, red, stats)
        if got is None:
            return None
        val, r2, b2 = got
        return val, b2, r2

    # Red dominates the uncoloured set from here on.
    missing = 0
    m = z
    while m:
        low = m & -m
        if not adj[low.bit_length() - 1] & blue:
            missing |= low
        m ^= low
    if missing == 0:
        return _resolve_both_sided(adj, n, red, blue)

    x = (missing & -missing).bit_length() - 1
    comp = _component_mask(adj, 1 << x, z)
    carriers = [v for v in iter_bits(comp) if adj[v] & blue]
    assert carriers, "component has no blue neighbour at a fixed point"
    from .graph import bfs_distances

    dist = bfs_distances(adj, n, x, comp)
    y = min(carriers, key=lambda v: (dist[v] if dist[v] is not None else n + 1, v))
    b_mask = adj[y] & blue
    b = (b_mask & -b_mask).bit_length() - 1
    path = _shortest_path_within(adj, n, x, y, comp)
    anchors = []
    for p in path:
        ar = adj[p] & red
        anchors.append((ar & -ar).bit_length() - 1)

    best = None
    for r1, b1 in neighbourhood_branches(adj, n, red, blue, anchors, exclude=comp):
        stats.branches += 1
        if not partially_valid(adj, r1, b1):
            continue
        ok, r1, b1, nf = propagate_masks(adj, n, r1, b1)
        stats.propagations += nf
        if not ok or not partially_valid(adj, r1, b1):
            continue
        z1 = full & ~(r1 | b1)
        b_adjacent = []
        rest = z1
        while rest:
            start = rest & -rest
            cmask = _component_mask(adj, start, z1)
            rest &= ~cmask
            neigh = 0
            mm = cmask
            while mm:
                lw = mm & -mm
                neigh |= adj[lw.bit_length() - 1]
                mm ^= lw
            if neigh >> b & 1:
                b_adjacent.append(cmask)
        options: list[tuple[int, int]] = []
        all_blue = 0
        for cmask in b_adjacent:
            all_blue |= cmask
        options.append((0, all_blue))
        for cmask in b_adjacent:
            options.append((cmask, all_blue & ~cmask))
        for add_r, add_b in options:
            stats.branches += 1
            r2, b2 = r1 | add_r, b1 | add_b
            if not partially_valid(adj, r2, b2):
                continue
            if (full & ~(r2 | b2)) == 0:
                if total_valid(adj, n, r2, b2):
                    cand = (bichromatic_count(adj, r2, b2), r2, b2)
                else:
                    cand = None
            else:
                ok2, r2, b2, nf2 = propagate_masks(adj, n, r2, b2)
                stats.propagations += nf2
                if not ok2 or not partially_valid(adj, r2, b2):
                    continue
                if (full & ~(r2 | b2)).bit_count() >= z.bit_count():
                    # The component carrying y is adjacent to b, so every
                    # option makes progress; guard against looping anyway.
                    stats.fallbacks += 1
                    cand = _brute_finish(adj, n, r2, b2)
                else:
                    cand = _monodom(adj, n, r2, b2, stats)
            if cand is not None and (best is None or cand[0] < best[0]):
                best = cand
    return best


def _single_colour_finish(adj, n, red, stats):
    """All coloured vertices are red: pick one cheapest feasible blue component."""
    ok, red, _, nf = propagate_masks(adj, n, red, 0, use_r4=False)
    stats.propagations += nf
    assert ok
    full = (1 << n) - 1
    z = full & ~red
    if z == 0:
        return None
    if not _dominated_by(adj, z, red):
        raise PreconditionError("uncoloured set dominated by neither colour")
    best = None
    rest = z
    while rest:
        start = rest & -rest
        comp = _component_mask(adj, start, z)
        rest &= ~comp
        feasible = True
        m = red
        while m:
            low = m & -m
            x = adj[low.bit_length() - 1] & comp
            if x & (x - 1):
                feasible = False
                break
            m ^= low
        if feasible:
            size = comp.bit_count()
            if best is None or size < best[0]:
                best = (size, comp)
    if best is None:
        return None
    comp = best[1]
    r2, b2 = red | (z & ~comp), comp
    if not total_valid(adj, n, r2, b2):
        return None
    return bichromatic_count(adj, r2, b2), r2, b2


def _shortest_path_within(adj, n, x, y, within):
    """A shortest path from x to y inside a mask, deterministic tie-breaks."""
    from .graph import bfs_distances

    dist = bfs_distances(adj, n, x, within)
    assert dist[y] is not None
    path = [y]
    cur = y
    while cur != x:
        d = dist[cur]
        prev = None
        for u in iter_bits(adj[cur] & within):
            if dist[u] is not None and dist[u] == d - 1:
                prev = u
                break
        assert prev is not None
        path.append(prev)
        cur = prev
    path.reverse()
    return path


def _resolve_both_sided(adj, n, red, blue):
    """Every uncoloured vertex sees exactly one red and one blue vertex, so
    every valid completion has the same value; existence is a 2-SAT over the
    monochromatic uncoloured components."""
    full = (1 << n) - 1
    z = full & ~(red | blue)
    comps = []
    rest = z
    while rest:
        start = rest & -rest
        cmask = _component_mask(adj, start, z)
        comps.append(cmask)
        rest &= ~cmask
    t = len(comps)
    comp_idx = {}
    for i, cmask in enumerate(comps):
        for v in iter_bits(cmask):
            comp_idx[v] = i

    sat = _TwoSat(t)
    for colours, opposite, is_red_side in ((red, blue, True), (blue, red, False)):
        m = colours
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            zn = adj[v] & z
            if not zn:
                continue
            counts: dict[int, int] = {}
            for u in iter_bits(zn):
                counts[comp_idx[u]] = counts.get(comp_idx[u], 0) + 1
            budget = 0 if adj[v] & opposite else 1
            light = []
            for i, cnt in sorted(counts.items()):
                if cnt >= 2 or budget == 0:
                    # component must take v's colour
                    sat.force(i, is_red_side)
                else:
                    light.append(i)
            for a in range(len(light)):
                for bidx in range(a + 1, len(light)):
                    # at most one light component may oppose v
                    if is_red_side:
                        sat.add_clause(light[a], True, light[bidx], True)
                    else:
                        sat.add_clause(light[a], False, light[bidx], False)
    model = sat.solve()
    if model is None:
        return None
    r2, b2 = red, blue
    for i, cmask in enumerate(comps):
        if model[i]:
            r2 |= cmask
        else:
            b2 |= cmask
    if not total_valid(adj, n, r2, b2):
        return None
    val = bichromatic_count(adj, r2, b2)
    assert val == bichromatic_count(adj, red, blue) + z.bit_count()
    return val, r2, b2


class _TwoSat:
    """Tiny 2-SAT solver (implication graph plus iterative SCC)."""

    def __init__(self, nvars: int):
        self.n = nvars
        self.adj: list[list[int]] = [[] for _ in range(2 * nvars)]

    @staticmethod
    def _lit(var: int, val: bool) -> int:
        return 2 * var + (0 if val else 1)

    def add_clause(self, v1: int, val1: bool, v2: int, val2: bool) -> None:
        a = self._lit(v1, val1)
        b = self._lit(v2, val2)
        self.adj[a ^ 1].append(b)
        self.adj[b ^ 1].append(a)

    def force(self, var: int, val: bool) -> None:
        self.add_clause(var, val, var, val)

    def solve(self) -> list[bool] | None:
        n2 = 2 * self.n
        order: list[int] = []
        seen = [False] * n2
        for s in range(n2):
            if seen[s]:
                continue
            stack = [(s, 0)]
            seen[s] = True
            while stack:
                v, i = stack.pop()
                if i < len(self.adj[v]):
                    stack.append((v, i + 1))
                    u = self.adj[v][i]
                    if not seen[u]:
                        seen[u] = True
                        stack.append((u, 0))
                else:
                    order.append(v)
        radj: list[list[int]] = [[] for _ in range(n2)]
        for v in range(n2):
            for u in self.adj[v]:
                radj[u].append(v)
        comp = [-1] * n2
        c = 0
        for s in reversed(order):
            if comp[s] >= 0:
                continue
            stack = [s]
            comp[s] = c
            while stack:
                v = stack.pop()
                for u in radj[v]:
                    if comp[u] < 0:
                        comp[u] = c
                        stack.append(u)
            c += 1
        result = []
        for var in range(self.n):
            if comp[2 * var] == comp[2 * var + 1]:
                return None
            # Components are numbered in topological order of the
            # condensation, so a literal later than its negation is implied.
            result.append(comp[2 * var] > comp[2 * var + 1])
        return result


# -- two-level dominating set completion --------------------------------------


def complete_ddmp(g: Graph, d, d_prime, cap: int = 3, validate: bool = True) -> SolverResult:
    """Minimum valid colouring in which ``d_prime`` is monochromatic.

    ``d`` must dominate the graph and ``d_prime`` must dominate the subgraph
    induced by ``d``.  The inner set is coloured red (the blue case is its
    mirror image), its neighbourhoods are branched over, and each branch is
    finished by the dominated-completion procedure.
    """
    adj = g.adjacency
    dset = sorted(set(d))
    dp = sorted(set(d_prime))
    if len(dp) > cap:
        raise PreconditionError(f"inner dominating set of size {len(dp)} exceeds cap {cap}")
    dmask = pmask = 0
    for v in dset:
        dmask |= 1 << v
    for v in dp:
        pmask |= 1 << v
    if pmask & ~dmask:
        raise PreconditionError("inner set is not contained in the outer set")
    cover = dmask
    for v in dset:
        cover |= adj[v]
    if cover != g.full_mask:
        raise PreconditionError("outer set does not dominate the graph")
    inner_cover = pmask
    for v in dp:
        inner_cover |= adj[v] & dmask
    if inner_cover & dmask != dmask:
        raise PreconditionError("inner set does not dominate the outer subgraph")
    if validate:
        if not g.is_connected():
            raise PreconditionError("graph must be connected")
        if find_induced(g, pattern("P7")) is not None:
            raise PreconditionError("graph contains an induced P7")

    stats = Stats()
    best = None
    for r1, b1 in neighbourhood_branches(adj, g.n, pmask, 0, dp):
        stats.branches += 1
        if not partially_valid(adj, r1, b1):
            continue
        try:
            cand = _monodom(adj, g.n, r1, b1, stats)
        except PreconditionError:
            stats.fallbacks += 1
            cand = _brute_finish(adj, g.n, r1, b1)
        if cand is not None and (best is None or cand[0] < best[0]):
            best = cand
    if best is None:
        return no_cut("ddmp", branches=stats.branches,
                      propagations=stats.propagations, fallbacks=stats.fallbacks)
    return result_from_masks(g, best[1], best[2], "ddmp", branches=stats.branches,
                             propagations=stats.propagations, fallbacks=stats.fallbacks)


def _brute_finish(adj, n, red, blue):
    """Exact fallback: enumerate the completions of the current state."""
    from .colouring import min_extension_masks

    if (((1 << n) - 1) & ~(red | blue)).bit_count() > 25:
        raise RuntimeError("fallback completion would enumerate too many states")
    return min_extension_masks(adj, n, red, blue)
