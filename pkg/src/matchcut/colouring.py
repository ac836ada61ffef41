"""Red-blue vertex colourings and the propagation engine.

A total colouring is valid when every red vertex has at most one blue
neighbour, every blue vertex has at most one red neighbour, and both colours
occur.  Valid colourings of value v (number of bichromatic edges) correspond
exactly to matching cuts of size v, which is what the solvers exploit.

Colourings are value types: every operation returns a new object.  The mask
level helpers at the bottom are what the solvers use internally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .graph import Graph, iter_bits

RED = "R"
BLUE = "B"
UNCOLOURED = "U"


class PartialColouring:
    """Per-vertex state in {red, blue, uncoloured} over a fixed graph."""

    __slots__ = ("graph", "red", "blue")

    def __init__(self, graph: Graph, red: int = 0, blue: int = 0):
        if red & blue:
            raise ValueError("a vertex cannot be both red and blue")
        if (red | blue) & ~graph.full_mask:
            raise ValueError("coloured vertex outside the graph")
        self.graph = graph
        self.red = red
        self.blue = blue

    @classmethod
    def from_sets(cls, graph: Graph, red: Iterable[int], blue: Iterable[int]) -> "PartialColouring":
        rm = bm = 0
        for v in red:
            rm |= 1 << v
        for v in blue:
            bm |= 1 << v
        return cls(graph, rm, bm)

    def colour_of(self, v: int) -> str:
        if self.red >> v & 1:
            return RED
        if self.blue >> v & 1:
            return BLUE
        return UNCOLOURED

    @property
    def uncoloured_mask(self) -> int:
        return self.graph.full_mask & ~(self.red | self.blue)

    def red_vertices(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.red))

    def blue_vertices(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.blue))

    def uncoloured_vertices(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.uncoloured_mask))

    def is_total(self) -> bool:
        return self.uncoloured_mask == 0

    def is_valid_total(self) -> bool:
        return self.is_total() and total_valid(self.graph.adjacency, self.graph.n, self.red, self.blue)

    def value(self) -> int:
        """Number of bichromatic edges."""
        return bichromatic_count(self.graph.adjacency, self.red, self.blue)

    def with_colour(self, v: int, colour: str) -> "PartialColouring":
        if not 0 <= v < self.graph.n:
            raise ValueError(f"vertex {v} out of range")
        if (self.red | self.blue) >> v & 1:
            raise ValueError(f"vertex {v} is already coloured")
        if colour == RED:
            return PartialColouring(self.graph, self.red | 1 << v, self.blue)
        if colour == BLUE:
            return PartialColouring(self.graph, self.red, self.blue | 1 << v)
        raise ValueError(f"unknown colour {colour!r}")

    def serialize(self) -> str:
        """One line per vertex: 'index R|B|U'."""
        return "\n".join(f"{v} {self.colour_of(v)}" for v in range(self.graph.n)) + "\n"

    @classmethod
    def parse(cls, graph: Graph, text: str) -> "PartialColouring":
        rm = bm = 0
        seen = set()
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            if len(fields) != 2:
                raise ValueError(f"bad colouring line {line!r}")
            v = int(fields[0])
            if not 0 <= v < graph.n or v in seen:
                raise ValueError(f"bad or repeated vertex {v} in colouring")
            seen.add(v)
            if fields[1] == RED:
                rm |= 1 << v
            elif fields[1] == BLUE:
                bm |= 1 << v
            elif fields[1] != UNCOLOURED:
                raise ValueError(f"unknown colour {fields[1]!r}")
        if len(seen) != graph.n:
            raise ValueError("colouring does not mention every vertex")
        return cls(graph, rm, bm)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PartialColouring)
            and self.graph == other.graph
            and self.red == other.red
            and self.blue == other.blue
        )

    def __hash__(self) -> int:
        return hash((self.graph, self.red, self.blue))

    def __repr__(self) -> str:
        return f"PartialColouring(red={self.red_vertices()}, blue={self.blue_vertices()})"


@dataclass(frozen=True)
class MatchingCut:
    """An edge cut that is also a matching, with its defining partition."""

    edges: tuple[tuple[int, int], ...]
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.edges)

    def violation(self, g: Graph) -> str | None:
        """Reason the invariants fail on g, or None if this is a matching cut."""
        if not self.side_a or not self.side_b:
            return "not a partition: a side is empty"
        a = b = 0
        for v in self.side_a:
            if not 0 <= v < g.n:
                return f"not a partition: vertex {v} out of range"
            a |= 1 << v
        for v in self.side_b:
            if not 0 <= v < g.n:
                return f"not a partition: vertex {v} out of range"
            b |= 1 << v
        if a & b or a | b != g.full_mask:
            return "not a partition: sides overlap or miss vertices"
        touched = 0
        listed = set()
        for u, v in self.edges:
            if not g.has_edge(u, v):
                return f"edge ({u},{v}) not in the graph"
            key = (min(u, v), max(u, v))
            if key in listed:
                return f"edge ({u},{v}) listed twice"
            listed.add(key)
            uv = (1 << u) | (1 << v)
            if touched & uv:
                return "not a matching: two cut edges share a vertex"
            touched |= uv
            if bool(a >> u & 1) == bool(a >> v & 1):
                return f"edge ({u},{v}) does not cross the partition"
        for u in iter_bits(a):
            crossing = g.adj(u) & b
            for v in iter_bits(crossing):
                if (min(u, v), max(u, v)) not in listed:
                    return f"not an edge cut: crossing edge ({u},{v}) missing"
        return None


def colouring_to_cut(c: PartialColouring) -> MatchingCut:
    """Bichromatic edges of a total valid colouring, as a matching cut."""
    if not c.is_total():
        raise ValueError("colouring is not total")
    if not c.is_valid_total():
        raise ValueError("colouring is not valid")
    g = c.graph
    edges = tuple(
        (u, v) for u, v in g.edges
        if (c.red >> u & 1) != (c.red >> v & 1)
    )
    return MatchingCut(edges=edges, side_a=c.red_vertices(), side_b=c.blue_vertices())


def cut_to_colouring(g: Graph, m: MatchingCut) -> PartialColouring:
    """Colour side A red and side B blue; total and valid by construction."""
    reason = m.violation(g)
    if reason is not None:
        raise ValueError(reason)
    c = PartialColouring.from_sets(g, m.side_a, m.side_b)
    assert c.is_valid_total()
    return c


# -- propagation ------------------------------------------------------------

TraceStep = tuple  # (rule id, affected vertices, colour or None)


@dataclass(frozen=True)
class PropagationOutcome:
    """Either no answer, or the extended colouring plus the rule trace."""

    no_answer: bool
    colouring: PartialColouring | None
    trace: tuple[TraceStep, ...] = field(default_factory=tuple)


def propagate(c: PartialColouring) -> PropagationOutcome:
    """Apply rules R1-R5 exhaustively, lowest-numbered rule first.

    Requires at least one red and one blue vertex, since the component rule
    R4 is only sound with both colours present.  The answer is deterministic
    and the trace replays to the same outcome.
    """
    if not c.red or not c.blue:
        raise ValueError("propagation needs at least one red and one blue vertex")
    trace: list[TraceStep] = []
    ok, red, blue, _ = propagate_masks(
        c.graph.adjacency, c.graph.n, c.red, c.blue, trace=trace
    )
    if not ok:
        return PropagationOutcome(True, None, tuple(trace))
    return PropagationOutcome(False, PartialColouring(c.graph, red, blue), tuple(trace))


def propagate_masks(adj, n, red, blue, trace=None, use_r4=True):
    """Mask-level propagation core: returns (ok, red, blue, firings)."""
    full = (1 << n) - 1
    nfire = 0
    while True:
        z = full & ~(red | blue)
        rp = 0
        m = red
        while m:
            low = m & -m
            if adj[low.bit_length() - 1] & blue:
                rp |= low
            m ^= low
        bp = 0
        m = blue
        while m:
            low = m & -m
            if adj[low.bit_length() - 1] & red:
                bp |= low
            m ^= low

        # R1 (conflicts) and the first R2 candidate, in one ascending scan.
        r2v = -1
        r2red = False
        m = z
        while m:
            low = m & -m
            v = low.bit_length() - 1
            a = adj[v]
            ar = a & red
            ab = a & blue
            two_r = ar & (ar - 1)
            two_b = ab & (ab - 1)
            arp = a & rp
            abp = a & bp
            if arp and abp:
                if trace is not None:
                    trace.append(("R1.1", (v,), None))
                return False, red, blue, nfire
            if two_r and abp:
                if trace is not None:
                    trace.append(("R1.2", (v,), None))
                return False, red, blue, nfire
            if two_b and arp:
                if trace is not None:
                    trace.append(("R1.3", (v,), None))
                return False, red, blue, nfire
            if two_r and two_b:
                if trace is not None:
                    trace.append(("R1.4", (v,), None))
                return False, red, blue, nfire
            if r2v < 0:
                if two_r or arp:
                    r2v = v
                    r2red = True
                elif two_b or abp:
                    r2v = v
                    r2red = False
            m ^= low
        if r2v >= 0:
            nfire += 1
            if r2red:
                red |= 1 << r2v
                if trace is not None:
                    trace.append(("R2.1", (r2v,), RED))
            else:
                blue |= 1 << r2v
                if trace is not None:
                    trace.append(("R2.2", (r2v,), BLUE))
            continue

        # R3: triangles containing a coloured vertex force the same colour.
        fired = False
        m = z
        while m and not fired:
            low = m & -m
            v = low.bit_length() - 1
            a = adj[v]
            cm = a & (red | blue)
            while cm:
                lu = cm & -cm
                u = lu.bit_length() - 1
                if a & adj[u]:
                    nfire += 1
                    if red & lu:
                        red |= low
                        if trace is not None:
                            trace.append(("R3", (v,), RED))
                    else:
                        blue |= low
                        if trace is not None:
                            trace.append(("R3", (v,), BLUE))
                    fired = True
                    break
                cm ^= lu
            m ^= low
        if fired:
            continue

        # R4: one-sided uncoloured components take the only colour they see.
        if use_r4:
            fired = False
            rest = z
            while rest:
                start = rest & -rest
                comp = _component_mask(adj, start, z)
                rest &= ~comp
                nbrs = 0
                mm = comp
                while mm:
                    lu = mm & -mm
                    nbrs |= adj[lu.bit_length() - 1]
                    mm ^= lu
                if not nbrs & red:
                    nfire += 1
                    blue |= comp
                    if trace is not None:
                        trace.append(("R4.1", tuple(iter_bits(comp)), BLUE))
                    fired = True
                    break
                if not nbrs & blue:
                    nfire += 1
                    red |= comp
                    if trace is not None:
                        trace.append(("R4.2", tuple(iter_bits(comp)), RED))
                    fired = True
                    break
            if fired:
                continue

        # R5: five vertices carrying a complete bipartite K_{2,3} subgraph
        # are monochromatic, so a coloured member decides the rest.
        r5v = -1
        r5red = False
        for a_v in range(n - 1):
            aa = adj[a_v]
            for b_v in range(a_v + 1, n):
                cn = aa & adj[b_v] & ~((1 << a_v) | (1 << b_v))
                if cn.bit_count() < 3:
                    continue
                s = cn | (1 << a_v) | (1 << b_v)
                sr = s & red
                sb = s & blue
                if sr and sb:
                    if trace is not None:
                        trace.append(("R5.1", (a_v, b_v), None))
                    return False, red, blue, nfire
                if (sr or sb) and s & z and r5v < 0:
                    r5v = ((s & z) & -(s & z)).bit_length() - 1
                    r5red = bool(sr)
        if r5v >= 0:
            nfire += 1
            if r5red:
                red |= 1 << r5v
                if trace is not None:
                    trace.append(("R5.2", (r5v,), RED))
            else:
                blue |= 1 << r5v
                if trace is not None:
                    trace.append(("R5.2", (r5v,), BLUE))
            continue

        return True, red, blue, nfire


def _component_mask(adj, start: int, within: int) -> int:
    comp = start
    frontier = start
    while frontier:
        nxt = 0
        m = frontier
        while m:
            low = m & -m
            nxt |= adj[low.bit_length() - 1]
            m ^= low
        frontier = nxt & within & ~comp
        comp |= frontier
    return comp


# -- mask-level validity and value helpers ----------------------------------


def bichromatic_count(adj, red: int, blue: int) -> int:
    total = 0
    m = red
    while m:
        low = m & -m
        total += (adj[low.bit_length() - 1] & blue).bit_count()
        m ^= low
    return total


def partially_valid(adj, red: int, blue: int) -> bool:
    """No coloured vertex already has two opposite-coloured neighbours."""
    m = red
    while m:
        low = m & -m
        x = adj[low.bit_length() - 1] & blue
        if x & (x - 1):
            return False
        m ^= low
    m = blue
    while m:
        low = m & -m
        x = adj[low.bit_length() - 1] & red
        if x & (x - 1):
            return False
        m ^= low
    return True


def total_valid(adj, n, red: int, blue: int) -> bool:
    if not red or not blue:
        return False
    if red | blue != (1 << n) - 1 or red & blue:
        return False
    return partially_valid(adj, red, blue)


def min_extension_masks(adj, n, red: int, blue: int):
    """Exact minimum over all valid total extensions, by enumeration.

    Returns (value, red, blue) of a minimising extension or None.
    """
    full = (1 << n) - 1
    z = full & ~(red | blue)
    best = None
    sub = z
    while True:
        r = red | sub
        b = full & ~r
        if r and b:
            val = 0
            m = r
            while m:
                low = m & -m
                x = (adj[low.bit_length() - 1] & b).bit_count()
                if x > 1:
                    val = -1
                    break
                val += x
                m ^= low
            if val >= 0:
                ok = True
                m = b
                while m:
                    low = m & -m
                    x = adj[low.bit_length() - 1] & r
                    if x & (x - 1):
                        ok = False
                        break
                    m ^= low
                if ok and (best is None or val < best[0]):
                    best = (val, r, b)
        if sub == 0:
            break
        sub = (sub - 1) & z
    return best


# -- solver result -----------------------------------------------------------


@dataclass
class SolverResult:
    """Outcome of an exact solve: no cut, or a minimum cut with certificate."""

    value: int | None
    colouring: PartialColouring | None
    cut: MatchingCut | None
    solver: str = ""
    branches: int = 0
    propagations: int = 0
    fallbacks: int = 0

    @property
    def found(self) -> bool:
        return self.value is not None

    def describe(self) -> str:
        if not self.found:
            return "no matching cut"
        return f"minimum matching cut of size {self.value}"


def result_from_masks(g: Graph, red: int, blue: int, solver: str,
                      branches: int = 0, propagations: int = 0,
                      fallbacks: int = 0) -> SolverResult:
    """Package a total valid colouring (as masks) into a SolverResult."""
    c = PartialColouring(g, red, blue)
    cut = colouring_to_cut(c)
    value = c.value()
    assert value == cut.size
    return SolverResult(
        value=value, colouring=c, cut=cut, solver=solver,
        branches=branches, propagations=propagations, fallbacks=fallbacks,
    )


def no_cut(solver: str, branches: int = 0, propagations: int = 0,
           fallbacks: int = 0) -> SolverResult:
    return SolverResult(
        value=None, colouring=None, cut=None, solver=solver,
        branches=branches, propagations=propagations, fallbacks=fallbacks,
    )


def min_value_extension_bruteforce(c: PartialColouring, cap: int = 25) -> SolverResult:
    """Try all completions of the uncoloured set; exact but exponential.

    This is the oracle the propagation and completion procedures are tested
    against, so it deliberately shares no logic with them.
    """
    nz = c.uncoloured_mask.bit_count()
    if nz > cap:
        raise ValueError(f"{nz} uncoloured vertices exceed the cap of {cap}")
    best = min_extension_masks(c.graph.adjacency, c.graph.n, c.red, c.blue)
    if best is None:
        return no_cut("bruteforce-extension", branches=1 << nz)
    val, r, b = best
    res = result_from_masks(c.graph, r, b, "bruteforce-extension", branches=1 << nz)
    assert res.value == val
    return res
