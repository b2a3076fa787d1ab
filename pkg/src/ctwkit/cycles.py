"""Geodesic cycles and GF(2) cycle-space machinery.

A cycle is geodesic when the distance between any two of its vertices
measured along the cycle equals their distance in the whole graph. Such
cycles admit strong pruning during enumeration: any pair of vertices already
placed on a partial arc either pins the final cycle length exactly (when the
graph distance beats the arc distance) or forces a lower bound on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import InternalCheckError
from .graph import Graph, VertexSet, components


def _canonical(seq: list[int]) -> tuple[int, ...]:
    i = seq.index(min(seq))
    forward = seq[i:] + seq[:i]
    backward = [forward[0]] + forward[1:][::-1]
    return tuple(forward if forward[1] < backward[1] else backward)


@dataclass(frozen=True)
class Cycle:
    """Closed vertex sequence in canonical form: least vertex first, then
    the smaller of its two cycle neighbors."""

    vertices: tuple[int, ...]

    @classmethod
    def from_vertices(cls, g: Graph, seq) -> "Cycle":
        seq = list(seq)
        k = len(seq)
        if k < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        if len(set(seq)) != k:
            raise ValueError("cycle repeats a vertex")
        for a, b in zip(seq, seq[1:] + seq[:1]):
            if not g.has_edge(a, b):
                raise ValueError(f"({a}, {b}) is not an edge of the graph")
        return cls(_canonical(seq))

    @property
    def length(self) -> int:
        return len(self.vertices)

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @cached_property
    def edge_pairs(self) -> frozenset[tuple[int, int]]:
        seq = self.vertices
        return frozenset(
            (min(a, b), max(a, b)) for a, b in zip(seq, seq[1:] + seq[:1])
        )


@dataclass(frozen=True)
class EdgeVector:
    """GF(2) element of the edge space; addition is symmetric difference."""

    edges: frozenset[tuple[int, int]]

    @classmethod
    def from_edges(cls, pairs) -> "EdgeVector":
        return cls(frozenset((min(a, b), max(a, b)) for a, b in pairs))

    @classmethod
    def from_cycle(cls, c: Cycle) -> "EdgeVector":
        return cls(c.edge_pairs)

    def __xor__(self, other: "EdgeVector") -> "EdgeVector":
        return EdgeVector(self.edges ^ other.edges)

    def __bool__(self) -> bool:
        return bool(self.edges)


def edge_vector(g: Graph, pairs) -> EdgeVector:
    """Validated constructor: every pair must be an edge of g."""
    vec = EdgeVector.from_edges(pairs)
    for a, b in vec.edges:
        if not g.has_edge(a, b):
            raise ValueError(f"({a}, {b}) is not an edge of the graph")
    return vec


def is_geodesic_cycle(g: Graph, c: Cycle) -> bool:
    """True iff for every two cycle vertices the cycle distance equals the
    graph distance."""
    seq = c.vertices
    k = len(seq)
    for a, b in zip(seq, seq[1:] + seq[:1]):
        if not g.has_edge(a, b):
            raise ValueError(f"({a}, {b}) is not an edge of the graph")
    dist = g.distances
    for i in range(k):
        row = dist[seq[i]]
        for j in range(i + 1, k):
            gap = j - i
            if min(gap, k - gap) != row[seq[j]]:
                return False
    return True


def enumerate_geodesic_cycles(g: Graph) -> list[Cycle]:
    """All geodesic cycles, in canonical form, sorted by (length, sequence).

    DFS over arcs rooted at each cycle's least vertex. For vertices at arc
    positions i < j with graph distance D and arc distance gap = j - i,
    a geodesic closure needs min(gap, k - gap) = D, so D < gap pins the
    final length to k = D + gap and D = gap forces k >= 2 * gap. Conflicting
    pins, pins below the current arc, and anything above twice the diameter
    plus one are pruned. Accepted closures are re-checked in full.
    """
    dist = g.distances
    cap = 2 * g.diameter + 1
    found: list[Cycle] = []

    def wraps_ok(path: list[int]) -> bool:
        k = len(path)
        for i in range(k):
            row = dist[path[i]]
            for j in range(i + 1, k):
                gap = j - i
                if min(gap, k - gap) != row[path[j]]:
                    return False
        return True

    def extend(path: list[int], used: set[int], pin: int | None, floor: int):
        root = path[0]
        last = path[-1]
        count = len(path)
        if (
            count >= 3
            and g.has_edge(last, root)
            and path[1] < path[-1]
            and (pin is None or pin == count)
            and floor <= count
            and wraps_ok(path)
        ):
            found.append(Cycle(tuple(path)))
        if pin is not None and count >= pin:
            return
        if count >= cap:
            return
        for w in g.adj[last]:
            if w <= root or w in used:
                continue
            new_pin, new_floor, ok = pin, floor, True
            for i, p in enumerate(path):
                d = dist[p][w]
                gap = count - i
                if d == gap:
                    if 2 * gap > new_floor:
                        new_floor = 2 * gap
                else:
                    forced = d + gap
                    if new_pin is None:
                        new_pin = forced
                    elif new_pin != forced:
                        ok = False
                        break
            if not ok or new_floor > cap:
                continue
            if new_pin is not None and (
                new_pin < new_floor or new_pin < count + 1 or new_pin > cap
            ):
                continue
            path.append(w)
            used.add(w)
            extend(path, used, new_pin, new_floor)
            used.remove(w)
            path.pop()

    for root in range(g.n):
        extend([root], {root}, None, 3)
    found.sort(key=lambda c: (c.length, c.vertices))
    return found


def longest_geodesic_cycle(g: Graph) -> int:
    """Maximum geodesic cycle length; 1 when the graph is a forest."""
    return max((c.length for c in enumerate_geodesic_cycles(g)), default=1)


@dataclass(frozen=True)
class ClosureSubgraph:
    """Union of the cycles (from a given family) that meet a seed set."""

    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]

    def is_connected(self) -> bool:
        if len(self.vertices) <= 1:
            return True
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        start = min(self.vertices)
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)


def cycle_closure(cycles, seeds: VertexSet) -> ClosureSubgraph:
    """Union of the given cycles meeting seeds, as a vertex and edge set."""
    vs: set[int] = set()
    es: set[tuple[int, int]] = set()
    for c in cycles:
        if c.vertex_set & seeds:
            vs |= c.vertex_set
            es |= c.edge_pairs
    return ClosureSubgraph(frozenset(vs), frozenset(es))


@dataclass(frozen=True)
class ClosureBoundReport:
    preconditions_ok: bool
    failures: tuple[str, ...]
    cycle_length_cap: int
    bound: int
    max_distance: int
    within_bound: bool


def closure_distance_bound(g: Graph, cycles, x: VertexSet) -> ClosureBoundReport:
    """Distance guarantee inside x: when x lies in its own closure under the
    cycle family and that closure is connected, any two vertices of x are at
    graph distance at most (max cycle length) * (|x| - 1).

    Precondition failures are reported, not raised; a bound violation with
    satisfied preconditions is impossible and raises.
    """
    closure = cycle_closure(cycles, x)
    failures = []
    if not x <= closure.vertices:
        failures.append("seed set not contained in its closure")
    if not closure.is_connected():
        failures.append("closure not connected")
    cap = max((c.length for c in cycles), default=0)
    xs = sorted(x)
    max_distance = 0
    for i, u in enumerate(xs):
        for v in xs[i + 1 :]:
            d = g.distances[u][v]
            if d > max_distance:
                max_distance = d
    bound = cap * (len(x) - 1) if len(x) > 1 else 0
    within = max_distance <= bound
    ok = not failures
    if ok and not within:
        raise InternalCheckError(
            f"closure distance {max_distance} exceeds bound {bound}"
        )
    return ClosureBoundReport(
        preconditions_ok=ok,
        failures=tuple(failures),
        cycle_length_cap=cap,
        bound=bound,
        max_distance=int(max_distance),
        within_bound=within,
    )


def geodesic_cycle_basis(g: Graph) -> list[Cycle]:
    """Independent geodesic cycles spanning the cycle space.

    Enumerated cycles are taken in (length, sequence) order and kept when
    they are independent over GF(2), until rank m - n + #components.
    """
    target = g.m - g.n + len(components(g))
    if target == 0:
        return []
    edge_index = {e: i for i, e in enumerate(g.edge_list)}
    pivots: dict[int, int] = {}
    chosen: list[Cycle] = []
    for c in enumerate_geodesic_cycles(g):
        mask = 0
        for e in c.edge_pairs:
            mask |= 1 << edge_index[e]
        while mask:
            low = mask & -mask
            if low in pivots:
                mask ^= pivots[low]
            else:
                break
        if mask:
            pivots[mask & -mask] = mask
            chosen.append(c)
            if len(chosen) == target:
                return chosen
    raise InternalCheckError(
        f"geodesic cycles span only rank {len(chosen)} of {target}"
    )


def decompose(z: EdgeVector, basis) -> list[int]:
    """GF(2) coefficients expressing z as a sum of the given cycles.

    The cycle list need not be independent; dependent entries simply get
    coefficient 0. Raises when z is outside the span.
    """
    basis = list(basis)
    pivots: dict[tuple[int, int], tuple[frozenset, int]] = {}

    def reduce(vec: frozenset, coeff: int):
        while vec:
            p = min(vec)
            if p not in pivots:
                break
            pv, pc = pivots[p]
            vec = vec ^ pv
            coeff ^= pc
        return vec, coeff

    for idx, c in enumerate(basis):
        vec, coeff = reduce(frozenset(c.edge_pairs), 1 << idx)
        if vec:
            pivots[min(vec)] = (vec, coeff)
    vec, coeff = reduce(z.edges, 0)
    if vec:
        raise ValueError("target vector is not in the span of the given cycles")
    return [(coeff >> i) & 1 for i in range(len(basis))]


def _split_cycle_at(c: Cycle, x: int, y: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The two x..y arcs of the cycle, both oriented from x to y."""
    seq = c.vertices
    if x not in seq or y not in seq or x == y:
        raise ValueError(f"{x} and {y} must be two distinct cycle vertices")
    i, j = seq.index(x), seq.index(y)
    if i > j:
        one = seq[j : i + 1][::-1]
        other = (seq[i:] + seq[: j + 1])
    else:
        one = seq[i : j + 1]
        other = (seq[j:] + seq[: i + 1])[::-1]
    return tuple(one), tuple(other)


def _path_edges(path) -> frozenset[tuple[int, int]]:
    return frozenset((min(a, b), max(a, b)) for a, b in zip(path, path[1:]))


def _path_in_edge_set(edges, x: int, y: int) -> tuple[int, ...] | None:
    adj: dict[int, list[int]] = {}
    for a, b in sorted(edges):
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if x not in adj and x != y:
        return None
    prev = {x: x}
    frontier = [x]
    while frontier and y not in prev:
        nxt = []
        for u in frontier:
            for w in adj.get(u, ()):
                if w not in prev:
                    prev[w] = u
                    nxt.append(w)
        frontier = nxt
    if y not in prev:
        return None
    out = [y]
    while out[-1] != x:
        out.append(prev[out[-1]])
    return tuple(reversed(out))


def find_closure_path(
    g: Graph,
    separator: VertexSet,
    far_side: VertexSet,
    near_side: VertexSet,
    cycle: Cycle,
    x: int,
    y: int,
    cycles,
) -> tuple[int, ...]:
    """An x..y path inside the closure of the separator under the cycle family.

    The cycle must cross the separation as two x..y arcs, one with interior
    beyond the separator and one inside the near side, and must lie in the
    GF(2) span of the family. The far arc is corrected by the sum of the
    far-side summands of a decomposition of the cycle; a path through the
    resulting edge set exists by parity and lies inside the closure.
    """
    cycles = list(cycles)
    all_vertices = frozenset(range(g.n))
    if far_side | near_side != all_vertices:
        raise ValueError("separation sides do not cover the graph")
    if far_side & near_side != separator:
        raise ValueError("separation sides must intersect exactly in the separator")
    far_only = far_side - separator
    near_only = near_side - separator
    for u, v in g.edge_list:
        if (u in far_only and v in near_only) or (v in far_only and u in near_only):
            raise ValueError(f"edge ({u}, {v}) crosses the separation")
    if x not in separator or y not in separator:
        raise ValueError("endpoints must lie in the separator")

    arc_a, arc_b = _split_cycle_at(cycle, x, y)

    def far_arc(path):
        return all(w in far_only for w in path[1:-1])

    def near_arc(path):
        return all(w in near_side for w in path)

    if far_arc(arc_a) and near_arc(arc_b):
        far_path = arc_a
    elif far_arc(arc_b) and near_arc(arc_a):
        far_path = arc_b
    else:
        raise ValueError("cycle does not split into a far arc and a near arc at x, y")

    coeffs = decompose(EdgeVector.from_cycle(cycle), cycles)
    correction: frozenset[tuple[int, int]] = frozenset()
    for c, take in zip(cycles, coeffs):
        if not take:
            continue
        if c.vertex_set & separator:
            continue
        if c.vertex_set <= far_only:
            correction = correction ^ c.edge_pairs
        elif not c.vertex_set <= near_only:
            raise InternalCheckError("summand cycle straddles the separation")

    path = _path_in_edge_set(_path_edges(far_path) ^ correction, x, y)
    if path is None:
        raise InternalCheckError("no path in the corrected arc, parity argument failed")
    closure = cycle_closure(cycles, separator)
    if not set(path) <= closure.vertices:
        raise InternalCheckError("constructed path leaves the closure")
    return path
