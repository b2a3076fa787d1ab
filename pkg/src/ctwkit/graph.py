"""Finite simple undirected graphs with a fixed vertex order.

Vertices are the dense integers 0..n-1 and the natural order on them is part
of the data model: path construction and cycle enumeration elsewhere break
ties by this order, so every operation here iterates vertices ascending and
returns deterministically ordered results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .errors import FormatError

VertexSet = frozenset[int]

INFINITY = math.inf


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph: vertex count plus sorted adjacency lists."""

    n: int
    adj: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        """Build a graph from an iterable of (u, v) pairs.

        Rejects loops, duplicate edges (in either orientation) and endpoints
        outside 0..n-1.
        """
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        nbrs: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range 0..{n - 1}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({key[0]}, {key[1]})")
            seen.add(key)
            nbrs[u].append(v)
            nbrs[v].append(u)
        return cls(n, tuple(tuple(sorted(ns)) for ns in nbrs))

    @cached_property
    def adj_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(ns) for ns in self.adj)

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        masks = []
        for ns in self.adj:
            m = 0
            for u in ns:
                m |= 1 << u
            masks.append(m)
        return tuple(masks)

    @cached_property
    def edge_list(self) -> tuple[tuple[int, int], ...]:
        """All edges as (u, v) with u < v, sorted."""
        return tuple(
            (u, v) for u in range(self.n) for v in self.adj[u] if u < v
        )

    @property
    def m(self) -> int:
        return len(self.edge_list)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj_sets[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def bfs_distances(self, source: int, allowed: frozenset[int] | None = None) -> list:
        """Hop distances from source; INFINITY where unreachable.

        If allowed is given, the search is restricted to that induced
        subgraph (source must be allowed).
        """
        dist = [INFINITY] * self.n
        if allowed is not None and source not in allowed:
            return dist
        dist[source] = 0
        frontier = [source]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for w in self.adj[u]:
                    if dist[w] == INFINITY and (allowed is None or w in allowed):
                        dist[w] = d
                        nxt.append(w)
            frontier = nxt
        return dist

    @cached_property
    def distances(self) -> tuple[tuple, ...]:
        return tuple(tuple(self.bfs_distances(v)) for v in range(self.n))

    @cached_property
    def diameter(self) -> int:
        """Largest finite pairwise distance (0 for a single vertex)."""
        best = 0
        for row in self.distances:
            for d in row:
                if d != INFINITY and d > best:
                    best = d
        return int(best)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return all(d != INFINITY for d in self.distances[0])

    def induced(self, vertices) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph on the given vertices.

        Returns (subgraph, old_ids) where old_ids[i] is the original label of
        the subgraph's vertex i. New labels follow ascending original labels,
        so the fixed vertex order is inherited.
        """
        old_ids = tuple(sorted(vertices))
        index = {v: i for i, v in enumerate(old_ids)}
        edges = [
            (index[u], index[v])
            for u, v in self.edge_list
            if u in index and v in index
        ]
        return Graph.from_edges(len(old_ids), edges), old_ids


@dataclass(frozen=True)
class BlockForest:
    """Blocks (maximal 2-connected subgraphs, bridges, isolated vertices)
    and the cut vertices of a graph."""

    blocks: tuple[VertexSet, ...]
    cut_vertices: VertexSet


def distance_matrix(g: Graph) -> tuple[tuple, ...]:
    """All-pairs hop distances by one BFS per vertex; INFINITY where
    disconnected."""
    return g.distances


def components(g: Graph, forbidden: VertexSet = frozenset()) -> list[VertexSet]:
    """Connected components of g minus the forbidden vertices, ordered by
    least contained vertex."""
    seen = set(forbidden)
    out: list[VertexSet] = []
    for start in range(g.n):
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        stack = [start]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        out.append(frozenset(comp))
    return out


def neighborhood(g: Graph, s: VertexSet) -> VertexSet:
    """All vertices outside s with at least one neighbor in s."""
    out: set[int] = set()
    for u in s:
        out.update(g.adj[u])
    return frozenset(out - set(s))


def set_connected(g: Graph, s) -> bool:
    """Does s induce a connected subgraph? Empty and singleton sets count
    as connected."""
    s = frozenset(s)
    if len(s) <= 1:
        return True
    start = min(s)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w in s and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(s)


def bfs_path(
    g: Graph, source: int, target: int, allowed: frozenset[int] | None = None
) -> tuple[int, ...] | None:
    """A shortest source..target path inside the induced subgraph on
    allowed (whole graph when None); None when target is unreachable."""
    if allowed is not None and (source not in allowed or target not in allowed):
        return None
    prev = {source: source}
    frontier = [source]
    while frontier and target not in prev:
        nxt = []
        for u in frontier:
            for w in g.adj[u]:
                if w not in prev and (allowed is None or w in allowed):
                    prev[w] = u
                    nxt.append(w)
        frontier = nxt
    if target not in prev:
        return None
    path = [target]
    while path[-1] != source:
        path.append(prev[path[-1]])
    return tuple(reversed(path))


def connected_subsets(g: Graph, max_size: int):
    """Yield every connected vertex set of size 1..max_size exactly once.

    Extension-set enumeration: sets are rooted at their least vertex and
    grown through candidates recorded the first time they become visible,
    which makes each set reachable along exactly one branch.
    """
    if max_size < 1:
        return

    def grow(current: frozenset[int], ext: list[int], seen: frozenset[int], root: int):
        yield current
        if len(current) == max_size:
            return
        for i, u in enumerate(ext):
            fresh = [w for w in g.adj[u] if w > root and w not in seen]
            yield from grow(
                current | {u},
                ext[i + 1 :] + fresh,
                seen | frozenset(fresh),
                root,
            )

    for root in range(g.n):
        first = [w for w in g.adj[root] if w > root]
        yield from grow(frozenset([root]), first, frozenset([root, *first]), root)


def blocks(g: Graph) -> BlockForest:
    """Biconnected decomposition (iterative Hopcroft-Tarjan).

    Bridges are two-vertex blocks and isolated vertices one-vertex blocks,
    so every vertex lies in at least one block and every edge in exactly one.
    """
    disc = [-1] * g.n
    low = [0] * g.n
    timer = 0
    edge_stack: list[tuple[int, int]] = []
    block_edge_sets: list[list[tuple[int, int]]] = []
    cut: set[int] = set()

    for root in range(g.n):
        if disc[root] != -1:
            continue
        # Iterative DFS frame: (vertex, parent, neighbor iterator index).
        stack = [(root, -1, 0)]
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        while stack:
            u, parent, i = stack[-1]
            if i < len(g.adj[u]):
                stack[-1] = (u, parent, i + 1)
                w = g.adj[u][i]
                if disc[w] == -1:
                    edge_stack.append((u, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    if u == root:
                        root_children += 1
                    stack.append((w, u, 0))
                elif w != parent and disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    if disc[w] < low[u]:
                        low[u] = disc[w]
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    if low[u] < low[p]:
                        low[p] = low[u]
                    if low[u] >= disc[p]:
                        # p separates the subtree at u: pop one block.
                        blk = []
                        while edge_stack and edge_stack[-1] != (p, u):
                            blk.append(edge_stack.pop())
                        blk.append(edge_stack.pop())
                        block_edge_sets.append(blk)
                        if p != root or root_children > 1:
                            cut.add(p)
        if not g.adj[root]:
            block_edge_sets.append([(root, root)])  # isolated vertex

    block_sets: list[frozenset[int]] = []
    for blk in block_edge_sets:
        verts: set[int] = set()
        for a, b in blk:
            verts.add(a)
            verts.add(b)
        block_sets.append(frozenset(verts))
    block_sets.sort(key=lambda s: (min(s), len(s), tuple(sorted(s))))
    return BlockForest(tuple(block_sets), frozenset(cut))


# ---------------------------------------------------------------------------
# Small graph constructors, handy for experiments and tests.

def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def grid_graph(rows: int, cols: int) -> Graph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edges(rows * cols, edges)


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


# ---------------------------------------------------------------------------
# PACE-style .gr files: 'c' comments, 'p tw <n> <m>' header, then one
# '<u> <v>' line per edge with 1-indexed endpoints.

def parse_gr(text: str, source: str = "<input>") -> Graph:
    n = None
    declared_m = 0
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise FormatError(f"{source}:{lineno}: duplicate 'p' header")
            if len(parts) != 4 or parts[1] != "tw":
                raise FormatError(f"{source}:{lineno}: expected 'p tw <n> <m>'")
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"{source}:{lineno}: non-integer header fields") from None
            if n < 0 or declared_m < 0:
                raise FormatError(f"{source}:{lineno}: negative header fields")
            continue
        if n is None:
            raise FormatError(f"{source}:{lineno}: edge line before 'p' header")
        if len(parts) != 2:
            raise FormatError(f"{source}:{lineno}: expected '<u> <v>'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"{source}:{lineno}: non-integer endpoints") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(f"{source}:{lineno}: endpoint out of range 1..{n}")
        if u == v:
            raise FormatError(f"{source}:{lineno}: loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"{source}:{lineno}: duplicate edge ({key[0]}, {key[1]})")
        seen.add(key)
        edges.append((u - 1, v - 1))
    if n is None:
        raise FormatError(f"{source}: missing 'p tw <n> <m>' header")
    if len(edges) != declared_m:
        raise FormatError(
            f"{source}: header declares {declared_m} edges but {len(edges)} were given"
        )
    return Graph.from_edges(n, edges)


def read_gr(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_gr(fh.read(), source=str(path))
