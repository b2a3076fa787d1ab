"""Tree decompositions: data model, axiom checks, and rearrangement moves.

A decomposition is a tree whose nodes carry vertex bags subject to the three
axioms: bags cover all vertices (T1), every edge fits in some bag (T2), and
for every vertex the nodes whose bags contain it induce a subtree (T3, in its
per-vertex form).

The rearrangement moves here (edge contraction, component split at a tree
edge, de-contraction of one bag) all return fresh decompositions, and each is
used by the atomizer because under the right precondition it strictly
decreases the fatness tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import FormatError
from .graph import Graph, components, neighborhood, set_connected


@dataclass(frozen=True)
class TreeDecomposition:
    """Tree with one vertex bag per node.

    bags maps node id to bag; edges holds tree edges as (a, b) with a < b.
    Node ids are arbitrary ints (rearrangements mint fresh ids).
    """

    bags: dict[int, frozenset[int]]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if not self.bags:
            raise ValueError("a decomposition needs at least one node")
        for a, b in self.edges:
            if a >= b:
                raise ValueError(f"tree edge ({a}, {b}) not normalized (a < b)")
            if a not in self.bags or b not in self.bags:
                raise FormatError(f"tree edge ({a}, {b}) references unknown node")

    @classmethod
    def from_lists(cls, bags, edges=()) -> "TreeDecomposition":
        """Bags given as iterables; node ids are the list positions."""
        bag_map = {i: frozenset(bag) for i, bag in enumerate(bags)}
        edge_set = frozenset((min(a, b), max(a, b)) for a, b in edges)
        return cls(bag_map, edge_set)

    @cached_property
    def nodes(self) -> tuple[int, ...]:
        return tuple(sorted(self.bags))

    @cached_property
    def neighbors(self) -> dict[int, tuple[int, ...]]:
        nbrs: dict[int, list[int]] = {t: [] for t in self.bags}
        for a, b in self.edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        return {t: tuple(sorted(ns)) for t, ns in nbrs.items()}

    @property
    def width(self) -> int:
        return max(len(bag) for bag in self.bags.values()) - 1

    def tree_is_valid(self) -> bool:
        """Connected and acyclic."""
        if len(self.edges) != len(self.bags) - 1:
            return False
        return len(self.reachable_nodes(self.nodes[0])) == len(self.bags)

    def reachable_nodes(self, start: int, skip_edge: tuple[int, int] | None = None) -> set[int]:
        """Tree nodes reachable from start, optionally with one edge cut."""
        seen = {start}
        stack = [start]
        while stack:
            t = stack.pop()
            for u in self.neighbors[t]:
                if skip_edge and {t, u} == set(skip_edge):
                    continue
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return seen

    def has_tree_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def adhesion(self, a: int, b: int) -> frozenset[int]:
        return self.bags[a] & self.bags[b]


@dataclass(frozen=True)
class TdReport:
    t1_ok: bool
    t2_ok: bool
    t3_ok: bool
    tree_ok: bool
    width: int
    connected_parts: bool
    t1_missing: frozenset[int] = frozenset()
    t2_witness: tuple[int, int] | None = None
    t3_witness: int | None = None

    @property
    def valid(self) -> bool:
        return self.t1_ok and self.t2_ok and self.t3_ok and self.tree_ok


def validate(g: Graph, d: TreeDecomposition) -> TdReport:
    """Check the three axioms independently, plus tree shape, width, and
    whether every bag induces a connected subgraph."""
    for t, bag in d.bags.items():
        for v in bag:
            if not (0 <= v < g.n):
                raise FormatError(f"bag of node {t} contains vertex {v}, outside 0..{g.n - 1}")

    covered: set[int] = set()
    for bag in d.bags.values():
        covered |= bag
    missing = frozenset(range(g.n)) - covered
    t1_ok = not missing

    t2_witness = None
    for u, v in g.edge_list:
        if not any(u in bag and v in bag for bag in d.bags.values()):
            t2_witness = (u, v)
            break
    t2_ok = t2_witness is None

    # T3 in per-vertex form: the nodes holding each vertex induce a subtree.
    t3_witness = None
    for v in range(g.n):
        holders = [t for t in d.nodes if v in d.bags[t]]
        if len(holders) <= 1:
            continue
        holder_set = set(holders)
        seen = {holders[0]}
        stack = [holders[0]]
        while stack:
            t = stack.pop()
            for u in d.neighbors[t]:
                if u in holder_set and u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != len(holders):
            t3_witness = v
            break
    t3_ok = t3_witness is None

    connected_parts = all(set_connected(g, bag) for bag in d.bags.values())

    return TdReport(
        t1_ok=t1_ok,
        t2_ok=t2_ok,
        t3_ok=t3_ok,
        tree_ok=d.tree_is_valid(),
        width=d.width,
        connected_parts=connected_parts,
        t1_missing=missing,
        t2_witness=t2_witness,
        t3_witness=t3_witness,
    )


@dataclass(frozen=True, order=True)
class Fatness:
    """Bag-size profile: counts[h] is the number of bags of size n - h.

    Lexicographic comparison on the tuple, so profiles with fewer large bags
    compare smaller. The tuple has n + 1 entries (sizes n down to 0).
    """

    counts: tuple[int, ...]


def fatness(g: Graph, d: TreeDecomposition) -> Fatness:
    counts = [0] * (g.n + 1)
    for bag in d.bags.values():
        counts[g.n - len(bag)] += 1
    return Fatness(tuple(counts))


def contract_edge(d: TreeDecomposition, e: tuple[int, int]) -> TreeDecomposition:
    """Contract tree edge e = (r, s): r disappears, s keeps the union bag."""
    r, s = e
    if not d.has_tree_edge(r, s):
        raise ValueError(f"({r}, {s}) is not a tree edge")
    bags = {t: bag for t, bag in d.bags.items() if t != r}
    bags[s] = d.bags[r] | d.bags[s]
    edges = set()
    for a, b in d.edges:
        if {a, b} == {r, s}:
            continue
        a2 = s if a == r else a
        b2 = s if b == r else b
        edges.add((min(a2, b2), max(a2, b2)))
    return TreeDecomposition(bags, frozenset(edges))


@dataclass(frozen=True)
class SplitContext:
    """Everything needed to split the far side of a tree edge along the
    components it leaves behind the adhesion.

    For the oriented edge (anchor, far): adhesion is the bag intersection,
    far_side / anchor_side the vertex sets covered by the two tree halves,
    and for each component of far_side minus the adhesion its neighborhood
    (always inside the adhesion) and the piece component + neighborhood.
    """

    anchor: int
    far: int
    adhesion: frozenset[int]
    far_side: frozenset[int]
    anchor_side: frozenset[int]
    far_nodes: frozenset[int]
    components: tuple[frozenset[int], ...]
    neighborhoods: tuple[frozenset[int], ...]
    pieces: tuple[frozenset[int], ...]


def split_context(g: Graph, d: TreeDecomposition, e: tuple[int, int]) -> SplitContext:
    """Build the split data for oriented tree edge e = (anchor, far)."""
    anchor, far = e
    if not d.has_tree_edge(anchor, far):
        raise ValueError(f"({anchor}, {far}) is not a tree edge")
    far_nodes = frozenset(d.reachable_nodes(far, skip_edge=(anchor, far)))
    anchor_nodes = frozenset(d.bags) - far_nodes
    far_side = frozenset().union(*(d.bags[t] for t in far_nodes))
    anchor_side = frozenset().union(*(d.bags[t] for t in anchor_nodes))
    adhesion = d.bags[anchor] & d.bags[far]
    comps = [c for c in components(g, forbidden=anchor_side) if c <= far_side]
    nbrs = tuple(neighborhood(g, c) for c in comps)
    pieces = tuple(c | nb for c, nb in zip(comps, nbrs))
    return SplitContext(
        anchor=anchor,
        far=far,
        adhesion=adhesion,
        far_side=far_side,
        anchor_side=anchor_side,
        far_nodes=far_nodes,
        components=tuple(comps),
        neighborhoods=nbrs,
        pieces=pieces,
    )


def split_at_edge(g: Graph, d: TreeDecomposition, ctx: SplitContext) -> TreeDecomposition:
    """Replace the far half of the tree by one copy per component, each
    with bags restricted to that component's piece, attached at the anchor.

    Nodes whose restricted bag comes out empty are pruned by contracting
    them into a neighbor, which never increases fatness.
    """
    far_list = sorted(ctx.far_nodes)
    base = max(d.bags) + 1
    bags: dict[int, frozenset[int]] = {
        t: d.bags[t] for t in d.bags if t not in ctx.far_nodes
    }
    edges = {
        (a, b)
        for a, b in d.edges
        if a not in ctx.far_nodes and b not in ctx.far_nodes
    }
    far_index = {t: i for i, t in enumerate(far_list)}
    for i, piece in enumerate(ctx.pieces):
        offset = base + i * len(far_list)
        for t in far_list:
            bags[offset + far_index[t]] = d.bags[t] & piece
        for a, b in d.edges:
            if a in ctx.far_nodes and b in ctx.far_nodes:
                na, nb = offset + far_index[a], offset + far_index[b]
                edges.add((min(na, nb), max(na, nb)))
        attach = offset + far_index[ctx.far]
        edges.add((min(ctx.anchor, attach), max(ctx.anchor, attach)))
    result = TreeDecomposition(bags, frozenset(edges))
    return prune_empty_bags(result)


def prune_empty_bags(d: TreeDecomposition) -> TreeDecomposition:
    """Contract every empty-bag node into a neighbor (fatness never grows)."""
    while len(d.bags) > 1:
        empty = sorted(t for t, bag in d.bags.items() if not bag)
        if not empty:
            break
        t = empty[0]
        nb = d.neighbors[t][0]
        d = contract_edge(d, (t, nb))
    return d


def relabel_decomposition(d: TreeDecomposition, labels) -> TreeDecomposition:
    """Map every bag vertex v to labels[v] (tree structure unchanged)."""
    return TreeDecomposition(
        {t: frozenset(labels[v] for v in bag) for t, bag in d.bags.items()},
        d.edges,
    )


def decontract_part(
    g: Graph, d: TreeDecomposition, s: int, u: int, v: int
) -> TreeDecomposition:
    """Split node s into two adjacent nodes, one missing v and one missing u.

    Requires u, v in the bag of s, uv not an edge, and no neighbor of s whose
    shared adhesion contains both. Neighbors lacking v attach to the node
    that kept u; the others attach to the node that kept v.
    """
    if s not in d.bags:
        raise ValueError(f"no node {s}")
    bag = d.bags[s]
    if u not in bag or v not in bag:
        raise ValueError(f"vertices {u}, {v} must both lie in the bag of node {s}")
    if u == v:
        raise ValueError("need two distinct vertices")
    if g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is an edge of the graph")
    for t in d.neighbors[s]:
        if u in d.bags[t] and v in d.bags[t]:
            raise ValueError(
                f"neighbor {t} shares both {u} and {v} with node {s}"
            )
    base = max(d.bags) + 1
    t_u, t_v = base, base + 1
    bags = {t: b for t, b in d.bags.items() if t != s}
    bags[t_u] = bag - {v}
    bags[t_v] = bag - {u}
    edges = {(a, b) for a, b in d.edges if s not in (a, b)}
    for t in d.neighbors[s]:
        target = t_u if v not in d.bags[t] else t_v
        edges.add((min(t, target), max(t, target)))
    edges.add((t_u, t_v))
    return TreeDecomposition(bags, frozenset(edges))


def glue_block_decompositions(g: Graph, per_block) -> TreeDecomposition:
    """Join decompositions of the blocks of g into one decomposition of g.

    Trees are renumbered into disjoint id ranges; for every vertex shared by
    several inputs (a cut vertex) one node per input whose bag holds it is
    chosen and those nodes are chained. Remaining tree components (different
    components of g) are chained arbitrarily at the end.
    """
    per_block = list(per_block)
    if not per_block:
        raise ValueError("need at least one block decomposition")
    bags: dict[int, frozenset[int]] = {}
    edges: set[tuple[int, int]] = set()
    unions: list[frozenset[int]] = []
    node_ranges: list[list[int]] = []
    next_id = 0
    for td in per_block:
        if not td.tree_is_valid():
            raise ValueError("block decomposition is not a tree")
        mapping = {t: next_id + i for i, t in enumerate(sorted(td.bags))}
        next_id += len(td.bags)
        for t, bag in td.bags.items():
            bags[mapping[t]] = bag
        for a, b in td.edges:
            na, nb = mapping[a], mapping[b]
            edges.add((min(na, nb), max(na, nb)))
        unions.append(frozenset().union(*td.bags.values()))
        node_ranges.append(sorted(mapping.values()))

    parent = {t: t for t in bags}

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    def link(a, b):
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
        edges.add((min(a, b), max(a, b)))
        return True

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    shared = sorted(
        v
        for v in range(g.n)
        if sum(1 for un in unions if v in un) >= 2
    )
    for x in shared:
        chosen = [
            min(t for t in node_ranges[i] if x in bags[t])
            for i, un in enumerate(unions)
            if x in un
        ]
        for a, b in zip(chosen, chosen[1:]):
            link(a, b)

    roots = sorted({find(t) for t in bags})
    reps = []
    for r in roots:
        reps.append(min(t for t in bags if find(t) == r))
    for a, b in zip(reps, reps[1:]):
        link(a, b)

    result = TreeDecomposition(bags, frozenset(edges))
    report = validate(g, result)
    if not report.valid:
        raise ValueError("glued decomposition is not valid for the graph")
    return result


# ---------------------------------------------------------------------------
# PACE-style .td files: 's td <num_bags> <max_bag_size> <n>' header, then
# 'b <bag_id> <v1> ...' lines and tree edges '<i> <j>', all 1-indexed.

def parse_td(text: str, source: str = "<input>") -> tuple[TreeDecomposition, int]:
    """Parse a .td file; returns (decomposition, declared vertex count)."""
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if header is not None:
                raise FormatError(f"{source}:{lineno}: duplicate 's td' header")
            if len(parts) != 5 or parts[1] != "td":
                raise FormatError(f"{source}:{lineno}: expected 's td <bags> <maxsize> <n>'")
            try:
                header = (int(parts[2]), int(parts[3]), int(parts[4]))
            except ValueError:
                raise FormatError(f"{source}:{lineno}: non-integer header fields") from None
            continue
        if header is None:
            raise FormatError(f"{source}:{lineno}: data before 's td' header")
        if parts[0] == "b":
            if len(parts) < 2:
                raise FormatError(f"{source}:{lineno}: bag line needs an id")
            try:
                bag_id = int(parts[1])
                verts = [int(p) for p in parts[2:]]
            except ValueError:
                raise FormatError(f"{source}:{lineno}: non-integer bag entries") from None
            if bag_id < 1 or bag_id > header[0]:
                raise FormatError(f"{source}:{lineno}: bag id {bag_id} out of range")
            if bag_id - 1 in bags:
                raise FormatError(f"{source}:{lineno}: duplicate bag id {bag_id}")
            for v in verts:
                if not (1 <= v <= header[2]):
                    raise FormatError(f"{source}:{lineno}: vertex {v} out of range 1..{header[2]}")
            bags[bag_id - 1] = frozenset(v - 1 for v in verts)
        else:
            if len(parts) != 2:
                raise FormatError(f"{source}:{lineno}: expected tree edge '<i> <j>'")
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise FormatError(f"{source}:{lineno}: non-integer tree edge") from None
            if a == b or not (1 <= a <= header[0] and 1 <= b <= header[0]):
                raise FormatError(f"{source}:{lineno}: bad tree edge ({a}, {b})")
            edges.add((min(a, b) - 1, max(a, b) - 1))
    if header is None:
        raise FormatError(f"{source}: missing 's td' header")
    if len(bags) != header[0]:
        raise FormatError(
            f"{source}: header declares {header[0]} bags but {len(bags)} were given"
        )
    return TreeDecomposition(bags, frozenset(edges)), header[2]


def read_td(path) -> tuple[TreeDecomposition, int]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_td(fh.read(), source=str(path))


def format_td(d: TreeDecomposition, n: int) -> str:
    """Serialize to .td text; node ids are renumbered to 1..k in sorted order."""
    order = {t: i + 1 for i, t in enumerate(d.nodes)}
    max_size = max(len(bag) for bag in d.bags.values())
    lines = [f"s td {len(d.bags)} {max_size} {n}"]
    for t in d.nodes:
        verts = " ".join(str(v + 1) for v in sorted(d.bags[t]))
        lines.append(f"b {order[t]}" + (f" {verts}" if verts else ""))
    for a, b in sorted(d.edges, key=lambda e: (order[e[0]], order[e[1]])):
        i, j = order[a], order[b]
        lines.append(f"{min(i, j)} {max(i, j)}")
    return "\n".join(lines) + "\n"


def write_td(path, d: TreeDecomposition, n: int) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_td(d, n))
