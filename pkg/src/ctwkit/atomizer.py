"""Exact treewidth at desk scale and the fatness-minimizing fixpoint.

The fixpoint driver repeatedly applies the first available rearrangement
move, in a fixed scan order, until none applies:

  1. contract a tree edge whose bags are nested,
  2. split the far side of a tree edge whose adjacent far bag does not fit
     inside any single component piece,
  3. de-contract a bag holding two non-adjacent vertices that share no
     adhesion with any neighbor.

Each applied move strictly decreases the fatness tuple, so the loop
terminates; at the fixpoint no bag contains another, no bag on the far side
of any tree edge is split, and every in-bag vertex pair is either an edge or
lives inside some adhesion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cycles import Cycle
from .errors import InternalCheckError, SizeLimitError
from .graph import Graph, bfs_path, components
from .limits import TREEWIDTH_LIMIT, resolve_limit
from .treedec import (
    Fatness,
    TreeDecomposition,
    contract_edge,
    decontract_part,
    fatness,
    glue_block_decompositions,
    relabel_decomposition,
    split_at_edge,
    split_context,
    validate,
)


# ---------------------------------------------------------------------------
# Exact treewidth via elimination orderings.

def _reach_outside(adj_masks, eliminated: int, v: int) -> int:
    """Vertices outside eliminated and v itself that v reaches through
    eliminated vertices (bitmask arithmetic)."""
    seen = 1 << v
    frontier = seen
    while frontier:
        nbrs = 0
        f = frontier
        while f:
            low = f & -f
            nbrs |= adj_masks[low.bit_length() - 1]
            f ^= low
        new = nbrs & ~seen
        seen |= new
        frontier = new & eliminated
    return seen & ~eliminated & ~(1 << v)


def _min_fill_order(g: Graph) -> tuple[int, list[int]]:
    """Greedy upper bound: repeatedly eliminate the vertex whose neighborhood
    needs the fewest fill edges."""
    nbrs = {v: set(g.adj[v]) for v in range(g.n)}
    order: list[int] = []
    width = 0
    while nbrs:
        best = None
        for v in sorted(nbrs):
            fill = 0
            ns = sorted(nbrs[v])
            for i, a in enumerate(ns):
                for b in ns[i + 1 :]:
                    if b not in nbrs[a]:
                        fill += 1
            if best is None or fill < best[0]:
                best = (fill, v)
        v = best[1]
        width = max(width, len(nbrs[v]))
        ns = nbrs.pop(v)
        for a in ns:
            nbrs[a].discard(v)
        for a in ns:
            for b in ns:
                if a < b and b not in nbrs[a]:
                    nbrs[a].add(b)
                    nbrs[b].add(a)
        order.append(v)
    return width, order


def _minor_min_width(g: Graph) -> int:
    """Lower bound: track the minimum degree while contracting each
    minimum-degree vertex into its least-overlapping neighbor."""
    nbrs = {v: set(g.adj[v]) for v in range(g.n)}
    lb = 0
    while len(nbrs) > 1:
        d, v = min((len(nbrs[u]), u) for u in sorted(nbrs))
        lb = max(lb, d)
        if not nbrs[v]:
            del nbrs[v]
            continue
        _, u = min((len(nbrs[w] & nbrs[v]), w) for w in sorted(nbrs[v]))
        for w in nbrs[v]:
            nbrs[w].discard(v)
            if w != u:
                nbrs[w].add(u)
                nbrs[u].add(w)
        nbrs[u].discard(u)
        del nbrs[v]
    return lb


def _feasible_order(g: Graph, t: int) -> list[int] | None:
    """An elimination order with every elimination cost at most t, or None.

    Layered reachability over bitmask states (sets of eliminated vertices);
    the cost of eliminating v is the number of remaining vertices v sees
    through the already-eliminated ones.
    """
    masks = g.adj_masks
    full = (1 << g.n) - 1
    parents: dict[int, tuple[int, int] | None] = {0: None}
    layer = [0]
    while layer and full not in parents:
        nxt = []
        for state in layer:
            rest = full & ~state
            while rest:
                low = rest & -rest
                rest ^= low
                succ = state | low
                if succ in parents:
                    continue
                v = low.bit_length() - 1
                if _reach_outside(masks, state, v).bit_count() <= t:
                    parents[succ] = (state, v)
                    nxt.append(succ)
        layer = nxt
    if full not in parents:
        return None
    order: list[int] = []
    state = full
    while state:
        prev, v = parents[state]
        order.append(v)
        state = prev
    order.reverse()
    return order


def decomposition_from_elimination(g: Graph, order) -> TreeDecomposition:
    """Standard bag construction: each vertex's bag is itself plus whatever
    it reaches through earlier-eliminated vertices; each bag hangs off the
    bag of its earliest-eliminated later member."""
    masks = g.adj_masks
    pos = {v: i for i, v in enumerate(order)}
    eliminated = 0
    bags: list[frozenset[int]] = []
    for v in order:
        reach = _reach_outside(masks, eliminated, v)
        bag = {v}
        while reach:
            low = reach & -reach
            bag.add(low.bit_length() - 1)
            reach ^= low
        bags.append(frozenset(bag))
        eliminated |= 1 << v
    edges = set()
    roots = []
    for i, bag in enumerate(bags):
        later = [pos[u] for u in bag if pos[u] > i]
        if later:
            edges.add((i, min(later)))
        else:
            roots.append(i)
    for a, b in zip(roots, roots[1:]):
        edges.add((min(a, b), max(a, b)))
    return TreeDecomposition.from_lists(bags, edges)


def exact_treewidth(g: Graph, max_n: int | None = None) -> tuple[int, TreeDecomposition]:
    """Exact treewidth with a witnessing decomposition.

    Greedy min-fill gives an upper bound and a minor-based bound a lower one;
    when they disagree, feasibility of each width in between is decided by
    the elimination-order reachability search.
    """
    limit = resolve_limit(max_n, TREEWIDTH_LIMIT)
    if g.n == 0:
        raise ValueError("graph must be nonempty")
    if g.n > limit:
        raise SizeLimitError(
            f"{g.n} vertices exceeds the exact-treewidth limit {limit}; "
            "supply a decomposition file instead"
        )
    comps = components(g)
    if len(comps) > 1:
        width = 0
        parts = []
        for comp in comps:
            sub, old = g.induced(comp)
            w, td = exact_treewidth(sub, max_n=limit)
            width = max(width, w)
            parts.append(relabel_decomposition(td, old))
        return width, glue_block_decompositions(g, parts)
    if g.n == 1:
        return 0, TreeDecomposition.from_lists([{0}])
    ub, ub_order = _min_fill_order(g)
    lb = _minor_min_width(g)
    for t in range(lb, ub):
        order = _feasible_order(g, t)
        if order is not None:
            return t, decomposition_from_elimination(g, order)
    return ub, decomposition_from_elimination(g, ub_order)


# ---------------------------------------------------------------------------
# Fatness-minimizing fixpoint.

@dataclass(frozen=True)
class Move:
    kind: str
    detail: tuple
    fatness_after: Fatness


def _first_move(g: Graph, d: TreeDecomposition):
    for a, b in sorted(d.edges):
        if d.bags[a] <= d.bags[b]:
            return "contract", (a, b), contract_edge(d, (a, b))
        if d.bags[b] <= d.bags[a]:
            return "contract", (b, a), contract_edge(d, (b, a))
    for a, b in sorted(d.edges):
        for anchor, far in ((a, b), (b, a)):
            ctx = split_context(g, d, (anchor, far))
            bag = d.bags[far]
            if not any(bag <= piece for piece in ctx.pieces):
                return "split", (anchor, far), split_at_edge(g, d, ctx)
    for s in d.nodes:
        bag = sorted(d.bags[s])
        for i, u in enumerate(bag):
            for v in bag[i + 1 :]:
                if g.has_edge(u, v):
                    continue
                if any(
                    u in d.bags[t] and v in d.bags[t] for t in d.neighbors[s]
                ):
                    continue
                return "decontract", (s, u, v), decontract_part(g, d, s, u, v)
    return None


def atomize_with_trace(
    g: Graph, d: TreeDecomposition
) -> tuple[TreeDecomposition, list[Move]]:
    """Run the move loop to its fixpoint, recording each applied move."""
    if not g.is_connected():
        raise ValueError("graph must be connected (decompose per component first)")
    if not validate(g, d).valid:
        raise ValueError("decomposition is not valid")
    current = d
    current_fatness = fatness(g, d)
    trace: list[Move] = []
    while True:
        hit = _first_move(g, current)
        if hit is None:
            return current, trace
        kind, detail, nxt = hit
        nxt_fatness = fatness(g, nxt)
        if not nxt_fatness < current_fatness:
            raise InternalCheckError(
                f"{kind} move at {detail} did not decrease fatness"
            )
        trace.append(Move(kind, detail, nxt_fatness))
        current, current_fatness = nxt, nxt_fatness


def atomize(g: Graph, d: TreeDecomposition) -> TreeDecomposition:
    return atomize_with_trace(g, d)[0]


def _side_path(g: Graph, d: TreeDecomposition, edge: tuple[int, int], u: int, v: int):
    """A u..v path whose interior lies in the component (beyond the edge's
    adhesion) that meets the far bag."""
    ctx = split_context(g, d, edge)
    far_bag = d.bags[ctx.far]
    hits = [c for c in ctx.components if c & far_bag]
    if len(hits) != 1:
        raise ValueError(
            f"far bag meets {len(hits)} components at edge {edge}; "
            "decomposition is not atomized"
        )
    path = bfs_path(g, u, v, allowed=hits[0] | {u, v})
    if path is None:
        raise ValueError(
            f"no path through the component at edge {edge}; "
            "decomposition is not atomized"
        )
    return path


def adhesion_cycle(g: Graph, d: TreeDecomposition, s: int, u: int, v: int) -> Cycle:
    """Cycle through u and v built from two paths, one through the far side
    of a tree edge at s and one through the near side, both leaving the
    shared adhesion only at their interiors.

    Requires u, v in the bag of s, non-adjacent, and some neighbor of s whose
    adhesion holds both.
    """
    if s not in d.bags:
        raise ValueError(f"no node {s}")
    if u == v or u not in d.bags[s] or v not in d.bags[s]:
        raise ValueError(f"need two distinct vertices from the bag of node {s}")
    if g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is an edge of the graph")
    t0 = None
    for t in d.neighbors[s]:
        if u in d.bags[t] and v in d.bags[t]:
            t0 = t
            break
    if t0 is None:
        raise ValueError(f"no neighbor of node {s} shares both {u} and {v}")
    far = _side_path(g, d, (s, t0), u, v)
    near = _side_path(g, d, (t0, s), u, v)
    seq = list(far) + list(reversed(near[1:-1]))
    return Cycle.from_vertices(g, seq)
