"""Brambles: families of pairwise touching connected vertex sets.

The order of a bramble is the least size of a hitting set; the connected
order additionally requires the hitting set to induce a connected subgraph.
Both solvers here are exact at desk scale: a hitting-set branch and bound
and an exhaustive scan over connected sets below a greedy incumbent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

from .cycles import Cycle
from .errors import FormatError, InternalCheckError
from .graph import Graph, bfs_path, connected_subsets, set_connected
from .treedec import TreeDecomposition, validate


@dataclass(frozen=True)
class Bramble:
    sets: tuple[frozenset[int], ...]

    @classmethod
    def from_lists(cls, sets) -> "Bramble":
        return cls(tuple(frozenset(s) for s in sets))


@dataclass(frozen=True)
class BrambleViolation:
    kind: str  # "empty_set" | "not_connected" | "not_touching"
    witness: tuple


@dataclass(frozen=True)
class BrambleReport:
    ok: bool
    violation: BrambleViolation | None = None


def _touching(g: Graph, a: frozenset[int], b: frozenset[int]) -> bool:
    if a & b:
        return True
    return any(g.has_edge(u, v) for u in a for v in b)


def validate_bramble(g: Graph, b: Bramble) -> BrambleReport:
    """Each set must be nonempty and connected, and every two sets must
    touch (intersect or be joined by an edge)."""
    for idx, s in enumerate(b.sets):
        for v in s:
            if not (0 <= v < g.n):
                raise FormatError(f"set {idx} contains vertex {v}, outside 0..{g.n - 1}")
        if not s:
            return BrambleReport(False, BrambleViolation("empty_set", (idx,)))
        if not set_connected(g, s):
            return BrambleReport(False, BrambleViolation("not_connected", (idx,)))
    for i in range(len(b.sets)):
        for j in range(i + 1, len(b.sets)):
            if not _touching(g, b.sets[i], b.sets[j]):
                return BrambleReport(False, BrambleViolation("not_touching", (i, j)))
    return BrambleReport(True)


def _greedy_cover(sets) -> set[int]:
    uncovered = list(sets)
    cover: set[int] = set()
    while uncovered:
        counts: dict[int, int] = {}
        for s in uncovered:
            for v in s:
                counts[v] = counts.get(v, 0) + 1
        v = min(counts, key=lambda u: (-counts[u], u))
        cover.add(v)
        uncovered = [s for s in uncovered if v not in s]
    return cover


def _disjoint_packing(sets) -> int:
    """Greedy count of pairwise disjoint sets (a hitting-set lower bound)."""
    taken: set[int] = set()
    count = 0
    for s in sorted(sets, key=lambda s: (len(s), sorted(s))):
        if not (s & taken):
            count += 1
            taken |= s
    return count


def order(g: Graph, b: Bramble) -> int:
    """Minimum size of a set meeting every bramble set (exact)."""
    report = validate_bramble(g, b)
    if not report.ok:
        raise ValueError(f"not a bramble: {report.violation}")
    sets = list(b.sets)
    if not sets:
        return 0
    best = len(_greedy_cover(sets))

    def search(uncovered, used: int):
        nonlocal best
        if not uncovered:
            if used < best:
                best = used
            return
        if used + _disjoint_packing(uncovered) >= best:
            return
        pick = min(uncovered, key=lambda s: (len(s), sorted(s)))
        for v in sorted(pick):
            search([s for s in uncovered if v not in s], used + 1)

    search(sets, 0)
    return best


def _greedy_connected_cover(g: Graph, sets) -> set[int]:
    cover = _greedy_cover(sets)
    while not set_connected(g, cover):
        pieces = []
        rest = set(cover)
        while rest:
            start = min(rest)
            comp = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for w in g.adj[u]:
                    if w in rest and w not in comp:
                        comp.add(w)
                        stack.append(w)
            pieces.append(comp)
            rest -= comp
        base = pieces[0]
        best_path = None
        for other in pieces[1:]:
            for u in sorted(base):
                for v in sorted(other):
                    p = bfs_path(g, u, v)
                    if best_path is None or len(p) < len(best_path):
                        best_path = p
        cover |= set(best_path)
    return cover


def connected_order(g: Graph, b: Bramble) -> int:
    """Minimum size of a connected set meeting every bramble set (exact)."""
    report = validate_bramble(g, b)
    if not report.ok:
        raise ValueError(f"not a bramble: {report.violation}")
    if not g.is_connected():
        raise ValueError("graph must be connected")
    sets = list(b.sets)
    if not sets:
        return 0
    floor = order(g, b)
    incumbent = len(_greedy_connected_cover(g, sets))
    if incumbent == floor:
        return floor
    best = incumbent
    for cand in connected_subsets(g, best - 1):
        if len(cand) < best and all(cand & s for s in sets):
            best = len(cand)
            if best == floor:
                return best
    return best


def cycle_bramble(g: Graph, c: Cycle) -> Bramble:
    """The arcs of floor(k/2) consecutive vertices of a length-k cycle."""
    seq = c.vertices
    k = len(seq)
    size = k // 2
    sets = []
    for i in range(k):
        sets.append(frozenset(seq[(i + j) % k] for j in range(size)))
    b = Bramble(tuple(sets))
    report = validate_bramble(g, b)
    if not report.ok:
        raise InternalCheckError(f"cycle arcs failed bramble validation: {report.violation}")
    return b


def part_cover_witness(g: Graph, d: TreeDecomposition, b: Bramble) -> int:
    """A tree node whose bag meets every bramble set.

    Every tree edge whose adhesion misses some bramble set is oriented
    toward the side containing that set; a sink of the orientation carries a
    covering bag. An edge whose adhesion meets all sets makes both endpoint
    bags covers directly.
    """
    if not validate(g, d).valid:
        raise ValueError("decomposition is not valid")
    report = validate_bramble(g, b)
    if not report.ok:
        raise ValueError(f"not a bramble: {report.violation}")

    def covers(bag: frozenset[int]) -> bool:
        return all(bag & s for s in b.sets)

    if len(d.bags) == 1:
        node = d.nodes[0]
        if not covers(d.bags[node]):
            raise InternalCheckError("single bag fails to cover the bramble")
        return node

    orientation: dict[tuple[int, int], int] = {}
    for a, c in sorted(d.edges):
        adhesion = d.bags[a] & d.bags[c]
        avoider = next((s for s in b.sets if not (s & adhesion)), None)
        if avoider is None:
            return min(a, c)
        far_nodes = d.reachable_nodes(c, skip_edge=(a, c))
        far_union = frozenset().union(*(d.bags[t] for t in far_nodes))
        near_union = frozenset().union(
            *(d.bags[t] for t in d.bags if t not in far_nodes)
        )
        if avoider <= far_union - adhesion:
            orientation[(a, c)] = c
        elif avoider <= near_union - adhesion:
            orientation[(a, c)] = a
        else:
            raise InternalCheckError("bramble set not confined to one side of an adhesion")
    for t in d.nodes:
        if all(
            orientation[(min(t, u), max(t, u))] == t for u in d.neighbors[t]
        ):
            if not covers(d.bags[t]):
                raise InternalCheckError("orientation sink fails to cover the bramble")
            return t
    raise InternalCheckError("edge orientation has no sink")


def duality_width_bound(k: int) -> int:
    """Width guarantee when no bramble has connected order above k:
    k + C(k+1, 2) * ((2k - 1) * k - 1)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return k + comb(k + 1, 2) * ((2 * k - 1) * k - 1)


# ---------------------------------------------------------------------------
# Bramble files: JSON object {"sets": [[...], ...]} with 1-indexed vertices.

def parse_bramble(text: str, source: str = "<input>") -> Bramble:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: invalid JSON: {exc}") from None
    if not isinstance(data, dict) or not isinstance(data.get("sets"), list):
        raise FormatError(f"{source}: expected an object with a 'sets' list")
    sets = []
    for i, entry in enumerate(data["sets"]):
        if not isinstance(entry, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in entry
        ):
            raise FormatError(f"{source}: set {i} must be a list of integers")
        if any(v < 1 for v in entry):
            raise FormatError(f"{source}: set {i} has a vertex below 1 (1-indexed)")
        sets.append(frozenset(v - 1 for v in entry))
    return Bramble(tuple(sets))


def read_bramble(path) -> Bramble:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_bramble(fh.read(), source=str(path))


def format_bramble(b: Bramble) -> str:
    data = {"sets": [sorted(v + 1 for v in s) for s in b.sets]}
    return json.dumps(data, sort_keys=True, indent=2) + "\n"
